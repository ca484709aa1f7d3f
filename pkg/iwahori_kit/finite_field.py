"""
Small finite fields F_q with table arithmetic on numpy integer arrays.

Elements are the integers 0..q-1. For prime q this is arithmetic mod q; for
q = 4 and q = 8 an element is the bit vector of a polynomial over F_2 and
multiplication reduces modulo a fixed irreducible polynomial.
"""
import logging
from functools import lru_cache
from itertools import combinations, product
from typing import Iterator, List, Sequence, Tuple

import numpy as np

from .errors import InvalidInputError

logger = logging.getLogger(__name__)

# q -> bit mask of a monic irreducible polynomial over F_2
BINARY_MODULI = {4: 0b111, 8: 0b1011}


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % k for k in range(2, int(p ** 0.5) + 1))


def _binary_multiply(a: int, b: int, modulus: int, degree: int) -> int:
    result = 0
    while b:
        if b & 1:
            result ^= a
        b >>= 1
        a <<= 1
        if a >> degree:
            a ^= modulus
    return result


class FiniteField:
    """F_q with add/mul tables; vectors and matrices are int64 numpy arrays."""

    def __init__(self, q: int):
        self.q = q
        if _is_prime(q):
            self.char = q
            elems = np.arange(q)
            self.add_table = (elems[:, None] + elems[None, :]) % q
            self.mul_table = (elems[:, None] * elems[None, :]) % q
            self.additive_basis = [1]
        elif q in BINARY_MODULI:
            self.char = 2
            degree = q.bit_length() - 1
            elems = np.arange(q)
            self.add_table = elems[:, None] ^ elems[None, :]
            self.mul_table = np.array(
                [[_binary_multiply(a, b, BINARY_MODULI[q], degree) for b in range(q)] for a in range(q)]
            )
            self.additive_basis = [1 << k for k in range(degree)]
        else:
            raise InvalidInputError(
                f"Unsupported field size q={q}: use a prime or one of {sorted(BINARY_MODULI)}"
            )
        self.add_table = self.add_table.astype(np.int64)
        self.mul_table = self.mul_table.astype(np.int64)
        self.neg = np.array([int(np.nonzero(self.add_table[a] == 0)[0][0]) for a in range(q)], dtype=np.int64)
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.nonzero(self.mul_table[a] == 1)[0][0])
        self.inv = inv
        self.primitive = self._find_primitive()
        logger.debug(f"Built F_{q}: primitive element {self.primitive}, additive basis {self.additive_basis}")

    def _find_primitive(self) -> int:
        if self.q == 2:
            return 1
        for g in range(2, self.q):
            x, order = g, 1
            while x != 1:
                x = int(self.mul_table[x, g])
                order += 1
            if order == self.q - 1:
                return g
        raise InvalidInputError(f"No primitive element found in F_{self.q}")

    # --- elementwise ------------------------------------------------------

    def add(self, a, b):
        return self.add_table[a, b]

    def sub(self, a, b):
        return self.add_table[a, self.neg[b]]

    def mul(self, a, b):
        return self.mul_table[a, b]

    def power(self, a: int, k: int) -> int:
        result = 1
        for _ in range(k):
            result = int(self.mul_table[result, a])
        return result

    # --- linear algebra ---------------------------------------------------

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.char == self.q:
            return (A @ B) % self.q
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for k in range(A.shape[1]):
            out = self.add_table[out, self.mul_table[A[:, k][:, None], B[k, :][None, :]]]
        return out

    def rref(self, M: np.ndarray) -> Tuple[np.ndarray, Tuple[int, ...]]:
        """Reduced row echelon form without zero rows, plus pivot columns."""
        A = np.array(M, dtype=np.int64, copy=True)
        if A.ndim == 1:
            A = A.reshape(1, -1)
        rows, cols = A.shape
        pivots: List[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nonzero = np.nonzero(A[r:, c])[0]
            if nonzero.size == 0:
                continue
            p = r + int(nonzero[0])
            if p != r:
                A[[r, p]] = A[[p, r]]
            A[r] = self.mul_table[self.inv[A[r, c]], A[r]]
            factors = self.neg[A[:, c]]
            factors[r] = 0
            A = self.add_table[A, self.mul_table[factors[:, None], A[r][None, :]]]
            pivots.append(c)
            r += 1
        return A[:r], tuple(pivots)

    def reduce(self, X: np.ndarray, R: np.ndarray, pivots: Sequence[int]) -> np.ndarray:
        """Rows of X minus their projection on the row space of R (R in rref)."""
        X = np.asarray(X, dtype=np.int64)
        if X.ndim == 1:
            X = X.reshape(1, -1)
        if len(pivots) == 0:
            return X
        coeffs = X[:, list(pivots)]
        return self.sub(X, self.matmul(coeffs, R))

    def contains(self, R: np.ndarray, pivots: Sequence[int], X: np.ndarray) -> bool:
        """Every row of X lies in the row space of R."""
        X = np.asarray(X, dtype=np.int64)
        if X.size == 0:
            return True
        return not np.any(self.reduce(X, R, pivots))

    def nullspace(self, M: np.ndarray, width: int) -> np.ndarray:
        """Basis (as rows) of {x : M x = 0} in F_q^width."""
        M = np.asarray(M, dtype=np.int64).reshape(-1, width)
        R, pivots = self.rref(M) if M.shape[0] else (np.zeros((0, width), dtype=np.int64), ())
        free = [c for c in range(width) if c not in pivots]
        basis = np.zeros((len(free), width), dtype=np.int64)
        for row, f in enumerate(free):
            basis[row, f] = 1
            for k, p in enumerate(pivots):
                basis[row, p] = self.neg[R[k, f]]
        return basis

    def iter_subspaces(self, m: int, k: int) -> Iterator[np.ndarray]:
        """All k-dimensional subspaces of F_q^m, each as its k x m rref matrix."""
        if k < 0 or k > m:
            return
        for pivots in combinations(range(m), k):
            pivot_set = set(pivots)
            free = [(i, c) for i, p in enumerate(pivots) for c in range(p + 1, m) if c not in pivot_set]
            for values in product(range(self.q), repeat=len(free)):
                M = np.zeros((k, m), dtype=np.int64)
                for i, p in enumerate(pivots):
                    M[i, p] = 1
                for (i, c), value in zip(free, values):
                    M[i, c] = value
                yield M

    def gaussian_binomial(self, m: int, k: int) -> int:
        """Number of k-dimensional subspaces of F_q^m."""
        if k < 0 or k > m:
            return 0
        num, den = 1, 1
        for i in range(k):
            num *= self.q ** (m - i) - 1
            den *= self.q ** (i + 1) - 1
        return num // den


@lru_cache(maxsize=8)
def get_field(q: int) -> FiniteField:
    return FiniteField(q)
