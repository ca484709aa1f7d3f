"""
Extended affine Weyl group W~ = X_* x| W_0 of GL(d) and GSp(2d).

An element (lam, w) acts on the ambient space by v -> lam + w.v; products
follow (lam1, w1)(lam2, w2) = (lam1 + w1.lam2, w1 w2). The base alcove lies in
the dominant chamber with the origin as a vertex, so lengths are given by the
Iwahori-Matsumoto formula and s_0 = t^{theta^vee} s_theta.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .errors import DatumMismatchError, InvalidInputError
from .root_data import (
    GL,
    Coweight,
    Permutation,
    RootDatum,
    act,
    build_root_datum,
    compose,
    dominance_leq,
    inverse,
    is_dominant,
    lambda_set,
    weyl_orbit,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class AffineWeylElement:
    """Элемент (translation, finite_part) расширенной аффинной группы Вейля"""
    translation: Coweight
    finite_part: Permutation
    datum: Tuple[str, int]

    def to_dict(self) -> Dict[str, list]:
        return {"translation": list(self.translation), "finite_part": list(self.finite_part)}


class AffineWeylGroup:
    """Arithmetic, lengths, reduced words and Bruhat order for one root datum."""

    def __init__(self, rd: RootDatum):
        self.rd = rd
        self.n = rd.n
        self.identity = self.element([0] * self.n, range(self.n))
        self._simple = self._build_simple_reflections()
        self._omega = self._find_omega_generator()
        logger.info(f"Affine Weyl group of {rd.name}: {len(self._simple)} simple reflections, "
                    f"omega = {self._omega.to_dict()}")

    # --- construction -------------------------------------------------

    def element(self, translation: Sequence[int], finite_part: Sequence[int]) -> AffineWeylElement:
        return AffineWeylElement(Coweight(tuple(translation)), Permutation(tuple(finite_part)), self.rd.key)

    def translation(self, lam: Sequence[int]) -> AffineWeylElement:
        lam = self.rd.validate(lam)
        return self.element(lam, range(self.n))

    def finite(self, w: Sequence[int]) -> AffineWeylElement:
        return self.element([0] * self.n, w)

    def finite_elements(self) -> List[AffineWeylElement]:
        return [self.finite(w) for w in self.rd.weyl_group]

    def check_datum(self, *elements: AffineWeylElement) -> None:
        for x in elements:
            if x.datum != self.rd.key:
                raise DatumMismatchError(
                    f"Element built for {x.datum} used with the group of {self.rd.name}"
                )

    # --- group law ------------------------------------------------------

    def multiply(self, x: AffineWeylElement, y: AffineWeylElement) -> AffineWeylElement:
        self.check_datum(x, y)
        moved = act(x.finite_part, y.translation)
        lam = tuple(a + b for a, b in zip(x.translation, moved))
        return AffineWeylElement(Coweight(lam), compose(x.finite_part, y.finite_part), x.datum)

    def invert(self, x: AffineWeylElement) -> AffineWeylElement:
        self.check_datum(x)
        winv = inverse(x.finite_part)
        lam = tuple(-a for a in act(winv, x.translation))
        return AffineWeylElement(Coweight(lam), winv, x.datum)

    def product(self, elements: Sequence[AffineWeylElement]) -> AffineWeylElement:
        result = self.identity
        for x in elements:
            result = self.multiply(result, x)
        return result

    @lru_cache(maxsize=None)
    def length(self, x: AffineWeylElement) -> int:
        self.check_datum(x)
        lam, winv = x.translation, inverse(x.finite_part)
        total = 0
        for i, j in self.rd.positive_roots:
            m = lam[i] - lam[j]
            total += abs(m) if winv[i] < winv[j] else abs(m - 1)
        return total

    # --- Coxeter structure ------------------------------------------------

    def _build_simple_reflections(self) -> Tuple[AffineWeylElement, ...]:
        rd = self.rd
        if rd.n < 2:
            return ()
        theta = rd.highest_root
        s0 = self.element(rd.coroot(theta), rd.reflection(theta))
        finite = [self.finite(rd.reflection(root)) for root in rd.simple_roots]
        return tuple([s0] + finite)

    def simple_reflections(self) -> Tuple[AffineWeylElement, ...]:
        """Index 0 is the affine reflection s_0, indices 1..r the finite ones."""
        return self._simple

    def _find_omega_generator(self) -> AffineWeylElement:
        rd = self.rd
        if rd.kind == GL:
            eps = [1] + [0] * (rd.n - 1)
        else:
            eps = [1] * rd.d + [0] * rd.d
        for w in rd.weyl_group:
            x = self.element(eps, w)
            if self.length(x) == 0:
                return x
        raise RuntimeError(f"No length-zero element found over {eps} for {rd.name}")

    def omega_generator(self) -> AffineWeylElement:
        return self._omega

    def omega_index(self, x: AffineWeylElement) -> int:
        """Image of x in Omega ~ Z: the coordinate sum (GL) or the similitude (GSp)."""
        self.check_datum(x)
        return self.rd.central_coordinate(x.translation)

    @lru_cache(maxsize=None)
    def omega_power(self, k: int) -> AffineWeylElement:
        if k == 0:
            return self.identity
        base = self._omega if k > 0 else self.invert(self._omega)
        result = self.identity
        for _ in range(abs(k)):
            result = self.multiply(result, base)
        return result

    def left_descents(self, x: AffineWeylElement) -> List[int]:
        lx = self.length(x)
        return [i for i, s in enumerate(self._simple) if self.length(self.multiply(s, x)) < lx]

    @lru_cache(maxsize=None)
    def reduced_word(self, x: AffineWeylElement) -> Tuple[Tuple[int, ...], AffineWeylElement]:
        """
        Lexicographically least reduced word.

        Returns (word, omega) with x = s_{word[0]} ... s_{word[-1]} * omega and
        length(omega) == 0.
        """
        word = []
        current = x
        while self.length(current) > 0:
            i = self.left_descents(current)[0]
            word.append(i)
            current = self.multiply(self._simple[i], current)
        return tuple(word), current

    def element_from_word(self, word: Sequence[int], omega: int) -> AffineWeylElement:
        letters = []
        for i in word:
            if not 0 <= i < len(self._simple):
                raise InvalidInputError(f"Simple reflection index {i} out of range for {self.rd.name}")
            letters.append(self._simple[i])
        return self.multiply(self.product(letters), self.omega_power(omega))

    # --- Bruhat order -------------------------------------------------

    def bruhat_leq(self, x: AffineWeylElement, y: AffineWeylElement) -> bool:
        self.check_datum(x, y)
        if self.omega_index(x) != self.omega_index(y):
            return False
        return self._bruhat_leq(x, y)

    @lru_cache(maxsize=None)
    def _bruhat_leq(self, x: AffineWeylElement, y: AffineWeylElement) -> bool:
        if x == y:
            return True
        lx, ly = self.length(x), self.length(y)
        if lx >= ly:
            return False
        s = self._simple[self.left_descents(y)[0]]
        sy = self.multiply(s, y)
        sx = self.multiply(s, x)
        if self.length(sx) < lx:
            return self._bruhat_leq(sx, sy)
        return self._bruhat_leq(x, sy)

    @lru_cache(maxsize=None)
    def lower_interval(self, x: AffineWeylElement) -> FrozenSet[AffineWeylElement]:
        """All y <= x, as products of subwords of one reduced word of x."""
        word, omega = self.reduced_word(x)
        below: Set[AffineWeylElement] = {self.identity}
        for i in word:
            s = self._simple[i]
            below |= {self.multiply(z, s) for z in below}
        return frozenset(self.multiply(z, omega) for z in below)

    def admissible_set(self, mu: Sequence[int]) -> FrozenSet[AffineWeylElement]:
        """Adm(mu) = {x : x <= t^{mu'} for some mu' in W_0 mu}."""
        mu = self._dominant(mu)
        result: Set[AffineWeylElement] = set()
        for mu_prime in weyl_orbit(mu, self.rd):
            result |= self.lower_interval(self.translation(mu_prime))
        logger.debug(f"Adm({list(mu)}) in {self.rd.name}: {len(result)} elements")
        return frozenset(result)

    def double_coset(self, mu: Sequence[int]) -> FrozenSet[AffineWeylElement]:
        """W_0 t^mu W_0."""
        t_mu = self.translation(self._dominant(mu))
        finite = self.finite_elements()
        return frozenset(
            self.multiply(self.multiply(u, t_mu), u_prime) for u in finite for u_prime in finite
        )

    def candidate_set(self, n_minus: int, n_plus: int, r: Optional[int] = None) -> FrozenSet[AffineWeylElement]:
        """
        Candidate for the I-orbit index set of the special fibre: Adm(lam_max),
        lam_max the dominance-largest element of Lambda(r, n+-).
        For GL with r=None the union over all coranks is returned.
        """
        rd = self.rd
        if rd.kind == GL and r is None:
            result: Set[AffineWeylElement] = set()
            for corank in range(rd.d * n_minus, rd.d * n_plus + 1):
                result |= self.candidate_set(n_minus, n_plus, corank)
            return frozenset(result)
        lambdas = lambda_set(n_minus, n_plus, rd, r)
        if not lambdas:
            raise InvalidInputError(f"Lambda(r={r}, n-={n_minus}, n+={n_plus}) is empty for {rd.name}")
        top = [lam for lam in lambdas if all(dominance_leq(other, lam, rd) for other in lambdas)]
        return self.admissible_set(top[0])

    def _dominant(self, mu: Sequence[int]) -> Coweight:
        mu = self.rd.validate(mu)
        if not is_dominant(mu, self.rd):
            raise InvalidInputError(f"Coweight {list(mu)} is not dominant for {self.rd.name}")
        return mu

    # --- output ---------------------------------------------------------

    def describe(self, x: AffineWeylElement) -> Dict[str, object]:
        word, omega = self.reduced_word(x)
        body = x.to_dict()
        body.update({"length": self.length(x), "word": list(word), "omega": self.omega_index(omega)})
        return body

    def sort_key(self, x: AffineWeylElement):
        return (self.length(x), x.translation, x.finite_part)


@lru_cache(maxsize=8)
def get_group(kind: str, d: int) -> AffineWeylGroup:
    """Shared AffineWeylGroup per (kind, d)."""
    return AffineWeylGroup(build_root_datum(kind, d))
