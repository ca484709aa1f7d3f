"""Laurent polynomials in v with integer coefficients; q = v^2."""
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

Number = Union[int, "LaurentScalar"]


class LaurentScalar:
    """Immutable element of Z[v, v^-1], stored as exponent -> nonzero coefficient."""

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Optional[Mapping[int, int]] = None):
        self._coeffs: Dict[int, int] = {
            int(e): int(c) for e, c in (coeffs or {}).items() if c != 0
        }
        self._hash = None

    # --- constructors ---------------------------------------------------

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentScalar":
        return cls({exponent: coeff})

    @classmethod
    def from_int(cls, value: int) -> "LaurentScalar":
        return cls({0: value})

    @classmethod
    def q_power(cls, k: int) -> "LaurentScalar":
        return cls({2 * k: 1})

    @classmethod
    def from_pairs(cls, pairs: Iterable[Iterable[int]]) -> "LaurentScalar":
        coeffs: Dict[int, int] = {}
        for exponent, coeff in pairs:
            coeffs[exponent] = coeffs.get(exponent, 0) + coeff
        return cls(coeffs)

    @staticmethod
    def coerce(other: Number) -> "LaurentScalar":
        if isinstance(other, LaurentScalar):
            return other
        if isinstance(other, int):
            return LaurentScalar.from_int(other)
        raise TypeError(f"Cannot coerce {type(other).__name__} to LaurentScalar")

    # --- queries ----------------------------------------------------------

    def coefficient(self, exponent: int) -> int:
        return self._coeffs.get(exponent, 0)

    def items(self) -> List[Tuple[int, int]]:
        return sorted(self._coeffs.items())

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(self.items())

    def to_pairs(self) -> List[List[int]]:
        return [[e, c] for e, c in self.items()]

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def min_exponent(self) -> Optional[int]:
        return min(self._coeffs) if self._coeffs else None

    def max_exponent(self) -> Optional[int]:
        return max(self._coeffs) if self._coeffs else None

    def is_monomial(self) -> bool:
        return len(self._coeffs) == 1

    def at_one(self) -> int:
        """Specialization v -> 1."""
        return sum(self._coeffs.values())

    def evaluate_q(self, q: int) -> int:
        """Value at v = sqrt(q); only defined when all exponents are even and >= 0."""
        total = 0
        for e, c in self._coeffs.items():
            if e % 2 or e < 0:
                raise ValueError(f"Exponent v^{e} has no integer value at q={q}")
            total += c * q ** (e // 2)
        return total

    def shift(self, k: int) -> "LaurentScalar":
        """Multiply by v^k."""
        return LaurentScalar({e + k: c for e, c in self._coeffs.items()})

    # --- ring operations ------------------------------------------------

    def __add__(self, other: Number) -> "LaurentScalar":
        try:
            other = self.coerce(other)
        except TypeError:
            return NotImplemented
        coeffs = dict(self._coeffs)
        for e, c in other._coeffs.items():
            coeffs[e] = coeffs.get(e, 0) + c
        return LaurentScalar(coeffs)

    __radd__ = __add__

    def __neg__(self) -> "LaurentScalar":
        return LaurentScalar({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other: Number) -> "LaurentScalar":
        try:
            other = self.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Number) -> "LaurentScalar":
        return self.coerce(other) - self

    def __mul__(self, other: Number) -> "LaurentScalar":
        if isinstance(other, int):
            return LaurentScalar({e: c * other for e, c in self._coeffs.items()})
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        coeffs: Dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                coeffs[e1 + e2] = coeffs.get(e1 + e2, 0) + c1 * c2
        return LaurentScalar(coeffs)

    def __rmul__(self, other: Number) -> "LaurentScalar":
        return self.__mul__(other)

    def __pow__(self, k: int) -> "LaurentScalar":
        if k < 0:
            if not self.is_monomial():
                raise ValueError("Only monomials are invertible in Z[v, v^-1] up to sign")
            (e, c), = self._coeffs.items()
            if c not in (1, -1):
                raise ValueError(f"Monomial {self} is not a unit")
            return LaurentScalar({-e * -k: c ** -k})
        result = ONE
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentScalar.from_int(other)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._coeffs.items()))
        return self._hash

    # --- printing -------------------------------------------------------

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for e, c in sorted(self._coeffs.items(), reverse=True):
            if e == 0:
                mono = str(abs(c))
            else:
                power = "v" if e == 1 else f"v^{e}"
                mono = power if abs(c) == 1 else f"{abs(c)}*{power}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mono))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, mono in parts[1:]:
            text += f" {sign} {mono}"
        return text

    def __repr__(self) -> str:
        return f"LaurentScalar({dict(self.items())})"


ZERO = LaurentScalar()
ONE = LaurentScalar.from_int(1)
V = LaurentScalar.monomial(1)
Q = LaurentScalar.monomial(2)
Q_INV = LaurentScalar.monomial(-2)
