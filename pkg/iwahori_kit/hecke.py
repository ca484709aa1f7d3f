"""
Iwahori-Hecke algebra H(G//I) in the T-basis over Z[v, v^-1], q = v^2.

Multiplication uses the Iwahori-Matsumoto relations
    T_x T_s = T_xs                      if l(xs) > l(x)
            = q T_xs + (q - 1) T_x      otherwise
    T_x T_w = T_xw                      for w of length zero
and reduced words of the right factor.
"""
import logging
import threading
from collections import OrderedDict
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .affine_weyl import AffineWeylElement, AffineWeylGroup, get_group
from .config import get_settings
from .errors import DatumMismatchError, InvalidInputError
from .laurent import ONE, Q, Q_INV, ZERO, LaurentScalar

logger = logging.getLogger(__name__)

Terms = Dict[AffineWeylElement, LaurentScalar]
Scalar = Union[int, LaurentScalar]


def _accumulate(target: Terms, x: AffineWeylElement, coeff: LaurentScalar) -> None:
    total = target.get(x, ZERO) + coeff
    if total:
        target[x] = total
    else:
        target.pop(x, None)


class HeckeElement:
    """Finite sum of T_x with Laurent coefficients; never stores zero terms."""

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra: "HeckeAlgebra", terms: Optional[Mapping[AffineWeylElement, Scalar]] = None):
        self.algebra = algebra
        self._terms: Terms = {}
        for x, c in (terms or {}).items():
            c = LaurentScalar.coerce(c)
            if c:
                self._terms[x] = c

    @property
    def terms(self) -> Terms:
        return dict(self._terms)

    def items(self) -> List[Tuple[AffineWeylElement, LaurentScalar]]:
        return sorted(self._terms.items(), key=lambda item: self.algebra.W.sort_key(item[0]))

    def support(self) -> List[AffineWeylElement]:
        return [x for x, _ in self.items()]

    def coefficient(self, x: AffineWeylElement) -> LaurentScalar:
        return self._terms.get(x, ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def _same(self, other: "HeckeElement") -> None:
        if self.algebra.rd.key != other.algebra.rd.key:
            raise DatumMismatchError(
                f"Cannot combine elements of {self.algebra.rd.name} and {other.algebra.rd.name}"
            )

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        if not isinstance(other, HeckeElement):
            return NotImplemented
        self._same(other)
        terms = dict(self._terms)
        for x, c in other._terms.items():
            _accumulate(terms, x, c)
        return HeckeElement(self.algebra, terms)

    def __neg__(self) -> "HeckeElement":
        return HeckeElement(self.algebra, {x: -c for x, c in self._terms.items()})

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self + (-other)

    def scale(self, scalar: Scalar) -> "HeckeElement":
        scalar = LaurentScalar.coerce(scalar)
        return HeckeElement(self.algebra, {x: c * scalar for x, c in self._terms.items()})

    def __mul__(self, other: Union["HeckeElement", Scalar]) -> "HeckeElement":
        if isinstance(other, HeckeElement):
            return self.algebra.multiply(self, other)
        if isinstance(other, (int, LaurentScalar)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other: Scalar) -> "HeckeElement":
        if isinstance(other, (int, LaurentScalar)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.algebra.rd.key == other.algebra.rd.key and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.algebra.rd.key, frozenset(self._terms.items())))

    def specialize(self) -> Dict[AffineWeylElement, int]:
        """v -> 1: image in the group algebra of W~."""
        return self.algebra.specialize(self)

    def to_json(self) -> List[Dict[str, object]]:
        return self.algebra.to_json(self)

    def __repr__(self) -> str:
        parts = [f"({c})*T{list(self.algebra.W.reduced_word(x)[0])}w^{self.algebra.W.omega_index(x)}"
                 for x, c in self.items()]
        return " + ".join(parts) if parts else "0"


class BoundedProductCache:
    """LRU memo for basis products T_x T_y, safe for concurrent use."""

    def __init__(self, maxsize: int):
        self.maxsize = maxsize
        self._data: "OrderedDict[Tuple[AffineWeylElement, AffineWeylElement], Tuple]" = OrderedDict()
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, key):
        with self._lock:
            value = self._data.get(key)
            if value is None:
                self.misses += 1
                return None
            self._data.move_to_end(key)
            self.hits += 1
            return value

    def put(self, key, value) -> None:
        if self.maxsize == 0:
            return
        with self._lock:
            self._data[key] = value
            self._data.move_to_end(key)
            while len(self._data) > self.maxsize:
                self._data.popitem(last=False)

    def snapshot(self) -> List[Tuple]:
        with self._lock:
            return list(self._data.items())

    def __len__(self) -> int:
        with self._lock:
            return len(self._data)


class HeckeAlgebra:
    """H(G//I) for one root datum."""

    def __init__(self, W: AffineWeylGroup, cache_size: Optional[int] = None):
        self.W = W
        self.rd = W.rd
        if cache_size is None:
            cache_size = get_settings().product_cache_size
        self._products = BoundedProductCache(cache_size)

    # --- basis ----------------------------------------------------------

    def t_basis(self, w: AffineWeylElement) -> HeckeElement:
        self.W.check_datum(w)
        return HeckeElement(self, {w: ONE})

    def unit(self) -> HeckeElement:
        return self.t_basis(self.W.identity)

    def zero(self) -> HeckeElement:
        return HeckeElement(self)

    def sum(self, elements: Iterable[HeckeElement]) -> HeckeElement:
        terms: Terms = {}
        for a in elements:
            self._own(a)
            for x, c in a._terms.items():
                _accumulate(terms, x, c)
        return HeckeElement(self, terms)

    def _own(self, a: HeckeElement) -> None:
        if a.algebra.rd.key != self.rd.key:
            raise DatumMismatchError(f"Element of {a.algebra.rd.name} used in {self.rd.name}")

    def _simple_index(self, s: Union[int, AffineWeylElement]) -> int:
        simple = self.W.simple_reflections()
        if isinstance(s, int):
            if 0 <= s < len(simple):
                return s
            raise InvalidInputError(f"Simple reflection index {s} out of range for {self.rd.name}")
        if s in simple:
            return simple.index(s)
        raise InvalidInputError(f"{s.to_dict()} is not a simple reflection of {self.rd.name}")

    # --- one-letter steps -------------------------------------------------

    def _times_simple(self, x: AffineWeylElement, i: int) -> Terms:
        s = self.W.simple_reflections()[i]
        xs = self.W.multiply(x, s)
        if self.W.length(xs) > self.W.length(x):
            return {xs: ONE}
        return {xs: Q, x: Q - 1}

    def _simple_times(self, i: int, x: AffineWeylElement) -> Terms:
        s = self.W.simple_reflections()[i]
        sx = self.W.multiply(s, x)
        if self.W.length(sx) > self.W.length(x):
            return {sx: ONE}
        return {sx: Q, x: Q - 1}

    def right_multiply_simple(self, a: HeckeElement, s: Union[int, AffineWeylElement]) -> HeckeElement:
        i = self._simple_index(s)
        terms: Terms = {}
        for x, c in a._terms.items():
            for y, c2 in self._times_simple(x, i).items():
                _accumulate(terms, y, c * c2)
        return HeckeElement(self, terms)

    def left_multiply_simple(self, s: Union[int, AffineWeylElement], a: HeckeElement) -> HeckeElement:
        i = self._simple_index(s)
        terms: Terms = {}
        for x, c in a._terms.items():
            for y, c2 in self._simple_times(i, x).items():
                _accumulate(terms, y, c * c2)
        return HeckeElement(self, terms)

    def right_multiply_simple_inverse(self, a: HeckeElement, s: Union[int, AffineWeylElement]) -> HeckeElement:
        """a * T_s^-1 with T_s^-1 = q^-1 T_s - (1 - q^-1) T_e."""
        i = self._simple_index(s)
        simple = self.W.simple_reflections()[i]
        terms: Terms = {}
        for x, c in a._terms.items():
            xs = self.W.multiply(x, simple)
            if self.W.length(xs) < self.W.length(x):
                _accumulate(terms, xs, c)
            else:
                _accumulate(terms, xs, c * Q_INV)
                _accumulate(terms, x, c * (Q_INV - 1))
        return HeckeElement(self, terms)

    def right_multiply_omega(self, a: HeckeElement, k: int = 1) -> HeckeElement:
        omega = self.W.omega_power(k)
        return HeckeElement(self, {self.W.multiply(x, omega): c for x, c in a._terms.items()})

    def left_multiply_omega(self, k: int, a: HeckeElement) -> HeckeElement:
        omega = self.W.omega_power(k)
        return HeckeElement(self, {self.W.multiply(omega, x): c for x, c in a._terms.items()})

    def right_multiply_inverse(self, a: HeckeElement, w: AffineWeylElement) -> HeckeElement:
        """a * T_w^-1, using T_w^-1 = T_omega^-1 T_{s_m}^-1 ... T_{s_1}^-1."""
        word, omega = self.W.reduced_word(w)
        result = self.right_multiply_omega(a, -self.W.omega_index(omega))
        for i in reversed(word):
            result = self.right_multiply_simple_inverse(result, i)
        return result

    # --- products -------------------------------------------------------

    def basis_product(self, x: AffineWeylElement, y: AffineWeylElement) -> Terms:
        """T_x T_y in the T-basis, memoized."""
        key = (x, y)
        cached = self._products.get(key)
        if cached is not None:
            return dict(cached)
        if self.W.length(y) == 0:
            result = {self.W.multiply(x, y): ONE}
        else:
            word, _ = self.W.reduced_word(y)
            first = word[0]
            rest = self.W.multiply(self.W.simple_reflections()[first], y)
            result: Terms = {}
            for z, c in self._times_simple(x, first).items():
                for w, c2 in self.basis_product(z, rest).items():
                    _accumulate(result, w, c * c2)
        self._products.put(key, tuple(result.items()))
        return result

    def multiply(self, a: HeckeElement, b: HeckeElement) -> HeckeElement:
        self._own(a)
        self._own(b)
        terms: Terms = {}
        for y, cb in b._terms.items():
            for x, ca in a._terms.items():
                coeff = ca * cb
                for z, c in self.basis_product(x, y).items():
                    _accumulate(terms, z, coeff * c)
        return HeckeElement(self, terms)

    def invert_simple(self, s: Union[int, AffineWeylElement]) -> HeckeElement:
        i = self._simple_index(s)
        simple = self.W.simple_reflections()[i]
        return HeckeElement(self, {simple: Q_INV, self.W.identity: Q_INV - 1})

    def invert_t(self, w: AffineWeylElement) -> HeckeElement:
        return self.right_multiply_inverse(self.unit(), w)

    def is_central(self, a: HeckeElement) -> bool:
        """Commutes with every affine simple T_s and with T_omega."""
        self._own(a)
        for i in range(len(self.W.simple_reflections())):
            if self.right_multiply_simple(a, i) != self.left_multiply_simple(i, a):
                logger.debug(f"Element fails to commute with T_s{i}")
                return False
        return self.right_multiply_omega(a, 1) == self.left_multiply_omega(1, a)

    # --- specialization v -> 1 ---------------------------------------------

    def specialize(self, a: HeckeElement) -> Dict[AffineWeylElement, int]:
        self._own(a)
        out = {}
        for x, c in a._terms.items():
            value = c.at_one()
            if value:
                out[x] = value
        return out

    def group_algebra_multiply(self, f: Mapping[AffineWeylElement, int],
                               g: Mapping[AffineWeylElement, int]) -> Dict[AffineWeylElement, int]:
        out: Dict[AffineWeylElement, int] = {}
        for x, a in f.items():
            for y, b in g.items():
                xy = self.W.multiply(x, y)
                out[xy] = out.get(xy, 0) + a * b
        return {x: c for x, c in out.items() if c}

    # --- serialization --------------------------------------------------

    def element_key(self, x: AffineWeylElement) -> Tuple[List[int], int]:
        word, omega = self.W.reduced_word(x)
        return list(word), self.W.omega_index(omega)

    def to_json(self, a: HeckeElement) -> List[Dict[str, object]]:
        """Canonical form: [{word, omega, coeffs}] sorted by (word, omega)."""
        self._own(a)
        rows = []
        for x, c in a._terms.items():
            word, omega = self.element_key(x)
            rows.append({"word": word, "omega": omega, "coeffs": c.to_pairs()})
        rows.sort(key=lambda row: (row["word"], row["omega"]))
        return rows

    def from_json(self, rows: Sequence[Mapping[str, object]]) -> HeckeElement:
        terms: Terms = {}
        try:
            for row in rows:
                x = self.W.element_from_word(row["word"], int(row["omega"]))
                _accumulate(terms, x, LaurentScalar.from_pairs(row["coeffs"]))
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidInputError(f"Malformed Hecke element JSON: {e}") from e
        return HeckeElement(self, terms)

    def export_products(self) -> List[Dict[str, object]]:
        entries = []
        for (x, y), value in self._products.snapshot():
            entries.append({
                "x": self.element_key(x),
                "y": self.element_key(y),
                "value": self.to_json(HeckeElement(self, dict(value))),
            })
        return entries

    def import_products(self, entries: Sequence[Mapping[str, object]]) -> int:
        loaded = 0
        for entry in entries:
            x = self.W.element_from_word(*entry["x"])
            y = self.W.element_from_word(*entry["y"])
            value = self.from_json(entry["value"])
            self._products.put((x, y), tuple(value._terms.items()))
            loaded += 1
        return loaded

    @property
    def product_cache(self) -> BoundedProductCache:
        return self._products


@lru_cache(maxsize=8)
def get_algebra(kind: str, d: int) -> HeckeAlgebra:
    """Shared HeckeAlgebra per (kind, d)."""
    logger.info(f"Initializing Hecke algebra for ({kind}, {d})")
    return HeckeAlgebra(get_group(kind, d))
