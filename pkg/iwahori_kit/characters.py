"""
Characters of the dual group: weight multiplicities m_lam(mu), products of
characters, minuscule test and Lusztig's q-analogue of weight multiplicity.

The roots of the dual group are the coroots of G, written in the ambient
coordinates; the ambient Euclidean form is W_0-invariant in both
realizations and orthogonal to the central direction, so Freudenthal's
recursion runs directly on ambient vectors.
"""
import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Tuple

from .errors import InvalidInputError, VerificationError
from .laurent import LaurentScalar
from .root_data import (
    Coweight,
    RootDatum,
    act,
    dominance_leq,
    dominant_conjugate,
    in_coroot_cone,
    is_dominant,
    weyl_orbit,
)

logger = logging.getLogger(__name__)


def _dot(x: Iterable[int], y: Iterable[int]) -> int:
    return sum(a * b for a, b in zip(x, y))


def _add(x: Iterable[int], y: Iterable[int], k: int = 1) -> Coweight:
    return Coweight(tuple(a + k * b for a, b in zip(x, y)))


def _require_dominant(lam, rd: RootDatum) -> Coweight:
    lam = rd.validate(lam)
    if not is_dominant(lam, rd):
        raise InvalidInputError(f"Highest weight {list(lam)} is not dominant for {rd.name}")
    return lam


@dataclass(frozen=True)
class CharacterElement:
    """W_0-invariant function on coweights with finite support."""
    rd: RootDatum
    weights: Tuple[Tuple[Coweight, int], ...]

    @classmethod
    def from_mapping(cls, rd: RootDatum, weights: Mapping[Coweight, int]) -> "CharacterElement":
        return cls(rd, tuple(sorted(((mu, m) for mu, m in weights.items() if m), reverse=True)))

    def as_dict(self) -> Dict[Coweight, int]:
        return dict(self.weights)

    def multiplicity(self, mu) -> int:
        return self.as_dict().get(tuple(mu), 0)

    def dominant_part(self) -> Dict[Coweight, int]:
        return {mu: m for mu, m in self.weights if is_dominant(mu, self.rd)}

    def dimension(self) -> int:
        return sum(m for _, m in self.weights)

    def is_weyl_invariant(self) -> bool:
        table = self.as_dict()
        for mu, m in self.weights:
            for nu in weyl_orbit(mu, self.rd):
                if table.get(nu, 0) != m:
                    return False
        return True

    def __mul__(self, other: "CharacterElement") -> "CharacterElement":
        product: Dict[Coweight, int] = {}
        for mu, a in self.weights:
            for nu, b in other.weights:
                key = _add(mu, nu)
                product[key] = product.get(key, 0) + a * b
        return CharacterElement.from_mapping(self.rd, product)

    def to_json(self) -> List[Dict[str, object]]:
        return [{"weight": list(mu), "multiplicity": m} for mu, m in self.weights]


def weights_of(lam, rd: RootDatum) -> List[Coweight]:
    """All weights of V_lam: BFS from lam subtracting simple coroots."""
    lam = _require_dominant(lam, rd)
    simple = [rd.coroot(root) for root in rd.simple_roots]
    seen = {lam}
    queue = deque([lam])
    while queue:
        mu = queue.popleft()
        for alpha in simple:
            nu = _add(mu, alpha, -1)
            if nu in seen:
                continue
            if in_coroot_cone([a - b for a, b in zip(lam, dominant_conjugate(nu, rd))]):
                seen.add(nu)
                queue.append(nu)
    return sorted(seen, reverse=True)


def dominant_weights_below(lam, rd: RootDatum) -> List[Coweight]:
    """Dominant mu <= lam, lexicographically decreasing (a linear extension of dominance)."""
    return [mu for mu in weights_of(lam, rd) if is_dominant(mu, rd)]


@lru_cache(maxsize=256)
def _dominant_multiplicities(rd: RootDatum, lam: Coweight) -> Dict[Coweight, int]:
    """Freudenthal: (lam - mu, lam + mu + 2rho) m(mu) = 2 sum_{a>0} sum_{k>=1} (mu + k a, a) m(mu + k a)."""
    two_rho = rd.rho_twice_vector
    coroots = rd.positive_coroots
    dominant = dominant_weights_below(lam, rd)
    # height of lam - mu, so that every dominant conjugate of mu + k a comes first
    dominant.sort(key=lambda mu: sum(
        sum(a - b for a, b in zip(lam[:i + 1], mu[:i + 1])) for i in range(rd.n)))
    table: Dict[Coweight, int] = {lam: 1}

    def lookup(nu: Coweight) -> int:
        dom = dominant_conjugate(nu, rd)
        if not in_coroot_cone([a - b for a, b in zip(lam, dom)]):
            return 0
        return table[dom]

    for mu in dominant:
        if mu == lam:
            continue
        numerator = 0
        for alpha in coroots:
            k = 1
            while True:
                nu = _add(mu, alpha, k)
                m = lookup(nu)
                if m == 0:
                    break
                numerator += m * _dot(nu, alpha)
                k += 1
        numerator *= 2
        denominator = _dot([a - b for a, b in zip(lam, mu)], [a + b + c for a, b, c in zip(lam, mu, two_rho)])
        if denominator <= 0 or numerator % denominator:
            raise VerificationError(
                f"Freudenthal recursion is not integral at {list(mu)} for highest weight {list(lam)}"
            )
        table[mu] = numerator // denominator
    return table


def weight_multiplicity(lam, mu, rd: RootDatum) -> int:
    """m_lam(mu); a central-coordinate mismatch yields 0 with a warning."""
    lam = _require_dominant(lam, rd)
    mu = rd.validate(mu)
    if rd.central_coordinate(mu) != rd.central_coordinate(lam):
        logger.warning(
            f"Weight {list(mu)} has central coordinate {rd.central_coordinate(mu)}, "
            f"highest weight {list(lam)} has {rd.central_coordinate(lam)}: multiplicity 0"
        )
        return 0
    dom = dominant_conjugate(mu, rd)
    if not dominance_leq(dom, lam, rd):
        return 0
    return _dominant_multiplicities(rd, lam)[dom]


def character(lam, rd: RootDatum) -> CharacterElement:
    lam = _require_dominant(lam, rd)
    table = _dominant_multiplicities(rd, lam)
    weights: Dict[Coweight, int] = {}
    for mu, m in table.items():
        if m:
            for nu in weyl_orbit(mu, rd):
                weights[nu] = m
    return CharacterElement.from_mapping(rd, weights)


def decompose_product(lam, mu, rd: RootDatum) -> Dict[Coweight, int]:
    """chi_lam * chi_mu = sum_nu c_nu chi_nu; returns {nu: c_nu} by highest-weight extraction."""
    remaining = (character(lam, rd) * character(mu, rd)).as_dict()
    result: Dict[Coweight, int] = {}
    while remaining:
        top = max(nu for nu, c in remaining.items() if c and is_dominant(nu, rd))
        c = remaining[top]
        if c < 0:
            raise VerificationError(f"Negative coefficient {c} at {list(top)} while decomposing a product")
        result[top] = c
        for nu, m in character(top, rd).weights:
            value = remaining.get(nu, 0) - c * m
            if value:
                remaining[nu] = value
            else:
                remaining.pop(nu, None)
    return dict(sorted(result.items(), reverse=True))


def is_minuscule(lam, rd: RootDatum) -> bool:
    lam = _require_dominant(lam, rd)
    return all(abs(rd.pairing(lam, root)) <= 1 for root in rd.positive_roots)


def weyl_dimension(lam, rd: RootDatum) -> int:
    """dim V_lam = prod_{a>0} (lam + rho, a) / (rho, a)."""
    lam = _require_dominant(lam, rd)
    two_rho = rd.rho_twice_vector
    shifted = [2 * a + b for a, b in zip(lam, two_rho)]
    value = Fraction(1)
    for alpha in rd.positive_coroots:
        value *= Fraction(_dot(shifted, alpha), _dot(two_rho, alpha))
    if value.denominator != 1:
        raise VerificationError(f"Weyl dimension of {list(lam)} is not an integer: {value}")
    return int(value)


@lru_cache(maxsize=None)
def _kostant(rd: RootDatum, gamma: Coweight, start: int) -> Tuple[int, ...]:
    """q-Kostant partition function: coefficient list in q of prod_{a>0} 1/(1 - q e^a) at gamma."""
    coroots = rd.positive_coroots
    if start == len(coroots):
        return (1,) if not any(gamma) else ()
    alpha = coroots[start]
    total: List[int] = []
    k = 0
    current = gamma
    while in_coroot_cone(current):
        for power, c in enumerate(_kostant(rd, current, start + 1)):
            while len(total) <= power + k:
                total.append(0)
            total[power + k] += c
        k += 1
        current = _add(current, alpha, -1)
    return tuple(total)


def q_weight_multiplicity(lam, mu, rd: RootDatum) -> LaurentScalar:
    """
    Lusztig's q-analogue sum_w (-1)^l(w) P_q(w(lam + rho) - (mu + rho)), as a
    Laurent polynomial in v with q = v^2.
    """
    lam = _require_dominant(lam, rd)
    mu = _require_dominant(mu, rd)
    if not dominance_leq(mu, lam, rd):
        return LaurentScalar()
    two_rho = rd.rho_twice_vector
    coeffs: Dict[int, int] = {}
    for w in rd.weyl_group:
        sign = -1 if rd.finite_length(w) % 2 else 1
        w_lam = act(w, lam)
        w_rho = act(w, two_rho)
        gamma = Coweight(tuple(
            a - b + (c - e) // 2 for a, b, c, e in zip(w_lam, mu, w_rho, two_rho)
        ))
        for power, c in enumerate(_kostant(rd, gamma, 0)):
            if c:
                coeffs[2 * power] = coeffs.get(2 * power, 0) + sign * c
    return LaurentScalar(coeffs)
