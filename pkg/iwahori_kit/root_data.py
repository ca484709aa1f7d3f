"""
Root data of GL(d) and GSp(2d) in one ambient realization.

Coweights are integer vectors of length n (n = d for GL, n = 2d for GSp).
Indices are 0-based; the GSp involution is i -> n - 1 - i and every GSp
coweight satisfies lam[i] + lam[n - 1 - i] == c (the similitude).
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations_with_replacement
from math import ceil
from typing import Iterable, List, NewType, Optional, Sequence, Set, Tuple

from .errors import InvalidInputError

logger = logging.getLogger(__name__)

GL = "GL"
GSP = "GSp"
KINDS = (GL, GSP)

Coweight = NewType('Coweight', Tuple[int, ...])
Permutation = NewType('Permutation', Tuple[int, ...])
Root = Tuple[int, int]


def compose(w1: Permutation, w2: Permutation) -> Permutation:
    """(w1 w2)[i] = w1[w2[i]]"""
    return Permutation(tuple(w1[j] for j in w2))


def inverse(w: Permutation) -> Permutation:
    inv = [0] * len(w)
    for i, j in enumerate(w):
        inv[j] = i
    return Permutation(tuple(inv))


def act(w: Permutation, lam: Sequence[int]) -> Coweight:
    """Permute coordinates: act(w, lam)[w[i]] == lam[i]."""
    out = [0] * len(lam)
    for i, value in enumerate(lam):
        out[w[i]] = value
    return Coweight(tuple(out))


def _transposition(n: int, *pairs: Tuple[int, int]) -> Permutation:
    perm = list(range(n))
    for i, j in pairs:
        perm[i], perm[j] = perm[j], perm[i]
    return Permutation(tuple(perm))


@dataclass(frozen=True)
class RootDatum:
    """Корневые данные GL(d) или GSp(2d) в объемлющей реализации Z^n"""
    kind: str
    d: int
    n: int
    positive_roots: Tuple[Root, ...]
    simple_roots: Tuple[Root, ...]
    highest_root: Root = field(compare=False)

    def bar(self, i: int) -> int:
        return self.n - 1 - i

    def pairing(self, lam: Sequence[int], root: Root) -> int:
        i, j = root
        return lam[i] - lam[j]

    def coroot(self, root: Root) -> Coweight:
        i, j = root
        vec = [0] * self.n
        vec[i] += 1
        vec[j] -= 1
        if self.kind == GSP and j != self.bar(i):
            vec[self.bar(j)] += 1
            vec[self.bar(i)] -= 1
        return Coweight(tuple(vec))

    def reflection(self, root: Root) -> Permutation:
        i, j = root
        if self.kind == GL or j == self.bar(i):
            return _transposition(self.n, (i, j))
        return _transposition(self.n, (i, j), (self.bar(j), self.bar(i)))

    @cached_property
    def positive_coroots(self) -> Tuple[Coweight, ...]:
        return tuple(self.coroot(root) for root in self.positive_roots)

    @cached_property
    def weyl_generators(self) -> Tuple[Permutation, ...]:
        return tuple(self.reflection(root) for root in self.simple_roots)

    @cached_property
    def rho_twice_vector(self) -> Coweight:
        """2rho of the dual group: the sum of the positive coroots."""
        total = [0] * self.n
        for vec in self.positive_coroots:
            for i, value in enumerate(vec):
                total[i] += value
        return Coweight(tuple(total))

    def rho_twice(self, lam: Sequence[int]) -> int:
        return sum(self.pairing(lam, root) for root in self.positive_roots)

    def validate(self, lam: Sequence[int]) -> Coweight:
        """Check length, integrality and the GSp similitude constraint."""
        try:
            values = tuple(int(x) for x in lam)
        except (TypeError, ValueError) as e:
            raise InvalidInputError(f"Coweight must be a sequence of integers, got {lam!r}") from e
        if any(int(x) != x for x in lam):
            raise InvalidInputError(f"Coweight must have integer entries, got {lam!r}")
        if len(values) != self.n:
            raise InvalidInputError(
                f"Coweight {list(values)} has length {len(values)}, expected {self.n} for {self.name}"
            )
        if self.kind == GSP:
            sums = {values[i] + values[self.bar(i)] for i in range(self.d)}
            if len(sums) != 1:
                raise InvalidInputError(
                    f"Coweight {list(values)} violates the similitude constraint of {self.name}"
                )
        return Coweight(values)

    def central_coordinate(self, lam: Sequence[int]) -> int:
        if self.kind == GL:
            return sum(lam)
        return lam[0] + lam[self.n - 1]

    @property
    def name(self) -> str:
        return f"GL({self.d})" if self.kind == GL else f"GSp({2 * self.d})"

    @property
    def key(self) -> Tuple[str, int]:
        return (self.kind, self.d)

    @cached_property
    def weyl_group(self) -> Tuple[Permutation, ...]:
        identity = Permutation(tuple(range(self.n)))
        seen = {identity}
        frontier = [identity]
        while frontier:
            nxt = []
            for w in frontier:
                for s in self.weyl_generators:
                    sw = compose(s, w)
                    if sw not in seen:
                        seen.add(sw)
                        nxt.append(sw)
            frontier = nxt
        return tuple(sorted(seen, key=lambda w: (self.finite_length(w), w)))

    def finite_length(self, w: Permutation) -> int:
        winv = inverse(w)
        return sum(1 for i, j in self.positive_roots if winv[i] > winv[j])

    @cached_property
    def longest_element(self) -> Permutation:
        return max(self.weyl_group, key=lambda w: (self.finite_length(w), w))


def _gl_roots(d: int) -> Tuple[Tuple[Root, ...], Tuple[Root, ...]]:
    positive = tuple((i, j) for i in range(d) for j in range(i + 1, d))
    simple = tuple((i, i + 1) for i in range(d - 1))
    return positive, simple


def _gsp_roots(d: int) -> Tuple[Tuple[Root, ...], Tuple[Root, ...]]:
    n = 2 * d
    bar = lambda i: n - 1 - i  # noqa: E731
    positive = set()
    for i in range(n):
        for j in range(i + 1, n):
            positive.add(min((i, j), (bar(j), bar(i))))
    simple = tuple((i, i + 1) for i in range(d - 1)) + ((d - 1, d),)
    return tuple(sorted(positive)), simple


@lru_cache(maxsize=16)
def build_root_datum(kind: str, d: int) -> RootDatum:
    """
    Строит корневые данные для GL(d) или GSp(2d).

    Raises:
        InvalidInputError: неизвестная группа или d < 1
    """
    if kind not in KINDS:
        raise InvalidInputError(f"Unknown group {kind!r}, expected one of {', '.join(KINDS)}")
    if not isinstance(d, int) or d < 1:
        raise InvalidInputError(f"Rank parameter d must be a positive integer, got {d!r}")
    if kind == GL:
        positive, simple = _gl_roots(d)
        n = d
    else:
        positive, simple = _gsp_roots(d)
        n = 2 * d
    rd = RootDatum(kind=kind, d=d, n=n, positive_roots=positive,
                   simple_roots=simple, highest_root=(0, n - 1))
    logger.debug(f"Built root datum {rd.name}: {len(positive)} positive roots")
    return rd


def make_coweight(values: Sequence[int], rd: RootDatum, similitude: Optional[int] = None) -> Coweight:
    """Accept a full ambient vector, or for GSp the first d entries plus the similitude."""
    values = list(values)
    if rd.kind == GSP and len(values) == rd.d and rd.n != rd.d:
        if similitude is None:
            raise InvalidInputError(
                f"GSp coweight given by {rd.d} entries needs a similitude value"
            )
        values = values + [similitude - x for x in reversed(values)]
    return rd.validate(values)


def is_dominant(lam: Sequence[int], rd: RootDatum) -> bool:
    lam = rd.validate(lam)
    return all(rd.pairing(lam, root) >= 0 for root in rd.simple_roots)


def _require_dominant(lam: Sequence[int], rd: RootDatum) -> Coweight:
    lam = rd.validate(lam)
    if not is_dominant(lam, rd):
        raise InvalidInputError(f"Coweight {list(lam)} is not dominant for {rd.name}")
    return lam


def in_coroot_cone(delta: Sequence[int]) -> bool:
    """delta is a non-negative combination of simple coroots (prefix-sum test)."""
    running = 0
    for value in delta:
        running += value
        if running < 0:
            return False
    return running == 0


def dominance_leq(lam_prime: Sequence[int], lam: Sequence[int], rd: RootDatum) -> bool:
    """lam' <= lam iff lam - lam' is a non-negative sum of positive coroots."""
    lam_prime = _require_dominant(lam_prime, rd)
    lam = _require_dominant(lam, rd)
    return in_coroot_cone([a - b for a, b in zip(lam, lam_prime)])


def rho_pairing_twice(lam: Sequence[int], rd: RootDatum) -> int:
    """2<rho, lam>: dimension of the orbit attached to a dominant coweight."""
    lam = _require_dominant(lam, rd)
    return rd.rho_twice(lam)


def weyl_orbit(lam: Sequence[int], rd: RootDatum) -> Set[Coweight]:
    lam = rd.validate(lam)
    orbit = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for s in rd.weyl_generators:
                image = act(s, mu)
                if image not in orbit:
                    orbit.add(image)
                    nxt.append(image)
        frontier = nxt
    return orbit


def dominant_conjugate(lam: Sequence[int], rd: RootDatum) -> Coweight:
    lam = rd.validate(lam)
    if rd.kind == GL:
        return Coweight(tuple(sorted(lam, reverse=True)))
    c = rd.central_coordinate(lam)
    top = sorted((max(lam[i], lam[rd.bar(i)]) for i in range(rd.d)), reverse=True)
    return Coweight(tuple(top + [c - x for x in reversed(top)]))


def _check_bounds(n_minus: int, n_plus: int) -> None:
    if n_minus > 0 or n_plus <= 0:
        raise InvalidInputError(
            f"Bounds must satisfy n_minus <= 0 < n_plus, got n_minus={n_minus}, n_plus={n_plus}"
        )


def lambda_set(n_minus: int, n_plus: int, rd: RootDatum, r: Optional[int] = None) -> List[Coweight]:
    """
    Множество Λ(n±) (или Λ(r, n±) при заданном r) в порядке убывания.

    GL: n_plus >= lam_1 >= ... >= lam_d >= n_minus, optionally with sum r.
    GSp: n_plus >= lam_1 >= ... >= lam_d >= (n_plus + n_minus) / 2, completed
    to length 2d with similitude n_plus + n_minus.
    """
    _check_bounds(n_minus, n_plus)
    result: List[Coweight] = []
    if rd.kind == GL:
        values = range(n_plus, n_minus - 1, -1)
        for combo in combinations_with_replacement(values, rd.d):
            if r is None or sum(combo) == r:
                result.append(Coweight(tuple(combo)))
    else:
        if r is not None:
            raise InvalidInputError("The corank r is only defined for GL")
        c = n_plus + n_minus
        values = range(n_plus, ceil(c / 2) - 1, -1)
        for combo in combinations_with_replacement(values, rd.d):
            result.append(Coweight(tuple(combo) + tuple(c - x for x in reversed(combo))))
    return sorted(result, reverse=True)


def corank_range(n_minus: int, n_plus: int, rd: RootDatum) -> Iterable[int]:
    _check_bounds(n_minus, n_plus)
    return range(rd.d * n_minus, rd.d * n_plus + 1)
