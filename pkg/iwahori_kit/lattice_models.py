"""
Brute-force F_q-points of the lattice models over the special fibre.

Over the residue field the uniformizer acts as t, so every lattice in play
sits in the finite space

    Vbar = t^{n_- - 1} O^n / t^{n_+} O^n,   O = F_q[t],

with basis t^m e_j (n_- - 1 <= m <= n_+ - 1, 0 <= j < n). The standard chain
is V_i = t^{-1}(e_0..e_{i-1}) + (e_i..e_{n-1}); a lattice squeezed between
t^{n_+} V_i and t^{n_-} V_i is recorded as its image in Vbar, a t-stable
subspace in canonical reduced row echelon form.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from .affine_weyl import AffineWeylElement, get_group
from .config import get_settings
from .errors import BudgetExceededError, InvalidInputError, VerificationError
from .finite_field import FiniteField, get_field
from .root_data import GL, GSP, KINDS, RootDatum, build_root_datum, corank_range, dominant_conjugate, lambda_set

logger = logging.getLogger(__name__)

MODEL_M = "M"
MODEL_GRASS = "Grass"
MODEL_N = "N"
MODELS = (MODEL_M, MODEL_GRASS, MODEL_N)

Submodule = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class LatticeModelParams:
    """Параметры перечисления: группа, границы n±, поле F_q, модель и (для GL) коранг r"""
    kind: str
    d: int
    n_minus: int
    n_plus: int
    q: int
    model: str = MODEL_M
    r: Optional[int] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidInputError(f"Unknown group {self.kind!r}, expected one of {', '.join(KINDS)}")
        if not isinstance(self.d, int) or self.d < 1:
            raise InvalidInputError(f"Rank parameter d must be a positive integer, got {self.d!r}")
        if self.n_minus > 0 or self.n_plus <= 0:
            raise InvalidInputError(
                f"Bounds must satisfy n_minus <= 0 < n_plus, got n_minus={self.n_minus}, n_plus={self.n_plus}"
            )
        if self.model not in MODELS:
            raise InvalidInputError(f"Unknown model {self.model!r}, expected one of {', '.join(MODELS)}")
        if self.r is not None:
            if self.kind != GL:
                raise InvalidInputError("The corank r is only defined for GL")
            if not self.d * self.n_minus <= self.r <= self.d * self.n_plus:
                raise InvalidInputError(
                    f"Corank r={self.r} outside [{self.d * self.n_minus}, {self.d * self.n_plus}]"
                )
        get_field(self.q)

    @property
    def rd(self) -> RootDatum:
        return build_root_datum(self.kind, self.d)

    @property
    def width(self) -> int:
        return self.n_plus - self.n_minus

    def with_r(self, r: Optional[int]) -> "LatticeModelParams":
        return LatticeModelParams(self.kind, self.d, self.n_minus, self.n_plus, self.q, self.model, r)

    def to_dict(self) -> Dict[str, object]:
        return {
            "group": self.kind,
            "d": self.d,
            "n_minus": self.n_minus,
            "n_plus": self.n_plus,
            "q": self.q,
            "model": self.model,
            "r": self.r,
        }


@dataclass(frozen=True, order=True)
class LatticeChain:
    """Точка модели: цепочка подмодулей в каноническом виде, с меткой коранга для GL"""
    modules: Tuple[Submodule, ...]
    r: Optional[int] = field(default=None)

    def dims(self) -> List[int]:
        return [len(m) for m in self.modules]

    def to_json(self) -> Dict[str, object]:
        return {"r": self.r, "modules": [[list(row) for row in m] for m in self.modules]}


class _Module(NamedTuple):
    key: Submodule
    rows: np.ndarray
    pivots: Tuple[int, ...]


class LatticeSpace:
    """Vbar with its t-action, the standard chain, the symplectic forms and the group generators."""

    def __init__(self, p: LatticeModelParams):
        self.p = p
        self.rd = p.rd
        self.n = self.rd.n
        self.field: FiniteField = get_field(p.q)
        self.low = p.n_minus - 1
        self.levels = p.width + 1
        self.dim = self.levels * self.n
        t = np.zeros((self.dim, self.dim), dtype=np.int64)
        for m in range(self.low, p.n_plus - 1):
            for j in range(self.n):
                t[self.position(m + 1, j), self.position(m, j)] = 1
        self.t = t
        self._modules: Dict[Submodule, _Module] = {}

    def position(self, m: int, j: int) -> int:
        return (m - self.low) * self.n + j

    def coordinates(self, s: int, i: int) -> List[int]:
        """Positions spanning the image of t^s V_i."""
        return [
            self.position(m, j)
            for m in range(self.low, self.p.n_plus)
            for j in range(self.n)
            if m >= (s - 1 if j < i else s)
        ]

    def lower(self, i: int) -> List[int]:
        return self.coordinates(self.p.n_plus, i)

    def upper(self, i: int) -> List[int]:
        return self.coordinates(self.p.n_minus, i)

    # --- submodules -------------------------------------------------------

    def span(self, rows: np.ndarray) -> _Module:
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.dim)
        R, pivots = self.field.rref(rows)
        key = tuple(tuple(row) for row in R.tolist())
        module = _Module(key, R, pivots)
        self._modules.setdefault(key, module)
        return module

    def module(self, key: Submodule) -> _Module:
        if key not in self._modules:
            rows = np.array(key, dtype=np.int64).reshape(len(key), self.dim)
            pivots = tuple(int(np.nonzero(row)[0][0]) for row in rows)
            self._modules[key] = _Module(key, rows, pivots)
        return self._modules[key]

    def shift_up(self, rows: np.ndarray) -> np.ndarray:
        return rows @ self.t.T

    def shift_down(self, rows: np.ndarray) -> np.ndarray:
        return rows @ self.t

    def includes(self, big: _Module, small: _Module) -> bool:
        return self.field.contains(big.rows, big.pivots, small.rows)

    def is_t_stable(self, module: _Module) -> bool:
        return self.field.contains(module.rows, module.pivots, self.shift_up(module.rows))

    # --- symplectic forms -------------------------------------------------

    def form_level(self, level: int) -> int:
        """Exponent of t whose coefficient is the form b_level on Vbar (level 0 or d)."""
        return self.p.n_minus + self.p.n_plus - (1 if level == 0 else 2)

    @lru_cache(maxsize=4)
    def gram(self, level: int) -> np.ndarray:
        if self.rd.kind != GSP:
            raise InvalidInputError("Symplectic forms exist only for GSp")
        top = self.form_level(level)
        minus_one = int(self.field.neg[1])
        G = np.zeros((self.dim, self.dim), dtype=np.int64)
        for m in range(self.low, self.p.n_plus):
            partner = top - m
            if not self.low <= partner < self.p.n_plus:
                continue
            for i in range(self.n):
                G[self.position(m, i), self.position(partner, self.rd.bar(i))] = 1 if i < self.rd.d else minus_one
        return G

    def is_isotropic(self, module: _Module, level: int) -> bool:
        if not len(module.key):
            return True
        G = self.gram(level)
        return not np.any(self.field.matmul(self.field.matmul(module.rows, G), module.rows.T))

    def perp(self, module: _Module, level: int) -> _Module:
        """Orthogonal of the module for b_level inside the image of t^{n_-} V_level."""
        ambient = self.upper(level)
        if len(module.key):
            conditions = self.field.matmul(module.rows, self.gram(level).T)[:, ambient]
        else:
            conditions = np.zeros((0, len(ambient)), dtype=np.int64)
        null = self.field.nullspace(conditions, len(ambient))
        rows = np.zeros((null.shape[0], self.dim), dtype=np.int64)
        rows[:, ambient] = null
        return self.span(rows)

    # --- subspaces between the bounds ---------------------------------------

    def level_modules(self, i: int, dim: int, isotropic_level: Optional[int] = None) -> List[_Module]:
        """t-stable subspaces of dimension dim between the images of t^{n_+} V_i and t^{n_-} V_i."""
        lower = self.lower(i)
        lower_set = set(lower)
        free = [c for c in self.upper(i) if c not in lower_set]
        k = dim - len(lower)
        modules = []
        subspaces = self.field.iter_subspaces(len(free), k)
        total = self.field.gaussian_binomial(len(free), k)
        for W in tqdm(subspaces, total=total, desc=f"level {i}", disable=not get_settings().progress):
            rows = np.zeros((dim, self.dim), dtype=np.int64)
            rows[:k, free] = W
            for row, c in enumerate(lower):
                rows[k + row, c] = 1
            module = self.span(rows)
            if not self.is_t_stable(module):
                continue
            if isotropic_level is not None and not self.is_isotropic(module, isotropic_level):
                continue
            modules.append(module)
        logger.debug(f"Level {i}, dim {dim}: {len(modules)} of {total} subspaces are admissible")
        return modules

    def level_estimate(self, i: int, dim: int) -> int:
        lower = self.lower(i)
        return self.field.gaussian_binomial(len(self.upper(i)) - len(lower), dim - len(lower))

    # --- group action -------------------------------------------------------

    def polynomial_matrix(self, entries: Dict[Tuple[int, int], Sequence[Tuple[int, int]]]) -> np.ndarray:
        """
        Matrix on Vbar of the O-matrix whose (k, j) entry is sum a t^s over the
        given (s, a) pairs; unlisted diagonal entries are 1, the rest 0.
        """
        F = self.field
        full = {(j, j): [(0, 1)] for j in range(self.n)}
        full.update(entries)
        g = np.zeros((self.dim, self.dim), dtype=np.int64)
        for (k, j), poly in full.items():
            for s, a in poly:
                for m in range(self.low, self.p.n_plus - s):
                    row, col = self.position(m + s, k), self.position(m, j)
                    g[row, col] = F.add_table[g[row, col], a]
        return g

    def _unit_series(self, s: int, a: int) -> Tuple[List[Tuple[int, int]], List[Tuple[int, int]]]:
        """1 + a t^s and its inverse, truncated past the top level of Vbar."""
        F = self.field
        minus_a = int(F.neg[a])
        inverse = [(s * k, F.power(minus_a, k)) for k in range(self.levels // s + 1)]
        return [(0, 1), (s, a)], inverse

    def generators(self, iwahori: bool = True) -> List[np.ndarray]:
        """
        Generators of the image in Aut(Vbar) of the Iwahori subgroup
        (lower-triangular entries divisible by t) or, with iwahori=False, of
        the hyperspecial subgroup G(O).
        """
        F = self.field
        n, top = self.n, self.p.width
        primitive = F.primitive
        entries: List[Dict[Tuple[int, int], List[Tuple[int, int]]]] = []

        def lowest(k: int, j: int) -> int:
            return 1 if iwahori and k > j else 0

        if self.rd.kind == GL:
            for j in range(n):
                if F.q > 2:
                    entries.append({(j, j): [(0, primitive)]})
                for s in range(1, top + 1):
                    for a in F.additive_basis:
                        entries.append({(j, j): self._unit_series(s, a)[0]})
            for k in range(n):
                for j in range(n):
                    if k == j:
                        continue
                    for s in range(lowest(k, j), top + 1):
                        for a in F.additive_basis:
                            entries.append({(k, j): [(s, a)]})
        else:
            d, bar = self.rd.d, self.rd.bar
            if F.q > 2:
                inv_primitive = int(F.inv[primitive])
                for i in range(d):
                    entries.append({(i, i): [(0, primitive)], (bar(i), bar(i)): [(0, inv_primitive)]})
                entries.append({(j, j): [(0, primitive)] for j in range(d, n)})
            for s in range(1, top + 1):
                for a in F.additive_basis:
                    unit, unit_inverse = self._unit_series(s, a)
                    for i in range(d):
                        entries.append({(i, i): unit, (bar(i), bar(i)): unit_inverse})
                    entries.append({(j, j): unit for j in range(d, n)})
            for i in range(n):
                for s in range(lowest(i, bar(i)), top + 1):
                    for a in F.additive_basis:
                        entries.append({(i, bar(i)): [(s, a)]})
            for i in range(n):
                for j in range(n):
                    if j in (i, bar(i)) or (i, j) > (bar(j), bar(i)):
                        continue
                    same_sign = (i < d) == (j < d)
                    for s in range(lowest(i, j), top + 1):
                        for a in F.additive_basis:
                            partner = int(F.neg[a]) if same_sign else a
                            entries.append({(i, j): [(s, a)], (bar(j), bar(i)): [(s, partner)]})
        return [self.polynomial_matrix(e) for e in entries]

    def act(self, g: np.ndarray, chain: LatticeChain) -> LatticeChain:
        images = []
        for key in chain.modules:
            module = self.module(key)
            images.append(self.span(self.field.matmul(module.rows, g.T)).key if key else key)
        return LatticeChain(tuple(images), chain.r)


@lru_cache(maxsize=16)
def lattice_space(p: LatticeModelParams) -> LatticeSpace:
    return LatticeSpace(p)


# --- enumeration --------------------------------------------------------------

def _walk(levels: Sequence[Sequence[_Module]], space: LatticeSpace,
          close: Callable[[Tuple[_Module, ...]], bool],
          prefix: Tuple[_Module, ...] = ()) -> Iterator[Tuple[_Module, ...]]:
    """Backtracking over increasing chains, one module per level."""
    i = len(prefix)
    if i == len(levels):
        if close(prefix):
            yield prefix
        return
    for module in levels[i]:
        if not prefix or space.includes(module, prefix[-1]):
            yield from _walk(levels, space, close, prefix + (module,))


def _gl_dims(p: LatticeModelParams, r: int) -> List[int]:
    return [p.n_plus * p.d - r + i for i in range(p.d)]


def _gsp_dims(p: LatticeModelParams) -> List[int]:
    return [p.width * p.d + i for i in range(p.d + 1)]


def _coranks(p: LatticeModelParams) -> List[int]:
    return [p.r] if p.r is not None else list(corank_range(p.n_minus, p.n_plus, p.rd))


def estimate_candidates(p: LatticeModelParams) -> int:
    """Number of subspaces inspected before the t-stability filter."""
    space = lattice_space(p)
    if p.model == MODEL_GRASS:
        if p.kind == GL:
            return sum(space.level_estimate(0, k) for k in range(p.width * p.d + 1))
        return space.level_estimate(0, p.width * p.d)
    if p.kind == GL:
        return sum(space.level_estimate(i, k) for r in _coranks(p) for i, k in enumerate(_gl_dims(p, r)))
    return sum(space.level_estimate(i, k) for i, k in enumerate(_gsp_dims(p)))


def _gl_chains(space: LatticeSpace, p: LatticeModelParams, r: int) -> List[LatticeChain]:
    levels = [space.level_modules(i, k) for i, k in enumerate(_gl_dims(p, r))]

    def periodic(chain: Tuple[_Module, ...]) -> bool:
        return space.field.contains(chain[0].rows, chain[0].pivots, space.shift_up(chain[-1].rows))

    return [LatticeChain(tuple(m.key for m in chain), r) for chain in _walk(levels, space, periodic)]


def _gsp_chains(space: LatticeSpace, p: LatticeModelParams) -> List[LatticeChain]:
    dims = _gsp_dims(p)
    levels = []
    for i, k in enumerate(dims):
        isotropic = i if i in (0, p.d) else None
        levels.append(space.level_modules(i, k, isotropic_level=isotropic))
    return [LatticeChain(tuple(m.key for m in chain)) for chain in _walk(levels, space, lambda chain: True)]


def _grass_points(space: LatticeSpace, p: LatticeModelParams) -> List[LatticeChain]:
    if p.kind == GL:
        modules = [m for k in range(p.width * p.d + 1) for m in space.level_modules(0, k)]
    else:
        modules = space.level_modules(0, p.width * p.d, isotropic_level=0)
    return [LatticeChain((m.key,)) for m in modules]


def enumerate_points(p: LatticeModelParams, budget: Optional[int] = None) -> List[LatticeChain]:
    """
    Все F_q-точки модели p.model.

    M: periodic lattice chains squeezed between t^{n_+} V_i and t^{n_-} V_i,
    with fixed corank (GL, or the union over coranks when r is None), or
    autodual chains (GSp).
    Grass: single t-stable lattices (GL) or Lagrangian ones (GSp).
    N: over the residue field the same set as M with r free, each point
    tagged with its corank.

    Raises:
        BudgetExceededError: если оценка перебора больше бюджета
    """
    budget = get_settings().budget if budget is None else budget
    estimate = estimate_candidates(p)
    if estimate > budget:
        raise BudgetExceededError(estimate, budget)
    logger.info(f"Enumerating {p.model} for {p.rd.name}, n=({p.n_minus},{p.n_plus}), q={p.q}: "
                f"{estimate} candidate subspaces")
    space = lattice_space(p)
    if p.model == MODEL_GRASS:
        points = _grass_points(space, p)
    elif p.kind == GL:
        points = [chain for r in _coranks(p) for chain in _gl_chains(space, p, r)]
    else:
        points = _gsp_chains(space, p)
    points.sort()
    logger.info(f"Found {len(points)} points")
    return points


# --- orbits -------------------------------------------------------------------

def stratify(points: Iterable[LatticeChain], p: LatticeModelParams) -> List[FrozenSet[LatticeChain]]:
    """Partition into orbits of the Iwahori group (M, N) or of G(O) (Grass), by closure under generators."""
    space = lattice_space(p)
    generators = space.generators(iwahori=p.model != MODEL_GRASS)
    points = sorted(points)
    remaining = set(points)
    orbits: List[FrozenSet[LatticeChain]] = []
    for start in tqdm(points, desc="orbits", disable=not get_settings().progress):
        if start not in remaining:
            continue
        orbit = {start}
        frontier = [start]
        while frontier:
            chain = frontier.pop()
            for g in generators:
                image = space.act(g, chain)
                if image not in orbit:
                    orbit.add(image)
                    frontier.append(image)
        if not orbit <= remaining:
            raise VerificationError(
                f"Orbit of {start.to_json()} leaves the enumerated point set ({len(orbit - remaining)} strays)"
            )
        remaining -= orbit
        orbits.append(frozenset(orbit))
    orbits.sort(key=lambda o: (len(o), min(o)))
    logger.info(f"{len(points)} points split into {len(orbits)} orbits")
    return orbits


def predicted_count(wset: Iterable[AffineWeylElement], q: int) -> int:
    """sum_{w in wset} q^{l(w)}: number of points of the union of the strata I w I / I."""
    return sum(q ** get_group(*w.datum).length(w) for w in wset)


def weyl_poincare_value(rd: RootDatum, q: int) -> int:
    return sum(q ** rd.finite_length(w) for w in rd.weyl_group)


def grass_orbit_size(t_lam: AffineWeylElement, q: int) -> int:
    """|K t^lam K / K| = sum over W_0 t^lam W_0 of q^{l(x)}, divided by P_{W_0}(q)."""
    W = get_group(*t_lam.datum)
    total = predicted_count(W.double_coset(dominant_conjugate(t_lam.translation, W.rd)), q)
    poincare = weyl_poincare_value(W.rd, q)
    if total % poincare:
        raise VerificationError(f"Double coset of {list(t_lam.translation)} is not a union of K/I cosets")
    return total // poincare


def candidate_for(p: LatticeModelParams) -> FrozenSet[AffineWeylElement]:
    """Default candidate index set: Adm(lam_max) for M/N, the translations t^lam, lam in Lambda(n±), for Grass."""
    W = get_group(p.kind, p.d)
    if p.model == MODEL_GRASS:
        return frozenset(W.translation(lam) for lam in lambda_set(p.n_minus, p.n_plus, p.rd))
    return W.candidate_set(p.n_minus, p.n_plus, p.r if p.kind == GL else None)


def expected_orbit_sizes(candidate: Iterable[AffineWeylElement], p: LatticeModelParams) -> List[int]:
    if p.model == MODEL_GRASS:
        return sorted(grass_orbit_size(x, p.q) for x in candidate)
    return sorted(p.q ** get_group(*x.datum).length(x) for x in candidate)


@dataclass
class StrataReport:
    """Сравнение орбит с кандидатом: размеры орбит против q^{l(w)}"""
    params: LatticeModelParams
    total: int
    orbit_sizes: List[int]
    expected_sizes: List[int]
    candidate_size: int

    @property
    def predicted(self) -> int:
        return sum(self.expected_sizes)

    @property
    def verdict(self) -> str:
        return "match" if self.orbit_sizes == self.expected_sizes else "mismatch"

    def to_json(self) -> Dict[str, object]:
        return {
            "parameters": self.params.to_dict(),
            "total": self.total,
            "orbits": len(self.orbit_sizes),
            "orbit_sizes": self.orbit_sizes,
            "expected_sizes": self.expected_sizes,
            "candidate_size": self.candidate_size,
            "predicted_count": self.predicted,
            "verdict": self.verdict,
        }


def match_strata(points: Sequence[LatticeChain], p: LatticeModelParams,
                 candidate: Optional[Iterable[AffineWeylElement]] = None) -> StrataReport:
    candidate = list(candidate_for(p) if candidate is None else candidate)
    orbits = stratify(points, p)
    report = StrataReport(
        params=p,
        total=len(points),
        orbit_sizes=sorted(len(o) for o in orbits),
        expected_sizes=expected_orbit_sizes(candidate, p),
        candidate_size=len(candidate),
    )
    logger.info(f"Strata for {p.model} {p.rd.name}: {report.orbit_sizes} vs {report.expected_sizes} -> {report.verdict}")
    return report


# --- duality and fibres ---------------------------------------------------------

def _require_gsp(p: LatticeModelParams) -> None:
    if p.kind != GSP:
        raise InvalidInputError("Duality is only defined for GSp lattice models")


def dual(module: Submodule, p: LatticeModelParams, level: int = 0) -> Submodule:
    """L -> L^perp for the form b_0 (level 0) or b_d (level d)."""
    _require_gsp(p)
    if level not in (0, p.d):
        raise InvalidInputError(f"Duality is defined at levels 0 and {p.d}, got {level}")
    space = lattice_space(p)
    return space.perp(space.module(module), level).key


def is_autodual(chain: LatticeChain, p: LatticeModelParams) -> bool:
    _require_gsp(p)
    first, last = chain.modules[0], chain.modules[-1]
    if dual(first, p, 0) != first:
        return False
    return len(chain.modules) <= p.d or dual(last, p, p.d) == last


def fiber_over(L0: Submodule, p: LatticeModelParams) -> List[LatticeChain]:
    """
    Complete chains L0 = L_0 < L_1 < ... inside t^{-1} L0, one dimension per
    step: the fibre of the projection from the chain model to the
    Grassmannian model over the point L0. For GSp the last member is
    required to be isotropic for b_d.
    """
    space = lattice_space(p)
    F = space.field
    base = space.module(L0)
    if not space.is_t_stable(base):
        raise InvalidInputError("The base lattice is not t-stable")
    kernel = np.zeros((space.n, space.dim), dtype=np.int64)
    for j in range(space.n):
        kernel[j, space.position(p.n_plus - 1, j)] = 1
    preimage = space.span(np.vstack([space.shift_down(base.rows), kernel]))
    complement, _ = F.rref(F.reduce(preimage.rows, base.rows, base.pivots))
    depth = p.d if p.kind == GSP else p.d - 1
    levels: List[List[_Module]] = [[base]]
    for k in range(1, depth + 1):
        modules = []
        for U in F.iter_subspaces(complement.shape[0], k):
            module = space.span(np.vstack([base.rows, F.matmul(U, complement)]))
            if p.kind == GSP and k == p.d and not space.is_isotropic(module, p.d):
                continue
            modules.append(module)
        levels.append(modules)
    r = p.n_plus * p.d - len(L0) if p.kind == GL else None
    chains = [LatticeChain(tuple(m.key for m in chain), r) for chain in _walk(levels, space, lambda chain: True)]
    logger.debug(f"Fibre over a lattice of dimension {len(L0)}: {len(chains)} chains")
    return sorted(chains)
