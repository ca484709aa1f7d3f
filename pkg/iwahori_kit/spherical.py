"""
Spherical side of the Bernstein/Satake triangle, computed inside H(G//I).

Right K-averaging is f -> f * e_K with e_K = sum_{w in W_0} T_w, the image of
the characteristic function of K = disjoint union of I w I.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from .bernstein import bern_of_character, bernstein_z
from .characters import dominant_weights_below, is_minuscule, q_weight_multiplicity
from .errors import EliminationResidualError, InvalidInputError
from .hecke import HeckeAlgebra, HeckeElement
from .laurent import ONE, LaurentScalar
from .root_data import Coweight, dominance_leq, is_dominant

logger = logging.getLogger(__name__)


def e_K(algebra: HeckeAlgebra) -> HeckeElement:
    return HeckeElement(algebra, {x: ONE for x in algebra.W.finite_elements()})


def poincare_polynomial(algebra: HeckeAlgebra) -> LaurentScalar:
    """P_{W_0}(q) = sum_{w in W_0} q^{l(w)}."""
    rd = algebra.rd
    total = LaurentScalar()
    for w in rd.weyl_group:
        total = total + LaurentScalar.q_power(rd.finite_length(w))
    return total


def star_IK(algebra: HeckeAlgebra, f: HeckeElement) -> HeckeElement:
    """f -> f * I_K."""
    return algebra.multiply(f, e_K(algebra))


def _dominant(algebra: HeckeAlgebra, mu: Sequence[int]) -> Coweight:
    mu = algebra.rd.validate(mu)
    if not is_dominant(mu, algebra.rd):
        raise InvalidInputError(f"Coweight {list(mu)} is not dominant for {algebra.rd.name}")
    return mu


def double_coset_char(algebra: HeckeAlgebra, mu: Sequence[int]) -> HeckeElement:
    """I_{K mu K} = sum over W_0 t^mu W_0 of T_x."""
    mu = _dominant(algebra, mu)
    return HeckeElement(algebra, {x: ONE for x in algebra.W.double_coset(mu)})


def minuscule_identity_operands(algebra: HeckeAlgebra, mu: Sequence[int]) -> Tuple[HeckeElement, HeckeElement]:
    """Both sides of v^{l(t^mu)} z_mu * e_K = I_{K mu K}."""
    mu = _dominant(algebra, mu)
    if not is_minuscule(mu, algebra.rd):
        raise InvalidInputError(
            f"Coweight {list(mu)} is not minuscule; the identity only holds for minuscule coweights"
        )
    shift = algebra.W.length(algebra.W.translation(mu))
    lhs = star_IK(algebra, bernstein_z(algebra, mu)).scale(LaurentScalar.monomial(shift))
    return lhs, double_coset_char(algebra, mu)


def verify_minuscule_identity(algebra: HeckeAlgebra, mu: Sequence[int]) -> bool:
    lhs, rhs = minuscule_identity_operands(algebra, mu)
    holds = lhs == rhs
    logger.info(f"Minuscule identity for {list(mu)} in {algebra.rd.name}: {'holds' if holds else 'FAILS'}")
    return holds


@dataclass
class TriangleMatrix:
    """C with Bern(chi_mu) * e_K = sum_nu C[mu, nu] I_{K nu K}."""
    weights: List[Coweight]
    entries: Dict[Tuple[Coweight, Coweight], LaurentScalar] = field(default_factory=dict)

    def entry(self, mu: Sequence[int], nu: Sequence[int]) -> LaurentScalar:
        return self.entries.get((tuple(mu), tuple(nu)), LaurentScalar())

    def row(self, mu: Sequence[int]) -> Dict[Coweight, LaurentScalar]:
        return {nu: c for (m, nu), c in self.entries.items() if m == tuple(mu)}

    def to_json(self) -> Dict[str, object]:
        return {
            "weights": [list(mu) for mu in self.weights],
            "rows": [
                [self.entry(mu, nu).to_pairs() for nu in self.weights]
                for mu in self.weights
            ],
        }


def triangle_row(algebra: HeckeAlgebra, mu: Sequence[int], weights: Sequence[Coweight]) -> Dict[Coweight, LaurentScalar]:
    """Eliminate Bern(chi_mu) * e_K against the double-coset functions, largest nu first."""
    residual = star_IK(algebra, bern_of_character(algebra, mu))
    row: Dict[Coweight, LaurentScalar] = {}
    for nu in weights:
        coeff = residual.coefficient(algebra.W.translation(nu))
        if coeff:
            row[nu] = coeff
            residual = residual - double_coset_char(algebra, nu).scale(coeff)
    if not residual.is_zero():
        raise EliminationResidualError(
            f"Nonzero residual with {len(residual)} terms after eliminating row {list(mu)}",
            residual=residual,
        )
    return row


def triangle_matrix(algebra: HeckeAlgebra, lam_max: Sequence[int]) -> TriangleMatrix:
    lam_max = _dominant(algebra, lam_max)
    weights = dominant_weights_below(lam_max, algebra.rd)
    matrix = TriangleMatrix(weights=list(weights))
    for mu in weights:
        for nu, coeff in triangle_row(algebra, mu, weights).items():
            matrix.entries[(mu, nu)] = coeff
    logger.info(f"Triangle matrix below {list(lam_max)}: {len(weights)} rows, {len(matrix.entries)} nonzero entries")
    return matrix


def is_lower_triangular(matrix: TriangleMatrix, algebra: HeckeAlgebra) -> bool:
    return all(dominance_leq(nu, mu, algebra.rd) for (mu, nu) in matrix.entries)


def q_analog_report(algebra: HeckeAlgebra, lam_max: Sequence[int]) -> List[Dict[str, object]]:
    """
    Side-by-side listing of v^{l(t^mu)} C[mu, nu] and the q-analogue m_mu(nu)(q).
    Informational only; no relation between the two columns is asserted.
    """
    matrix = triangle_matrix(algebra, lam_max)
    report = []
    for mu in matrix.weights:
        shift = algebra.W.length(algebra.W.translation(mu))
        for nu in matrix.weights:
            if not dominance_leq(nu, mu, algebra.rd):
                continue
            report.append({
                "mu": list(mu),
                "nu": list(nu),
                "normalized_entry": matrix.entry(mu, nu).shift(shift).to_pairs(),
                "q_analog": q_weight_multiplicity(mu, nu, algebra.rd).to_pairs(),
            })
    return report
