"""
Bernstein elements Theta_lam, central elements z_lam and the Bernstein map.

Normalization: Theta_lam = v^{-l(t^lam)} T_{t^lam} for dominant lam, and in
general Theta_lam = v^{l(t^nu) - l(t^{lam+nu})} T_{t^{lam+nu}} T_{t^nu}^-1 for
any dominant nu with lam + nu dominant.
"""
import logging
from functools import lru_cache
from typing import Optional, Sequence

from .characters import character
from .errors import InvalidInputError
from .hecke import HeckeAlgebra, HeckeElement
from .laurent import LaurentScalar
from .root_data import Coweight, RootDatum, is_dominant, weyl_orbit

logger = logging.getLogger(__name__)


def dominant_shift(lam: Sequence[int], rd: RootDatum) -> Coweight:
    """
    Smallest-gap dominant nu with lam + nu dominant.

    nu_i = sum_{j >= i} max(0, lam_{j+1} - lam_j); the gap sequence is
    symmetric for GSp coweights, so nu satisfies the similitude constraint.
    """
    lam = rd.validate(lam)
    gaps = [max(0, lam[i + 1] - lam[i]) for i in range(rd.n - 1)] + [0]
    nu = [0] * rd.n
    running = 0
    for i in range(rd.n - 1, -1, -1):
        running += gaps[i]
        nu[i] = running
    return Coweight(tuple(nu))


def theta(algebra: HeckeAlgebra, lam: Sequence[int], nu: Optional[Sequence[int]] = None) -> HeckeElement:
    """Theta_lam computed from the decomposition lam = (lam + nu) - nu."""
    rd = algebra.rd
    lam = rd.validate(lam)
    nu = dominant_shift(lam, rd) if nu is None else rd.validate(nu)
    upper = Coweight(tuple(a + b for a, b in zip(lam, nu)))
    if not (is_dominant(nu, rd) and is_dominant(upper, rd)):
        raise InvalidInputError(
            f"Decomposition of {list(lam)} with nu={list(nu)} does not have both parts dominant"
        )
    return _theta(algebra, lam, Coweight(tuple(nu)), upper)


@lru_cache(maxsize=512)
def _theta(algebra: HeckeAlgebra, lam: Coweight, nu: Coweight, upper: Coweight) -> HeckeElement:
    W = algebra.W
    t_upper, t_nu = W.translation(upper), W.translation(nu)
    coeff = LaurentScalar.monomial(W.length(t_nu) - W.length(t_upper))
    element = algebra.t_basis(t_upper).scale(coeff)
    result = algebra.right_multiply_inverse(element, t_nu)
    logger.debug(f"Theta_{list(lam)} via nu={list(nu)}: {len(result)} terms")
    return result


def _require_dominant(lam: Sequence[int], algebra: HeckeAlgebra) -> Coweight:
    lam = algebra.rd.validate(lam)
    if not is_dominant(lam, algebra.rd):
        raise InvalidInputError(f"Coweight {list(lam)} is not dominant for {algebra.rd.name}")
    return lam


@lru_cache(maxsize=256)
def _bernstein_z(algebra: HeckeAlgebra, lam: Coweight) -> HeckeElement:
    orbit = sorted(weyl_orbit(lam, algebra.rd))
    return algebra.sum(theta(algebra, mu) for mu in orbit)


def bernstein_z(algebra: HeckeAlgebra, lam: Sequence[int]) -> HeckeElement:
    """z_lam = sum over the W_0-orbit of lam of Theta_mu."""
    return _bernstein_z(algebra, _require_dominant(lam, algebra))


def bern_of_character(algebra: HeckeAlgebra, lam: Sequence[int]) -> HeckeElement:
    """Bern(chi_lam) = sum_{lam' <= lam} m_lam(lam') z_{lam'}."""
    lam = _require_dominant(lam, algebra)
    parts = []
    for mu, m in sorted(character(lam, algebra.rd).dominant_part().items(), reverse=True):
        parts.append(bernstein_z(algebra, mu).scale(m))
    return algebra.sum(parts)


def theorem11_rhs(algebra: HeckeAlgebra, lam: Sequence[int]) -> HeckeElement:
    """(-1)^{2<rho, lam>} Bern(chi_lam)."""
    lam = _require_dominant(lam, algebra)
    sign = -1 if algebra.rd.rho_twice(lam) % 2 else 1
    return bern_of_character(algebra, lam).scale(sign)
