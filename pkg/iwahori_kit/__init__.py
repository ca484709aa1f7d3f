"""iwahori-kit: Iwahori-Hecke algebras of GL(d) and GSp(2d), Bernstein centre, lattice-model counts."""
from .affine_weyl import AffineWeylElement, AffineWeylGroup, get_group
from .errors import (
    BudgetExceededError,
    DatumMismatchError,
    EliminationResidualError,
    InvalidInputError,
    IwahoriError,
    VerificationError,
)
from .hecke import HeckeAlgebra, HeckeElement, get_algebra
from .laurent import LaurentScalar
from .root_data import GL, GSP, RootDatum, build_root_datum

__version__ = "0.1.0"

__all__ = [
    "AffineWeylElement",
    "AffineWeylGroup",
    "BudgetExceededError",
    "DatumMismatchError",
    "EliminationResidualError",
    "GL",
    "GSP",
    "HeckeAlgebra",
    "HeckeElement",
    "InvalidInputError",
    "IwahoriError",
    "LaurentScalar",
    "RootDatum",
    "VerificationError",
    "build_root_datum",
    "get_algebra",
    "get_group",
]
