import pytest

from iwahori_kit.characters import weight_multiplicity
from iwahori_kit.errors import EliminationResidualError, InvalidInputError
from iwahori_kit.hecke import get_algebra
from iwahori_kit.laurent import LaurentScalar
from iwahori_kit.root_data import weyl_orbit
from iwahori_kit.spherical import (
    double_coset_char,
    e_K,
    is_lower_triangular,
    minuscule_identity_operands,
    poincare_polynomial,
    q_analog_report,
    star_IK,
    triangle_matrix,
    triangle_row,
    verify_minuscule_identity,
)


def test_poincare_polynomials(H_gl2, H_gl3, H_gsp4):
    assert poincare_polynomial(H_gl2) == LaurentScalar({0: 1, 2: 1})
    assert poincare_polynomial(H_gl3) == LaurentScalar({0: 1, 2: 2, 4: 2, 6: 1})
    assert poincare_polynomial(H_gsp4) == LaurentScalar({0: 1, 2: 2, 4: 2, 6: 2, 8: 1})


def test_averaging_is_idempotent_up_to_poincare(H_gl2, H_gsp4):
    for H in (H_gl2, H_gsp4):
        assert star_IK(H, e_K(H)) == e_K(H).scale(poincare_polynomial(H))


def test_averaging_at_v_equal_one(H_gl3):
    specialized = star_IK(H_gl3, e_K(H_gl3)).specialize()
    assert set(specialized.values()) == {6}
    assert len(specialized) == 6


def test_double_coset_char(H_gl2):
    f = double_coset_char(H_gl2, (1, 0))
    assert len(f) == 4
    with pytest.raises(InvalidInputError):
        double_coset_char(H_gl2, (0, 1))


@pytest.mark.parametrize("kind,d,mu", [
    ("GL", 2, (1, 0)),
    ("GL", 2, (1, 1)),
    ("GL", 3, (1, 0, 0)),
    ("GL", 3, (1, 1, 0)),
    ("GSp", 2, (1, 1, 0, 0)),
    ("GSp", 2, (2, 2, 1, 1)),
])
def test_minuscule_identity(kind, d, mu):
    assert verify_minuscule_identity(get_algebra(kind, d), mu)


@pytest.mark.slow
@pytest.mark.parametrize("kind,d,mu", [
    ("GL", 4, (1, 0, 0, 0)),
    ("GL", 4, (1, 1, 0, 0)),
    ("GL", 4, (1, 1, 1, 0)),
    ("GL", 4, (1, 1, 1, 1)),
    ("GSp", 3, (1, 1, 1, 0, 0, 0)),
])
def test_minuscule_identity_larger_groups(kind, d, mu):
    assert verify_minuscule_identity(get_algebra(kind, d), mu)


@pytest.mark.parametrize("kind,d,mu", [
    ("GL", 2, (1, 0)),
    ("GL", 3, (1, 1, 0)),
    ("GSp", 2, (1, 1, 0, 0)),
])
def test_minuscule_identity_at_v_equal_one(kind, d, mu):
    H = get_algebra(kind, d)
    W = H.W
    lhs, _ = minuscule_identity_operands(H, mu)
    coset = {
        W.multiply(W.translation(lam), W.finite(w))
        for lam in weyl_orbit(mu, H.rd)
        for w in H.rd.weyl_group
    }
    assert lhs.specialize() == {x: 1 for x in coset}


def test_minuscule_identity_rejects_non_minuscule(H_gl2, H_gsp4):
    with pytest.raises(InvalidInputError):
        minuscule_identity_operands(H_gl2, (2, 0))
    with pytest.raises(InvalidInputError):
        minuscule_identity_operands(H_gsp4, (1, 0, 0, -1))


def test_triangle_gl2(H_gl2):
    matrix = triangle_matrix(H_gl2, (2, 0))
    assert matrix.weights == [(2, 0), (1, 1)]
    assert matrix.entry((2, 0), (2, 0)) == LaurentScalar.monomial(-2)
    assert matrix.entry((1, 1), (1, 1)) == LaurentScalar.monomial(0)
    assert matrix.entry((1, 1), (2, 0)).is_zero()
    assert not matrix.entry((2, 0), (1, 1)).is_zero()
    assert is_lower_triangular(matrix, H_gl2)


@pytest.mark.parametrize("kind,d,lam", [
    ("GL", 2, (1, 0)),
    ("GL", 3, (2, 1, 0)),
    ("GSp", 2, (1, 0, 0, -1)),
])
def test_triangle_diagonal_is_normalized(kind, d, lam):
    H = get_algebra(kind, d)
    matrix = triangle_matrix(H, lam)
    assert is_lower_triangular(matrix, H)
    for mu in matrix.weights:
        ell = H.W.length(H.W.translation(mu))
        assert matrix.entry(mu, mu) == LaurentScalar.monomial(-ell)


@pytest.mark.parametrize("kind,d,lam", [
    ("GL", 2, (2, 0)),
    ("GL", 3, (2, 1, 0)),
    ("GSp", 2, (1, 0, 0, -1)),
])
def test_triangle_at_v_equal_one_gives_weight_multiplicities(kind, d, lam):
    H = get_algebra(kind, d)
    matrix = triangle_matrix(H, lam)
    for mu in matrix.weights:
        for nu in matrix.weights:
            assert matrix.entry(mu, nu).at_one() == weight_multiplicity(mu, nu, H.rd)


def test_triangle_json(H_gl2):
    body = triangle_matrix(H_gl2, (1, 0)).to_json()
    assert body == {"weights": [[1, 0]], "rows": [[[[-1, 1]]]]}


def test_incomplete_elimination_reports_residual(H_gl2):
    with pytest.raises(EliminationResidualError) as excinfo:
        triangle_row(H_gl2, (2, 0), [(2, 0)])
    body = excinfo.value.to_dict()
    assert body["type"] == "EliminationResidualError"
    assert body["residual"]


def test_q_analog_report(H_gl2):
    report = q_analog_report(H_gl2, (2, 0))
    assert [(row["mu"], row["nu"]) for row in report] == [
        ([2, 0], [2, 0]), ([2, 0], [1, 1]), ([1, 1], [1, 1]),
    ]
    assert report[0]["normalized_entry"] == [[0, 1]]
    assert report[1]["q_analog"] == [[2, 1]]
