from itertools import product

import pytest

from iwahori_kit.errors import InvalidInputError
from iwahori_kit.root_data import (
    build_root_datum,
    corank_range,
    dominance_leq,
    dominant_conjugate,
    in_coroot_cone,
    is_dominant,
    lambda_set,
    make_coweight,
    rho_pairing_twice,
    weyl_orbit,
)


@pytest.mark.parametrize("kind,d,n_roots,order,longest", [
    ("GL", 1, 0, 1, 0),
    ("GL", 2, 1, 2, 1),
    ("GL", 3, 3, 6, 3),
    ("GL", 4, 6, 24, 6),
    ("GSp", 1, 1, 2, 1),
    ("GSp", 2, 4, 8, 4),
    ("GSp", 3, 9, 48, 9),
])
def test_root_counts_and_weyl_group(kind, d, n_roots, order, longest):
    rd = build_root_datum(kind, d)
    assert len(rd.positive_roots) == n_roots
    assert len(rd.weyl_group) == order
    assert rd.finite_length(rd.longest_element) == longest
    assert rd.weyl_group[0] == tuple(range(rd.n))


def test_simple_roots(gl3, gsp4):
    assert gl3.simple_roots == ((0, 1), (1, 2))
    assert gsp4.simple_roots == ((0, 1), (1, 2))
    assert gsp4.highest_root == (0, 3)


def test_gsp_coroots(gsp4):
    assert gsp4.coroot((0, 3)) == (1, 0, 0, -1)
    assert gsp4.coroot((0, 1)) == (1, -1, 1, -1)
    assert gsp4.rho_twice_vector == (3, 1, -1, -3)


def test_unknown_group_and_bad_rank():
    with pytest.raises(InvalidInputError):
        build_root_datum("SL", 2)
    with pytest.raises(InvalidInputError):
        build_root_datum("GL", 0)


def test_validate_rejects_bad_coweights(gl2, gsp4):
    with pytest.raises(InvalidInputError):
        gl2.validate((1, 0, 0))
    with pytest.raises(InvalidInputError):
        gl2.validate(("a", 0))
    with pytest.raises(InvalidInputError):
        gsp4.validate((1, 1, 1, 0))


def test_make_coweight_completes_gsp_half(gsp4):
    assert make_coweight([1, 1], gsp4, similitude=1) == (1, 1, 0, 0)
    assert make_coweight([2, 1, 1, 0], gsp4) == (2, 1, 1, 0)
    with pytest.raises(InvalidInputError):
        make_coweight([1, 1], gsp4)


def test_dominance(gl3, gsp4):
    assert is_dominant((2, 1, 0), gl3)
    assert not is_dominant((0, 1, 2), gl3)
    assert is_dominant((1, 0, 0, -1), gsp4)
    assert dominance_leq((1, 1, 1), (2, 1, 0), gl3)
    assert not dominance_leq((2, 1, 0), (1, 1, 1), gl3)
    assert not dominance_leq((1, 1, 0), (1, 0, 0), gl3)
    assert dominance_leq((1, 1, 1, 1), (2, 1, 1, 0), gsp4)
    with pytest.raises(InvalidInputError):
        dominance_leq((0, 1, 0), (1, 0, 0), gl3)


def test_in_coroot_cone():
    assert in_coroot_cone((1, -1))
    assert in_coroot_cone((1, 0, -1))
    assert not in_coroot_cone((-1, 1))
    assert not in_coroot_cone((1, 0))


def test_rho_pairing(gl2, gl3, gsp4):
    assert rho_pairing_twice((1, 0), gl2) == 1
    assert rho_pairing_twice((2, 1, 0), gl3) == 4
    assert rho_pairing_twice((1, 1, 0, 0), gsp4) == 3
    with pytest.raises(InvalidInputError):
        rho_pairing_twice((0, 1), gl2)


def test_weyl_orbit_and_dominant_conjugate(gl3, gsp4):
    assert len(weyl_orbit((1, 0, 0), gl3)) == 3
    assert len(weyl_orbit((2, 1, 0), gl3)) == 6
    assert len(weyl_orbit((1, 1, 0, 0), gsp4)) == 4
    assert dominant_conjugate((0, 2, 1), gl3) == (2, 1, 0)
    assert dominant_conjugate((0, 1, 0, 1), gsp4) == (1, 1, 0, 0)
    for mu in weyl_orbit((2, 1, 1, 0), gsp4):
        assert dominant_conjugate(mu, gsp4) == (2, 1, 1, 0)


def test_lambda_set_gl(gl2):
    assert lambda_set(0, 1, gl2) == [(1, 1), (1, 0), (0, 0)]
    assert lambda_set(0, 1, gl2, r=1) == [(1, 0)]
    assert lambda_set(0, 2, gl2, r=2) == [(2, 0), (1, 1)]
    assert list(corank_range(-1, 1, gl2)) == [-2, -1, 0, 1, 2]


def test_lambda_set_gsp(gsp4):
    assert lambda_set(0, 1, gsp4) == [(1, 1, 0, 0)]
    assert lambda_set(0, 2, gsp4) == [(2, 2, 0, 0), (2, 1, 1, 0), (1, 1, 1, 1)]
    with pytest.raises(InvalidInputError):
        lambda_set(0, 1, gsp4, r=1)


def test_lambda_set_rejects_bad_bounds(gl2):
    with pytest.raises(InvalidInputError):
        lambda_set(1, 2, gl2)
    with pytest.raises(InvalidInputError):
        lambda_set(0, 0, gl2)


def test_central_coordinate(gl3, gsp4):
    assert gl3.central_coordinate((2, 1, 0)) == 3
    assert gsp4.central_coordinate((2, 1, 1, 0)) == 2


def _box(rd, low=-1, high=1):
    """Every coweight with entries in [low, high], dominant or not."""
    values = range(low, high + 1)
    if rd.kind == "GL":
        return [make_coweight(v, rd) for v in product(values, repeat=rd.d)]
    return [
        make_coweight(v, rd, similitude=c)
        for c in values
        for v in product(values, repeat=rd.d)
    ]


@pytest.mark.parametrize("kind,d", [("GL", 3), ("GSp", 2)])
def test_dominance_is_a_partial_order(kind, d):
    rd = build_root_datum(kind, d)
    weights = lambda_set(0, 2, rd)
    for a in weights:
        assert dominance_leq(a, a, rd)
    for a, b in product(weights, repeat=2):
        if a != b:
            assert not (dominance_leq(a, b, rd) and dominance_leq(b, a, rd))
    for a, b, c in product(weights, repeat=3):
        if dominance_leq(a, b, rd) and dominance_leq(b, c, rd):
            assert dominance_leq(a, c, rd)


@pytest.mark.parametrize("kind,d", [("GL", 2), ("GL", 3), ("GSp", 2)])
def test_each_orbit_has_one_dominant_element(kind, d):
    rd = build_root_datum(kind, d)
    for lam in _box(rd):
        dominant = [mu for mu in weyl_orbit(lam, rd) if is_dominant(mu, rd)]
        assert dominant == [dominant_conjugate(lam, rd)]


@pytest.mark.parametrize("kind,d", [("GL", 2), ("GL", 3), ("GSp", 2)])
def test_bounded_dominant_coweights_lie_in_some_lambda_set(kind, d):
    rd = build_root_datum(kind, d)
    dominant = [lam for lam in _box(rd, -2, 2) if is_dominant(lam, rd)]
    assert dominant
    for lam in dominant:
        if kind == "GL":
            n_plus, n_minus = max(lam[0], 1), min(lam[-1], 0)
        else:
            c = lam[0] + lam[-1]
            n_plus = max(lam[0], c, 1)
            n_minus = c - n_plus
        assert lam in lambda_set(n_minus, n_plus, rd)
