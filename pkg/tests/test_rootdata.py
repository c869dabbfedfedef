from fractions import Fraction

import pytest

from qsp_kmatrix.core.rootdata import (RootDatum, SatakeDatum, build_datum, q_plus_up_to, validate_admissible)
from qsp_kmatrix.exceptions import AdmissibilityError, RootDatumError
from qsp_kmatrix.utils.descriptors import cartan_matrix


def _root(series, rank):
    return RootDatum(cartan_matrix(series, rank))


@pytest.mark.parametrize("series,rank,d,eps,n_pos", [
    ("A", 1, 2, (1,), 1),
    ("A", 2, 3, (1, 1), 3),
    ("A", 3, 4, (1, 1, 1), 6),
    ("B", 2, 2, (2, 1), 4),
    ("G", 2, 1, (1, 3), 6),
])
def test_basic_invariants(series, rank, d, eps, n_pos):
    root = _root(series, rank)
    assert root.d == d
    assert root.eps == eps
    assert root.is_finite
    assert len(root.positive_roots()) == n_pos
    w0, wx = root.longest_words(())
    assert len(w0) == n_pos and wx == ()


def test_pairing_is_symmetric():
    root = _root("B", 2)
    a, b = root.simple_root(0), root.simple_root(1)
    assert root.pair(a, b) == root.pair(b, a) == -2
    assert root.pair(a, a) == 4 and root.pair(b, b) == 2


def test_fundamental_weights_and_rho():
    root = _root("A", 2)
    w1 = root.fundamental_weight(0)
    assert w1 == (Fraction(2, 3), Fraction(1, 3))
    assert root.labels(w1) == (1, 0)
    assert root.labels(root.rho) == (1, 1)
    assert not root.is_integral((Fraction(1, 2), 0))


@pytest.mark.parametrize("labels,dim", [((1, 0), 3), ((0, 1), 3), ((1, 1), 8), ((2, 0), 6)])
def test_weyl_dimension_a2(labels, dim):
    root = _root("A", 2)
    assert root.weyl_dimension(root.weight_from_labels(labels)) == dim


def test_kostant_partition():
    root = _root("A", 2)
    assert root.kostant((1, 1)) == 2
    assert root.kostant((2, 2)) == 3
    assert root.kostant((0, 0)) == 1
    assert _root("B", 2).kostant((1, 1)) == 2


def test_tau0():
    assert _root("A", 1).tau0() == (0,)
    assert _root("A", 3).tau0() == (2, 1, 0)
    assert _root("B", 2).tau0() == (0, 1)


def test_wx_word_is_prefix_of_w0():
    root = _root("A", 3)
    w0, wx = root.longest_words([1])
    assert w0[:len(wx)] == wx
    assert wx == (1,)
    assert len(w0) == 6


def test_q_plus_up_to():
    weights = q_plus_up_to(2, 2)
    assert weights[0] == (0, 0)
    assert len(weights) == 6
    assert [sum(m) for m in weights] == sorted(sum(m) for m in weights)


def test_non_symmetrizable():
    with pytest.raises(RootDatumError) as exc:
        RootDatum([[2, -1, -1], [-2, 2, -1], [-1, -1, 2]])
    assert exc.value.condition == "symmetrizable"


@pytest.mark.parametrize("cartan,condition", [
    ([[3, -1], [-1, 2]], "diagonal"),
    ([[2, 1], [-1, 2]], "generalized_cartan"),
    ([[2, 0], [-1, 2]], "generalized_cartan"),
])
def test_bad_cartan(cartan, condition):
    with pytest.raises(RootDatumError) as exc:
        RootDatum(cartan)
    assert exc.value.condition == condition


def test_affine_is_not_finite():
    root = RootDatum([[2, -2], [-2, 2]])
    assert not root.is_finite
    assert root.d >= 1
    with pytest.raises(RootDatumError):
        root.positive_roots()


def test_admissible_a3_x2():
    root = _root("A", 3)
    sd = validate_admissible(root, [1], (2, 1, 0))
    assert sd.is_admissible()
    # Θ(α1) = -w_X(α3) = -(α2 + α3)
    assert sd.theta(root.simple_root(0)) == (0, -1, -1)
    assert sd.tautau0 == (0, 1, 2)


def test_inadmissible_a2_x1():
    root = _root("A", 2)
    with pytest.raises(AdmissibilityError) as exc:
        validate_admissible(root, [0], (0, 1))
    assert "rhoX_vee_integrality" in exc.value.failed
    assert exc.value.report["tau_involution"]


def test_tau_must_be_permutation():
    with pytest.raises(AdmissibilityError):
        SatakeDatum(_root("A", 2), [], (0, 0))


def test_theta_qsplit_a2():
    root = _root("A", 2)
    sd = validate_admissible(root, [], (1, 0))
    assert sd.theta(root.simple_root(0)) == (0, -1)
    assert sd.theta(root.simple_root(1)) == (-1, 0)
    assert sd.I_ns == ()
    assert sd.tau0 == (1, 0)
    assert sd.tautau0 == (0, 1)


def test_split_type_has_all_nodes_non_standard():
    sd = validate_admissible(_root("B", 2), [], (0, 1))
    assert sd.I_ns == (0, 1)
    assert sd.sfun(0) == 1


def test_simple_reflections():
    root = build_datum(cartan_matrix("A", 2))
    assert root.reflect(0, (1, 0)) == (-1, 0)
    assert root.reflect(0, (0, 1)) == (1, 1)
    # s1 s2 s1 = s2 s1 s2
    lam = (Fraction(1, 3), Fraction(2, 3))
    assert root.apply_word((0, 1, 0), lam) == root.apply_word((1, 0, 1), lam)
