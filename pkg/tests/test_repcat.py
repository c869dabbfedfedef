import pytest

from qsp_kmatrix.core.freealg import FreeAlgebra
from qsp_kmatrix.core.quasir import quasiR_dual
from qsp_kmatrix.core.repcat import (build_irrep, check_braid_conjugation, check_deltaT, check_deltaTw0,
                                     check_hexagon, check_quasiR_intertwining, check_relations,
                                     check_rhat_module_map, check_riCommute, check_twist_coherence, compare,
                                     act, lusztig_T, lusztig_T_word, quasiR_legs, rhat, tensor, twist)
from qsp_kmatrix.core.rootdata import RootDatum
from qsp_kmatrix.core.triangular import FWD, INV
from qsp_kmatrix.exceptions import ModuleError
from qsp_kmatrix.qsp_kmatrix import make_quasiR_cache
from qsp_kmatrix.utils import matrix_utils as mu_
from qsp_kmatrix.utils.descriptors import cartan_matrix


@pytest.fixture(scope="module")
def b2_modules():
    root = RootDatum(cartan_matrix("B", 2))
    return build_irrep(root, (1, 0)), build_irrep(root, (0, 1))


def _random_element(alg, rng, length):
    x = alg.zero()
    for _ in range(2):
        word = tuple(rng.randrange(alg.n) for _ in range(length))
        x = x + alg.word(word, coeff=rng.randint(1, 3))
    return x


def test_dimensions_and_gap(a1_V1, a1_V2, a2_V1, b2_modules):
    assert (a1_V1.dim, a1_V2.dim, a2_V1.dim) == (2, 3, 3)
    assert a1_V2.gap == 2 and a2_V1.gap == 2
    assert [M.dim for M in b2_modules] == [5, 4]
    assert a2_V1.highest_weight == (1, 0)


@pytest.mark.parametrize("name", ["a1_V1", "a1_V2", "a2_V1", "a2_V2"])
def test_defining_relations(request, name):
    assert check_relations(request.getfixturevalue(name)).passed


def test_relations_b2(b2_modules):
    for M in b2_modules:
        assert check_relations(M).passed


def test_tensor_module(a2_V1, a2_V2):
    MN = tensor(a2_V1, a2_V2)
    assert MN.dim == 9
    assert check_relations(MN).passed


def test_bad_highest_weight(a2):
    with pytest.raises(ModuleError):
        build_irrep(a2.root, (-1, 0))
    with pytest.raises(ModuleError):
        build_irrep(a2.root, (1,))


def test_rank_limit():
    root = RootDatum(cartan_matrix("A", 3))
    with pytest.raises(ModuleError):
        build_irrep(root, (1, 0, 0), max_rank=2)


def test_lusztig_T_inverse(a2_V1):
    for i in range(2):
        prod = mu_.mul(lusztig_T(a2_V1, i, FWD), lusztig_T(a2_V1, i, INV))
        assert mu_.equal(prod, a2_V1.identity())


def test_lusztig_T_on_a1_doublet(a1_V1):
    # T^{-1} v0 = v1,  T^{-1} v1 = -q^{-1} v0
    fld = a1_V1.field
    tinv = mu_.entries(lusztig_T(a1_V1, 0, INV))
    assert set(tinv) == {(1, 0), (0, 1)}
    assert fld.wrap(tinv[(1, 0)]) == 1
    assert fld.wrap(tinv[(0, 1)]) == fld.wrap("-q^(-1)")
    t = mu_.entries(lusztig_T(a1_V1, 0, FWD))
    assert fld.wrap(t[(1, 0)]) == fld.wrap("-q")


def test_braid_conjugation(a2, a2_V1, a2_V2):
    alg = a2.algebra
    for M in (a2_V1, a2_V2):
        assert check_braid_conjugation(M, a2.ops, 0, alg.E(1)).passed
        assert check_braid_conjugation(M, a2.ops, 1, alg.E(0)).passed


def test_commutator_with_F(a2, a2_V1, rng):
    x = _random_element(a2.algebra, rng, 2)
    for i in range(2):
        assert check_riCommute(a2_V1, x, i).passed


def test_twist_coherence(a2_V1):
    assert check_twist_coherence(a2_V1, (1, 0)).passed
    assert twist(a2_V1, (0, 1)) is a2_V1


def test_twisted_module_is_dual_like(a2_V1):
    Mt = twist(a2_V1, (1, 0))
    # V(ϖ1) 을 도형 자기동형으로 꼬면 웨이트가 V(ϖ2) 의 것이 됩니다
    assert sorted(Mt.weights) == sorted(tuple(reversed(w)) for w in a2_V1.weights)
    assert check_relations(Mt).passed


def test_rhat_is_module_map(a1_V1, a1_V2, a1_qrc, a2_V1, a2_V2, a2_qrc):
    assert check_rhat_module_map(a1_V1, a1_V2, a1_qrc).passed
    assert check_rhat_module_map(a2_V1, a2_V2, a2_qrc).passed


def test_rhat_is_invertible(a2_V1, a2_V2, a2_qrc):
    Rh = rhat(a2_V1, a2_V2, a2_qrc)
    assert Rh.shape == (9, 9)
    assert Rh.rank() == 9


def test_quasiR_intertwining(a1_V1, a1_V2, a1_qrc, a2_V1, a2_V2, a2_qrc):
    assert check_quasiR_intertwining(a1_V2, a1_V1, a1_qrc).passed
    assert check_quasiR_intertwining(a2_V1, a2_V2, a2_qrc).passed


def test_coproduct_of_T(a1_V1, a1_V2, a1_qrc, a2_V1, a2_V2, a2_qrc):
    assert check_deltaT(a1_V1, a1_V2, 0, a1_qrc).passed
    for i in range(2):
        assert check_deltaT(a2_V1, a2_V2, i, a2_qrc).passed


def test_coproduct_of_Tw0(a2, a2_V1, a2_V2, a2_qrc):
    w0 = a2.satake.w0_word
    assert check_deltaTw0(a2_V1, a2_V2, w0, a2_qrc).passed
    assert check_deltaTw0(a2_V1, a2_V2, w0, a2_qrc, inverse=True).passed


def test_hexagon(a1_V1, a1_qrc, a2_V1, a2_V2, a2_qrc):
    assert all(r.passed for r in check_hexagon(a1_V1, a1_V1, a1_V1, a1_qrc))
    assert all(r.passed for r in check_hexagon(a2_V1, a2_V2, a2_V1, a2_qrc))


def test_compare_reports_mismatches(a2_V1):
    K = a2_V1.K
    r = compare("doubled", a2_V1.identity(), mu_.scale(a2_V1.identity(), K.one * 2), a2_V1.field)
    assert not r.passed
    assert r.details["mismatch_count"] == 3
    assert [m[:2] for m in r.mismatches] == [[0, 0], [1, 1], [2, 2]]
    assert r.to_dict()["shape"] == [3, 3]


def test_compare_shape_mismatch(a1_V1, a2_V1):
    r = compare("shape", a1_V1.identity(), a2_V1.identity(), a1_V1.field)
    assert not r.passed and "shape" in r.details["error"]


def test_quasiR_cutoff_too_small(a2_V1, a2_V2):
    R = quasiR_dual(FreeAlgebra(a2_V1.root, a2_V1.field), 1)
    with pytest.raises(ModuleError):
        list(quasiR_legs(R, a2_V1, a2_V2))


def test_wrong_relation_is_detected(a2_V1):
    broken = tensor(a2_V1, a2_V1)
    broken.F = (mu_.scale(broken.F[0], broken.K.one * 2),) + broken.F[1:]
    assert not check_relations(broken).passed


def test_act_on_elements_and_K(a1, a1_V1):
    fld = a1_V1.field
    K = act(("K", (1,)), a1_V1)
    # V(ϖ) 의 웨이트 ±ϖ 에서 (α, ±ϖ) = ±1
    assert mu_.equal(K, mu_.diag([fld.q_pow(1), fld.q_pow(-1)], a1_V1.K))
    assert mu_.equal(act(a1.algebra.E(0), a1_V1), a1_V1.E[0])
    with pytest.raises(ModuleError):
        act("E1", a1_V1)


def test_T_along_braid_words(a2_V1):
    assert mu_.equal(lusztig_T_word(a2_V1, (0, 1, 0)), lusztig_T_word(a2_V1, (1, 0, 1)))
    prod = mu_.mul(lusztig_T_word(a2_V1, (0, 1)), lusztig_T_word(a2_V1, (0, 1), inverse=True))
    assert mu_.equal(prod, a2_V1.identity())


def test_rhat_cached_per_quasiR_cache(a2, a2_V1, a2_V2, a2_qrc):
    first = rhat(a2_V1, a2_V2, a2_qrc)
    other = make_quasiR_cache(a2)
    assert ("rhat", a2_V2, other) not in a2_V1._cache
    second = rhat(a2_V1, a2_V2, other)
    assert a2_V1._cache[("rhat", a2_V2, other)] is second
    assert a2_V1._cache[("rhat", a2_V2, a2_qrc)] is first
    assert mu_.equal(first, second)
