import pytest

from qsp_kmatrix.core.freealg import FreeAlgebra
from qsp_kmatrix.core.rootdata import RootDatum
from qsp_kmatrix.core.triangular import FWD, INV, BraidOperators, TriangularCalculus, braid_T
from qsp_kmatrix.exceptions import BraidDomainError
from qsp_kmatrix.utils.descriptors import cartan_matrix


@pytest.fixture(scope="module")
def ops_a2():
    return BraidOperators(FreeAlgebra(RootDatum(cartan_matrix("A", 2))))


@pytest.fixture(scope="module")
def ops_b2():
    return BraidOperators(FreeAlgebra(RootDatum(cartan_matrix("B", 2))))


def test_commutator_of_generators():
    alg = FreeAlgebra(RootDatum(cartan_matrix("A", 1)))
    calc = TriangularCalculus(alg)
    out = calc.straighten((0,), (0,))
    qi = alg.q_i(0)
    inv = alg.K.one / (qi - 1 / qi)
    # E F = F E + (K - K^-1)/(q - q^-1)
    assert out[((0,), (0,), (0,))] == alg.K.one
    assert out[((), (1,), ())] == inv
    assert out[((), (-1,), ())] == -inv
    assert len(out) == 3


def test_T1_of_E2(ops_a2):
    alg = ops_a2.alg
    got = ops_a2.apply(0, alg.E(1))
    expected = alg.from_words({(0, 1): 1, (1, 0): "-q^(-1)"})
    assert got == expected


def test_T_inverse_undoes_T(ops_a2):
    alg = ops_a2.alg
    for i in range(2):
        x = alg.E(1 - i).scale(alg.field.q_pow(3))
        assert ops_a2.apply(i, ops_a2.apply(i, x, FWD), INV) == x
        assert ops_a2.apply(i, ops_a2.apply(i, x, INV), FWD) == x


def test_braid_sends_simple_root_to_simple_root(ops_a2):
    alg = ops_a2.alg
    # T_1 T_2 (E_1) = E_2
    assert ops_a2.apply_word((0, 1), alg.E(0)) == alg.E(1)
    assert ops_a2.apply_word((0, 1), alg.E(1), inverse=True) == alg.E(0)


def test_braid_b2(ops_b2):
    alg = ops_b2.alg
    # s1 s2 s1 (α2) = α2, 그리고 T_w 는 E_2 를 E_2 로 보냅니다
    assert ops_b2.apply_word((0, 1, 0), alg.E(1)) == alg.E(1)


def test_leaving_u_plus_raises(ops_a2):
    alg = ops_a2.alg
    with pytest.raises(BraidDomainError):
        ops_a2.apply(0, alg.E(0))
    with pytest.raises(BraidDomainError):
        ops_a2.apply(0, alg.F(1))


def test_ktag_is_reflected(ops_a2):
    alg = ops_a2.alg
    x = alg.E(1).with_ktag((0, 1))
    assert ops_a2.apply(0, x).ktag == (1, 1)


def test_braid_T_function(ops_a2):
    alg = ops_a2.alg
    assert braid_T(ops_a2, 1, alg.E(0)) == ops_a2.apply(1, alg.E(0))
    assert braid_T(ops_a2, 1, braid_T(ops_a2, 1, alg.E(0)), INV) == alg.E(0)
