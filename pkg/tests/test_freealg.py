import pytest

from qsp_kmatrix.core.freealg import MINUS, FreeAlgebra, pairing
from qsp_kmatrix.core.rootdata import RootDatum
from qsp_kmatrix.exceptions import AlgebraError
from qsp_kmatrix.utils import matrix_utils as mu_
from qsp_kmatrix.utils.descriptors import cartan_matrix


@pytest.fixture(scope="module")
def A2():
    return FreeAlgebra(RootDatum(cartan_matrix("A", 2)))


@pytest.fixture(scope="module")
def B2():
    return FreeAlgebra(RootDatum(cartan_matrix("B", 2)))


def _random_element(alg, rng, letters):
    """같은 웨이트를 가진 단어 세 개의 정수 계수 결합."""
    x = alg.zero()
    for _ in range(3):
        word = list(letters)
        rng.shuffle(word)
        x = x + alg.word(tuple(word), coeff=rng.randint(1, 4))
    return x


@pytest.mark.parametrize("mu,dim", [((1, 0), 1), ((1, 1), 2), ((2, 1), 2), ((2, 2), 3), ((3, 1), 2), ((0, 2), 1)])
def test_dimensions_match_kostant_a2(A2, mu, dim):
    assert A2.dim(mu) == dim


def test_dimensions_b2(B2):
    assert B2.dim((1, 2)) == 3
    assert B2.dim((1, 3)) == 3
    assert B2.dim((0, 3)) == 1


def test_serre_relation_vanishes(A2):
    two = A2.field.qint(2)
    serre = A2.from_words({(0, 0, 1): 1, (0, 1, 0): -two, (1, 0, 0): 1})
    assert serre.is_zero()
    assert serre == 0


def test_non_serre_combination_survives(A2):
    x = A2.from_words({(0, 1): 1, (1, 0): -1})
    assert not x.is_zero()


def test_serre_relation_b2_short_root(B2):
    # α2 가 짧은 근: 1 - a_21 = 3
    F = B2.field
    eps = B2.root.eps[1]
    terms = {}
    for k in range(4):
        word = (1,) * (3 - k) + (0,) + (1,) * k
        terms[word] = (-1) ** k * F.qbinom(3, k, eps)
    assert B2.from_words(terms).is_zero()


def test_ir_product_rule(A2, rng):
    x, y = _random_element(A2, rng, (0, 1, 1)), _random_element(A2, rng, (0, 0, 1))
    wx = (1, 2)
    for i in range(2):
        lhs = (x * y).ir(i)
        rhs = x.ir(i) * y + (x * y.ir(i)).scale(A2.qpair(A2.alpha(i), wx))
        assert lhs == rhs


def test_r_product_rule(A2):
    x, y = A2.word((0, 1)), A2.word((1, 1, 0))
    wy = (1, 2)
    for i in range(2):
        lhs = (x * y).r(i)
        rhs = (x.r(i) * y).scale(A2.qpair(A2.alpha(i), wy)) + x * y.r(i)
        assert lhs == rhs


def test_r_and_ir_commute(A2, rng):
    x = _random_element(A2, rng, (0, 0, 1, 1))
    for i in range(2):
        for j in range(2):
            assert x.r(i).ir(j) == x.ir(j).r(i)


def test_sigma_swaps_derivations(A2, rng):
    x = _random_element(A2, rng, (0, 1, 1))
    for i in range(2):
        assert x.r(i).sigma() == x.sigma().ir(i)
    assert x.sigma().sigma() == x


def test_pairing_on_generators(A2):
    F = A2.field
    val = pairing(A2.F(0), A2.E(0))
    assert val == F.wrap("-1/(q - q^(-1))")
    assert pairing(A2.F(0), A2.E(1)) == 0


def test_pairing_left_derivation(A2, rng):
    x = _random_element(A2, rng, (0, 0, 1))
    for y_word in A2.weight_basis((1, 1)).words:
        y = A2.word(y_word, MINUS)
        lhs = pairing(A2.F(0) * y, x)
        rhs = pairing(y, x.ir(0)) * A2.field.wrap(A2.c_pair(0))
        assert lhs == rhs


@pytest.mark.parametrize("mu", [(1, 1), (2, 1), (2, 2)])
def test_gram_matrix_is_invertible(A2, mu):
    G = A2.gram_matrix(mu)
    Ginv = mu_.inverse(G)
    assert mu_.equal(mu_.mul(G, Ginv), mu_.eye(A2.dim(mu), A2.K))


def test_reverse_order_basis_converts(A2, rng):
    rev = FreeAlgebra(A2.root, A2.field, reverse=True)
    x = _random_element(A2, rng, (0, 1, 1))
    assert A2.convert(rev.convert(x)) == x
    assert rev.weight_basis((1, 1)).words != A2.weight_basis((1, 1)).words


def test_divided_power(A2, B2):
    assert A2.divided_power(0, 2).scale(A2.field.qfact(2)) == A2.word((0, 0))
    # 짧은 근에서는 q_i = q
    F = B2.field
    assert B2.divided_power(1, 3).scale(F.qfact(3, B2.root.eps[1])) == B2.word((1, 1, 1))
    assert B2.divided_power(0, 1) == B2.E(0)


def test_bar_on_coefficients(A2):
    x = A2.word((0, 1), coeff="q")
    assert x.bar() == A2.word((0, 1), coeff="q^(-1)")


def test_ktag_rules(A2):
    x = A2.E(0).with_ktag((0, 1))
    with pytest.raises(AlgebraError):
        x + A2.E(0)
    with pytest.raises(AlgebraError):
        x.r(0)
    assert x.bar().ktag == (0, -1)


def test_bad_inputs(A2):
    with pytest.raises(AlgebraError):
        A2.weight_basis((-1, 0))
    with pytest.raises(AlgebraError):
        A2.E(0) + A2.F(0)
    with pytest.raises(AlgebraError):
        pairing(A2.E(0), A2.F(0))


def test_pairing_with_ktags(A2):
    F = A2.field
    y, x = A2.F(0).with_ktag((1, 0)), A2.E(0).with_ktag((0, 1))
    # (α1, α2) = -1
    assert pairing(y, x) == F.wrap("-q/(q - q^(-1))")
    with pytest.raises(AlgebraError):
        pairing(y, A2.E(0))
    with pytest.raises(AlgebraError):
        pairing(A2.F(0), x)
