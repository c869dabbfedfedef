import pytest

from qsp_kmatrix.core.freealg import FreeAlgebra
from qsp_kmatrix.core.quasir import QuasiR, QuasiRBuilder, R_times_RXbar, quasiR_dual, quasiR_pbw, quasiR_X, root_vectors
from qsp_kmatrix.core.rootdata import RootDatum
from qsp_kmatrix.core.triangular import BraidOperators
from qsp_kmatrix.exceptions import RootDatumError
from qsp_kmatrix.utils import matrix_utils as mu_
from qsp_kmatrix.utils.descriptors import cartan_matrix


def _setup(series, rank):
    root = RootDatum(cartan_matrix(series, rank))
    ops = BraidOperators(FreeAlgebra(root))
    w0, _ = root.longest_words(())
    return ops, w0


@pytest.fixture(scope="module")
def a2():
    return _setup("A", 2)


def test_a1_component():
    ops, w0 = _setup("A", 1)
    alg = ops.alg
    R = quasiR_dual(alg, 3)
    entry = mu_.entries(R.component((1,)))[(0, 0)]
    assert alg.field.wrap(entry) == alg.field.wrap("q^(-1) - q")
    assert R.equals(quasiR_pbw(ops, w0, 3))


def test_root_vector_weights(a2):
    ops, w0 = a2
    table = root_vectors(ops, w0)
    assert sorted(rv.gamma for rv in table) == sorted(ops.alg.root.positive_roots())
    assert table[0].gamma == ops.alg.alpha(w0[0])


def test_non_reduced_word_is_rejected(a2):
    ops, _ = a2
    with pytest.raises(RootDatumError):
        root_vectors(ops, (0, 0))


def test_dual_equals_pbw_a2(a2):
    ops, w0 = a2
    R = quasiR_dual(ops.alg, 4)
    assert R.mismatched_weights(quasiR_pbw(ops, w0, 4)) == []


def test_pbw_is_independent_of_reduced_word(a2):
    ops, w0 = a2
    other = (1, 0, 1) if w0 == (0, 1, 0) else (0, 1, 0)
    assert quasiR_pbw(ops, w0, 3).equals(quasiR_pbw(ops, other, 3))


def test_R_times_Rbar_is_identity(a2):
    ops, _ = a2
    R = quasiR_dual(ops.alg, 4)
    assert (R * R.bar()).equals(QuasiR.identity(ops.alg, 4))


def test_prefix_and_suffix_factorise(a2):
    ops, w0 = a2
    builder = QuasiRBuilder(ops, w0)
    R = builder.pbw(3)
    assert (builder.suffix(1, 3) * builder.prefix(1, 3)).equals(R)
    assert builder.simple_factor(w0[0], 3).equals(builder.prefix(1, 3))


def test_levi_factor_and_remainder(a2):
    ops, w0 = a2
    wX = w0[:1]
    RX = quasiR_X(ops, w0, wX, 3)
    assert RX.equals(QuasiRBuilder(ops, w0).simple_factor(w0[0], 3))
    assert (R_times_RXbar(ops, w0, wX, 3) * RX).equals(quasiR_pbw(ops, w0, 3))


def test_dump_uses_one_based_nodes(a2):
    ops, _ = a2
    dump = quasiR_dual(ops.alg, 1).to_dump()
    assert [entry["weight"] for entry in dump] == [[0, 0], [0, 1], [1, 0]]
    assert dump[2]["terms"][0][:2] == [[1], [1]]


@pytest.mark.slow
@pytest.mark.parametrize("series,rank,height", [("A", 2, 6), ("B", 2, 6), ("A", 3, 4)])
def test_dual_equals_pbw_acceptance(series, rank, height):
    ops, w0 = _setup(series, rank)
    R = quasiR_dual(ops.alg, height)
    assert R.mismatched_weights(quasiR_pbw(ops, w0, height)) == []
