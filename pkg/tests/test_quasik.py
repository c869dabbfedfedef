import json
from dataclasses import replace

import pytest

from qsp_kmatrix import build_params, catalog_config
from qsp_kmatrix.core.quasik import (QuasiK, check_solvable, check_uniqueness, compute_quasik, derivation_violations,
                                     extend, rhs_pair, s_zero_support_violations, solve_step, support_violations)
from qsp_kmatrix.exceptions import SolvabilityError
from qsp_kmatrix.utils import cache_utils


def test_a1_support_is_even(a1_qk):
    assert a1_qk.cutoff == 8
    assert all(mu[0] % 2 == 0 for mu in a1_qk.weights())
    assert (2,) in a1_qk.comps
    assert s_zero_support_violations(a1_qk, 0) == []


def test_a1_degree_two_component(a1_qk, a1):
    # r(𝔛_{2α}) = -(q - q^{-1}) bar(c X) = (q - q^{-1}) q E
    alg, fld = a1.algebra, a1.field
    x = a1_qk.component((2,))
    assert x.r(0) == alg.E(0).scale(fld.convert("(q - q^(-1)) * q"))
    assert x.ir(0) == x.r(0)


def test_a1_s_gives_odd_component(a1s):
    qk = compute_quasik(a1s, 3)
    alg, fld = a1s.algebra, a1s.field
    assert qk.component((1,)) == alg.E(0).scale(fld.convert("q^(-1) - q"))
    assert support_violations(qk) == []


def test_cutoff_zero_is_identity(a1):
    qk = compute_quasik(a1, 0)
    assert qk.weights() == [(0,)]
    assert qk.component((0,)) == a1.algebra.one()
    with pytest.raises(SolvabilityError):
        compute_quasik(a1, -1)


def test_a2_support_is_theta_anti_invariant(a2_qk):
    assert support_violations(a2_qk) == []
    # Θ(α1) = -α2 이므로 지지 집합은 α1 + α2 의 배수
    assert all(mu[0] == mu[1] for mu in a2_qk.weights())
    assert (1, 1) in a2_qk.comps


def test_derivations_hold(a1_qk, a2_qk):
    assert derivation_violations(a1_qk) == []
    assert derivation_violations(a2_qk) == []


def test_uniqueness_across_basis_orders(a2, a2_qk):
    other = compute_quasik(a2, a2_qk.cutoff, reverse=True)
    assert other.algebra is not a2_qk.algebra
    assert check_uniqueness(a2_qk, other) == []


def test_incompatible_c_fails_at_height_two(a1_cfg):
    params = build_params(replace(a1_cfg, c={0: "q^(-2)"}), strict=False)
    with pytest.raises(SolvabilityError) as exc:
        compute_quasik(params, 4)
    assert exc.value.weight == (2,)


def test_log_records_each_solved_weight(a2_qk):
    logged = {tuple(entry["weight"]) for entry in a2_qk.log}
    assert logged == set(a2_qk.weights()) - {(0, 0)}


def test_dict_roundtrip(a2, a2_qk):
    data = json.loads(json.dumps(a2_qk.to_dict()))
    back = QuasiK.from_dict(a2, data)
    assert back.cutoff == a2_qk.cutoff
    assert back.weights() == a2_qk.weights()
    for mu in a2_qk.weights():
        assert back.component(mu) == a2_qk.component(mu)


def test_cache_is_reused(tmp_path, a1):
    first = compute_quasik(a1, 4, cache_dir=str(tmp_path))
    files = list(tmp_path.glob("quasik_*.json"))
    assert len(files) == 1
    second = compute_quasik(a1, 2, cache_dir=str(tmp_path))
    assert second.cutoff == 4
    assert second.component((4,)) == first.component((4,))


def test_corrupted_cache_is_ignored(tmp_path, a1, capsys):
    key = cache_utils.fingerprint(a1)
    (tmp_path / f"quasik_{key}.json").write_text("{not json", encoding="utf-8")
    qk = compute_quasik(a1, 2, cache_dir=str(tmp_path))
    assert qk.cutoff == 2
    assert "경고 (cache_utils)" in capsys.readouterr().out


def test_cache_fingerprint_depends_on_parameters(a1, a1s):
    assert cache_utils.fingerprint(a1) != cache_utils.fingerprint(a1s)
    assert cache_utils.fingerprint(a1) != cache_utils.fingerprint(a1, reverse=True)


@pytest.mark.slow
@pytest.mark.parametrize("name,height", [("A1_split", 8), ("A1_s", 8), ("A2_qsplit", 6), ("B2_split", 6),
                                         ("A3_X2", 6)])
def test_acceptance_heights(name, height):
    params = build_params(catalog_config(name))
    qk = compute_quasik(params, height)
    assert qk.cutoff == height
    assert support_violations(qk) == []
    assert derivation_violations(qk) == []


def test_single_step_reproduces_component(a2_qk):
    mu = (1, 1)
    A, iA = {}, {}
    for i in range(2):
        A[i], iA[i] = rhs_pair(a2_qk, mu, i)
    assert check_solvable(a2_qk, mu, A, iA)["conditions"] > 0
    assert solve_step(a2_qk, mu, A, iA) == a2_qk.component(mu)


def test_extend_in_place(a1, a1_qk):
    qk = compute_quasik(a1, 2)
    assert extend(qk, 4) is qk
    assert qk.cutoff == 4
    assert qk.component((4,)) == a1_qk.component((4,))
