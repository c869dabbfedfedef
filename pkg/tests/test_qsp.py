from dataclasses import replace

import pytest

from qsp_kmatrix import build_params, catalog_config
from qsp_kmatrix.core.qsp import xi_exponent
from qsp_kmatrix.exceptions import ParameterError


@pytest.mark.parametrize("name", ["A1_split", "A1_s", "A2_qsplit", "A3_X2", "B2_split"])
def test_catalog_params_validate(name):
    params = build_params(catalog_config(name))
    assert params.violations == []
    assert all(params.report.values())


def test_a1_generator(a1):
    alg = a1.algebra
    assert a1.X(0) == -alg.E(0)
    assert a1.theta_alpha(0) == (-1,)
    assert a1.gamma(0) == a1.c[0]


def test_cX_bar_formula(a1, a2):
    for params in (a1, a2):
        for i in params.satake.I_ns or range(params.root.rank):
            assert params.cX_bar(i) == params.cX_bar_formula(i)


def test_qsplit_generators_have_theta_weight(a2):
    # Θ(α1) = -α2 이므로 X_1 의 웨이트는 α2
    assert list(a2.X(0).comps) == [(0, 1)]
    assert list(a2.X(1).comps) == [(1, 0)]


def test_bad_c_in_report_mode(a1_cfg):
    cfg = replace(a1_cfg, c={0: "q^(-2)"})
    params = build_params(cfg, strict=False)
    assert "c_bar_relation" in params.violations
    with pytest.raises(ParameterError) as exc:
        build_params(cfg)
    assert "c_bar_relation" in exc.value.violations


def test_zero_c_is_rejected(a1_cfg):
    with pytest.raises(ParameterError) as exc:
        build_params(replace(a1_cfg, c={}))
    assert "c_nonzero" in exc.value.violations


def test_s_outside_non_standard_nodes(a2_cfg):
    params = build_params(replace(a2_cfg, s={0: "1"}), strict=False)
    assert "s_in_S" in params.violations


def test_unparseable_scalar(a1_cfg):
    with pytest.raises(ParameterError) as exc:
        build_params(replace(a1_cfg, c={0: "x^2"}))
    assert exc.value.violations == ("scalar_syntax",)


def test_gamma_is_multiplicative(a2):
    root = a2.root
    w1, w2 = root.fundamental_weight(0), root.fundamental_weight(1)
    both = tuple(a + b for a, b in zip(w1, w2))
    assert a2.gamma_eval(both) == a2.gamma_eval(w1) * a2.gamma_eval(w2)
    for j in range(root.rank):
        assert a2.gamma_eval(root.simple_root(j)) == a2.gamma(j)


def test_xi_at_zero_is_one(a1, a2):
    assert a1.xi_eval((0,)) == 1
    assert a2.xi_eval((0, 0)) == 1


def test_xi_exponent_split_a1(a1):
    # Θ = -1 이면 λ⁺ = 0 이고 (α̃, α̃) = (α, α) = 2
    assert xi_exponent(a1, (1,)) == 2
    assert a1.xi_eval((1,)) == a1.gamma(0) * a1.field.wrap("q^2")


def test_xi_requires_integral_weight(a1):
    with pytest.raises(ParameterError):
        a1.gamma_eval((a1.root.fundamental_weight(0)[0] / 2,))


def test_a3_catalog_gamma_on_fundamental_weights():
    params = build_params(catalog_config("A3_X2"))
    expected = params.field.wrap("q^2 - 1")
    assert params.gamma(0) == expected and params.gamma(2) == expected
    assert all(g == expected for g in params.gamma_fundamental)


def test_a3_choice_needing_root_of_unity():
    cfg = catalog_config("A3_X2")
    # c_1 = c_3 = q 이면 γ(α_1) = -q, γ(α_3) = q 이고 부호를 P 로 올릴 수 없습니다
    params = build_params(replace(cfg, c={0: "q", 2: "q"}), strict=False)
    assert params.gamma(0) == params.field.wrap("-q")
    with pytest.raises(ParameterError) as exc:
        params.gamma_fundamental
    assert exc.value.violations == ("gamma_extension",)
