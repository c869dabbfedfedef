"""무작위 표본(높이 ≤ 4) 위에서 구조 항등식을 반복 확인합니다."""
import pytest

from qsp_kmatrix import build_params, catalog_config
from qsp_kmatrix.core.freealg import FreeAlgebra
from qsp_kmatrix.core.rootdata import RootDatum, w_add, w_scale
from qsp_kmatrix.core.triangular import INV, BraidOperators
from qsp_kmatrix.utils.descriptors import cartan_matrix

SAMPLES = 200
MAX_HEIGHT = 4
COEFFS = ("1", "-1", "2", "q", "q^(-1)", "q^2 - 1")


@pytest.fixture(scope="module")
def braid_ops():
    return [BraidOperators(FreeAlgebra(RootDatum(cartan_matrix(t, 2)))) for t in ("A", "B")]


def _random_element(alg, rng):
    letters = [rng.randrange(alg.n) for _ in range(rng.randint(1, MAX_HEIGHT))]
    x = alg.zero()
    for _ in range(3):
        rng.shuffle(letters)
        x = x + alg.word(tuple(letters), coeff=rng.choice(COEFFS))
    return x, alg.wt(letters)


def _minus(mu, i):
    return tuple(m - (1 if k == i else 0) for k, m in enumerate(mu))


def test_derivation_identities(braid_ops, rng):
    failures = []
    for n in range(SAMPLES):
        alg = braid_ops[n % 2].alg
        x, mu = _random_element(alg, rng)
        for i in range(alg.n):
            if not mu[i]:
                continue
            # ᵢr(x̄) = q^{(α_i, μ-α_i)} bar(r_i(x))
            if x.bar().ir(i) != x.r(i).bar().scale(alg.qpair(alg.alpha(i), _minus(mu, i))):
                failures.append(("ribar", mu, i))
            if x.r(i).sigma() != x.sigma().ir(i):
                failures.append(("sigma", mu, i))
            for j in range(alg.n):
                if _minus(_minus(mu, i), j)[j] < 0:
                    continue
                if x.r(i).ir(j) != x.ir(j).r(i):
                    failures.append(("rijr", mu, i, j))
    assert failures == []


def _braid_domain_element(ops, i, rng):
    """T_i 가 U⁺ 안으로 보내는 원소: E_j, T_i^{-1}(E_j) (j ≠ i) 의 곱."""
    alg = ops.alg
    others = [j for j in range(alg.n) if j != i]
    gens = [alg.E(j) for j in others] + [ops.apply(i, alg.E(j), INV) for j in others]
    u, height = alg.one(), 0
    while True:
        g = rng.choice(gens)
        h = sum(g.weights()[0])
        if height + h > MAX_HEIGHT:
            break
        u, height = u * g, height + h
        if rng.random() < 0.3:
            break
    return u.scale(alg.field.convert(rng.choice(COEFFS)))


@pytest.mark.slow
def test_T_through_bar_and_inverse(braid_ops, rng):
    failures = []
    for n in range(SAMPLES):
        ops = braid_ops[n % 2]
        alg = ops.alg
        i = rng.randrange(alg.n)
        u = _braid_domain_element(ops, i, rng)
        mu = u.weights()[0]
        # T_i(u) = (-1)^{μ(h_i)} q^{(μ, α_i)} bar(T_i^{-1}(ū))
        sign = (-1) ** int(alg.root.coroot(i, mu))
        rhs = ops.apply(i, u.bar(), INV).bar().scale(alg.qpair(mu, alg.alpha(i)) * sign)
        if ops.apply(i, u) != rhs:
            failures.append((mu, i))
    assert failures == []


@pytest.mark.parametrize("name", ["A1_split", "A2_qsplit", "A3_X2"])
def test_xi_product_rule(name, rng):
    params = build_params(catalog_config(name))
    root, sd = params.root, params.satake
    fund = [root.fundamental_weight(k) for k in range(root.rank)]

    def draw():
        lam = tuple(0 for _ in range(root.rank))
        for w in fund:
            lam = w_add(lam, w_scale(rng.randint(-2, 2), w))
        return lam

    failures = []
    for _ in range(SAMPLES):
        mu, nu = draw(), draw()
        # ξ(μ+ν) = ξ(μ) ξ(ν) q^{-(μ+Θμ, ν)}
        factor = params.q_pair(w_scale(-1, w_add(mu, sd.theta(mu))), nu)
        if params.xi_eval(w_add(mu, nu)) != params.xi_eval(mu) * params.xi_eval(nu) * factor:
            failures.append((mu, nu))
    assert failures == []


@pytest.mark.parametrize("qk_name", ["a1_qk", "a2_qk"])
def test_support_on_random_weights(request, qk_name, rng):
    qk = request.getfixturevalue(qk_name)
    n = qk.algebra.n
    theta = qk.params.satake.theta
    checked = 0
    for _ in range(SAMPLES):
        mu = [0] * n
        for _ in range(rng.randint(1, MAX_HEIGHT)):
            mu[rng.randrange(n)] += 1
        mu = tuple(mu)
        if qk.component(mu).is_zero():
            continue
        checked += 1
        assert theta(mu) == w_scale(-1, mu)
    assert checked > 0
