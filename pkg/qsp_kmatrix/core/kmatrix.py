"""가군 위의 보편 K-행렬 K_M = 𝔛 ξ T_{w_X}^{-1} T_{w_0}^{-1} 과 그 성질 검사.

모든 검사는 유리함수체 위의 정확한 행렬 등식이며, 결과는 CheckResult 로 돌려줍니다.
"""
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple

from sympy import Matrix, Rational, ilcm
from sympy.polys.matrices import DomainMatrix

from ..utils import matrix_utils as mu_
from .freealg import MINUS, PLUS
from .qsp import QSPParams
from .quasik import QuasiK, extend
from .repcat import (CheckResult, ModuleAction, ModuleData, QuasiRCache, compare, kappa, lusztig_T_word,
                     quasiR_legs, rhat, rhat_twisted, tensor, twist)
from .rootdata import Weight, is_nonneg, q_plus_up_to, w_add, w_scale

XiFunction = Callable[[Weight], Any]


@dataclass(eq=False)
class KParts:
    """가군 M 위의 K-행렬 조각들."""
    module: ModuleData
    X: DomainMatrix
    xi: DomainMatrix
    xi_inv: DomainMatrix
    TwX: DomainMatrix
    TwX_inv: DomainMatrix
    Tw0: DomainMatrix
    Tw0_inv: DomainMatrix
    Kprime: DomainMatrix
    K: DomainMatrix


def quasik_operator(qk: QuasiK, M: ModuleData) -> DomainMatrix:
    """𝔛_M = Σ_{ht μ ≤ gap M} act(𝔛_μ). 필요하면 qk 를 먼저 늘립니다."""
    if qk.cutoff < M.gap:
        extend(qk, M.gap)
    acc = mu_.zeros(M.dim, M.dim, M.K)
    for mu in qk.weights():
        if sum(mu) <= M.gap:
            acc = mu_.add(acc, M.action.element(qk.component(mu)))
    return acc


def xi_values(params: QSPParams, M: ModuleData, xi: Optional[XiFunction] = None) -> List[Any]:
    if xi is not None:
        return [xi(w) for w in M.weights]
    return [params.xi_eval(w).raw for w in M.weights]


def corrupted_xi(params: QSPParams) -> XiFunction:
    """ξ(λ) q^{2 λ_1}: 점화식을 깨뜨린 대조군."""
    fld = params.field

    def xi(w: Weight) -> Any:
        return params.xi_eval(w).raw * fld.q_pow(2 * Fraction(w[0]))

    return xi


def build_kparts(M: ModuleData, qk: QuasiK, xi: Optional[XiFunction] = None) -> KParts:
    """K′_M = 𝔛 ξ T_{w_X}^{-1},  K_M = K′_M T_{w_0}^{-1}.

    Raises:
        ParameterError: γ 를 P 로 확장할 수 없어 ξ 를 만들 수 없는 경우
    """
    params = qk.params
    sd = params.satake
    vals = xi_values(params, M, xi)
    xi_m = mu_.diag(vals, M.K)
    xi_inv = mu_.diag([M.K.one / v for v in vals], M.K)
    X = quasik_operator(qk, M)
    TwX = lusztig_T_word(M, sd.wX_word)
    TwX_inv = lusztig_T_word(M, sd.wX_word, inverse=True)
    Tw0 = lusztig_T_word(M, sd.w0_word)
    Tw0_inv = lusztig_T_word(M, sd.w0_word, inverse=True)
    Kp = mu_.mul(X, xi_m, TwX_inv)
    return KParts(M, X, xi_m, xi_inv, TwX, TwX_inv, Tw0, Tw0_inv, Kp, mu_.mul(Kp, Tw0_inv))


def theta_fixed_basis(params: QSPParams) -> List[Tuple[int, ...]]:
    """Q^Θ = {λ ∈ Q : Θ(λ) = λ} 의 정수 기저."""
    sd = params.satake
    n = params.root.rank
    cols = [sd.theta(params.root.simple_root(j)) for j in range(n)]
    T = Matrix(n, n, lambda i, j: Rational(cols[j][i].numerator, cols[j][i].denominator)) - Matrix.eye(n)
    out = []
    for v in T.nullspace():
        scale = ilcm(1, *[x.q for x in v])
        out.append(tuple(int(x * scale) for x in v))
    return out


# --- 생성원 ---

Generator = Tuple[str, Callable[[ModuleAction], DomainMatrix]]


def coideal_generators(params: QSPParams) -> List[Generator]:
    """K_λ (λ ∈ Q^Θ), E_i, F_i (i ∈ X), B_j = F_j + c_j X_j K_j^{-1} + s_j K_j^{-1} (j ∉ X).

    각 생성원은 ModuleAction 을 받아 행렬을 돌려주는 함수입니다.
    """
    sd = params.satake
    root = params.root
    gens: List[Generator] = []
    for lam in theta_fixed_basis(params):
        gens.append((f"K{list(lam)}", lambda a, lam=lam: a.K(lam)))
    for i in sd.X:
        gens.append((f"E{i + 1}", lambda a, i=i: a.letter(i, PLUS)))
        gens.append((f"F{i + 1}", lambda a, i=i: a.letter(i, MINUS)))
    for j in range(root.rank):
        if j in sd.X:
            continue
        cX = params.X(j).scale(params.c[j])
        s = params.s[j].raw
        neg = w_scale(-1, root.simple_root(j))

        def B(a: ModuleAction, j=j, cX=cX, s=s, neg=neg) -> DomainMatrix:
            Kinv = a.K(neg)
            out = mu_.add(a.letter(j, MINUS), mu_.mul(a.element(cX), Kinv))
            return mu_.add(out, mu_.scale(Kinv, s)) if s else out

        gens.append((f"B{j + 1}", B))
    return gens


def _intertwine(name: str, L: DomainMatrix, gens: List[Generator], left: ModuleAction, right: ModuleAction,
                M: ModuleData) -> CheckResult:
    t0 = time.perf_counter()
    bad: List[List[Any]] = []
    for label, g in gens:
        lhs = mu_.mul(L, g(left))
        rhs = mu_.mul(g(right), L)
        r = compare(label, lhs, rhs, M.field)
        if not r.passed:
            bad.append([label, r.details.get("mismatch_count", 0), r.mismatches[:3]])
    return CheckResult(name, not bad, (M.dim, M.dim), time.perf_counter() - t0, bad,
                       {"generators": [label for label, _ in gens]})


def check_intertwining(kp: KParts, params: QSPParams) -> List[CheckResult]:
    """K_M act(b) = act(ττ0 b) K_M 와 K′_M act(tw τ0 b) = act(ττ0 b) K′_M."""
    M = kp.module
    sd = params.satake
    gens = coideal_generators(params)
    right = twist(M, sd.tautau0).action
    return [
        _intertwine("K_intertwining", kp.K, gens, M.action, right, M),
        _intertwine("Kprime_intertwining", kp.Kprime, gens, twist(M, sd.tau0).tw_action, right, M),
    ]


def check_quasik_intertwining(kp: KParts, qk: QuasiK) -> CheckResult:
    """(F_i + c_i X_i K_i^{-1} + s_i K_i^{-1}) 𝔛 = 𝔛 (F_i + bar(c_i X_i) K_i + s̄_i K_i).

    i ∈ X 에서는 E_i, F_i 와의 가환성을 봅니다.
    """
    t0 = time.perf_counter()
    M = kp.module
    params = qk.params
    root = params.root
    a = M.action
    bad: List[List[Any]] = []
    for i in range(root.rank):
        if i in params.satake.X:
            for label, side in (("E", PLUS), ("F", MINUS)):
                g = a.letter(i, side)
                if not mu_.equal(mu_.mul(g, kp.X), mu_.mul(kp.X, g)):
                    bad.append([f"{label}{i + 1}"])
            continue
        cX, cXb = qk.generators(i)
        s = params.s[i]
        Ki, Kinv = M.K_i(i), M.K_i(i, -1)
        left = mu_.add(M.F[i], mu_.mul(a.element(cX), Kinv), mu_.scale(Kinv, s.raw))
        right = mu_.add(M.F[i], mu_.mul(a.element(cXb), Ki), mu_.scale(Ki, s.bar().raw))
        r = compare(f"B{i + 1}", mu_.mul(left, kp.X), mu_.mul(kp.X, right), M.field)
        if not r.passed:
            bad.append([f"B{i + 1}", r.details.get("mismatch_count", 0), r.mismatches[:3]])
    return CheckResult("quasik_intertwining", not bad, (M.dim, M.dim), time.perf_counter() - t0, bad)


# --- 여곱 인수 ---

def _conj(kp: KParts) -> Tuple[DomainMatrix, DomainMatrix]:
    """C = ξ T_{w0}^{-1} T_{wX}^{-1} 와 그 역."""
    return (mu_.mul(kp.xi, kp.Tw0_inv, kp.TwX_inv), mu_.mul(kp.TwX, kp.Tw0, kp.xi_inv))


def build_RtauX(kp: KParts, N: ModuleData, params: QSPParams, qrc: QuasiRCache) -> DomainMatrix:
    """R^{(τ,X)} = Σ C act(ττ0 y, M) C^{-1} ⊗ act(x, N), R·R̄_X 의 성분에서."""
    M = kp.module
    h = min(M.gap, N.gap)
    total = mu_.zeros(M.dim * N.dim, M.dim * N.dim, M.K)
    for _, Y, X in quasiR_legs(qrc.R_RXbar(h), M, N, params.satake.tautau0, _conj(kp), h):
        total = mu_.add(total, mu_.kron(Y, X))
    return total


def check_RtauX_blocks(kp: KParts, N: ModuleData, params: QSPParams, qrc: QuasiRCache) -> CheckResult:
    """첫 다리가 M_λ -> M_{λ-Θμ} 이고 w_X μ ≥ 0 인 μ 에서만 0 이 아님."""
    t0 = time.perf_counter()
    M = kp.module
    sd = params.satake
    h = min(M.gap, N.gap)
    bad: List[List[Any]] = []
    for mu, Y, _ in quasiR_legs(qrc.R_RXbar(h), M, N, sd.tautau0, _conj(kp), h):
        if not is_nonneg(sd.wX(mu)):
            bad.append(["wX_support", list(mu)])
            continue
        shift = w_scale(-1, sd.theta(mu))
        for (r, c) in mu_.entries(Y):
            if M.weights[r] != w_add(M.weights[c], shift):
                bad.append(["block", list(mu), r, c])
                break
    return CheckResult("RtauX_blocks", not bad, (M.dim * N.dim, M.dim * N.dim), time.perf_counter() - t0, bad[:10])


def build_XK2(M: ModuleData, N: ModuleData, qk: QuasiK) -> DomainMatrix:
    """𝔛_{K2} = Σ_μ K_μ ⊗ 𝔛_μ."""
    if qk.cutoff < N.gap:
        extend(qk, N.gap)
    total = mu_.zeros(M.dim * N.dim, M.dim * N.dim, M.K)
    for mu in qk.weights():
        if sum(mu) <= N.gap:
            total = mu_.add(total, mu_.kron(M.K_matrix(mu), N.action.element(qk.component(mu))))
    return total


# --- 텐서곱 검사 ---

class PairContext:
    """(M, N) 쌍의 검사에 공통으로 쓰이는 조각들."""

    def __init__(self, M: ModuleData, N: ModuleData, qk: QuasiK, qrc: QuasiRCache,
                 xi: Optional[XiFunction] = None):
        self.M, self.N = M, N
        self.qk = qk
        self.params = qk.params
        self.qrc = qrc
        self.MN = tensor(M, N)
        self.kpM = build_kparts(M, qk, xi)
        self.kpN = build_kparts(N, qk, xi) if N is not M else self.kpM
        self._kpMN: Optional[KParts] = None
        self._kpNM: Optional[KParts] = None
        self._xi = xi

    @property
    def kpMN(self) -> KParts:
        if self._kpMN is None:
            self._kpMN = build_kparts(self.MN, self.qk, self._xi)
        return self._kpMN

    @property
    def kpNM(self) -> KParts:
        """N⊗M 위의 K. N 이 M 이면 kpMN 과 같습니다."""
        if self.N is self.M:
            return self.kpMN
        if self._kpNM is None:
            self._kpNM = build_kparts(tensor(self.N, self.M), self.qk, self._xi)
        return self._kpNM

    @property
    def fld(self):
        return self.M.field


def check_deltaX(ctx: PairContext) -> CheckResult:
    """Δ(𝔛) = (𝔛⊗1) R^{(τ,X)} 𝔛_{K2}."""
    t0 = time.perf_counter()
    M, N = ctx.M, ctx.N
    rhs = mu_.mul(mu_.kron(ctx.kpM.X, N.identity()), build_RtauX(ctx.kpM, N, ctx.params, ctx.qrc),
                  build_XK2(M, N, ctx.qk))
    return compare("delta_X", ctx.kpMN.X, rhs, ctx.fld, started=t0)


def _deltaK_rhs(ctx: PairContext, rh_tw: DomainMatrix) -> DomainMatrix:
    M, N = ctx.M, ctx.N
    return mu_.mul(mu_.kron(ctx.kpM.K, N.identity()), rh_tw, mu_.kron(ctx.kpN.K, M.identity()),
                   rhat(M, N, ctx.qrc))


def check_deltaK(ctx: PairContext) -> CheckResult:
    """Δ(K) = (K⊗1) R̂^{ττ0}_{N,M} (K⊗1) R̂_{M,N}."""
    t0 = time.perf_counter()
    perm = ctx.params.satake.tautau0
    rhs = _deltaK_rhs(ctx, rhat_twisted(ctx.N, ctx.M, ctx.qrc, perm))
    return compare("delta_K", ctx.kpMN.K, rhs, ctx.fld, started=t0)


def check_fusion(ctx: PairContext) -> List[CheckResult]:
    """꼬인 가군 N^{ττ0} 의 보통 R̂ 로 쓴 융합 공식, 그리고 R̂_{N^{ττ0},M} = R̂^{ττ0}_{N,M}."""
    t0 = time.perf_counter()
    perm = ctx.params.satake.tautau0
    rh_plain = rhat(twist(ctx.N, perm), ctx.M, ctx.qrc)
    rh_tw = rhat_twisted(ctx.N, ctx.M, ctx.qrc, perm)
    same = compare("fusion_twist_consistency", rh_plain, rh_tw, ctx.fld, started=t0)
    t1 = time.perf_counter()
    fused = compare("fusion", ctx.kpMN.K, _deltaK_rhs(ctx, rh_plain), ctx.fld, started=t1)
    return [fused, same]


def check_reflection(ctx: PairContext) -> CheckResult:
    """(K_M⊗1) R̂^{ττ0}_{N,M} (K_N⊗1) R̂_{M,N} = R̂_{N,M} (K_N⊗1) R̂^{ττ0}_{M,N} (K_M⊗1)."""
    t0 = time.perf_counter()
    M, N = ctx.M, ctx.N
    perm = ctx.params.satake.tautau0
    lhs = _deltaK_rhs(ctx, rhat_twisted(N, M, ctx.qrc, perm))
    return compare("reflection", lhs, _reflection_rhs(ctx), ctx.fld, started=t0)


def _reflection_rhs(ctx: PairContext) -> DomainMatrix:
    M, N = ctx.M, ctx.N
    perm = ctx.params.satake.tautau0
    return mu_.mul(rhat(N, M, ctx.qrc), mu_.kron(ctx.kpN.K, M.identity()), rhat_twisted(M, N, ctx.qrc, perm),
                   mu_.kron(ctx.kpM.K, N.identity()))


def check_naturality(ctx: PairContext) -> List[CheckResult]:
    """R̂_{N,M} 을 가군 사상으로 쓴 K 의 자연성과, 반사 방정식 우변이 (N, M) 융합에서 나오는지.

    K_{M⊗N} R̂_{N,M} = R̂_{N,M} K_{N⊗M} 그리고 (반사 우변)·R̂_{N,M} = R̂_{N,M} K_{N⊗M}.
    두 식과 (M, N) 융합을 합치면 반사 방정식이 됩니다.
    """
    t0 = time.perf_counter()
    f = rhat(ctx.N, ctx.M, ctx.qrc)
    f_K = mu_.mul(f, ctx.kpNM.K)
    natural = compare("naturality", mu_.mul(ctx.kpMN.K, f), f_K, ctx.fld, started=t0)
    t1 = time.perf_counter()
    via = compare("reflection_via_fusion", mu_.mul(_reflection_rhs(ctx), f), f_K, ctx.fld, started=t1)
    return [natural, via]


def check_deltaxi(ctx: PairContext) -> CheckResult:
    """Δ(ξ) = (ξ⊗ξ) κ^{-1} κ^{-Θ}."""
    t0 = time.perf_counter()
    M, N = ctx.M, ctx.N
    rhs = mu_.mul(mu_.kron(ctx.kpM.xi, ctx.kpN.xi), kappa(M, N, -1), kappa(M, N, -1, ctx.params.satake.theta))
    return compare("delta_xi", ctx.kpMN.xi, rhs, ctx.fld, started=t0)


def check_KX1X(ctx: PairContext) -> CheckResult:
    """(T_{wX} T_{w0} ⊗ 1) 𝔛_{K2} (T_{wX} T_{w0} ⊗ 1)^{-1} = κ^{-ττ0} (1⊗𝔛) κ^{ττ0}."""
    t0 = time.perf_counter()
    M, N = ctx.M, ctx.N
    sd = ctx.params.satake
    kp = ctx.kpM
    T = mu_.kron(mu_.mul(kp.TwX, kp.Tw0), N.identity())
    Tinv = mu_.kron(mu_.mul(kp.Tw0_inv, kp.TwX_inv), N.identity())
    lhs = mu_.mul(T, build_XK2(M, N, ctx.qk), Tinv)

    def f(w: Weight) -> Weight:
        return sd.permute_weight(sd.tautau0, w)

    rhs = mu_.mul(kappa(M, N, -1, f), mu_.kron(M.identity(), ctx.kpN.X), kappa(M, N, 1, f))
    return compare("KX1X", lhs, rhs, ctx.fld, started=t0)


# --- Ad(ξ) ---

def check_adxi(kp: KParts, params: QSPParams, max_height: int = 2) -> List[CheckResult]:
    """ξ E_ν ξ^{-1} = ξ(ν) E_ν K_{ν+Θν}^{-1}, X-생성원 위에서 Ad(ξ) = T_{w0} T_{wX} ττ0, ξ 와 K_i 의 가환성."""
    M = kp.module
    sd = params.satake
    alg = params.algebra
    root = params.root
    t0 = time.perf_counter()
    bad: List[List[Any]] = []
    for h in range(1, max_height + 1):
        for mu in _heights(root.rank, h):
            nu = tuple(Fraction(x) for x in mu)
            shift = w_scale(-1, w_add(nu, sd.theta(nu)))
            scale = params.xi_eval(nu).raw
            for w in alg.weight_basis(mu).words:
                E = M.action.word(w, PLUS)
                lhs = mu_.mul(kp.xi, E, kp.xi_inv)
                rhs = mu_.scale(mu_.mul(E, M.K_matrix(shift)), scale)
                if not mu_.equal(lhs, rhs):
                    bad.append([list(mu), [i + 1 for i in w]])
    r_e = CheckResult("adxi_E", not bad, (M.dim, M.dim), time.perf_counter() - t0, bad[:10])

    t1 = time.perf_counter()
    bad = []
    T = mu_.mul(kp.Tw0, kp.TwX)
    Tinv = mu_.mul(kp.TwX_inv, kp.Tw0_inv)
    twisted = twist(M, sd.tautau0).action
    for i in sd.X:
        for label, side in (("E", PLUS), ("F", MINUS)):
            lhs = mu_.mul(kp.xi, M.action.letter(i, side), kp.xi_inv)
            rhs = mu_.mul(T, twisted.letter(i, side), Tinv)
            if not mu_.equal(lhs, rhs):
                bad.append([f"{label}{i + 1}"])
    r_x = CheckResult("adxi_X", not bad, (M.dim, M.dim), time.perf_counter() - t1, bad)

    t2 = time.perf_counter()
    bad = [[f"K{i + 1}"] for i in range(root.rank)
           if not mu_.equal(mu_.mul(kp.xi, M.K_i(i)), mu_.mul(M.K_i(i), kp.xi))]
    r_k = CheckResult("adxi_K", not bad, (M.dim, M.dim), time.perf_counter() - t2, bad)
    return [r_e, r_x, r_k]


def _heights(rank: int, h: int) -> List[Tuple[int, ...]]:
    return [mu for mu in q_plus_up_to(rank, h) if sum(mu) == h]


def kmatrix_dump(kp: KParts) -> Dict[str, Any]:
    """K_M 와 K′_M 의 희소 덤프."""
    fld = kp.module.field
    return {"module": kp.module.name, "dim": kp.module.dim,
            "K": mu_.nonzero_triples(kp.K, fld.to_text),
            "Kprime": mu_.nonzero_triples(kp.Kprime, fld.to_text)}
