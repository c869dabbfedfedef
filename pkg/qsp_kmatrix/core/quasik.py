"""준 K-행렬 𝔛 = Σ_μ 𝔛_μ 의 높이별 귀납 계산.

각 웨이트 μ 에서 r_i(𝔛_μ) = A_i 와 ᵢr(𝔛_μ) = ᵢA 를 만족하는 유일한 원소를 구합니다.
해의 존재 조건 두 가지를 먼저 정확히 확인하고, r_i 들을 쌓은 선형계를 풀고,
마지막으로 ᵢr 쪽 절반이 자동으로 맞는지 검사합니다.
"""
import time
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..exceptions import AlgebraError, SolvabilityError, VerificationError
from ..utils import cache_utils
from ..utils import matrix_utils as mu_
from .freealg import MINUS, PLUS, AlgebraElement, FreeAlgebra, Mu, pairing
from .qsp import QSPParams
from .rootdata import q_plus_up_to, to_int


class QuasiK:
    """높이 cutoff 까지 계산된 준 K-행렬.

    Attributes:
        comps (dict): 웨이트 -> AlgebraElement (0 이 아닌 성분만)
        log (list): 웨이트별 계산 기록
    """

    def __init__(self, params: QSPParams, algebra: Optional[FreeAlgebra] = None):
        self.params = params
        self.algebra = algebra or params.algebra
        self.cutoff = 0
        zero = self.algebra.wt(())
        self.comps: Dict[Mu, AlgebraElement] = {zero: self.algebra.one()}
        self.log: List[Dict[str, Any]] = []
        self._gens: Dict[int, Tuple[AlgebraElement, AlgebraElement]] = {}

    def __repr__(self) -> str:
        return f"QuasiK(cutoff={self.cutoff}, support={len(self.comps)})"

    def component(self, mu: Sequence[int]) -> AlgebraElement:
        mu = tuple(int(x) for x in mu)
        if any(x < 0 for x in mu):
            return self.algebra.zero()
        return self.comps.get(mu, self.algebra.zero())

    def weights(self) -> List[Mu]:
        return sorted(self.comps, key=lambda m: (sum(m), m))

    def generators(self, i: int) -> Tuple[AlgebraElement, AlgebraElement]:
        """(c_i X_i, bar(c_i X_i)) 를 이 QuasiK 의 대수 좌표로."""
        cached = self._gens.get(i)
        if cached is None:
            p = self.params
            if i in p.satake.X:
                cached = (self.algebra.zero(), self.algebra.zero())
            else:
                cX = p.X(i).scale(p.c[i])
                cXb = p.cX_bar(i)
                if self.algebra is not p.algebra:
                    cX, cXb = self.algebra.convert(cX), self.algebra.convert(cXb)
                cached = (cX, cXb)
            self._gens[i] = cached
        return cached

    def to_dict(self) -> Dict[str, Any]:
        fld = self.algebra.field
        return {
            "cutoff": self.cutoff,
            "reverse": self.algebra.reverse,
            "components": [{"weight": list(m),
                            "terms": [[[i + 1 for i in w], fld.to_text(c)] for w, c in self.comps[m].terms()]}
                           for m in self.weights()],
            "log": self.log,
        }

    @classmethod
    def from_dict(cls, params: QSPParams, data: Dict[str, Any],
                  algebra: Optional[FreeAlgebra] = None) -> "QuasiK":
        qk = cls(params, algebra)
        fld = qk.algebra.field
        qk.comps = {}
        for entry in data["components"]:
            terms = {tuple(i - 1 for i in w): fld.parse(c) for w, c in entry["terms"]}
            elem = qk.algebra.from_words(terms, PLUS)
            if elem or not any(entry["weight"]):
                qk.comps[tuple(entry["weight"])] = elem
        qk.cutoff = int(data["cutoff"])
        qk.log = list(data.get("log", []))
        return qk


# --- 한 단계 ---

def _shift(mu: Mu, *terms: Sequence[int]) -> Mu:
    out = list(mu)
    for t in terms:
        for k, x in enumerate(t):
            out[k] += int(x)
    return tuple(out)


def rhs_pair(qk: QuasiK, mu: Mu, i: int) -> Tuple[AlgebraElement, AlgebraElement]:
    """(A_i, ᵢA) ∈ U⁺_{μ-α_i} × U⁺_{μ-α_i}.

    A_i = -(q_i - q_i^{-1}) (𝔛_{μ+Θ(α_i)-α_i} bar(c_i X_i) + bar(s_i) 𝔛_{μ-α_i})
    ᵢA = -(q_i - q_i^{-1}) (q^{-(Θ(α_i), α_i)} c_i X_i 𝔛_{μ+Θ(α_i)-α_i} + s_i 𝔛_{μ-α_i})
    """
    p, alg = qk.params, qk.algebra
    ai = alg.alpha(i)
    neg_ai = tuple(-x for x in ai)
    theta_ai = p.theta_alpha(i)
    qi = alg.q_i(i)
    f = -(qi - 1 / qi)
    x_shift = qk.component(_shift(mu, theta_ai, neg_ai))
    x_lower = qk.component(_shift(mu, neg_ai))
    cX, cXb = qk.generators(i)
    s = p.s[i]
    A = (x_shift * cXb + x_lower.scale(s.bar())).scale(f)
    qfac = p.q_pair([-x for x in theta_ai], ai)
    iA = (cX.scale(qfac) * x_shift + x_lower.scale(s)).scale(f)
    return A, iA


def check_solvable(qk: QuasiK, mu: Mu, A: Dict[int, AlgebraElement], iA: Dict[int, AlgebraElement]) -> Dict[str, int]:
    """해의 존재 조건 두 가지를 정확히 검사합니다.

    r_i(ⱼA) = ⱼr(A_i) (모든 i, j) 그리고 μ = (1-a_ij)α_i + α_j 에서의 q-Serre 형 쌍 조건.

    Raises:
        SolvabilityError: 어느 조건이든 실패하면 (i, j, μ) 를 담아 발생
    """
    alg = qk.algebra
    fld = alg.field
    n = alg.n
    A_mat = alg.root.cartan
    count = 0
    for i in range(n):
        for j in range(n):
            if A[i].is_zero() and iA[j].is_zero():
                continue
            lhs = iA[j].r(i) if mu[j] > 0 else alg.zero()
            rhs = A[i].ir(j) if mu[i] > 0 else alg.zero()
            count += 1
            if lhs != rhs:
                raise SolvabilityError(
                    f"해의 존재 조건 r_i(ⱼA) = ⱼr(A_i) 가 μ={mu}, (i, j)=({i + 1}, {j + 1}) 에서 성립하지 않습니다.",
                    weight=mu, nodes=(i + 1, j + 1), details="commutation")
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            m = 1 - A_mat[i][j]
            target = tuple(m if k == i else (1 if k == j else 0) for k in range(n))
            if tuple(mu) != target:
                continue
            qi = alg.q_i(i)
            qj = alg.q_i(j)
            eps = alg.root.eps[i]
            total = fld.zero
            for s in range(1, m + 1):
                y = alg.word((i,) * (m - s) + (j,) + (i,) * (s - 1), MINUS)
                total += fld.qbinom(m, s, eps) * (-1) ** s * pairing(y, A[i]).raw
            total = -total / (qi - 1 / qi)
            total -= pairing(alg.word((i,) * m, MINUS), A[j]).raw / (qj - 1 / qj)
            count += 1
            if total:
                raise SolvabilityError(
                    f"해의 존재 조건(쌍 조건)이 μ={mu}, (i, j)=({i + 1}, {j + 1}) 에서 성립하지 않습니다.",
                    weight=mu, nodes=(i + 1, j + 1), details="serre_pairing")
    return {"conditions": count}


def solve_step(qk: QuasiK, mu: Mu, A: Dict[int, AlgebraElement],
               iA: Optional[Dict[int, AlgebraElement]] = None) -> AlgebraElement:
    """r_i(x) = A_i (모든 i) 의 유일해 x ∈ U⁺_μ. iA 가 주어지면 ᵢr(x) = ᵢA 도 확인합니다.

    Raises:
        SolvabilityError: 선형계가 모순이거나 해가 유일하지 않은 경우, 또는 ᵢr 검사가 실패한 경우
    """
    alg = qk.algebra
    K = alg.K
    wb = alg.weight_basis(mu)
    blocks = []
    rhs: List[Any] = []
    for i in range(alg.n):
        if mu[i] == 0:
            if not A[i].is_zero():
                raise SolvabilityError(f"μ={mu} 에서 α_{i + 1} 성분이 없는데 A_{i + 1} ≠ 0 입니다.",
                                       weight=mu, nodes=(i + 1,), details="support")
            continue
        lower = _shift(mu, [-x for x in alg.alpha(i)])
        cols = [alg._combine(alg.r_word(i, b), lower) for b in wb.words]
        dok = {(r, c): x for c, vec in enumerate(cols) for r, x in enumerate(vec) if x}
        blocks.append(mu_.from_dok(dok, (alg.dim(lower), wb.dim), K))
        rhs.extend(A[i].component(lower))
    try:
        sol = mu_.solve_unique(mu_.vstack(blocks, wb.dim, K), rhs, K)
    except AlgebraError as e:
        raise SolvabilityError(f"μ={mu} 의 선형계를 풀 수 없습니다: {e}", weight=mu, details=e.details) from e
    x = alg.from_vector(mu, sol)
    if iA is not None:
        for i in range(alg.n):
            got = x.ir(i) if mu[i] > 0 else alg.zero()
            if got != iA[i]:
                raise SolvabilityError(f"해 x 가 ᵢr(x) = ᵢA 를 만족하지 않습니다 (μ={mu}, i={i + 1}).",
                                       weight=mu, nodes=(i + 1,), details="left_derivation")
    return x


def theta_anti_invariant(params: QSPParams, mu: Sequence[int]) -> bool:
    """Θ(μ) = -μ 여부."""
    return to_int(params.satake.theta(mu)) == tuple(-int(x) for x in mu)


def extend(qk: QuasiK, cutoff: int) -> QuasiK:
    """이미 계산된 QuasiK 를 더 높은 cutoff 까지 늘립니다 (제자리 갱신)."""
    alg = qk.algebra
    n = alg.n
    for h in range(qk.cutoff + 1, int(cutoff) + 1):
        for mu in q_plus_up_to(n, h):
            if sum(mu) != h:
                continue
            t0 = time.perf_counter()
            A: Dict[int, AlgebraElement] = {}
            iA: Dict[int, AlgebraElement] = {}
            for i in range(n):
                A[i], iA[i] = rhs_pair(qk, mu, i)
            if all(a.is_zero() for a in A.values()) and all(a.is_zero() for a in iA.values()):
                continue
            report = check_solvable(qk, mu, A, iA) if h >= 2 else {"conditions": 0}
            x = solve_step(qk, mu, A, iA)
            if x.is_zero():
                continue
            if not theta_anti_invariant(qk.params, mu):
                raise VerificationError(f"𝔛_μ ≠ 0 인데 Θ(μ) ≠ -μ 입니다: μ={mu}", identity="support", details=mu)
            qk.comps[mu] = x
            qk.log.append({"weight": list(mu), "dim": alg.dim(mu), "conditions": report["conditions"],
                           "seconds": round(time.perf_counter() - t0, 4)})
        qk.cutoff = h
    return qk


def compute_quasik(params: QSPParams, cutoff: int, reverse: bool = False,
                   cache_dir: Optional[str] = None) -> QuasiK:
    """𝔛_μ 를 높이 1, 2, ..., cutoff 순서로 계산합니다.

    Args:
        reverse (bool): True 이면 기저 단어를 사전식 역순으로 고른 별도 대수에서 계산합니다
        cache_dir (str): JSON 캐시 디렉터리 (없으면 환경 변수 QSPK_CACHE_DIR, 그것도 없으면 캐시 안 함)
    """
    if int(cutoff) < 0:
        raise SolvabilityError(f"cutoff 는 0 이상이어야 합니다: {cutoff}", details=cutoff)
    if reverse:
        algebra = FreeAlgebra(params.root, params.field, reverse=True)
    else:
        algebra = params.algebra
    cache_dir = cache_utils.cache_directory(cache_dir)
    key = cache_utils.fingerprint(params, reverse) if cache_dir else None
    qk: Optional[QuasiK] = None
    if key:
        data = cache_utils.load_entry(cache_dir, key)
        if data is not None:
            qk = QuasiK.from_dict(params, data, algebra)
    if qk is None:
        qk = QuasiK(params, algebra)
    if qk.cutoff >= int(cutoff):
        return qk
    extend(qk, cutoff)
    if key:
        cache_utils.save_entry(cache_dir, key, qk.to_dict())
    return qk


# --- 성질 검사 ---

def check_uniqueness(qk: QuasiK, other: QuasiK) -> List[Mu]:
    """두 기저 순서로 계산한 결과를 같은 좌표로 옮겨 비교하고, 다른 웨이트 목록을 돌려줍니다."""
    h = min(qk.cutoff, other.cutoff)
    bad = []
    for mu in set(qk.comps) | set(other.comps):
        if sum(mu) > h:
            continue
        if qk.component(mu) != qk.algebra.convert(other.component(mu)):
            bad.append(mu)
    return sorted(bad)


def support_violations(qk: QuasiK) -> List[Mu]:
    return [mu for mu in qk.weights() if not theta_anti_invariant(qk.params, mu)]


def s_zero_support_violations(qk: QuasiK, j: int) -> List[Mu]:
    """s_j = 0 이면 𝔛 의 지지집합은 ℕ₀(α_j - Θ(α_j)) ⊕ span{α_k : k ≠ j} 에 있습니다."""
    step = 1 - qk.params.theta_alpha(j)[j]
    if j in qk.params.satake.X or step <= 0:
        return []
    return [mu for mu in qk.weights() if mu[j] % step]


def derivation_violations(qk: QuasiK) -> List[Tuple[Mu, int]]:
    """모든 성분에서 r_i(𝔛_μ) = A_i, ᵢr(𝔛_μ) = ᵢA 를 다시 확인합니다."""
    alg = qk.algebra
    bad = []
    for mu in q_plus_up_to(alg.n, qk.cutoff):
        if not any(mu):
            continue
        x = qk.component(mu)
        for i in range(alg.n):
            A, iA = rhs_pair(qk, mu, i)
            r = x.r(i) if mu[i] > 0 else alg.zero()
            ir = x.ir(i) if mu[i] > 0 else alg.zero()
            if r != A or ir != iA:
                bad.append((mu, i))
    return bad
