"""유한차원 가중 가군과 그 위의 연산자들.

기약 가군 V(λ) 는 최고 웨이트 벡터에 F-단어를 적용해 만들고, 각 웨이트에서 E-프로파일
(모든 E_j 의 상)이 독립인 벡터만 남겨 근기(radical)를 걷어냅니다.
텐서곱은 행 우선 순서 (a, b) -> a * dim(N) + b 이며, 여잡 Δ(E_i) = E_i⊗1 + K_i⊗E_i,
Δ(F_i) = F_i⊗K_i^{-1} + 1⊗F_i 를 씁니다.
"""
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from ..exceptions import ModuleError
from ..utils import matrix_utils as mu_
from ..utils.descriptors import module_label
from .freealg import MINUS, PLUS, AlgebraElement, Mu, Word
from .quasir import QuasiR, QuasiRBuilder, quasiR_dual
from .rootdata import RootDatum, Weight, as_weight, height, w_add, w_scale, w_sub
from .scalar import ScalarField
from .triangular import BraidOperators, FWD, INV

DEFAULT_MAX_RANK = 4


# --- 검사 결과 ---

@dataclass
class CheckResult:
    """항등식 하나의 검사 결과. 불일치는 예외가 아니라 passed=False 로 보고합니다."""
    name: str
    passed: bool
    shape: Tuple[int, int] = (0, 0)
    seconds: float = 0.0
    mismatches: List[List[Any]] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "shape": list(self.shape),
                "seconds": round(self.seconds, 4), "mismatches": self.mismatches, "details": self.details}


def compare(name: str, lhs: DomainMatrix, rhs: DomainMatrix, fld: ScalarField, limit: int = 10,
            started: Optional[float] = None, **details: Any) -> CheckResult:
    """두 행렬을 정확히 비교하고 어긋난 성분을 최대 limit 개까지 기록합니다."""
    t = time.perf_counter() - started if started is not None else 0.0
    if lhs.shape != rhs.shape:
        return CheckResult(name, False, lhs.shape, t, [],
                           {**details, "error": f"shape {lhs.shape} != {rhs.shape}"})
    diff = mu_.entries(mu_.sub(lhs, rhs))
    if not diff:
        return CheckResult(name, True, lhs.shape, t, [], details)
    le, re_ = mu_.entries(lhs), mu_.entries(rhs)
    zero = fld.zero
    bad = [[i, j, fld.to_text(le.get((i, j), zero)), fld.to_text(re_.get((i, j), zero))]
           for (i, j) in sorted(diff)[:limit]]
    return CheckResult(name, False, lhs.shape, t, bad, {**details, "mismatch_count": len(diff)})


# --- 가군 ---

@dataclass(eq=False)
class ModuleData:
    """기저 벡터의 웨이트와 생성원 행렬 (행 = 상, 열 = 원상).

    Attributes:
        weights: 기저 벡터의 웨이트 (단순근 좌표)
        E, F: 노드별 행렬
        highest_weight: 기약 가군이면 Dynkin 라벨, 아니면 None
        tag: "id", 꼬임 가군이면 "twist[...]"
    """
    root: RootDatum
    field: ScalarField
    weights: Tuple[Weight, ...]
    E: Tuple[DomainMatrix, ...]
    F: Tuple[DomainMatrix, ...]
    name: str = ""
    highest_weight: Optional[Tuple[int, ...]] = None
    tag: str = "id"
    _cache: Dict[Any, Any] = field(default_factory=dict, repr=False)

    def __repr__(self) -> str:
        return f"ModuleData({self.name or '?'}, dim={self.dim}, tag={self.tag})"

    @property
    def dim(self) -> int:
        return len(self.weights)

    @property
    def K(self):
        return self.field.domain

    @property
    def gap(self) -> int:
        """가장 높은 웨이트와 가장 낮은 웨이트의 높이 차 (R, 𝔛 를 어디까지 더해야 하는지)."""
        if not self.weights:
            return 0
        hs = [height(w) for w in self.weights]
        return int(max(hs) - min(hs))

    def weight_blocks(self) -> Dict[Weight, List[int]]:
        blocks = self._cache.get("blocks")
        if blocks is None:
            blocks = {}
            for a, w in enumerate(self.weights):
                blocks.setdefault(w, []).append(a)
            self._cache["blocks"] = blocks
        return blocks

    def identity(self) -> DomainMatrix:
        return mu_.eye(self.dim, self.K)

    def K_matrix(self, mu: Sequence) -> DomainMatrix:
        """K_μ = diag(q^{(μ, wt)})."""
        mu = as_weight(mu)
        key = ("K", mu)
        M = self._cache.get(key)
        if M is None:
            M = mu_.diag([self.field.q_pow(self.root.pair(mu, w)) for w in self.weights], self.K)
            self._cache[key] = M
        return M

    def K_i(self, i: int, power: int = 1) -> DomainMatrix:
        return self.K_matrix(w_scale(power, self.root.simple_root(i)))

    @property
    def action(self) -> "ModuleAction":
        act = self._cache.get("action")
        if act is None:
            act = self._cache.setdefault("action", ModuleAction(self))
        return act

    @property
    def tw_action(self) -> "ModuleAction":
        act = self._cache.get("tw_action")
        if act is None:
            act = self._cache.setdefault("tw_action", ModuleAction(self, tw=True))
        return act


def _check_rank(root: RootDatum, max_rank: int):
    if not root.is_finite:
        raise ModuleError("가군 기능은 유한형 Cartan 행렬에서만 지원됩니다.")
    if root.rank > max_rank:
        raise ModuleError(f"랭크 {root.rank} 는 허용된 최대 랭크 {max_rank} 를 넘습니다 (max_rank 로 조정 가능).")


def build_irrep(root: RootDatum, labels: Sequence[int], fld: Optional[ScalarField] = None,
                max_rank: int = DEFAULT_MAX_RANK) -> ModuleData:
    """최고 웨이트 λ (Dynkin 라벨) 의 기약 가군 V(λ).

    E_j F_i u = F_i E_j u + δ_ij [wt(u)(h_i)]_{q_i} u 로 후보 벡터의 E-프로파일을 구하고,
    프로파일이 0 인 벡터(근기)를 버립니다.

    Raises:
        ModuleError: λ 가 우세 정수 웨이트가 아니거나 차원이 Weyl 공식과 다른 경우
    """
    _check_rank(root, max_rank)
    labels = tuple(int(x) for x in labels)
    if len(labels) != root.rank or any(x < 0 for x in labels):
        raise ModuleError(f"최고 웨이트가 우세 정수 웨이트가 아닙니다: {labels}", highest_weight=labels)
    fld = fld or ScalarField(root.d)
    K = fld.domain
    n = root.rank
    lam = root.weight_from_labels(labels)
    weights: List[Weight] = [lam]
    spaces: Dict[Tuple[int, ...], List[int]] = {tuple([0] * n): [0]}
    e_act: List[Dict[int, Dict[int, Any]]] = [{0: {}} for _ in range(n)]
    f_act: List[Dict[int, Dict[int, Any]]] = [{} for _ in range(n)]
    level = [tuple([0] * n)]
    while level:
        depths = sorted({tuple(m[k] + (1 if k == i else 0) for k in range(n)) for m in level for i in range(n)})
        level = []
        for mu in depths:
            cands: List[Tuple[int, int]] = []
            for i in range(n):
                if mu[i] == 0:
                    continue
                src = tuple(m - (1 if k == i else 0) for k, m in enumerate(mu))
                cands.extend((i, g) for g in spaces.get(src, []))
            profiles = []
            for i, g in cands:
                wt_g = weights[g]
                prof: Dict[Tuple[int, int], Any] = {}
                for j in range(n):
                    for h, c in e_act[j][g].items():
                        for t, c2 in f_act[i].get(h, {}).items():
                            key = (j, t)
                            prof[key] = prof.get(key, K.zero) + c * c2
                    if i == j:
                        val = fld.qint(int(root.coroot(i, wt_g)), root.eps[i])
                        prof[(j, g)] = prof.get((j, g), K.zero) + val
                profiles.append({k: v for k, v in prof.items() if v})
            ech = mu_.IncrementalEchelon(K)
            chosen = [k for k, p in enumerate(profiles) if ech.add(p)]
            if not chosen:
                for i, g in cands:
                    f_act[i][g] = {}
                continue
            nu = w_sub(lam, mu)
            new_idx = []
            for k in chosen:
                idx = len(weights)
                weights.append(nu)
                new_idx.append(idx)
                for j in range(n):
                    e_act[j][idx] = {t: v for (jj, t), v in profiles[k].items() if jj == j}
            spaces[mu] = new_idx
            level.append(mu)
            solver = mu_.ProfileSolver([profiles[k] for k in chosen], K)
            for (i, g), prof in zip(cands, profiles):
                coords = solver.coords(prof)
                f_act[i][g] = {new_idx[a]: c for a, c in enumerate(coords) if c}
    dim = len(weights)
    expected = root.weyl_dimension(lam)
    if dim != expected:
        raise ModuleError(f"V{labels} 의 차원 {dim} 이 Weyl 차원 {expected} 와 다릅니다.", highest_weight=labels)
    E = tuple(mu_.from_dok({(t, a): v for a, col in e_act[j].items() for t, v in col.items()}, (dim, dim), K)
              for j in range(n))
    F = tuple(mu_.from_dok({(t, a): v for a, col in f_act[i].items() for t, v in col.items()}, (dim, dim), K)
              for i in range(n))
    return ModuleData(root, fld, tuple(weights), E, F, module_label(labels), labels)


def tensor(M: ModuleData, N: ModuleData) -> ModuleData:
    """M ⊗ N (행 우선), 생성원은 여곱으로 작용합니다."""
    K = M.K
    IM, IN = M.identity(), N.identity()
    E, F = [], []
    for i in range(M.root.rank):
        E.append(mu_.add(mu_.kron(M.E[i], IN), mu_.kron(M.K_i(i), N.E[i])))
        F.append(mu_.add(mu_.kron(M.F[i], N.K_i(i, -1)), mu_.kron(IM, N.F[i])))
    weights = tuple(w_add(a, b) for a in M.weights for b in N.weights)
    return ModuleData(M.root, M.field, weights, tuple(E), tuple(F), f"{M.name}⊗{N.name}", None,
                      f"({M.tag})⊗({N.tag})")


def twist(M: ModuleData, perm: Sequence[int]) -> ModuleData:
    """M^π: u • m = π(u) m (π 는 Dynkin 도형 자기동형)."""
    perm = tuple(perm)
    if all(p == i for i, p in enumerate(perm)):
        return M
    # K_μ • m = K_{π μ} m 이므로 새 웨이트는 π^{-1}(wt)
    weights = tuple(tuple(Fraction(w[perm[k]]) for k in range(len(perm))) for w in M.weights)
    E = tuple(M.E[perm[i]] for i in range(len(perm)))
    F = tuple(M.F[perm[i]] for i in range(len(perm)))
    return ModuleData(M.root, M.field, weights, E, F, f"{M.name}^π", M.highest_weight,
                      f"twist{[p + 1 for p in perm]}")


def flip(M: ModuleData, N: ModuleData) -> DomainMatrix:
    """M⊗N -> N⊗M."""
    dm, dn = M.dim, N.dim
    return mu_.permutation([b * dm + a for a in range(dm) for b in range(dn)], M.K)


def kappa(M: ModuleData, N: ModuleData, sign: int = 1,
          f: Optional[Callable[[Weight], Weight]] = None) -> DomainMatrix:
    """κ^{±f}: m⊗n ↦ q^{±(f(wt m), wt n)} m⊗n (f 가 없으면 항등)."""
    fld, root = M.field, M.root
    vals = []
    for a in M.weights:
        fa = f(a) if f is not None else a
        for b in N.weights:
            vals.append(fld.q_pow(sign * root.pair(fa, b)))
    return mu_.diag(vals, M.K)


# --- 작용 ---

class ModuleAction:
    """대수 원소를 가군 위의 행렬로 보냅니다.

    tw=True 이면 tw(E_i) = -K_i^{-1} F_i, tw(F_i) = -E_i K_i, tw(K_h) = K_{-h} 를 거친 작용입니다.
    단어 행렬은 접두사로 메모이즈합니다.
    """

    def __init__(self, module: ModuleData, tw: bool = False):
        self.M = module
        self.tw = tw
        self._words: Dict[Tuple[str, Word], DomainMatrix] = {}

    def K(self, mu: Sequence) -> DomainMatrix:
        if self.tw:
            return self.M.K_matrix(w_scale(-1, as_weight(mu)))
        return self.M.K_matrix(mu)

    def letter(self, i: int, side: str) -> DomainMatrix:
        M = self.M
        if not self.tw:
            return M.E[i] if side == PLUS else M.F[i]
        if side == PLUS:
            return mu_.scale(mu_.mul(M.K_i(i, -1), M.F[i]), -M.K.one)
        return mu_.scale(mu_.mul(M.E[i], M.K_i(i)), -M.K.one)

    def word(self, w: Sequence[int], side: str = PLUS) -> DomainMatrix:
        w = tuple(w)
        key = (side, w)
        mat = self._words.get(key)
        if mat is not None:
            return mat
        if not w:
            mat = self.M.identity()
        elif len(w) == 1:
            mat = self.letter(w[0], side)
        else:
            mat = mu_.mul(self.letter(w[0], side), self.word(w[1:], side))
        return self._words.setdefault(key, mat)

    def element(self, x: AlgebraElement) -> DomainMatrix:
        """u 또는 u·K_β 의 작용."""
        M = self.M
        acc = mu_.zeros(M.dim, M.dim, M.K)
        alg = x.algebra
        for mu, vec in x.comps.items():
            for w, c in zip(alg.weight_basis(mu).words, vec):
                if c:
                    acc = mu_.add(acc, mu_.scale(self.word(w, x.side), c))
        if x.ktag is not None:
            acc = mu_.mul(acc, self.K(x.ktag))
        return acc


def act(x: Any, M: ModuleData) -> DomainMatrix:
    """AlgebraElement 또는 ("K", μ) 의 작용."""
    if isinstance(x, AlgebraElement):
        return M.action.element(x)
    if isinstance(x, tuple) and len(x) == 2 and x[0] == "K":
        return M.K_matrix(x[1])
    raise ModuleError(f"작용을 정의할 수 없는 입력입니다: {x!r}")


# --- Lusztig 연산자 ---

def _divided_powers(M: ModuleData, i: int, mat: DomainMatrix, top: int) -> List[DomainMatrix]:
    fld = M.field
    eps = M.root.eps[i]
    out = [M.identity()]
    power = M.identity()
    for k in range(1, top + 1):
        power = mu_.mul(power, mat)
        out.append(mu_.scale(power, M.K.one / fld.qfact(k, eps)))
    return out


def lusztig_T(M: ModuleData, i: int, direction: str = FWD) -> DomainMatrix:
    """T_{i,M} 또는 그 역.

    T_{i,M}^{-1} m = Σ_{a-b+c = λ(h_i)} (-1)^b q_i^{ac-b} F_i^{(a)} E_i^{(b)} F_i^{(c)} m (m ∈ M_λ),
    T_{i,M} 은 그 역행렬입니다.
    """
    key = ("T", i, direction)
    cached = M._cache.get(key)
    if cached is not None:
        return cached
    fld, root = M.field, M.root
    K = M.K
    eps = root.eps[i]
    labels = [int(root.coroot(i, w)) for w in M.weights]
    top = max([abs(x) for x in labels] + [0])
    Fd = _divided_powers(M, i, M.F[i], top)
    Ed = _divided_powers(M, i, M.E[i], top)
    tinv = mu_.zeros(M.dim, M.dim, K)
    for nval in sorted(set(labels)):
        proj = mu_.diag([K.one if x == nval else K.zero for x in labels], K)
        for a in range(top + 1):
            for c in range(top + 1):
                b = a + c - nval
                if not 0 <= b <= top:
                    continue
                coeff = (-1) ** b * fld.q_pow(eps * (a * c - b))
                term = mu_.mul(Fd[a], Ed[b], Fd[c], proj)
                if not mu_.is_zero(term):
                    tinv = mu_.add(tinv, mu_.scale(term, coeff))
    M._cache[("T", i, INV)] = tinv
    M._cache[("T", i, FWD)] = mu_.inverse(tinv)
    return M._cache[key]


def lusztig_T_word(M: ModuleData, word: Sequence[int], inverse: bool = False) -> DomainMatrix:
    """T_{w,M} = T_{i1,M} ... T_{ik,M}, inverse=True 이면 T_{ik,M}^{-1} ... T_{i1,M}^{-1}."""
    word = tuple(word)
    key = ("Tw", word, inverse)
    cached = M._cache.get(key)
    if cached is not None:
        return cached
    out = M.identity()
    if inverse:
        for i in reversed(word):
            out = mu_.mul(out, lusztig_T(M, i, INV))
    else:
        for i in word:
            out = mu_.mul(out, lusztig_T(M, i, FWD))
    M._cache[key] = out
    return out


# --- 준 R-행렬의 작용 ---

class QuasiRCache:
    """필요한 cutoff 만큼만 R, R·R̄_X, R_i 를 만들어 두는 저장소."""

    def __init__(self, ops: BraidOperators, w0_word: Sequence[int], wX_word: Sequence[int] = ()):
        self.ops = ops
        self.alg = ops.alg
        self.w0_word = tuple(w0_word)
        self.wX_word = tuple(wX_word)
        self._builder: Optional[QuasiRBuilder] = None
        self._store: Dict[Any, QuasiR] = {}

    @property
    def builder(self) -> QuasiRBuilder:
        if self._builder is None:
            self._builder = QuasiRBuilder(self.ops, self.w0_word)
        return self._builder

    def _get(self, key: str, cutoff: int, make: Callable[[int], QuasiR]) -> QuasiR:
        qr = self._store.get(key)
        if qr is None or qr.cutoff < cutoff:
            qr = make(cutoff)
            self._store[key] = qr
        return qr

    def R(self, cutoff: int) -> QuasiR:
        return self._get("R", cutoff, lambda h: quasiR_dual(self.alg, h))

    def R_bar(self, cutoff: int) -> QuasiR:
        return self._get("Rbar", cutoff, lambda h: self.R(h).bar())

    def R_RXbar(self, cutoff: int) -> QuasiR:
        return self._get("RRXbar", cutoff, lambda h: self.builder.suffix(len(self.wX_word), h))

    def R_simple(self, i: int, cutoff: int) -> QuasiR:
        return self._get(f"R{i}", cutoff, lambda h: self.builder.simple_factor(i, h))


def quasiR_legs(qr: QuasiR, M: ModuleData, N: ModuleData, first_perm: Optional[Sequence[int]] = None,
                first_conj: Optional[Tuple[DomainMatrix, DomainMatrix]] = None,
                upto: Optional[int] = None) -> Iterator[Tuple[Mu, DomainMatrix, DomainMatrix]]:
    """(μ, 첫 다리 행렬, 둘째 다리 행렬) 을 U⁺ 기저 단어마다 하나씩 냅니다.

    Args:
        first_perm: 첫 번째 다리의 F-단어에 적용할 노드 치환
        first_conj: (C, C^{-1}) 가 주어지면 첫 번째 다리를 C·(·)·C^{-1} 로 바꿉니다
        upto: 더할 최대 높이 (기본값은 min(gap M, gap N))

    Raises:
        ModuleError: qr 의 cutoff 가 필요한 높이보다 작은 경우
    """
    h = min(M.gap, N.gap) if upto is None else upto
    if qr.cutoff < h:
        raise ModuleError(f"준 R-행렬의 cutoff {qr.cutoff} 가 필요한 높이 {h} 보다 작습니다.")
    alg = qr.alg
    for mu in qr.weights():
        if sum(mu) > h:
            continue
        words = alg.weight_basis(mu).words
        by_col: Dict[int, DomainMatrix] = {}
        for (a, b), c in mu_.entries(qr.component(mu)).items():
            y = words[a]
            if first_perm is not None:
                y = tuple(first_perm[k] for k in y)
            term = mu_.scale(M.action.word(y, MINUS), c)
            by_col[b] = mu_.add(by_col[b], term) if b in by_col else term
        for b, Y in sorted(by_col.items()):
            if mu_.is_zero(Y):
                continue
            if first_conj is not None:
                Y = mu_.mul(first_conj[0], Y, first_conj[1])
            yield mu, Y, N.action.word(words[b], PLUS)


def quasiR_operator(qr: QuasiR, M: ModuleData, N: ModuleData, first_perm: Optional[Sequence[int]] = None,
                    first_conj: Optional[Tuple[DomainMatrix, DomainMatrix]] = None,
                    upto: Optional[int] = None) -> DomainMatrix:
    """Σ_μ Σ_{a,b} C_μ[a,b] φ(y_a)_M ⊗ (x_b)_N (인자는 quasiR_legs 와 같음)."""
    total = mu_.zeros(M.dim * N.dim, M.dim * N.dim, M.K)
    for _, Y, X in quasiR_legs(qr, M, N, first_perm, first_conj, upto):
        total = mu_.add(total, mu_.kron(Y, X))
    return total


def rhat(M: ModuleData, N: ModuleData, qrc: QuasiRCache) -> DomainMatrix:
    """R̂_{M,N} = R_{N⊗M} κ^{-1}_{N,M} flip_{M,N}: M⊗N -> N⊗M."""
    key = ("rhat", N, qrc)
    cached = M._cache.get(key)
    if cached is not None:
        return cached
    h = min(M.gap, N.gap)
    R = quasiR_operator(qrc.R(h), N, M)
    out = mu_.mul(R, kappa(N, M, -1), flip(M, N))
    M._cache[key] = out
    return out


def rhat_twisted(M: ModuleData, N: ModuleData, qrc: QuasiRCache, perm: Sequence[int]) -> DomainMatrix:
    """R̂^{π}_{M,N} = R^{π} κ^{-π} flip: R 의 첫 다리에 π 를 적용하고 κ^{-π}(n⊗m) = q^{-(π wt n, wt m)}."""
    perm = tuple(perm)
    root = M.root

    def f(w: Weight) -> Weight:
        out = [Fraction(0)] * root.rank
        for k, x in enumerate(w):
            out[perm[k]] = Fraction(x)
        return tuple(out)

    h = min(M.gap, N.gap)
    R = quasiR_operator(qrc.R(h), N, M, first_perm=perm)
    return mu_.mul(R, kappa(N, M, -1, f), flip(M, N))


# --- 가군 수준 검사 ---

def check_relations(M: ModuleData) -> CheckResult:
    """정의 관계: K E K^{-1} 의 웨이트 이동, [E_i, F_j], q-Serre."""
    t0 = time.perf_counter()
    root, fld, K = M.root, M.field, M.K
    n = root.rank
    bad: List[List[Any]] = []
    for i in range(n):
        qi = fld.q_pow(root.eps[i])
        for j in range(n):
            comm = mu_.sub(mu_.mul(M.E[i], M.F[j]), mu_.mul(M.F[j], M.E[i]))
            if i == j:
                rhs = mu_.scale(mu_.sub(M.K_i(i), M.K_i(i, -1)), K.one / (qi - K.one / qi))
            else:
                rhs = mu_.zeros(M.dim, M.dim, K)
            if not mu_.equal(comm, rhs):
                bad.append(["EF", i + 1, j + 1])
            if i == j:
                continue
            m = 1 - root.cartan[i][j]
            for side, mats in ((PLUS, M.E), (MINUS, M.F)):
                acc = mu_.zeros(M.dim, M.dim, K)
                for s in range(m + 1):
                    word = (i,) * (m - s) + (j,) + (i,) * s
                    coeff = (-1) ** s * fld.qbinom(m, s, root.eps[i])
                    acc = mu_.add(acc, mu_.scale(M.action.word(word, side), coeff))
                if not mu_.is_zero(acc):
                    bad.append(["serre", side, i + 1, j + 1])
        ai = root.simple_root(i)
        for (r, c) in mu_.entries(M.E[i]):
            if M.weights[r] != w_add(M.weights[c], ai):
                bad.append(["E_weight", i + 1, r, c])
                break
        for (r, c) in mu_.entries(M.F[i]):
            if M.weights[r] != w_sub(M.weights[c], ai):
                bad.append(["F_weight", i + 1, r, c])
                break
    return CheckResult("relations", not bad, (M.dim, M.dim), time.perf_counter() - t0, bad[:10])


def check_braid_conjugation(M: ModuleData, ops: BraidOperators, i: int, x: AlgebraElement) -> CheckResult:
    """act(T_i(x)) = T_{i,M} act(x) T_{i,M}^{-1} (x 는 글자 i 를 쓰지 않는 U⁺ 원소)."""
    t0 = time.perf_counter()
    lhs = act(ops.apply(i, x, FWD), M)
    rhs = mu_.mul(lusztig_T(M, i, FWD), act(x, M), lusztig_T(M, i, INV))
    return compare(f"T{i + 1}_conjugation", lhs, rhs, M.field, started=t0)


def check_riCommute(M: ModuleData, x: AlgebraElement, i: int) -> CheckResult:
    """[x, F_i] = (r_i(x) K_i - K_i^{-1} ᵢr(x)) / (q_i - q_i^{-1})."""
    t0 = time.perf_counter()
    K = M.K
    qi = M.field.q_pow(M.root.eps[i])
    X = act(x, M)
    lhs = mu_.sub(mu_.mul(X, M.F[i]), mu_.mul(M.F[i], X))
    rhs = mu_.sub(mu_.mul(act(x.r(i), M), M.K_i(i)), mu_.mul(M.K_i(i, -1), act(x.ir(i), M)))
    rhs = mu_.scale(rhs, K.one / (qi - K.one / qi))
    return compare(f"commutator_F{i + 1}", lhs, rhs, M.field, started=t0)


def check_twist_coherence(M: ModuleData, perm: Sequence[int]) -> CheckResult:
    """act(u, M^π) = act(π(u), M) 를 생성원 위에서."""
    t0 = time.perf_counter()
    Mt = twist(M, perm)
    bad = []
    for i in range(M.root.rank):
        if not mu_.equal(Mt.E[i], M.E[perm[i]]) or not mu_.equal(Mt.F[i], M.F[perm[i]]):
            bad.append(["EF", i + 1])
        pi_alpha = M.root.simple_root(perm[i])
        if not mu_.equal(Mt.K_i(i), M.K_matrix(pi_alpha)):
            bad.append(["K", i + 1])
    return CheckResult("twist_coherence", not bad, (M.dim, M.dim), time.perf_counter() - t0, bad)


def check_rhat_module_map(M: ModuleData, N: ModuleData, qrc: QuasiRCache) -> CheckResult:
    """R̂ Δ_{M⊗N}(u) = Δ_{N⊗M}(u) R̂ (u = E_i, F_i, K_i)."""
    t0 = time.perf_counter()
    MN, NM = tensor(M, N), tensor(N, M)
    Rh = rhat(M, N, qrc)
    bad = []
    for i in range(M.root.rank):
        for label, a, b in (("E", MN.E[i], NM.E[i]), ("F", MN.F[i], NM.F[i]), ("K", MN.K_i(i), NM.K_i(i))):
            if not mu_.equal(mu_.mul(Rh, a), mu_.mul(b, Rh)):
                bad.append([label, i + 1])
    return CheckResult("rhat_module_map", not bad, Rh.shape, time.perf_counter() - t0, bad)


def check_quasiR_intertwining(M: ModuleData, N: ModuleData, qrc: QuasiRCache) -> CheckResult:
    """Δ(ū) R = R bar(Δ(u)) (u = E_i, F_i)."""
    t0 = time.perf_counter()
    MN = tensor(M, N)
    R = quasiR_operator(qrc.R(min(M.gap, N.gap)), M, N)
    IM, IN = M.identity(), N.identity()
    bad = []
    for i in range(M.root.rank):
        barE = mu_.add(mu_.kron(M.E[i], IN), mu_.kron(M.K_i(i, -1), N.E[i]))
        barF = mu_.add(mu_.kron(M.F[i], N.K_i(i)), mu_.kron(IM, N.F[i]))
        if not mu_.equal(mu_.mul(MN.E[i], R), mu_.mul(R, barE)):
            bad.append(["E", i + 1])
        if not mu_.equal(mu_.mul(MN.F[i], R), mu_.mul(R, barF)):
            bad.append(["F", i + 1])
    return CheckResult("quasiR_intertwining", not bad, R.shape, time.perf_counter() - t0, bad)


def check_deltaT(M: ModuleData, N: ModuleData, i: int, qrc: QuasiRCache) -> CheckResult:
    """T_{i,M⊗N} = (T_{i,M} ⊗ T_{i,N}) R_i^{-1}, R_i^{-1} = R̄_i."""
    t0 = time.perf_counter()
    MN = tensor(M, N)
    h = min(M.gap, N.gap)
    Ri_bar = quasiR_operator(qrc.R_simple(i, h).bar(), M, N, upto=h)
    rhs = mu_.mul(mu_.kron(lusztig_T(M, i), lusztig_T(N, i)), Ri_bar)
    return compare(f"delta_T{i + 1}", lusztig_T(MN, i), rhs, M.field, started=t0)


def check_deltaTw0(M: ModuleData, N: ModuleData, w0_word: Sequence[int], qrc: QuasiRCache,
                   inverse: bool = False) -> CheckResult:
    """Δ(T_{w0}) = (T_{w0}⊗T_{w0}) R^{-1}, 그리고 Δ(T_{w0}^{-1}) = R (T_{w0}^{-1}⊗T_{w0}^{-1})."""
    t0 = time.perf_counter()
    MN = tensor(M, N)
    h = min(M.gap, N.gap)
    if inverse:
        R = quasiR_operator(qrc.R(h), M, N)
        rhs = mu_.mul(R, mu_.kron(lusztig_T_word(M, w0_word, True), lusztig_T_word(N, w0_word, True)))
        return compare("delta_Tw0_inverse", lusztig_T_word(MN, w0_word, True), rhs, M.field, started=t0)
    Rbar = quasiR_operator(qrc.R_bar(h), M, N)
    rhs = mu_.mul(mu_.kron(lusztig_T_word(M, w0_word), lusztig_T_word(N, w0_word)), Rbar)
    return compare("delta_Tw0", lusztig_T_word(MN, w0_word), rhs, M.field, started=t0)


def check_hexagon(M: ModuleData, N: ModuleData, P: ModuleData, qrc: QuasiRCache) -> List[CheckResult]:
    """R̂_{M⊗N,P} = (R̂_{M,P}⊗1)(1⊗R̂_{N,P}),  R̂_{M,N⊗P} = (1⊗R̂_{M,P})(R̂_{M,N}⊗1)."""
    t0 = time.perf_counter()
    MN, NP = tensor(M, N), tensor(N, P)
    lhs1 = rhat(MN, P, qrc)
    rhs1 = mu_.mul(mu_.kron(rhat(M, P, qrc), N.identity()), mu_.kron(M.identity(), rhat(N, P, qrc)))
    r1 = compare("hexagon_left", lhs1, rhs1, M.field, started=t0)
    t1 = time.perf_counter()
    lhs2 = rhat(M, NP, qrc)
    rhs2 = mu_.mul(mu_.kron(N.identity(), rhat(M, P, qrc)), mu_.kron(rhat(M, N, qrc), P.identity()))
    r2 = compare("hexagon_right", lhs2, rhs2, M.field, started=t1)
    return [r1, r2]
