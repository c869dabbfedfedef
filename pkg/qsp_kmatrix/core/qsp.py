"""양자 대칭쌍 매개변수 (c, s) 와 생성원 X_i, Z_i, 그리고 가중치 함수 γ, ξ.

노드 번호는 내부적으로 0부터 시작합니다. 문자열 스칼라는 `ScalarField.parse` 문법을 따릅니다.
"""
import threading
from fractions import Fraction
from itertools import product
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from sympy import QQ, factorint

from ..exceptions import ParameterError, ScalarError, VerificationError
from .freealg import AlgebraElement, FreeAlgebra, Mu
from .rootdata import SatakeDatum, Weight, as_weight, to_int, w_add, w_scale, w_sub
from .scalar import Scalar
from .triangular import BraidOperators


def _int_weight(w: Sequence) -> Mu:
    return to_int(as_weight(w))


class QSPParams:
    """검증된 매개변수와 그로부터 유도되는 원소들의 묶음.

    Args:
        satake (SatakeDatum): 허용 쌍
        c, s: 노드(0-기반) -> 스칼라(문자열/정수/Scalar). X 의 노드는 0 이어야 합니다.
        algebra (FreeAlgebra): 공유할 U⁺ 실현 (없으면 새로 만듦)
        ops (BraidOperators): 공유할 브레이드 연산자
    """

    def __init__(self, satake: SatakeDatum, c: Mapping[int, Any], s: Mapping[int, Any],
                 algebra: Optional[FreeAlgebra] = None, ops: Optional[BraidOperators] = None):
        self.satake = satake
        self.root = satake.root
        self.algebra = algebra or FreeAlgebra(self.root)
        self.field = self.algebra.field
        self.ops = ops or BraidOperators(self.algebra)
        n = self.root.rank
        for key in list(c) + list(s):
            if not 0 <= int(key) < n:
                raise ParameterError(f"매개변수 노드 번호가 범위를 벗어났습니다: {int(key) + 1}",
                                     violations=("node_range",))
        try:
            self.c: Dict[int, Scalar] = {i: self.field.wrap(c.get(i, 0)) for i in range(n)}
            self.s: Dict[int, Scalar] = {i: self.field.wrap(s.get(i, 0)) for i in range(n)}
        except ScalarError as e:
            raise ParameterError(f"매개변수를 스칼라로 읽을 수 없습니다: {e}", violations=("scalar_syntax",)) from e
        self.report: Dict[str, bool] = {}
        self._X: Dict[int, AlgebraElement] = {}
        self._barcX: Dict[int, AlgebraElement] = {}
        self._gammaP: Optional[Tuple[Any, ...]] = None
        self._xi: Dict[Weight, Scalar] = {}
        self._lock = threading.RLock()

    def __repr__(self) -> str:
        c = {i + 1: v.to_text() for i, v in self.c.items() if v}
        s = {i + 1: v.to_text() for i, v in self.s.items() if v}
        return f"QSPParams(c={c}, s={s})"

    @property
    def violations(self) -> List[str]:
        return [k for k, ok in self.report.items() if not ok]

    # --- 격자 도우미 ---

    def theta_alpha(self, i: int) -> Mu:
        return _int_weight(self.satake.theta(self.root.simple_root(i)))

    def q_pair(self, a: Sequence, b: Sequence) -> Scalar:
        return self.field.wrap(self.field.q_pow(self.root.pair(a, b)))

    def rho_i(self, i: int) -> Scalar:
        """ρ_i = c_{τ(i)} s(i) q^{-(α_i, Θ(α_i))} (i ∈ X 이면 0)."""
        if i in self.satake.X:
            return self.field.wrap(0)
        ai = self.root.simple_root(i)
        t = self.satake.tau[i]
        return self.c[t] * self.satake.sfun(i) * self.q_pair(w_scale(-1, ai), self.satake.theta(ai))

    # --- 생성원 ---

    def X(self, i: int) -> AlgebraElement:
        cached = self._X.get(i)
        if cached is None:
            cached = self._X.setdefault(i, make_Xi(self, i))
        return cached

    def Z(self, i: int) -> AlgebraElement:
        return make_Zi(self, i)

    def cX_bar(self, i: int) -> AlgebraElement:
        """bar(c_i X_i) 를 계수별 bar 로 직접 계산합니다 (i ∈ X 이면 0)."""
        if i in self.satake.X:
            return self.algebra.zero()
        cached = self._barcX.get(i)
        if cached is None:
            cached = self._barcX.setdefault(i, self.X(i).scale(self.c[i]).bar())
        return cached

    def cX_bar_formula(self, i: int) -> AlgebraElement:
        """bar(c_i X_i) = -ρ_i T_{w_X}^{-1}(E_{τ(i)})."""
        t = self.satake.tau[i]
        img = self.ops.apply_word(self.satake.wX_word, self.algebra.E(t), inverse=True)
        return img.scale(-self.rho_i(i))

    def gamma(self, i: int) -> Scalar:
        """γ(i) = 1 (i ∈ X), c_i s(τ(i)) (그 밖)."""
        if i in self.satake.X:
            return self.field.wrap(1)
        return self.c[i] * self.satake.sfun(self.satake.tau[i])

    # --- γ 의 P 위로의 확장과 ξ ---

    @property
    def gamma_fundamental(self) -> Tuple[Scalar, ...]:
        """γ(ϖ_1), ..., γ(ϖ_n)."""
        with self._lock:
            if self._gammaP is None:
                values = [self.gamma(j).raw for j in range(self.root.rank)]
                self._gammaP = tuple(self.field.wrap(g) for g in extend_gamma(self, values))
        return self._gammaP

    def gamma_eval(self, lam: Sequence) -> Scalar:
        return gamma_eval(self, lam)

    def xi_eval(self, lam: Sequence) -> Scalar:
        return xi_eval(self, lam)


def make_Xi(params: QSPParams, i: int) -> AlgebraElement:
    """X_i = -s(τ(i)) T_{w_X}(E_{τ(i)}), 웨이트 -Θ(α_i).

    Raises:
        ParameterError: i ∈ X 인 경우
        VerificationError: r_j(X_i) ≠ 0 (j ≠ τ(i)) 이거나 bar 공식과 맞지 않는 경우
    """
    sd, alg, ops = params.satake, params.algebra, params.ops
    if i in sd.X:
        raise ParameterError(f"X_{i + 1} 은 i ∉ X 에 대해서만 정의됩니다.", violations=("node_in_X",))
    t = sd.tau[i]
    sign = -sd.sfun(t)
    Xi = ops.apply_word(sd.wX_word, alg.E(t)).scale(sign)
    expected = tuple(-x for x in params.theta_alpha(i))
    if tuple(Xi.comps) != (expected,):
        raise VerificationError(f"X_{i + 1} 의 웨이트가 -Θ(α_{i + 1}) = {expected} 가 아닙니다.",
                                identity="X_weight", details=sorted(Xi.comps))
    for j in range(sd.rank):
        if j != t and not Xi.r(j).is_zero():
            raise VerificationError(f"r_{j + 1}(X_{i + 1}) ≠ 0", identity="rj_Xi", details=(i, j))
    # bar(X_i) = -s(i) q^{-(2ρ_X, α_i)} T_{w_X}^{-1}(E_{τ(i)})
    coeff = -sd.sfun(i) * params.q_pair(w_scale(-1, sd.two_rhoX), params.root.simple_root(i))
    rhs = ops.apply_word(sd.wX_word, alg.E(t), inverse=True).scale(coeff)
    if Xi.bar() != rhs:
        raise VerificationError(f"bar(X_{i + 1}) 가 T_wX^-1 공식과 다릅니다.", identity="Xi_bar", details=i)
    return Xi


def make_Zi(params: QSPParams, i: int) -> AlgebraElement:
    """Z_i = r_{τ(i)}(X_i) K_i^{-1} K_{τ(i)} (K 태그 α_{τ(i)} - α_i)."""
    t = params.satake.tau[i]
    tag = tuple(int(a) - int(b) for a, b in zip(params.root.simple_root(t), params.root.simple_root(i)))
    return params.X(i).r(t).with_ktag(tag)


def _param_report(params: QSPParams) -> Dict[str, bool]:
    sd, root = params.satake, params.root
    n, A = root.rank, root.cartan
    X = set(sd.X)
    rest = [i for i in range(n) if i not in X]
    c, s = params.c, params.s
    rep: Dict[str, bool] = {}
    rep["c_nonzero"] = all(c[i] for i in rest)
    rep["c_on_X"] = all(not c[i] for i in X)
    rep["s_on_X"] = all(not s[i] for i in X)
    ok = True
    for i in rest:
        ai = root.simple_root(i)
        if sd.tau[i] != i and root.pair(ai, sd.theta(ai)) == 0 and c[i] != c[sd.tau[i]]:
            ok = False
    rep["c_in_C"] = ok
    ins = set(sd.I_ns)
    ok = True
    for j in rest:
        if not s[j]:
            continue
        if j not in ins:
            ok = False
            continue
        for i in ins - {j}:
            if A[i][j] > 0 or A[i][j] % 2:
                ok = False
    rep["s_in_S"] = ok
    rep["s_bar_invariant"] = all(s[i].bar() == s[i] for i in rest)
    ok = True
    for i in rest:
        ai = root.simple_root(i)
        factor = params.q_pair(ai, w_sub(sd.theta(ai), sd.two_rhoX))
        if c[i] and c[sd.tau[i]] != factor * c[i].bar():
            ok = False
    rep["c_bar_relation"] = ok
    ok_z, ok_f = True, True
    if rep["c_nonzero"]:
        for i in rest:
            t = sd.tau[i]
            lhs = params.Z(i).scale(c[i]).bar()
            rhs = params.Z(t).scale(params.q_pair(root.simple_root(i), root.simple_root(t)) * c[t])
            if lhs != rhs:
                ok_z = False
            if params.cX_bar(i) != params.cX_bar_formula(i):
                ok_f = False
    rep["Z_bar_relation"] = ok_z
    rep["cX_bar_formula"] = ok_f
    if root.is_finite:
        t0 = sd.tau0
        rep["c_tau0_invariant"] = all(c[t0[sd.tau[i]]] == c[i] for i in rest)
        rep["s_tau0_invariant"] = all(s[t0[i]] == s[i] for i in rest)
        rep["sfun_tau0_relation"] = all(sd.sfun(sd.tau[i]) == sd.sfun(t0[i]) for i in range(n))
    return rep


def validate_params(satake: SatakeDatum, c: Mapping[int, Any], s: Optional[Mapping[int, Any]] = None,
                    algebra: Optional[FreeAlgebra] = None, ops: Optional[BraidOperators] = None,
                    strict: bool = True) -> QSPParams:
    """매개변수 제약을 모두 정확히 검사합니다.

    Args:
        strict (bool): True 이면 위반 시 ParameterError, False 이면 report 만 채워서 반환

    Raises:
        ParameterError: 위반된 제약의 이름 목록과 함께
    """
    params = QSPParams(satake, c, s or {}, algebra, ops)
    params.report = _param_report(params)
    failed = params.violations
    if failed and strict:
        raise ParameterError(f"매개변수 제약 위반: {', '.join(failed)}", violations=failed)
    return params


# --- γ 확장 ---

def _factor_atoms(field, raw) -> Tuple[int, Dict[Any, int]]:
    """체 원소를 부호, 유리 소수, monic 기약 다항식의 거듭제곱으로 분해합니다."""
    sign = 1
    atoms: Dict[Any, int] = {}
    for poly, e in ((raw.numer, 1), (raw.denom, -1)):
        coeff, factors = poly.factor_list()
        const = Fraction(int(coeff.numerator), int(coeff.denominator))
        for f, k in factors:
            lc = f.LC
            const *= Fraction(int(lc.numerator), int(lc.denominator)) ** k
            monic = f.monic()
            if monic.degree() == 0:
                continue
            key = ("poly", tuple(sorted((m[0], Fraction(int(x.numerator), int(x.denominator)))
                                        for m, x in monic.terms())))
            atoms[key] = atoms.get(key, 0) + e * k
        if const < 0:
            sign = -sign
            const = -const
        for p, k in factorint(const.numerator).items():
            atoms[("prime", p)] = atoms.get(("prime", p), 0) + e * k
        for p, k in factorint(const.denominator).items():
            atoms[("prime", p)] = atoms.get(("prime", p), 0) - e * k
    return sign, {a: k for a, k in atoms.items() if k}


def _atom_value(field, atom) -> Any:
    kind, data = atom
    if kind == "prime":
        return field.convert(int(data))
    poly = field.ring.from_dict({(k,): QQ(cf.numerator, cf.denominator) for k, cf in data})
    return field.field.new(poly, field.ring.one)


def extend_gamma(params: QSPParams, values: Sequence[Any]) -> List[Any]:
    """γ(α_j) = values[j] 를 만족하는 군 준동형 γ: P → K(q^(1/d))^× 의 기본 웨이트 값.

    γ(α_j) = Π_k γ(ϖ_k)^{a_kj} 이므로 원자별 지수 L_j 에 대해 Aᵀ x = L 을 풉니다.

    Raises:
        ParameterError: 정수해가 없어 1의 거듭제곱근 등 체 확장이 필요한 경우
    """
    root, field = params.root, params.field
    n = root.rank
    if root._ainv is None:
        raise ParameterError("특이 Cartan 행렬에서는 γ 를 P 로 확장할 수 없습니다.", violations=("gamma_extension",))
    signs: List[int] = []
    per_node: List[Dict[Any, int]] = []
    for v in values:
        if not v:
            raise ParameterError("γ(i) 가 0 입니다.", violations=("gamma_nonzero",))
        sg, atoms = _factor_atoms(field, v)
        signs.append(sg)
        per_node.append(atoms)
    out = [field.one for _ in range(n)]
    for atom in sorted({a for atoms in per_node for a in atoms}, key=repr):
        L = [atoms.get(atom, 0) for atoms in per_node]
        x = [sum((root._ainv[j][k] * L[j] for j in range(n)), Fraction(0)) for k in range(n)]
        if any(xk.denominator != 1 for xk in x):
            raise ParameterError(
                "γ 를 P 로 확장하려면 K(q^(1/d)) 의 유한 확대(거듭제곱근)가 필요합니다. "
                "c 를 γ(i) 가 적절한 거듭제곱이 되도록 다시 고르십시오.",
                violations=("gamma_extension",))
        val = _atom_value(field, atom)
        for k in range(n):
            out[k] *= val ** int(x[k])
    target = [0 if sg > 0 else 1 for sg in signs]
    A = root.cartan
    for y in product((0, 1), repeat=n):
        if all(sum(A[k][j] * y[k] for k in range(n)) % 2 == target[j] for j in range(n)):
            return [(-out[k] if y[k] else out[k]) for k in range(n)]
    raise ParameterError(
        "γ 의 부호를 P 로 확장할 수 없습니다 (-1 의 거듭제곱근이 필요). "
        "c_i s(τ(i)) 의 부호가 맞도록 매개변수를 다시 고르십시오.",
        violations=("gamma_extension",))


def gamma_eval(params: QSPParams, lam: Sequence) -> Scalar:
    """γ(λ) = Π_k γ(ϖ_k)^{λ(h_k)}."""
    root = params.root
    lam = as_weight(lam)
    if not root.is_integral(lam):
        raise ParameterError(f"정수 웨이트가 아닙니다: {lam}", violations=("weight_lattice",))
    val = params.field.wrap(1)
    for k, g in enumerate(params.gamma_fundamental):
        e = int(root.coroot(k, lam))
        if e:
            val = val * g ** e
    return val


def xi_exponent(params: QSPParams, lam: Sequence) -> Fraction:
    """-(λ⁺, λ⁺) + Σ_k (α̃_k, α̃_k) λ_k (λ_k 는 근 좌표)."""
    sd, root = params.satake, params.root
    lam = as_weight(lam)
    plus = w_scale(Fraction(1, 2), w_add(lam, sd.theta(lam)))
    e = -root.pair(plus, plus)
    for k in range(root.rank):
        if lam[k]:
            ak = root.simple_root(k)
            tilde = w_scale(Fraction(1, 2), w_sub(ak, sd.theta(ak)))
            e += root.pair(tilde, tilde) * lam[k]
    return e


def xi_eval(params: QSPParams, lam: Sequence) -> Scalar:
    """ξ(λ) = γ(λ) q^{-(λ⁺,λ⁺) + Σ_k (α̃_k,α̃_k) λ(ϖ_k^∨)} (메모이즈)."""
    lam = as_weight(lam)
    cached = params._xi.get(lam)
    if cached is not None:
        return cached
    try:
        qpart = params.field.q_pow(xi_exponent(params, lam))
    except ScalarError as e:
        raise ParameterError(f"ξ({lam}) 의 q 지수가 (1/d)Z 에 속하지 않습니다.",
                             violations=("xi_exponent",)) from e
    val = gamma_eval(params, lam) * params.field.wrap(qpart)
    return params._xi.setdefault(lam, val)
