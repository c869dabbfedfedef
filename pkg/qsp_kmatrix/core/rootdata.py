"""근 데이터와 Satake 데이터.

Cartan 행렬로부터 대칭화 계수, 쌍선형 형식, 기본 웨이트, Weyl 군 단어를 계산하고,
허용 쌍 (X, τ) 에 대해 Θ = -w_X∘τ, τ0, s-함수를 구성합니다.

웨이트는 단순근 좌표의 `Fraction` 튜플로 표현합니다. 노드는 내부적으로 0부터 셉니다.
"""
from collections import deque
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from sympy import Matrix, Rational

from ..exceptions import AdmissibilityError, RootDatumError

Weight = Tuple[Fraction, ...]


def as_weight(values: Iterable) -> Weight:
    return tuple(Fraction(x) for x in values)


def is_in_Q(mu: Weight) -> bool:
    return all(Fraction(x).denominator == 1 for x in mu)


def to_int(mu: Weight) -> Tuple[int, ...]:
    if not is_in_Q(mu):
        raise RootDatumError(f"근 격자 Q의 원소가 아닙니다: {mu}", condition="in_Q")
    return tuple(int(x) for x in mu)


def is_nonneg(mu: Iterable) -> bool:
    return all(x >= 0 for x in mu)


def w_add(a: Sequence, b: Sequence) -> Weight:
    return tuple(Fraction(x) + Fraction(y) for x, y in zip(a, b))


def w_sub(a: Sequence, b: Sequence) -> Weight:
    return tuple(Fraction(x) - Fraction(y) for x, y in zip(a, b))


def w_scale(c, a: Sequence) -> Weight:
    return tuple(Fraction(c) * Fraction(x) for x in a)


def height(mu: Sequence) -> Fraction:
    return sum((Fraction(x) for x in mu), Fraction(0))


def q_plus_up_to(rank: int, cutoff: int) -> List[Tuple[int, ...]]:
    """높이 ≤ cutoff 인 Q⁺ 원소들 (높이, 사전식 순)."""
    out: List[Tuple[int, ...]] = []

    def rec(prefix: List[int], remaining: int):
        if len(prefix) == rank:
            out.append(tuple(prefix))
            return
        for k in range(remaining + 1):
            rec(prefix + [k], remaining - k)

    rec([], int(cutoff))
    return sorted(out, key=lambda m: (sum(m), m))


class RootDatum:
    """대칭화 가능한 일반화 Cartan 행렬에 대한 근 데이터.

    Args:
        cartan: 정수 정사각 행렬 (a_ij = α_j(h_i))

    Raises:
        RootDatumError: 대칭화 불가능하거나 일반화 Cartan 행렬이 아닌 경우
    """

    def __init__(self, cartan: Sequence[Sequence[int]]):
        A = [[int(x) for x in row] for row in np.asarray(cartan, dtype=int).tolist()]
        n = len(A)
        if n == 0 or any(len(row) != n for row in A):
            raise RootDatumError("Cartan 행렬은 비어 있지 않은 정사각 행렬이어야 합니다.", condition="square")
        for i in range(n):
            if A[i][i] != 2:
                raise RootDatumError(f"대각 성분 a_{i+1}{i+1} 은 2여야 합니다.", condition="diagonal")
            for j in range(n):
                if i != j and (A[i][j] > 0 or (A[i][j] == 0) != (A[j][i] == 0)):
                    raise RootDatumError(f"일반화 Cartan 행렬이 아닙니다 (a_{i+1}{j+1}={A[i][j]}).",
                                         condition="generalized_cartan")
        self.cartan: Tuple[Tuple[int, ...], ...] = tuple(tuple(r) for r in A)
        self.rank: int = n
        self.eps: Tuple[int, ...] = self._symmetrizers(A)
        self.B: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(self.eps[i] * A[i][j] for j in range(n)) for i in range(n))
        if any(self.B[i][j] != self.B[j][i] for i in range(n) for j in range(n)):
            raise RootDatumError("대칭화 가능한 Cartan 행렬이 아닙니다.", condition="symmetrizable")

        sym = Matrix(self.B)
        self.is_finite: bool = bool(sym.is_positive_definite)
        det_a = Matrix(A).det()
        if det_a != 0:
            self.A_ext = Matrix(A)
        else:
            self.A_ext = self._extend(A)
        det_ext = Rational(self.A_ext.det())
        if det_ext == 0:
            raise RootDatumError("확장 Cartan 행렬이 특이합니다.", condition="A_ext")
        self.det_ext = det_ext
        self.d: int = int(abs(det_ext.p))
        self._ainv: Optional[List[List[Fraction]]] = None
        if det_a != 0:
            inv = Matrix(A).inv()
            self._ainv = [[Fraction(int(inv[i, j].p), int(inv[i, j].q)) for j in range(n)] for i in range(n)]
        self._roots: Optional[List[Tuple[int, ...]]] = None

    # --- 구성 ---

    @staticmethod
    def _symmetrizers(A: List[List[int]]) -> Tuple[int, ...]:
        n = len(A)
        eps: List[Optional[Fraction]] = [None] * n
        for start in range(n):
            if eps[start] is not None:
                continue
            eps[start] = Fraction(1)
            queue = deque([start])
            while queue:
                i = queue.popleft()
                for j in range(n):
                    if i == j or A[i][j] == 0:
                        continue
                    # ε_i a_ij = ε_j a_ji
                    val = eps[i] * A[i][j] / A[j][i]
                    if eps[j] is None:
                        eps[j] = val
                        queue.append(j)
                    elif eps[j] != val:
                        raise RootDatumError("대칭화 계수가 일관되지 않습니다.", condition="symmetrizable")
        # 각 연결 성분을 서로소 정수로 정규화
        out = [Fraction(0)] * n
        seen = [False] * n
        for start in range(n):
            if seen[start]:
                continue
            comp, queue = [], deque([start])
            seen[start] = True
            while queue:
                i = queue.popleft()
                comp.append(i)
                for j in range(n):
                    if not seen[j] and A[i][j] != 0:
                        seen[j] = True
                        queue.append(j)
            lcm = 1
            for i in comp:
                den = eps[i].denominator
                lcm = lcm * den // gcd(lcm, den)
            ints = [int(eps[i] * lcm) for i in comp]
            g = 0
            for v in ints:
                g = gcd(g, v)
            for i, v in zip(comp, ints):
                out[i] = Fraction(v // g)
        return tuple(int(x) for x in out)

    def _extend(self, A: List[List[int]]) -> Matrix:
        n = len(A)
        rows = [list(r) for r in A]
        extra: List[List[int]] = []
        rank = Matrix(rows).rank()
        for k in range(n):
            if rank == n:
                break
            e = [1 if m == k else 0 for m in range(n)]
            new_rank = Matrix(rows + extra + [e]).rank()
            if new_rank > rank:
                extra.append(e)
                rank = new_rank
        c = len(extra)
        ext = [[Rational(0)] * (n + c) for _ in range(n + c)]
        for i in range(n):
            for j in range(n):
                ext[i][j] = Rational(A[i][j])
            for s in range(c):
                ext[i][n + s] = Rational(extra[s][i], self.eps[i])
        for s in range(c):
            for j in range(n):
                ext[n + s][j] = Rational(extra[s][j])
        return Matrix(ext)

    def __repr__(self) -> str:
        return f"RootDatum(cartan={[list(r) for r in self.cartan]}, eps={self.eps}, d={self.d})"

    def __eq__(self, other) -> bool:
        return isinstance(other, RootDatum) and other.cartan == self.cartan

    def __hash__(self) -> int:
        return hash(self.cartan)

    # --- 격자 연산 ---

    def simple_root(self, i: int) -> Weight:
        return tuple(Fraction(1 if k == i else 0) for k in range(self.rank))

    def pair(self, lam: Sequence, mu: Sequence) -> Fraction:
        """(λ, μ) = Σ λ_i ε_i a_ij μ_j."""
        total = Fraction(0)
        for i, li in enumerate(lam):
            if not li:
                continue
            row = self.B[i]
            for j, mj in enumerate(mu):
                if mj and row[j]:
                    total += Fraction(li) * row[j] * Fraction(mj)
        return total

    def coroot(self, i: int, lam: Sequence) -> Fraction:
        """λ(h_i) = Σ_k a_ik λ_k."""
        return sum((self.cartan[i][k] * Fraction(x) for k, x in enumerate(lam)), Fraction(0))

    def labels(self, lam: Sequence) -> Tuple[Fraction, ...]:
        return tuple(self.coroot(i, lam) for i in range(self.rank))

    def fundamental_weight(self, i: int) -> Weight:
        if self._ainv is None:
            raise RootDatumError("특이 Cartan 행렬에는 기본 웨이트 좌표가 없습니다.", condition="invertible")
        return tuple(self._ainv[k][i] for k in range(self.rank))

    def weight_from_labels(self, labels: Sequence[int]) -> Weight:
        out = tuple(Fraction(0) for _ in range(self.rank))
        for i, n in enumerate(labels):
            if n:
                out = w_add(out, w_scale(n, self.fundamental_weight(i)))
        return out

    def is_integral(self, lam: Sequence) -> bool:
        return all(x.denominator == 1 for x in self.labels(lam))

    def reflect(self, i: int, lam: Sequence) -> Weight:
        """σ_i(λ) = λ - λ(h_i) α_i."""
        c = self.coroot(i, lam)
        out = [Fraction(x) for x in lam]
        out[i] -= c
        return tuple(out)

    def apply_word(self, word: Sequence[int], lam: Sequence) -> Weight:
        """σ_{i1} ... σ_{ik}(λ): 마지막 글자부터 적용합니다."""
        out = as_weight(lam)
        for i in reversed(word):
            out = self.reflect(i, out)
        return out

    @property
    def rho(self) -> Weight:
        return self.weight_from_labels([1] * self.rank)

    # --- 유한형 조합론 ---

    def _require_finite(self, what: str):
        if not self.is_finite:
            raise RootDatumError(f"{what} 는 유한형 Cartan 행렬에서만 지원됩니다.", condition="finite_type")

    def positive_roots(self) -> List[Tuple[int, ...]]:
        self._require_finite("positive_roots")
        if self._roots is None:
            found = {tuple(1 if k == i else 0 for k in range(self.rank)) for i in range(self.rank)}
            queue = deque(sorted(found))
            while queue:
                beta = queue.popleft()
                for i in range(self.rank):
                    gamma = to_int(self.reflect(i, beta))
                    if is_nonneg(gamma) and gamma not in found:
                        found.add(gamma)
                        queue.append(gamma)
            self._roots = sorted(found, key=lambda b: (sum(b), b))
        return list(self._roots)

    def kostant(self, mu: Sequence[int]) -> int:
        """μ 를 양의 근들의 중복집합 합으로 쓰는 방법의 수 (= dim U⁺_μ)."""
        roots = tuple(self.positive_roots())

        @lru_cache(maxsize=None)
        def count(m: Tuple[int, ...], k: int) -> int:
            if not any(m):
                return 1
            if k == len(roots):
                return 0
            total = count(m, k + 1)
            beta = roots[k]
            rest = tuple(a - b for a, b in zip(m, beta))
            while is_nonneg(rest):
                total += count(rest, k + 1)
                rest = tuple(a - b for a, b in zip(rest, beta))
            return total

        return count(tuple(int(x) for x in mu), 0)

    def weyl_dimension(self, lam: Sequence) -> int:
        """Weyl 차원 공식 Π (λ+ρ, β)/(ρ, β)."""
        rho = self.rho
        lr = w_add(lam, rho)
        val = Fraction(1)
        for beta in self.positive_roots():
            val *= self.pair(lr, beta) / self.pair(rho, beta)
        if val.denominator != 1:
            raise RootDatumError(f"Weyl 차원이 정수가 아닙니다: {val}", condition="dominant")
        return int(val)

    def lex_word(self, y: Weight) -> Tuple[int, ...]:
        """y = wρ 인 w 의 사전식 최소 축약 단어."""
        word: List[int] = []
        y = as_weight(y)
        while True:
            neg = [i for i in range(self.rank) if self.coroot(i, y) < 0]
            if not neg:
                return tuple(word)
            i = neg[0]
            word.append(i)
            y = self.reflect(i, y)

    def longest_element_rho(self, X: Iterable[int]) -> Weight:
        """w_X ρ: X 의 반사로 ρ 를 X-반지배 영역까지 보냅니다."""
        X = sorted(set(X))
        y = self.rho
        changed = True
        while changed:
            changed = False
            for i in X:
                if self.coroot(i, y) > 0:
                    y = self.reflect(i, y)
                    changed = True
        return y

    def longest_words(self, X: Iterable[int] = ()) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """(w0_word, wX_word), wX_word 는 w0_word 의 접두사.

        Raises:
            RootDatumError: 유한형이 아니거나 길이가 |Φ⁺| 와 다른 경우
        """
        self._require_finite("longest_words")
        wx_rho = self.longest_element_rho(X)
        prefix = self.lex_word(wx_rho)
        suffix = self.lex_word(w_scale(-1, wx_rho))
        w0 = prefix + suffix
        if len(w0) != len(self.positive_roots()):
            raise RootDatumError(f"최장 원소 단어의 길이가 맞지 않습니다: {len(w0)}", condition="longest_word",
                                 details=w0)
        return w0, prefix

    def tau0(self) -> Tuple[int, ...]:
        """w0(α_i) = -α_{τ0(i)}."""
        w0, _ = self.longest_words(())
        out = []
        for i in range(self.rank):
            img = to_int(w_scale(-1, self.apply_word(w0, self.simple_root(i))))
            if sum(img) != 1 or min(img) < 0:
                raise RootDatumError("w0 가 단순근을 음의 단순근으로 보내지 않습니다.", condition="tau0")
            out.append(img.index(1))
        return tuple(out)

    def sub_is_finite(self, X: Iterable[int]) -> bool:
        X = sorted(set(X))
        if not X:
            return True
        sub = Matrix([[self.B[i][j] for j in X] for i in X])
        return bool(sub.is_positive_definite)

    def sub_positive_roots(self, X: Iterable[int]) -> List[Tuple[int, ...]]:
        """부분계 X 의 양의 근 (X 가 유한형이어야 함)."""
        X = sorted(set(X))
        found = {tuple(1 if k == i else 0 for k in range(self.rank)) for i in X}
        queue = deque(sorted(found))
        while queue:
            beta = queue.popleft()
            for i in X:
                gamma = to_int(self.reflect(i, beta))
                if is_nonneg(gamma) and gamma not in found:
                    found.add(gamma)
                    queue.append(gamma)
                    if len(found) > 10000:
                        raise RootDatumError("X 가 유한형이 아닙니다.", condition="X_finite_type")
        return sorted(found, key=lambda b: (sum(b), b))


class SatakeDatum:
    """허용 쌍 (X, τ) 와 그로부터 유도되는 Θ, τ0, s-함수.

    생성자는 검증하지 않습니다. 검증은 `validate_admissible` 로 합니다.
    """

    def __init__(self, root: RootDatum, X: Iterable[int], tau: Sequence[int]):
        self.root = root
        self.X: Tuple[int, ...] = tuple(sorted(set(int(i) for i in X)))
        self.tau: Tuple[int, ...] = tuple(int(t) for t in tau)
        n = root.rank
        if len(self.tau) != n or sorted(self.tau) != list(range(n)):
            raise AdmissibilityError(f"τ 는 노드 집합의 치환이어야 합니다: {self.tau}", failed=("tau_permutation",))
        if any(i < 0 or i >= n for i in self.X):
            raise AdmissibilityError(f"X 가 노드 집합에 포함되지 않습니다: {self.X}", failed=("X_subset",))
        self._words: Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]] = None
        self._tau0: Optional[Tuple[int, ...]] = None
        self._report: Optional[Dict[str, bool]] = None

    @property
    def rank(self) -> int:
        return self.root.rank

    def __repr__(self) -> str:
        return f"SatakeDatum(X={[i + 1 for i in self.X]}, tau={[t + 1 for t in self.tau]})"

    # --- X 부분계 ---

    def positive_roots_X(self) -> List[Tuple[int, ...]]:
        return self.root.sub_positive_roots(self.X)

    @property
    def two_rhoX(self) -> Weight:
        out = tuple(Fraction(0) for _ in range(self.rank))
        for beta in self.positive_roots_X():
            out = w_add(out, beta)
        return out

    def alpha_two_rhoX_vee(self, j: int) -> Fraction:
        """α_j(2ρ_X^∨) = Σ_{β∈Φ_X⁺} 2(α_j, β)/(β, β)."""
        aj = self.root.simple_root(j)
        return sum((2 * self.root.pair(aj, beta) / self.root.pair(beta, beta)
                    for beta in self.positive_roots_X()), Fraction(0))

    def wX(self, lam: Sequence) -> Weight:
        return self.root.apply_word(self.wX_word, lam)

    @property
    def wX_word(self) -> Tuple[int, ...]:
        if self.root.is_finite:
            return self.words[1]
        return self.root.lex_word(self.root.longest_element_rho(self.X))

    @property
    def w0_word(self) -> Tuple[int, ...]:
        return self.words[0]

    @property
    def words(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        if self._words is None:
            self._words = self.root.longest_words(self.X)
        return self._words

    # --- 대합 ---

    def tau_weight(self, lam: Sequence) -> Weight:
        out = [Fraction(0)] * self.rank
        for k, x in enumerate(lam):
            out[self.tau[k]] = Fraction(x)
        return tuple(out)

    def theta(self, lam: Sequence) -> Weight:
        """Θ(λ) = -w_X(τ(λ))."""
        return w_scale(-1, self.wX(self.tau_weight(lam)))

    @property
    def tau0(self) -> Tuple[int, ...]:
        if self._tau0 is None:
            self._tau0 = self.root.tau0()
        return self._tau0

    @property
    def tautau0(self) -> Tuple[int, ...]:
        """ττ0 (노드 치환). τ 와 τ0 는 가환입니다."""
        return tuple(self.tau[self.tau0[i]] for i in range(self.rank))

    def permute_weight(self, perm: Sequence[int], lam: Sequence) -> Weight:
        out = [Fraction(0)] * self.rank
        for k, x in enumerate(lam):
            out[perm[k]] = Fraction(x)
        return tuple(out)

    def sfun(self, i: int) -> int:
        """s-함수: X 이거나 τ 고정이면 1, 쌍 i < τ(i) 에서는 s(i)=1, s(τ(i)) = (-1)^{α_i(2ρ_X^∨)}."""
        t = self.tau[i]
        if i in self.X or t == i or i < t:
            return 1
        e = self.alpha_two_rhoX_vee(t)
        return -1 if int(e) % 2 else 1

    @property
    def I_ns(self) -> Tuple[int, ...]:
        A = self.root.cartan
        return tuple(i for i in range(self.rank)
                     if i not in self.X and self.tau[i] == i and all(A[i][j] == 0 for j in self.X))

    # --- 허용성 ---

    def admissibility_report(self) -> Dict[str, bool]:
        """조건별 결과를 담은 딕셔너리 (예외를 던지지 않음)."""
        if self._report is not None:
            return dict(self._report)
        n, A, tau, X = self.rank, self.root.cartan, self.tau, set(self.X)
        rep: Dict[str, bool] = {}
        rep["tau_involution"] = all(tau[tau[i]] == i for i in range(n))
        rep["tau_diagram_automorphism"] = all(A[tau[i]][tau[j]] == A[i][j] for i in range(n) for j in range(n))
        rep["tau_preserves_X"] = {tau[i] for i in X} == X
        rep["X_finite_type"] = self.root.sub_is_finite(self.X)
        if rep["X_finite_type"]:
            ok = True
            word = self.root.lex_word(self.root.longest_element_rho(self.X))
            for i in X:
                img = self.root.apply_word(word, self.root.simple_root(i))
                if img != w_scale(-1, self.root.simple_root(tau[i])):
                    ok = False
            rep["tau_equals_minus_wX_on_X"] = ok
            rep["rhoX_vee_integrality"] = all(self.alpha_two_rhoX_vee(j) % 2 == 0
                                              for j in range(n) if j not in X and tau[j] == j)
        else:
            rep["tau_equals_minus_wX_on_X"] = False
            rep["rhoX_vee_integrality"] = False
        fixed = [i for i in range(n) if i not in X and tau[i] == i]
        rep["condition_i"] = all(A[i][j] in (0, -1, -2) for i in fixed for j in X)
        rep["condition_ii"] = all(A[i][j] in (0, -1, -2, -3) for i in fixed for j in range(n)
                                  if j not in X and j != i)
        if self.root.is_finite and all(rep.values()):
            t0 = self.tau0
            rep["tau0_in_Aut"] = ({t0[i] for i in X} == X and
                                  all(A[t0[i]][t0[j]] == A[i][j] for i in range(n) for j in range(n)) and
                                  all(tau[t0[i]] == t0[tau[i]] for i in range(n)))
        self._report = rep
        return dict(rep)

    def is_admissible(self) -> bool:
        return all(self.admissibility_report().values())


def validate_admissible(root: RootDatum, X: Iterable[int], tau: Sequence[int]) -> SatakeDatum:
    """(X, τ) 의 허용성을 검사하고 SatakeDatum 을 반환합니다.

    Raises:
        AdmissibilityError: 실패한 조건의 이름을 모두 담아 발생
    """
    sd = SatakeDatum(root, X, tau)
    rep = sd.admissibility_report()
    failed = [name for name, ok in rep.items() if not ok]
    if failed:
        raise AdmissibilityError(f"허용 쌍이 아닙니다. 실패한 조건: {', '.join(failed)}", failed=failed, report=rep)
    return sd


def build_datum(cartan: Sequence[Sequence[int]]) -> RootDatum:
    return RootDatum(cartan)
