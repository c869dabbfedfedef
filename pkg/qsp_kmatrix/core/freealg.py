"""U⁺ / U⁻ 의 웨이트별 실현.

U⁺_μ 는 자유 단어를 Drinfeld 쌍의 근기(radical)로 나눈 몫으로 다룹니다.
단어 w 의 "프로파일"(모든 i 에 대한 ᵢr(w) 의 좌표)은 몫 위에서 단사이므로,
사전식 순서로 프로파일이 독립인 단어를 골라 기저로 삼고 임의 단어는 프로파일로 환원합니다.
U⁻ 는 같은 단어(F-단어)와 같은 좌표를 공유합니다.
"""
import threading
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from sympy.utilities.iterables import multiset_permutations

from ..exceptions import AlgebraError
from ..utils import matrix_utils as mu_
from .rootdata import RootDatum
from .scalar import Scalar, ScalarField

Word = Tuple[int, ...]
Mu = Tuple[int, ...]
PLUS = "plus"
MINUS = "minus"


@dataclass
class WeightBasis:
    """웨이트 μ 의 기저 단어와 좌표 복원기."""
    mu: Mu
    words: Tuple[Word, ...]
    solver: Any = None
    index: Dict[Word, int] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.words)


class FreeAlgebra:
    """근 데이터 위의 U⁺/U⁻ 단어 대수.

    Args:
        root (RootDatum): 근 데이터
        field (ScalarField): 계수체 (root.d 와 같은 d)
        reverse (bool): True 이면 기저 선택 시 사전식 역순으로 후보를 훑습니다
    """

    def __init__(self, root: RootDatum, field: Optional[ScalarField] = None, reverse: bool = False):
        self.root = root
        self.field = field or ScalarField(root.d)
        self.K = self.field.domain
        self.reverse = reverse
        self.n = root.rank
        self._bases: Dict[Mu, WeightBasis] = {}
        self._coords: Dict[Word, Tuple[Any, ...]] = {}
        self._gram: Dict[Mu, List[List[Any]]] = {}
        self._prod: Dict[Tuple[Mu, Mu], List[Tuple[Any, ...]]] = {}
        self._qp: Dict[Tuple[Tuple, Tuple], Any] = {}
        self._lock = threading.RLock()

    def __repr__(self) -> str:
        return f"FreeAlgebra(rank={self.n}, d={self.field.d}, reverse={self.reverse})"

    # --- 기본 도구 ---

    def alpha(self, i: int) -> Mu:
        return tuple(1 if k == i else 0 for k in range(self.n))

    def wt(self, word: Sequence[int]) -> Mu:
        out = [0] * self.n
        for i in word:
            out[i] += 1
        return tuple(out)

    def qpair(self, a: Sequence, b: Sequence) -> Any:
        """q^{(a, b)} (체 원소)."""
        key = (tuple(a), tuple(b))
        val = self._qp.get(key)
        if val is None:
            val = self.field.q_pow(self.root.pair(a, b))
            self._qp[key] = val
        return val

    def q_i(self, i: int) -> Any:
        return self.field.q_pow(self.root.eps[i])

    def c_pair(self, i: int) -> Any:
        """⟨F_i, E_i⟩ = -1/(q_i - q_i^{-1})."""
        qi = self.q_i(i)
        return -self.K.one / (qi - 1 / qi)

    def _sub(self, mu: Mu, i: int) -> Optional[Mu]:
        if mu[i] == 0:
            return None
        out = list(mu)
        out[i] -= 1
        return tuple(out)

    # --- 단어 단위 미분 ---

    def ir_word(self, i: int, word: Word) -> Dict[Word, Any]:
        """ᵢr(w) = Σ_{w_p = i} q^{(α_i, wt(w_{<p}))} (w 에서 p 제거)."""
        out: Dict[Word, Any] = {}
        ai = self.alpha(i)
        left = [0] * self.n
        for p, letter in enumerate(word):
            if letter == i:
                w = word[:p] + word[p + 1:]
                out[w] = out.get(w, self.K.zero) + self.qpair(ai, left)
            left[letter] += 1
        return out

    def r_word(self, i: int, word: Word) -> Dict[Word, Any]:
        """r_i(w) = Σ_{w_p = i} q^{(α_i, wt(w_{>p}))} (w 에서 p 제거)."""
        out: Dict[Word, Any] = {}
        ai = self.alpha(i)
        right = [0] * self.n
        for p in range(len(word) - 1, -1, -1):
            letter = word[p]
            if letter == i:
                w = word[:p] + word[p + 1:]
                out[w] = out.get(w, self.K.zero) + self.qpair(ai, right)
            right[letter] += 1
        return out

    def _combine(self, terms: Dict[Word, Any], mu: Mu) -> Tuple[Any, ...]:
        dim = self.weight_basis(mu).dim
        acc = [self.K.zero] * dim
        for w, c in terms.items():
            if not c:
                continue
            for k, x in enumerate(self.coords(w)):
                if x:
                    acc[k] += c * x
        return tuple(acc)

    def _profile(self, word: Word) -> Dict[Tuple[int, int], Any]:
        mu = self.wt(word)
        prof: Dict[Tuple[int, int], Any] = {}
        for i in range(self.n):
            lower = self._sub(mu, i)
            if lower is None:
                continue
            vec = self._combine(self.ir_word(i, word), lower)
            for k, x in enumerate(vec):
                if x:
                    prof[(i, k)] = x
        return prof

    # --- 기저 ---

    def weight_basis(self, mu: Mu) -> WeightBasis:
        """웨이트 μ 의 기저 (메모이즈, 한 번 계산 후 추가만 됨)."""
        mu = tuple(int(x) for x in mu)
        wb = self._bases.get(mu)
        if wb is not None:
            return wb
        if any(x < 0 for x in mu) or len(mu) != self.n:
            raise AlgebraError(f"Q⁺ 의 원소가 아닙니다: {mu}", details=mu)
        with self._lock:
            wb = self._bases.get(mu)
            if wb is not None:
                return wb
            wb = self._build_basis(mu)
            return self._bases.setdefault(mu, wb)

    def _build_basis(self, mu: Mu) -> WeightBasis:
        if sum(mu) == 0:
            return WeightBasis(mu, ((),), None, {(): 0})
        letters = [i for i in range(self.n) for _ in range(mu[i])]
        candidates = [tuple(w) for w in multiset_permutations(letters)]
        candidates.sort(reverse=self.reverse)
        target = self.root.kostant(mu) if self.root.is_finite else None
        if target == 0:
            return WeightBasis(mu, (), mu_.ProfileSolver([], self.K), {})
        ech = mu_.IncrementalEchelon(self.K)
        chosen: List[Word] = []
        profiles = []
        for w in candidates:
            prof = self._profile(w)
            if ech.add(prof):
                chosen.append(w)
                profiles.append(prof)
                if target is not None and len(chosen) == target:
                    break
        if target is not None and len(chosen) != target:
            raise AlgebraError(f"웨이트 {mu} 의 기저 크기 {len(chosen)} 가 Kostant 분할 수 {target} 와 다릅니다.",
                               details=(mu, len(chosen), target))
        solver = mu_.ProfileSolver(profiles, self.K)
        return WeightBasis(mu, tuple(chosen), solver, {w: k for k, w in enumerate(chosen)})

    def coords(self, word: Sequence[int]) -> Tuple[Any, ...]:
        word = tuple(word)
        cached = self._coords.get(word)
        if cached is not None:
            return cached
        wb = self.weight_basis(self.wt(word))
        if word in wb.index:
            vec = [self.K.zero] * wb.dim
            vec[wb.index[word]] = self.K.one
            out = tuple(vec)
        elif wb.dim == 0:
            out = ()
        else:
            out = wb.solver.coords(self._profile(word))
        return self._coords.setdefault(word, out)

    def dim(self, mu: Mu) -> int:
        return self.weight_basis(mu).dim

    # --- 쌍 ---

    def gram(self, mu: Mu) -> List[List[Any]]:
        """G_μ[a, b] = ⟨F_{b_a}, E_{b_b}⟩."""
        mu = tuple(mu)
        g = self._gram.get(mu)
        if g is not None:
            return g
        wb = self.weight_basis(mu)
        if sum(mu) == 0:
            g = [[self.K.one]]
        else:
            g = []
            irs: Dict[int, List[Tuple[Any, ...]]] = {}
            for ya in wb.words:
                i = ya[0]
                lower = self._sub(mu, i)
                gl = self.gram(lower)
                vy = self.coords(ya[1:])
                ci = self.c_pair(i)
                if i not in irs:
                    irs[i] = [self._combine(self.ir_word(i, xb), lower) for xb in wb.words]
                g.append([ci * _bilinear(vy, gl, vx, self.K) for vx in irs[i]])
        return self._gram.setdefault(mu, g)

    def gram_matrix(self, mu: Mu):
        return mu_.from_rows(self.gram(mu), self.K, ncols=self.dim(mu))

    def product_structure(self, mu1: Mu, mu2: Mu) -> List[Tuple[Any, ...]]:
        """b1[a] b2[b] 의 좌표 목록 (인덱스 a * dim(mu2) + b)."""
        key = (tuple(mu1), tuple(mu2))
        s = self._prod.get(key)
        if s is None:
            b1, b2 = self.weight_basis(mu1).words, self.weight_basis(mu2).words
            s = [self.coords(x + y) for x in b1 for y in b2]
            s = self._prod.setdefault(key, s)
        return s

    def product_matrix(self, mu1: Mu, mu2: Mu):
        mu = tuple(a + b for a, b in zip(mu1, mu2))
        cols = self.product_structure(mu1, mu2)
        dok = {(r, c): x for c, vec in enumerate(cols) for r, x in enumerate(vec) if x}
        return mu_.from_dok(dok, (self.dim(mu), len(cols)), self.K)

    # --- 원소 생성 ---

    def zero(self, side: str = PLUS) -> "AlgebraElement":
        return AlgebraElement(self, side, {})

    def one(self, side: str = PLUS) -> "AlgebraElement":
        return AlgebraElement(self, side, {self.wt(()): (self.K.one,)})

    def from_words(self, terms: Dict[Word, Any], side: str = PLUS) -> "AlgebraElement":
        comps: Dict[Mu, List[Any]] = {}
        for w, c in terms.items():
            c = self.field.convert(c)
            if not c:
                continue
            w = tuple(w)
            mu = self.wt(w)
            acc = comps.setdefault(mu, [self.K.zero] * self.dim(mu))
            for k, x in enumerate(self.coords(w)):
                if x:
                    acc[k] += c * x
        return AlgebraElement(self, side, {m: tuple(v) for m, v in comps.items()})

    def word(self, w: Sequence[int], side: str = PLUS, coeff: Any = 1) -> "AlgebraElement":
        return self.from_words({tuple(w): coeff}, side)

    def E(self, i: int) -> "AlgebraElement":
        return self.word((i,), PLUS)

    def F(self, i: int) -> "AlgebraElement":
        return self.word((i,), MINUS)

    def divided_power(self, i: int, k: int, side: str = PLUS) -> "AlgebraElement":
        """E_i^{(k)} = E_i^k / [k]_{q_i}!."""
        coeff = self.K.one / self.field.qfact(k, self.root.eps[i])
        return self.word((i,) * k, side, coeff)

    def from_vector(self, mu: Mu, vec: Sequence[Any], side: str = PLUS, ktag: Optional[Mu] = None):
        return AlgebraElement(self, side, {tuple(mu): tuple(vec)}, ktag)

    def convert(self, x: "AlgebraElement") -> "AlgebraElement":
        """다른 기저 순서를 쓰는 대수의 원소를 이 대수의 좌표로 옮깁니다."""
        terms: Dict[Word, Any] = {}
        for mu, vec in x.comps.items():
            for w, c in zip(x.algebra.weight_basis(mu).words, vec):
                if c:
                    terms[w] = terms.get(w, self.K.zero) + c
        out = self.from_words(terms, x.side)
        return AlgebraElement(self, x.side, out.comps, x.ktag)


def _bilinear(y: Sequence[Any], g: List[List[Any]], x: Sequence[Any], K) -> Any:
    total = K.zero
    for a, ya in enumerate(y):
        if not ya:
            continue
        row = g[a]
        acc = K.zero
        for b, xb in enumerate(x):
            if xb:
                acc += row[b] * xb
        total += ya * acc
    return total


class AlgebraElement:
    """U⁺ 또는 U⁻ 의 웨이트별 좌표 원소. 선택적으로 오른쪽 K_β 태그(u·K_β)를 가집니다."""

    __slots__ = ("algebra", "side", "comps", "ktag")

    def __init__(self, algebra: FreeAlgebra, side: str, comps: Dict[Mu, Tuple[Any, ...]],
                 ktag: Optional[Mu] = None):
        if side not in (PLUS, MINUS):
            raise AlgebraError(f"side 는 'plus' 또는 'minus' 여야 합니다: {side}")
        self.algebra = algebra
        self.side = side
        self.comps = {m: tuple(v) for m, v in comps.items() if any(v)}
        self.ktag = tuple(ktag) if ktag is not None else None

    # --- 비교와 표시 ---

    def __repr__(self) -> str:
        return f"AlgebraElement({self.side}, weights={sorted(self.comps)}, ktag={self.ktag})"

    def is_zero(self) -> bool:
        return not self.comps

    def __bool__(self) -> bool:
        return bool(self.comps)

    def _tag(self) -> Mu:
        return self.ktag if self.ktag is not None else tuple(0 for _ in range(self.algebra.n))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, AlgebraElement) or other.side != self.side:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self._tag() == other._tag() and (self - other).is_zero()

    __hash__ = None

    def weights(self) -> List[Mu]:
        return sorted(self.comps, key=lambda m: (sum(m), m))

    def component(self, mu: Mu) -> Tuple[Any, ...]:
        mu = tuple(mu)
        return self.comps.get(mu, tuple(self.algebra.K.zero for _ in range(self.algebra.dim(mu))))

    def terms(self) -> Iterable[Tuple[Word, Any]]:
        for mu in self.weights():
            for w, c in zip(self.algebra.weight_basis(mu).words, self.comps[mu]):
                if c:
                    yield w, c

    def to_dump(self) -> List[Dict[str, Any]]:
        """디버그 덤프: 웨이트별 (단어, 스칼라 문자열) 목록, 노드는 1부터."""
        fld = self.algebra.field
        out = []
        for mu in self.weights():
            words = self.algebra.weight_basis(mu).words
            out.append({
                "weight": list(mu),
                "terms": [[[i + 1 for i in w], fld.to_text(c)] for w, c in zip(words, self.comps[mu]) if c],
            })
        return out

    # --- 선형 연산 ---

    def _check(self, other: "AlgebraElement"):
        if not isinstance(other, AlgebraElement):
            raise AlgebraError(f"AlgebraElement 가 아닙니다: {type(other).__name__}")
        if other.side != self.side:
            raise AlgebraError(f"side 가 다른 원소끼리 연산할 수 없습니다: {self.side} vs {other.side}")

    def _merge_tag(self, other: "AlgebraElement") -> Optional[Mu]:
        if self.is_zero():
            return other.ktag
        if other.is_zero():
            return self.ktag
        if self._tag() != other._tag():
            raise AlgebraError(f"K 태그가 다른 원소는 더할 수 없습니다: {self.ktag} vs {other.ktag}")
        return self.ktag if self.ktag is not None else other.ktag

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        K = self.algebra.K
        comps = dict(self.comps)
        for mu, vec in other.comps.items():
            if mu in comps:
                comps[mu] = tuple(a + b for a, b in zip(comps[mu], vec))
            else:
                comps[mu] = vec
        return AlgebraElement(self.algebra, self.side, comps, self._merge_tag(other))

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, self.side, {m: tuple(-x for x in v) for m, v in self.comps.items()},
                              self.ktag)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, c: Any) -> "AlgebraElement":
        c = self.algebra.field.convert(c)
        return AlgebraElement(self.algebra, self.side, {m: tuple(c * x for x in v) for m, v in self.comps.items()},
                              self.ktag)

    def __rmul__(self, c: Any) -> "AlgebraElement":
        if isinstance(c, AlgebraElement):
            return c.__mul__(self)
        return self.scale(c)

    def __mul__(self, other: Any) -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            return self.scale(other)
        self._check(other)
        alg, K = self.algebra, self.algebra.K
        comps: Dict[Mu, List[Any]] = {}
        beta = self._tag()
        for m1, v1 in self.comps.items():
            for m2, v2 in other.comps.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                factor = alg.qpair(beta, m2) if self.ktag is not None else K.one
                s = alg.product_structure(m1, m2)
                acc = comps.setdefault(m, [K.zero] * alg.dim(m))
                d2 = len(v2)
                for a, x in enumerate(v1):
                    if not x:
                        continue
                    for b, y in enumerate(v2):
                        if not y:
                            continue
                        c = factor * x * y
                        for k, z in enumerate(s[a * d2 + b]):
                            if z:
                                acc[k] += c * z
        if self.ktag is None and other.ktag is None:
            tag = None
        else:
            tag = tuple(a + b for a, b in zip(self._tag(), other._tag()))
        return AlgebraElement(alg, self.side, {m: tuple(v) for m, v in comps.items()}, tag)

    def with_ktag(self, beta: Optional[Mu]) -> "AlgebraElement":
        return AlgebraElement(self.algebra, self.side, self.comps, beta)

    def map_words(self, fn, side: Optional[str] = None) -> "AlgebraElement":
        """각 기저 단어 w 를 fn(w) (단어 -> 계수 dict) 로 보내고 다시 환원합니다."""
        alg, K = self.algebra, self.algebra.K
        terms: Dict[Word, Any] = {}
        for w, c in self.terms():
            for w2, c2 in fn(w).items():
                terms[w2] = terms.get(w2, K.zero) + c * c2
        return alg.from_words(terms, side or self.side)

    # --- 대합과 미분 ---

    def bar(self) -> "AlgebraElement":
        """계수별 bar (기저 단어는 bar 불변), K_β ↦ K_{-β}."""
        fld = self.algebra.field
        tag = tuple(-x for x in self.ktag) if self.ktag is not None else None
        return AlgebraElement(self.algebra, self.side,
                              {m: tuple(fld.bar(x) for x in v) for m, v in self.comps.items()}, tag)

    def sigma(self) -> "AlgebraElement":
        """반자기동형 σ: 단어 역순."""
        if self.ktag is not None:
            raise AlgebraError("K 태그가 있는 원소에는 σ 를 적용하지 않습니다.")
        return self.map_words(lambda w: {tuple(reversed(w)): self.algebra.K.one})

    def r(self, i: int) -> "AlgebraElement":
        if self.ktag is not None:
            raise AlgebraError("K 태그가 있는 원소에는 r_i 를 적용하지 않습니다.")
        return self.map_words(lambda w: self.algebra.r_word(i, w))

    def ir(self, i: int) -> "AlgebraElement":
        if self.ktag is not None:
            raise AlgebraError("K 태그가 있는 원소에는 ᵢr 를 적용하지 않습니다.")
        return self.map_words(lambda w: self.algebra.ir_word(i, w))


def pairing(y: AlgebraElement, x: AlgebraElement) -> Scalar:
    """⟨y, x⟩, y ∈ U⁻ (F-단어), x ∈ U⁺. K 태그가 있으면 ⟨yK_g, xK_h⟩ = q^{-(g,h)} ⟨y, x⟩."""
    if y.side != MINUS or x.side != PLUS:
        raise AlgebraError("pairing 은 (U⁻ 원소, U⁺ 원소) 순서로 받습니다.")
    if (y.ktag is None) != (x.ktag is None):
        raise AlgebraError("pairing 의 두 인자는 모두 K 태그를 갖거나 모두 갖지 않아야 합니다.")
    alg = x.algebra
    K = alg.K
    total = K.zero
    for mu, vx in x.comps.items():
        vy = y.comps.get(mu)
        if vy is None:
            continue
        total += _bilinear(vy, alg.gram(mu), vx, K)
    if x.ktag is not None and total:
        total *= alg.field.q_pow(-alg.root.pair(y.ktag, x.ktag))
    return alg.field.wrap(total)
