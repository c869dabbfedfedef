"""준 R-행렬 (quasi R-matrix).

R = Σ_μ R_μ, R_μ ∈ U⁻_{-μ} ⊗ U⁺_μ 를 웨이트별 계수 행렬 (U⁻ 기저 × U⁺ 기저) 로 저장합니다.
두 가지 구성을 제공합니다: Gram 행렬의 역을 쓰는 쌍대 기저 구성과, 축약 단어를 따라 만든
근 벡터들의 PBW 곱 구성. 두 구성이 모든 웨이트에서 같아야 합니다.
"""
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

from sympy.polys.matrices import DomainMatrix

from ..exceptions import RootDatumError
from ..utils import matrix_utils as mu_
from .freealg import MINUS, PLUS, AlgebraElement, FreeAlgebra, Mu
from .rootdata import is_nonneg, q_plus_up_to, to_int
from .triangular import BraidOperators


@dataclass
class RootVector:
    """축약 단어의 j 번째 근 벡터 E_γ 와 F_γ."""
    letter: int
    gamma: Mu
    E: AlgebraElement
    F: AlgebraElement


def root_vectors(ops: BraidOperators, word: Sequence[int]) -> List[RootVector]:
    """E_{γ_j} = T_{i1} ... T_{i(j-1)}(E_{ij}), F_{γ_j} 도 같은 사슬로 만듭니다.

    Raises:
        RootDatumError: 단어가 축약 단어가 아닌 경우
    """
    alg = ops.alg
    root = alg.root
    table: List[RootVector] = []
    for j, letter in enumerate(word):
        gamma = to_int(root.apply_word(word[:j], alg.alpha(letter)))
        if not is_nonneg(gamma):
            raise RootDatumError(f"축약 단어가 아닙니다: {[w + 1 for w in word]}", condition="reduced_word",
                                 details=j)
        u = alg.E(letter)
        factor = alg.K.one
        for i in reversed(word[:j]):
            mu = alg.wt(()) if u.is_zero() else next(iter(u.comps))
            # T_i(ω u) = (-1)^{μ(h_i)} q^{-(μ, α_i)} ω(T_i u)
            sign = -1 if int(root.coroot(i, mu)) % 2 else 1
            factor = factor * sign * alg.qpair([-x for x in mu], alg.alpha(i))
            u = ops.apply(i, u)
        if tuple(u.comps) != (gamma,):
            raise RootDatumError(f"근 벡터의 웨이트가 {gamma} 가 아닙니다.", condition="root_vector", details=j)
        F = AlgebraElement(alg, MINUS, {m: tuple(factor * x for x in v) for m, v in u.comps.items()})
        table.append(RootVector(letter, gamma, u, F))
    return table


class QuasiR:
    """웨이트별 성분 행렬을 가진 U⁻ ⊗ U⁺ 원소 (높이 cutoff 까지)."""

    def __init__(self, algebra: FreeAlgebra, comps: Dict[Mu, DomainMatrix], cutoff: int):
        self.alg = algebra
        self.cutoff = int(cutoff)
        self.comps = {tuple(m): M for m, M in comps.items() if sum(m) <= self.cutoff and not mu_.is_zero(M)}

    def __repr__(self) -> str:
        return f"QuasiR(cutoff={self.cutoff}, weights={len(self.comps)})"

    @classmethod
    def identity(cls, algebra: FreeAlgebra, cutoff: int) -> "QuasiR":
        zero = algebra.wt(())
        return cls(algebra, {zero: mu_.eye(1, algebra.K)}, cutoff)

    def weights(self) -> List[Mu]:
        return sorted(self.comps, key=lambda m: (sum(m), m))

    def component(self, mu: Mu) -> DomainMatrix:
        mu = tuple(mu)
        if mu in self.comps:
            return self.comps[mu]
        d = self.alg.dim(mu)
        return mu_.zeros(d, d, self.alg.K)

    def __mul__(self, other: "QuasiR") -> "QuasiR":
        alg = self.alg
        cutoff = min(self.cutoff, other.cutoff)
        out: Dict[Mu, DomainMatrix] = {}
        for m1, A in self.comps.items():
            for m2, B in other.comps.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                if sum(m) > cutoff:
                    continue
                S = alg.product_matrix(m1, m2)
                term = mu_.mul(S, mu_.kron(A, B), S.transpose())
                out[m] = mu_.add(out[m], term) if m in out else term
        return QuasiR(alg, out, cutoff)

    def bar(self) -> "QuasiR":
        fld = self.alg.field
        out = {}
        for m, M in self.comps.items():
            out[m] = mu_.from_dok({k: fld.bar(v) for k, v in mu_.entries(M).items()}, M.shape, self.alg.K)
        return QuasiR(self.alg, out, self.cutoff)

    def equals(self, other: "QuasiR", upto: Optional[int] = None) -> bool:
        h = min(self.cutoff, other.cutoff) if upto is None else upto
        for m in set(self.comps) | set(other.comps):
            if sum(m) <= h and not mu_.equal(self.component(m), other.component(m)):
                return False
        return True

    def mismatched_weights(self, other: "QuasiR") -> List[Mu]:
        h = min(self.cutoff, other.cutoff)
        return sorted(m for m in set(self.comps) | set(other.comps)
                      if sum(m) <= h and not mu_.equal(self.component(m), other.component(m)))

    def terms(self, mu: Mu):
        """(U⁻ 기저 단어, U⁺ 기저 단어, 계수) 반복자."""
        words = self.alg.weight_basis(mu).words
        for (a, b), c in mu_.entries(self.component(mu)).items():
            yield words[a], words[b], c

    def to_dump(self) -> List[Dict[str, Any]]:
        fld = self.alg.field
        return [{"weight": list(m),
                 "terms": [[[i + 1 for i in y], [i + 1 for i in x], fld.to_text(c)] for y, x, c in self.terms(m)]}
                for m in self.weights()]


def quasiR_dual(algebra: FreeAlgebra, cutoff: int) -> QuasiR:
    """R_μ = Σ_a y_a ⊗ x^a, 계수 행렬 C = (G_μ^{-1})ᵀ."""
    comps: Dict[Mu, DomainMatrix] = {}
    for mu in q_plus_up_to(algebra.n, cutoff):
        if algebra.dim(mu) == 0:
            continue
        comps[mu] = mu_.inverse(algebra.gram_matrix(mu)).transpose()
    return QuasiR(algebra, comps, cutoff)


def quasiR_factor(rv: RootVector, algebra: FreeAlgebra, cutoff: int) -> QuasiR:
    """R^{[j]} = Σ_r (-1)^r q_i^{-r(r-1)/2} (q_i - q_i^{-1})^r / [r]_{q_i}! F_γ^r ⊗ E_γ^r."""
    fld, K = algebra.field, algebra.K
    eps = algebra.root.eps[rv.letter]
    qi = algebra.q_i(rv.letter)
    comps: Dict[Mu, DomainMatrix] = {algebra.wt(()): mu_.eye(1, K)}
    Fr, Er = algebra.one(MINUS), algebra.one(PLUS)
    r = 0
    h = sum(rv.gamma)
    while (r + 1) * h <= cutoff:
        r += 1
        Fr, Er = Fr * rv.F, Er * rv.E
        coeff = (-1) ** r * fld.q_pow(-eps * r * (r - 1) // 2) * (qi - 1 / qi) ** r / fld.qfact(r, eps)
        mu = tuple(r * g for g in rv.gamma)
        y, x = Fr.component(mu), Er.component(mu)
        dok = {(a, b): coeff * ya * xb for a, ya in enumerate(y) if ya for b, xb in enumerate(x) if xb}
        comps[mu] = mu_.from_dok(dok, (len(y), len(x)), K)
    return QuasiR(algebra, comps, cutoff)


def _ordered_product(factors: List[QuasiR], algebra: FreeAlgebra, cutoff: int) -> QuasiR:
    # R^{[t]} · ... · R^{[1]}
    acc = QuasiR.identity(algebra, cutoff)
    for fac in reversed(factors):
        acc = acc * fac
    return acc


class QuasiRBuilder:
    """근 벡터 표와 R 인수들을 한 번만 계산해 두는 도우미."""

    def __init__(self, ops: BraidOperators, word: Sequence[int]):
        self.ops = ops
        self.alg = ops.alg
        self.word = tuple(word)
        self.table = root_vectors(ops, self.word)

    def factors(self, cutoff: int) -> List[QuasiR]:
        return [quasiR_factor(rv, self.alg, cutoff) for rv in self.table]

    def pbw(self, cutoff: int) -> QuasiR:
        return _ordered_product(self.factors(cutoff), self.alg, cutoff)

    def prefix(self, s: int, cutoff: int) -> QuasiR:
        """R_X = R^{[s]} ... R^{[1]} (s = len(wX_word))."""
        return _ordered_product(self.factors(cutoff)[:s], self.alg, cutoff)

    def suffix(self, s: int, cutoff: int) -> QuasiR:
        """R · R̄_X = R^{[t]} ... R^{[s+1]}."""
        return _ordered_product(self.factors(cutoff)[s:], self.alg, cutoff)

    def simple_factor(self, i: int, cutoff: int) -> QuasiR:
        """R_i: γ_j = α_i 인 인수."""
        for rv in self.table:
            if rv.gamma == self.alg.alpha(i):
                return quasiR_factor(rv, self.alg, cutoff)
        raise RootDatumError(f"단순근 α_{i + 1} 이 근 벡터 표에 없습니다.", condition="root_vector")


def quasiR_pbw(ops: BraidOperators, word: Sequence[int], cutoff: int) -> QuasiR:
    return QuasiRBuilder(ops, word).pbw(cutoff)


def quasiR_X(ops: BraidOperators, w0_word: Sequence[int], wX_word: Sequence[int], cutoff: int) -> QuasiR:
    return QuasiRBuilder(ops, w0_word).prefix(len(wX_word), cutoff)


def R_times_RXbar(ops: BraidOperators, w0_word: Sequence[int], wX_word: Sequence[int], cutoff: int) -> QuasiR:
    return QuasiRBuilder(ops, w0_word).suffix(len(wX_word), cutoff)
