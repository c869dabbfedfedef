"""F·K·E 삼각 분해 계산과 대수 원소 위의 Lusztig 브레이드 연산자.

단항식은 (F-단어, K 지수 β, E-단어) 이며 계수는 체 원소입니다.
E_x F_c 를 정규 순서로 옮기는 규칙만으로 곱을 계산하고, 결과가 U⁺ 에 머무르는지 확인합니다.
"""
from typing import Any, Dict, Sequence, Tuple

from ..exceptions import BraidDomainError
from .freealg import PLUS, AlgebraElement, FreeAlgebra, Mu, Word

Mono = Tuple[Word, Mu, Word]
FWD = "fwd"
INV = "inv"


class TriangularCalculus:
    """U⁻ ⊗ U⁰ ⊗ U⁺ 정규형 위의 곱셈."""

    def __init__(self, algebra: FreeAlgebra):
        self.alg = algebra
        self.K = algebra.K
        self.zero_mu: Mu = tuple(0 for _ in range(algebra.n))
        self._straight: Dict[Tuple[Word, Word], Dict[Mono, Any]] = {}

    def _add(self, out: Dict[Mono, Any], key: Mono, c: Any):
        val = out.get(key, self.K.zero) + c
        if val:
            out[key] = val
        else:
            out.pop(key, None)

    def straighten(self, e: Word, f: Word) -> Dict[Mono, Any]:
        """E_e F_f 를 Σ c F_{f'} K_β E_{e'} 로 씁니다 (메모이즈)."""
        key = (e, f)
        cached = self._straight.get(key)
        if cached is not None:
            return cached
        alg = self.alg
        if not e or not f:
            out = {(f, self.zero_mu, e): self.K.one}
            return self._straight.setdefault(key, out)
        x = e[0]
        ax = alg.alpha(x)
        qx = alg.q_i(x)
        inv_qx = self.K.one / (qx - 1 / qx)
        out: Dict[Mono, Any] = {}
        for (f1, beta, e1), c in self.straighten(e[1:], f).items():
            # F_{f1} E_x K_β = q^{-(β, α_x)} F_{f1} K_β E_x
            self._add(out, (f1, beta, (x,) + e1), c * alg.qpair(ax, [-b for b in beta]))
            right = [0] * alg.n
            for p in range(len(f1) - 1, -1, -1):
                letter = f1[p]
                if letter == x:
                    fw = f1[:p] + f1[p + 1:]
                    plus = tuple(b + a for b, a in zip(beta, ax))
                    minus = tuple(b - a for b, a in zip(beta, ax))
                    self._add(out, (fw, plus, e1), c * inv_qx * alg.qpair(ax, [-r for r in right]))
                    self._add(out, (fw, minus, e1), -c * inv_qx * alg.qpair(ax, right))
                right[letter] += 1
        return self._straight.setdefault(key, out)

    def mono_mul(self, m1: Mono, m2: Mono) -> Dict[Mono, Any]:
        alg = self.alg
        f1, b1, e1 = m1
        f2, b2, e2 = m2
        out: Dict[Mono, Any] = {}
        for (fp, beta, ep), c in self.straighten(e1, f2).items():
            coeff = c * alg.qpair([-x for x in b1], alg.wt(fp)) * alg.qpair([-x for x in b2], alg.wt(ep))
            total = tuple(x + y + z for x, y, z in zip(b1, beta, b2))
            self._add(out, (f1 + fp, total, ep + e2), coeff)
        return out

    def mul(self, a: Dict[Mono, Any], b: Dict[Mono, Any]) -> Dict[Mono, Any]:
        out: Dict[Mono, Any] = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                for m, c in self.mono_mul(m1, m2).items():
                    self._add(out, m, c1 * c2 * c)
        return out


class BraidOperators:
    """U⁺ 원소 위의 T_i, T_i^{-1}.

    T_i(E_j) = Σ_k (-1)^k q_i^{-k} E_i^{(r-k)} E_j E_i^{(k)} (r = -a_ij), T_i(E_i) = -F_i K_i,
    T_i^{-1}(E_j) = Σ_k (-1)^k q_i^{-k} E_i^{(k)} E_j E_i^{(r-k)}, T_i^{-1}(E_i) = -K_i^{-1} F_i.
    결과가 U⁺ 를 벗어나면 BraidDomainError 를 던집니다.
    """

    def __init__(self, algebra: FreeAlgebra):
        self.alg = algebra
        self.K = algebra.K
        self.calc = TriangularCalculus(algebra)
        self._images: Dict[Tuple[int, int, str], Dict[Mono, Any]] = {}

    def letter_image(self, i: int, j: int, direction: str) -> Dict[Mono, Any]:
        key = (i, j, direction)
        img = self._images.get(key)
        if img is not None:
            return img
        alg, fld = self.alg, self.alg.field
        zero = self.calc.zero_mu
        eps = alg.root.eps[i]
        if i == j:
            ai = alg.alpha(i)
            if direction == FWD:
                img = {((i,), ai, ()): -self.K.one}
            else:
                img = {((i,), tuple(-a for a in ai), ()): -alg.qpair(ai, ai)}
        else:
            r = -alg.root.cartan[i][j]
            qi = alg.q_i(i)
            img = {}
            for k in range(r + 1):
                coeff = (-1) ** k * qi ** (-k) / (fld.qfact(r - k, eps) * fld.qfact(k, eps))
                if direction == FWD:
                    word = (i,) * (r - k) + (j,) + (i,) * k
                else:
                    word = (i,) * k + (j,) + (i,) * (r - k)
                self.calc._add(img, ((), zero, word), coeff)
        return self._images.setdefault(key, img)

    def _word_image(self, i: int, word: Word, direction: str) -> Dict[Mono, Any]:
        zero = self.calc.zero_mu
        acc: Dict[Mono, Any] = {((), zero, ()): self.K.one}
        if i not in word:
            # 순수 E-단어끼리의 곱은 이어 붙이기
            for letter in word:
                nxt: Dict[Mono, Any] = {}
                for (_, _, e1), c1 in acc.items():
                    for (_, _, e2), c2 in self.letter_image(i, letter, direction).items():
                        self.calc._add(nxt, ((), zero, e1 + e2), c1 * c2)
                acc = nxt
            return acc
        for letter in word:
            acc = self.calc.mul(acc, self.letter_image(i, letter, direction))
        return acc

    def apply(self, i: int, x: AlgebraElement, direction: str = FWD) -> AlgebraElement:
        if x.side != PLUS:
            raise BraidDomainError("브레이드 연산자는 U⁺ 원소에만 적용합니다.", weight=None)
        alg, K = self.alg, self.K
        zero = self.calc.zero_mu
        total: Dict[Mono, Any] = {}
        for w, c in x.terms():
            for m, cm in self._word_image(i, w, direction).items():
                self.calc._add(total, m, c * cm)
        pure: Dict[Word, Any] = {}
        mixed: Dict[Tuple[Mu, Mu, Mu], Dict[Tuple[int, int], Any]] = {}
        for (f, beta, e), c in total.items():
            if not f and beta == zero:
                pure[e] = pure.get(e, K.zero) + c
                continue
            group = mixed.setdefault((alg.wt(f), beta, alg.wt(e)), {})
            cf, ce = alg.coords(f), alg.coords(e)
            for a, xa in enumerate(cf):
                if not xa:
                    continue
                for b, yb in enumerate(ce):
                    if yb:
                        group[(a, b)] = group.get((a, b), K.zero) + c * xa * yb
        for key, group in mixed.items():
            if any(group.values()):
                raise BraidDomainError(
                    f"T_{i + 1}{'' if direction == FWD else '^-1'} 의 결과가 U⁺ 를 벗어납니다 (F 웨이트 {key[0]}, K {key[1]}).",
                    weight=tuple(sorted(x.comps)), details=key)
        out = alg.from_words(pure, PLUS)
        tag = None
        if x.ktag is not None:
            tag = tuple(int(t) for t in alg.root.reflect(i, x.ktag))
        return out.with_ktag(tag)

    def apply_word(self, word: Sequence[int], x: AlgebraElement, inverse: bool = False) -> AlgebraElement:
        """T_w(x) = T_{i1}(...T_{ik}(x)) 또는 T_w^{-1}(x) = T_{ik}^{-1}...T_{i1}^{-1}(x)."""
        if inverse:
            for i in word:
                x = self.apply(i, x, INV)
        else:
            for i in reversed(word):
                x = self.apply(i, x, FWD)
        return x


def braid_T(ops: BraidOperators, i: int, x: AlgebraElement, direction: str = FWD) -> AlgebraElement:
    return ops.apply(i, x, direction)
