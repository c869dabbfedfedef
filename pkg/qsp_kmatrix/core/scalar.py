"""유리함수체 Q(v), v = q^(1/d) 위의 정확한 스칼라 연산.

내부 계산은 sympy `QQ.frac_field(v)`의 원소(FracElement)를 그대로 사용하고,
사용자에게 노출되는 값은 불변 래퍼 `Scalar`로 감쌉니다.
텍스트 문법: 정수, `q`, `q^(a/b)`, `+ - * / ( )` (예: `(q^2-1)/(q+1)`).
"""
import re
from fractions import Fraction
from typing import Any, Dict, Tuple, Union

from sympy import QQ, Symbol
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from ..exceptions import ScalarError

_ALLOWED = re.compile(r"^[0-9q\^\+\-\*/\(\)\s]*$")
_TRANSFORMS = standard_transformations + (convert_xor,)

Number = Union[int, Fraction]


def _qq_to_fraction(c: Any) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


class ScalarField:
    """d가 고정된 체 K(q^(1/d)).

    Args:
        d (int): q = v^d 가 되도록 하는 양의 정수
    """

    def __init__(self, d: int):
        if int(d) != d or d < 1:
            raise ScalarError(f"d는 양의 정수여야 합니다: {d}", details=d)
        self.d: int = int(d)
        self.v = Symbol("v", positive=True)
        self.domain = QQ.frac_field(self.v)
        self.field = self.domain.field
        self.ring = self.field.ring
        self.gen = self.domain.gens[0]
        self.zero = self.domain.zero
        self.one = self.domain.one
        self._qint_cache: Dict[Tuple[int, int], Any] = {}

    def __repr__(self) -> str:
        return f"ScalarField(d={self.d})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ScalarField) and other.d == self.d

    def __hash__(self) -> int:
        return hash(("ScalarField", self.d))

    # --- 생성 ---

    def convert(self, x: Any) -> Any:
        """int, Fraction, 문자열, Scalar 또는 체 원소를 체 원소로 변환합니다."""
        if isinstance(x, Scalar):
            if x.field.d != self.d:
                raise ScalarError(f"d가 다른 스칼라를 섞을 수 없습니다: {x.field.d} != {self.d}")
            return x.raw
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Fraction):
            return self.domain.convert(QQ(x.numerator, x.denominator))
        if isinstance(x, bool):
            raise ScalarError(f"스칼라로 변환할 수 없는 값입니다: {x!r}")
        if isinstance(x, int):
            return self.domain.convert(x)
        if self.field.is_element(x):
            return x
        raise ScalarError(f"스칼라로 변환할 수 없는 값입니다: {x!r}", details=type(x).__name__)

    def wrap(self, raw: Any) -> "Scalar":
        return Scalar(self, self.convert(raw))

    def q_pow(self, e: Number) -> Any:
        """q^e = v^(d e). d·e 가 정수가 아니면 ScalarError."""
        k = Fraction(e) * self.d
        if k.denominator != 1:
            raise ScalarError(f"q^{e} 는 K(q^(1/{self.d})) 에 속하지 않습니다.", details=e)
        return self.gen ** int(k)

    # --- q-조합 ---

    def qint(self, n: int, eps: int = 1) -> Any:
        """균형 q-정수 [n]_{q_i}, q_i = q^eps."""
        key = (int(n), int(eps))
        if key in self._qint_cache:
            return self._qint_cache[key]
        if n < 0:
            val = -self.qint(-n, eps)
        else:
            t = self.q_pow(eps)
            val = self.zero
            for k in range(n):
                val += t ** (n - 1 - 2 * k)
        self._qint_cache[key] = val
        return val

    def qfact(self, n: int, eps: int = 1) -> Any:
        if n < 0:
            raise ScalarError(f"q-계승의 인자는 음수일 수 없습니다: {n}", details=n)
        val = self.one
        for k in range(1, n + 1):
            val *= self.qint(k, eps)
        return val

    def qbinom(self, m: int, n: int, eps: int = 1) -> Any:
        if m < 0 or n < 0:
            raise ScalarError(f"q-이항계수의 인자는 음수일 수 없습니다: ({m}, {n})", details=(m, n))
        if n > m:
            return self.zero
        return self.qfact(m, eps) / (self.qfact(n, eps) * self.qfact(m - n, eps))

    # --- 대합과 판정 ---

    def _reverse(self, p: Any) -> Tuple[Any, int]:
        deg = p.degree()
        return self.ring.from_dict({(deg - k[0],): c for k, c in p.terms()}), deg

    def bar(self, a: Any) -> Any:
        """v ↦ v^{-1} 치환 후 기약 형태로 정규화합니다."""
        if not a:
            return a
        num, dn = self._reverse(a.numer)
        den, dd = self._reverse(a.denom)
        shift = dd - dn
        x = self.ring.gens[0]
        if shift >= 0:
            num = num * x ** shift
        else:
            den = den * x ** (-shift)
        return self.field.new(num, den)

    def is_zero(self, a: Any) -> bool:
        return not a

    def key(self, a: Any) -> Tuple:
        """정규형 키: 분모를 monic으로 맞춘 (분자, 분모) 항 목록."""
        lc = a.denom.LC
        num = tuple(sorted((k[0], _qq_to_fraction(c / lc)) for k, c in a.numer.terms()))
        den = tuple(sorted((k[0], _qq_to_fraction(c / lc)) for k, c in a.denom.terms()))
        return num, den

    def evaluate(self, a: Any, point: Fraction) -> Fraction:
        """v = point 에서의 값 (빠른 확률적 비교용)."""
        x = Fraction(point)

        def ev(p):
            return sum((_qq_to_fraction(c) * x ** k[0] for k, c in p.terms()), Fraction(0))

        den = ev(a.denom)
        if den == 0:
            raise ScalarError(f"v={point} 에서 분모가 0이 됩니다.", details=point)
        return ev(a.numer) / den

    # --- 텍스트 ---

    def parse(self, text: str) -> Any:
        if not isinstance(text, str) or not _ALLOWED.match(text) or not text.strip():
            raise ScalarError(f"스칼라 문법에 맞지 않는 문자열입니다: {text!r}", details=text)
        try:
            expr = parse_expr(text, local_dict={"q": self.v ** self.d}, transformations=_TRANSFORMS)
            return self.domain.from_sympy(expr)
        except ScalarError:
            raise
        except Exception as e:
            raise ScalarError(f"스칼라 파싱 실패 ({text!r}): {e}", details=text) from e

    def _exp_text(self, k: int) -> str:
        e = Fraction(k, self.d)
        if e == 1:
            return "q"
        if e.denominator == 1 and e > 0:
            return f"q^{e.numerator}"
        return f"q^({e})"

    def _terms_text(self, terms) -> str:
        parts = []
        for k, c in sorted(terms, key=lambda t: -t[0]):
            c = Fraction(c)
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            elif mag == 1:
                body = self._exp_text(k)
            else:
                body = f"{mag}*{self._exp_text(k)}"
            parts.append((sign, body))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_text(self, a: Any) -> str:
        if not a:
            return "0"
        lc = a.denom.LC
        num = [(k[0], _qq_to_fraction(c / lc)) for k, c in a.numer.terms()]
        den = [(k[0], _qq_to_fraction(c / lc)) for k, c in a.denom.terms()]
        if len(den) == 1:
            shift, dc = den[0]
            # 분모가 단항식이면 로랑 다항식으로 씁니다.
            return self._terms_text([(k - shift, c / dc) for k, c in num])
        num_text = self._terms_text(num)
        den_text = self._terms_text(den)
        return f"({num_text})/({den_text})"


class Scalar:
    """불변 스칼라 값. 같은 d를 가진 스칼라끼리만 연산할 수 있습니다."""

    __slots__ = ("field", "raw")

    def __init__(self, field: ScalarField, raw: Any):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "raw", raw)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar는 불변 객체입니다.")

    def _coerce(self, other: Any) -> Any:
        if isinstance(other, Scalar) and other.field.d != self.field.d:
            raise ScalarError(f"d가 다른 스칼라를 섞을 수 없습니다: {self.field.d} != {other.field.d}")
        return self.field.convert(other)

    def _new(self, raw: Any) -> "Scalar":
        return Scalar(self.field, raw)

    def __add__(self, other): return self._new(self.raw + self._coerce(other))
    def __radd__(self, other): return self._new(self._coerce(other) + self.raw)
    def __sub__(self, other): return self._new(self.raw - self._coerce(other))
    def __rsub__(self, other): return self._new(self._coerce(other) - self.raw)
    def __mul__(self, other): return self._new(self.raw * self._coerce(other))
    def __rmul__(self, other): return self._new(self._coerce(other) * self.raw)
    def __neg__(self): return self._new(-self.raw)

    def __truediv__(self, other):
        b = self._coerce(other)
        if not b:
            raise ScalarError("0으로 나눌 수 없습니다.")
        return self._new(self.raw / b)

    def __rtruediv__(self, other):
        if not self.raw:
            raise ScalarError("0으로 나눌 수 없습니다.")
        return self._new(self._coerce(other) / self.raw)

    def __pow__(self, n: int):
        if n < 0 and not self.raw:
            raise ScalarError("0의 음수 거듭제곱은 정의되지 않습니다.")
        return self._new(self.raw ** int(n))

    def __eq__(self, other: object) -> bool:
        try:
            return not (self.raw - self._coerce(other))
        except ScalarError:
            return False

    def __hash__(self) -> int:
        return hash((self.field.d, self.field.key(self.raw)))

    def __bool__(self) -> bool:
        return bool(self.raw)

    def bar(self) -> "Scalar":
        return self._new(self.field.bar(self.raw))

    def is_zero(self) -> bool:
        return not self.raw

    def evaluate(self, point: Fraction) -> Fraction:
        return self.field.evaluate(self.raw, point)

    def to_text(self) -> str:
        return self.field.to_text(self.raw)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Scalar({self.to_text()!r}, d={self.field.d})"
