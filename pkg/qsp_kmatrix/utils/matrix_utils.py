"""유리함수체 위의 정확한 희소 행렬 유틸리티.

모든 행렬은 sympy의 `DomainMatrix` 희소(SDM) 형식으로 유지됩니다.
형식이 섞이면 sympy가 예외를 내므로, 이 모듈의 함수들은 항상 `to_sparse()`를 거쳐 연산합니다.
"""
from functools import reduce
from typing import Any, Callable, Dict, List, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from ..exceptions import AlgebraError

Dok = Dict[Tuple[int, int], Any]


def zeros(rows: int, cols: int, K) -> DomainMatrix:
    return DomainMatrix({}, (rows, cols), K)


def eye(n: int, K) -> DomainMatrix:
    return DomainMatrix.eye(n, K).to_sparse()


def diag(values: Sequence[Any], K) -> DomainMatrix:
    n = len(values)
    rows = {i: {i: val} for i, val in enumerate(values) if val}
    return DomainMatrix(rows, (n, n), K)


def from_dok(dok: Dok, shape: Tuple[int, int], K) -> DomainMatrix:
    rows: Dict[int, Dict[int, Any]] = {}
    for (i, j), val in dok.items():
        if val:
            rows.setdefault(i, {})[j] = val
    return DomainMatrix(rows, shape, K)


def from_rows(rows: Sequence[Sequence[Any]], K, ncols: int = None) -> DomainMatrix:
    nrows = len(rows)
    if ncols is None:
        ncols = len(rows[0]) if nrows else 0
    dok = {(i, j): K.convert(val) for i, row in enumerate(rows) for j, val in enumerate(row)}
    return from_dok(dok, (nrows, ncols), K)


def entries(A: DomainMatrix) -> Dok:
    return A.to_sparse().to_dok()


def mul(*mats: DomainMatrix) -> DomainMatrix:
    return reduce(lambda a, b: a.to_sparse().matmul(b.to_sparse()), mats)


def add(*mats: DomainMatrix) -> DomainMatrix:
    return reduce(lambda a, b: a.to_sparse().add(b.to_sparse()), mats)


def sub(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    return A.to_sparse().sub(B.to_sparse())


def scale(A: DomainMatrix, c: Any) -> DomainMatrix:
    return A.to_sparse().scalarmul(c)


def is_zero(A: DomainMatrix) -> bool:
    return A.to_sparse().is_zero_matrix


def equal(A: DomainMatrix, B: DomainMatrix) -> bool:
    if A.shape != B.shape:
        return False
    return sub(A, B).is_zero_matrix


def inverse(A: DomainMatrix) -> DomainMatrix:
    if A.shape[0] == 0:
        return A
    try:
        return A.to_sparse().inv()
    except Exception as e:
        raise AlgebraError(f"역행렬 계산 실패 (shape={A.shape}): {e}", details=A.shape) from e


def kron(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    """행 우선(row-major) 순서의 크로네커 곱: (a, b) -> a * dim(B) + b."""
    (p, q), (r, s) = A.shape, B.shape
    K = A.domain
    eb = entries(B)
    dok: Dok = {}
    for (i, j), a in entries(A).items():
        for (k, l), b in eb.items():
            dok[(i * r + k, j * s + l)] = a * b
    return from_dok(dok, (p * r, q * s), K)


def extract(A: DomainMatrix, rows: Sequence[int], cols: Sequence[int]) -> DomainMatrix:
    return A.to_sparse().extract(list(rows), list(cols))


def permutation(perm: Sequence[int], K) -> DomainMatrix:
    """열 j를 행 perm[j]로 보내는 치환 행렬."""
    n = len(perm)
    return from_dok({(perm[j], j): K.one for j in range(n)}, (n, n), K)


def vstack(mats: Sequence[DomainMatrix], ncols: int, K) -> DomainMatrix:
    dok: Dok = {}
    offset = 0
    for m in mats:
        for (i, j), val in entries(m).items():
            dok[(offset + i, j)] = val
        offset += m.shape[0]
    return from_dok(dok, (offset, ncols), K)


def solve_unique(A: DomainMatrix, b: Sequence[Any], K) -> List[Any]:
    """A x = b 의 유일해를 기약 행사다리꼴로 구합니다.

    Raises:
        AlgebraError: 해가 없거나 유일하지 않은 경우 (details에 "inconsistent"/"rank_deficient")
    """
    m, n = A.shape
    aug = from_dok({**entries(A), **{(i, n): val for i, val in enumerate(b) if val}}, (m, n + 1), K)
    R, pivots = aug.rref()
    if n in pivots:
        raise AlgebraError("연립방정식의 해가 존재하지 않습니다.", details="inconsistent")
    if len(pivots) < n:
        raise AlgebraError(f"해가 유일하지 않습니다 (rank {len(pivots)} < {n}).", details="rank_deficient")
    red = entries(R)
    sol = [K.zero] * n
    for row, col in enumerate(pivots):
        sol[col] = red.get((row, n), K.zero)
    return sol


def nonzero_triples(A: DomainMatrix, fmt: Callable[[Any], str]) -> List[List[Any]]:
    """희소 덤프 형식 [[row, col, "스칼라 문자열"], ...]."""
    return [[i, j, fmt(val)] for (i, j), val in sorted(entries(A).items())]


class IncrementalEchelon:
    """희소 벡터(dict)를 하나씩 받아 선형 독립 여부를 판정하는 점진적 행사다리꼴."""

    def __init__(self, K):
        self.K = K
        self.rows: List[Tuple[Any, Dict[Any, Any]]] = []

    def reduce(self, vec: Dict[Any, Any]) -> Dict[Any, Any]:
        v = {k: val for k, val in vec.items() if val}
        for piv, row in self.rows:
            c = v.get(piv)
            if not c:
                continue
            for k, val in row.items():
                nv = v.get(k, self.K.zero) - c * val
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def add(self, vec: Dict[Any, Any]) -> bool:
        v = self.reduce(vec)
        if not v:
            return False
        piv = min(v)
        c = v[piv]
        self.rows.append((piv, {k: val / c for k, val in v.items()}))
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


class ProfileSolver:
    """선택된 기저 벡터들의 프로파일로부터 임의 프로파일의 좌표를 복원합니다.

    프로파일 사상이 단사인 공간에서만 의미가 있습니다 (U⁺_μ 의 ᵢr 프로파일, 가군의 E 프로파일).
    """

    def __init__(self, profiles: Sequence[Dict[int, Any]], K):
        self.K = K
        self.n = len(profiles)
        if self.n == 0:
            self.rows: List[int] = []
            self.sinv: List[List[Any]] = []
            return
        keys = sorted({k for p in profiles for k in p})
        index = {k: r for r, k in enumerate(keys)}
        # Pᵀ: 행 = 기저, 열 = 프로파일 성분
        pt = from_dok({(j, index[k]): val for j, p in enumerate(profiles) for k, val in p.items()},
                      (self.n, len(keys)), K)
        _, pivots = pt.rref()
        if len(pivots) < self.n:
            raise AlgebraError("기저 프로파일이 선형 독립이 아닙니다.", details=len(pivots))
        self.rows = [keys[c] for c in pivots]
        square = from_dok({(r, j): p[k] for j, p in enumerate(profiles)
                           for r, k in enumerate(self.rows) if k in p}, (self.n, self.n), K)
        inv = entries(inverse(square))
        self.sinv = [[inv.get((a, b), K.zero) for b in range(self.n)] for a in range(self.n)]

    def coords(self, profile: Dict[int, Any]) -> Tuple[Any, ...]:
        picked = [profile.get(k, self.K.zero) for k in self.rows]
        out = []
        for a in range(self.n):
            acc = self.K.zero
            for b, val in enumerate(picked):
                if val:
                    acc += self.sinv[a][b] * val
            out.append(acc)
        return tuple(out)
