"""설정 기술자(descriptor) 파싱 유틸리티.

Cartan 행렬 생성, JSON 설정 파일 로드, 카탈로그 문자열 필드 파싱,
가군 기술자 `"V(w1+2w2)"` 파싱을 담당합니다. 노드 번호는 입출력에서 1부터 시작합니다.
"""
import json
import os
import re
from typing import Any, Dict, List, Tuple

import numpy as np

from ..exceptions import ConfigError

_MODULE_RE = re.compile(r"^\s*V\s*\((.*)\)\s*$")
_TERM_RE = re.compile(r"^(\d*)\s*\*?\s*w(\d+)$")


def cartan_matrix(series: str, rank: int) -> np.ndarray:
    """Dynkin 계열 이름과 랭크로부터 Cartan 행렬을 만듭니다.

    Args:
        series (str): 'A', 'B', 'C', 'D', 'G' 중 하나
        rank (int): 랭크

    Returns:
        np.ndarray: 정수 Cartan 행렬 (a_ij = α_j(h_i))

    Raises:
        ConfigError: 지원하지 않는 계열/랭크 조합인 경우
    """
    series = str(series).upper()
    if rank < 1:
        raise ConfigError(f"랭크는 1 이상이어야 합니다: {rank}", error_code="BAD_RANK")
    A = 2 * np.eye(rank, dtype=int)
    if series == 'A':
        A[range(rank - 1), range(1, rank)] = -1
        A[range(1, rank), range(rank - 1)] = -1
    elif series in ('B', 'C'):
        if rank < 2:
            raise ConfigError(f"{series}{rank} 는 정의되지 않습니다.", error_code="BAD_RANK")
        A[range(rank - 2), range(1, rank - 1)] = -1
        A[range(1, rank - 1), range(rank - 2)] = -1
        # 마지막 근이 짧은 근(B) 또는 긴 근(C)
        if series == 'B':
            A[-2, -1], A[-1, -2] = -1, -2
        else:
            A[-2, -1], A[-1, -2] = -2, -1
    elif series == 'D':
        if rank < 4:
            raise ConfigError(f"D{rank} 는 지원하지 않습니다 (rank >= 4).", error_code="BAD_RANK")
        A[range(rank - 2), range(1, rank - 1)] = -1
        A[range(1, rank - 1), range(rank - 2)] = -1
        A[-3, -1] = A[-1, -3] = -1
    elif series == 'G':
        if rank != 2:
            raise ConfigError("G 계열은 랭크 2만 존재합니다.", error_code="BAD_RANK")
        A[0, 1], A[1, 0] = -3, -1
    else:
        raise ConfigError(f"지원하지 않는 Cartan 계열입니다: {series}", error_code="BAD_SERIES")
    return A


def load_json(path: str) -> Dict[str, Any]:
    """JSON 설정 파일을 읽습니다.

    Raises:
        ConfigError: 파일이 없거나("FILE_NOT_FOUND") JSON 형식이 잘못된 경우("MALFORMED_JSON")
    """
    if not os.path.exists(path):
        raise ConfigError(f"설정 파일을 찾을 수 없습니다: {path}", filename=path, error_code="FILE_NOT_FOUND")
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigError(f"JSON 형식 오류 ({path}): {e}", filename=path, error_code="MALFORMED_JSON") from e
    if not isinstance(data, dict):
        raise ConfigError(f"최상위 JSON 값은 객체여야 합니다: {path}", filename=path, error_code="MALFORMED_JSON")
    return data


def _node(value: Any, where: str) -> int:
    try:
        n = int(value)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"노드 번호가 정수가 아닙니다 ({where}): {value!r}", error_code="BAD_NODE") from e
    if n < 1:
        raise ConfigError(f"노드 번호는 1부터 시작합니다 ({where}): {n}", error_code="BAD_NODE")
    return n


def parse_nodes(text: Any) -> List[int]:
    """"2", "1 3", [1, 3], NaN/빈 값 -> 1-기반 노드 목록."""
    if text is None or (isinstance(text, float) and np.isnan(text)):
        return []
    if isinstance(text, (list, tuple)):
        return sorted(_node(t, "X") for t in text)
    parts = [p for p in re.split(r"[\s,;]+", str(text).strip()) if p]
    return sorted(_node(p, "X") for p in parts)


def parse_node_map(text: Any) -> Dict[int, int]:
    """"1:3;2:2;3:1" 또는 {"1": 3, ...} -> {1: 3, ...}."""
    if isinstance(text, dict):
        return {_node(k, "tau"): _node(v, "tau") for k, v in text.items()}
    if text is None or (isinstance(text, float) and np.isnan(text)) or str(text).strip() == "":
        return {}
    out: Dict[int, int] = {}
    for item in str(text).split(";"):
        if not item.strip():
            continue
        if ":" not in item:
            raise ConfigError(f"'노드:노드' 형식이 아닙니다: {item!r}", error_code="BAD_MAP")
        k, v = item.split(":", 1)
        out[_node(k.strip(), "tau")] = _node(v.strip(), "tau")
    return out


def parse_scalar_map(text: Any) -> Dict[int, str]:
    """"1:1-q^2;3:q^2-1" 또는 {"1": "1-q^2"} -> {1: "1-q^2", ...} (스칼라는 문자열 그대로)."""
    if isinstance(text, dict):
        return {_node(k, "params"): str(v) for k, v in text.items()}
    if text is None or (isinstance(text, float) and np.isnan(text)) or str(text).strip() == "":
        return {}
    out: Dict[int, str] = {}
    for item in str(text).split(";"):
        if not item.strip():
            continue
        if ":" not in item:
            raise ConfigError(f"'노드:스칼라' 형식이 아닙니다: {item!r}", error_code="BAD_MAP")
        k, v = item.split(":", 1)
        out[_node(k.strip(), "params")] = v.strip()
    return out


def parse_module_descriptor(text: str, rank: int) -> Tuple[int, ...]:
    """가군 기술자 "V(w1+2w2)", "V(2*w1)", "V(0)" 를 Dynkin 라벨 튜플로 변환합니다."""
    m = _MODULE_RE.match(str(text))
    if not m:
        raise ConfigError(f"가군 기술자 형식 오류: {text!r} (예: V(w1+w2))", error_code="BAD_MODULE")
    labels = [0] * rank
    body = m.group(1).replace(" ", "")
    if body in ("", "0"):
        return tuple(labels)
    for term in body.split("+"):
        t = _TERM_RE.match(term)
        if not t:
            raise ConfigError(f"가군 기술자 항 형식 오류: {term!r} in {text!r}", error_code="BAD_MODULE")
        coeff = int(t.group(1)) if t.group(1) else 1
        k = int(t.group(2))
        if not 1 <= k <= rank:
            raise ConfigError(f"기본 웨이트 번호가 범위를 벗어났습니다: w{k} (rank {rank})", error_code="BAD_MODULE")
        labels[k - 1] += coeff
    return tuple(labels)


def module_label(labels: Tuple[int, ...]) -> str:
    terms = [("w%d" % (k + 1)) if n == 1 else ("%dw%d" % (n, k + 1)) for k, n in enumerate(labels) if n]
    return "V(%s)" % ("+".join(terms) if terms else "0")


def parse_module_list(text: Any) -> List[str]:
    """"V(w1);V(w2)" 또는 목록 -> 기술자 문자열 목록."""
    if isinstance(text, (list, tuple)):
        return [str(t).strip() for t in text if str(t).strip()]
    if text is None or (isinstance(text, float) and np.isnan(text)):
        return []
    return [t.strip() for t in re.split(r"[;,]\s*(?=V)", str(text)) if t.strip()]


def parse_pair_list(text: Any) -> List[Tuple[str, str]]:
    """"V(w1)|V(w1);V(w1)|V(w2)" -> [("V(w1)", "V(w1)"), ...]."""
    if text is None or (isinstance(text, float) and np.isnan(text)):
        return []
    pairs = []
    for item in str(text).split(";"):
        if not item.strip():
            continue
        if "|" not in item:
            raise ConfigError(f"가군 쌍 형식 오류: {item!r} (예: V(w1)|V(w2))", error_code="BAD_MODULE")
        a, b = item.split("|", 1)
        pairs.append((a.strip(), b.strip()))
    return pairs
