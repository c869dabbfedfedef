"""QuasiK 계산 결과의 JSON 캐시.

캐시 파일 이름은 (Cartan 행렬, X, τ, c, s, 축약 단어, 기저 순서) 의 sha256 지문입니다.
캐시를 읽거나 쓰지 못해도 계산은 계속되며, 경고만 출력합니다.
"""
import hashlib
import json
import os
from typing import Any, Dict, Optional

CACHE_ENV = "QSPK_CACHE_DIR"


def cache_directory(explicit: Optional[str] = None) -> Optional[str]:
    """명시된 디렉터리, 없으면 환경 변수 QSPK_CACHE_DIR. 둘 다 없으면 None."""
    path = explicit or os.environ.get(CACHE_ENV)
    return path or None


def fingerprint(params: Any, reverse: bool = False) -> str:
    sd = params.satake
    root = params.root
    words = None
    if root.is_finite:
        words = [list(sd.w0_word), list(sd.wX_word)]
    payload = {
        "cartan": [list(r) for r in root.cartan],
        "X": list(sd.X),
        "tau": list(sd.tau),
        "c": [params.c[i].to_text() for i in range(root.rank)],
        "s": [params.s[i].to_text() for i in range(root.rank)],
        "words": words,
        "reverse": bool(reverse),
    }
    text = json.dumps(payload, sort_keys=True, ensure_ascii=True)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _entry_path(cache_dir: str, key: str) -> str:
    return os.path.join(cache_dir, f"quasik_{key}.json")


def load_entry(cache_dir: str, key: str) -> Optional[Dict[str, Any]]:
    path = _entry_path(cache_dir, key)
    if not os.path.exists(path):
        return None
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, ValueError) as e:
        print(f"경고 (cache_utils): 캐시 파일을 읽을 수 없어 무시합니다: {path} ({e})")
        return None
    if data.get("fingerprint") != key:
        print(f"경고 (cache_utils): 캐시 지문이 일치하지 않아 무시합니다: {path}")
        return None
    return data.get("quasik")


def save_entry(cache_dir: str, key: str, quasik_dict: Dict[str, Any]) -> Optional[str]:
    path = _entry_path(cache_dir, key)
    try:
        os.makedirs(cache_dir, exist_ok=True)
        tmp = path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as f:
            json.dump({"fingerprint": key, "quasik": quasik_dict}, f, ensure_ascii=False)
        os.replace(tmp, path)
    except OSError as e:
        print(f"경고 (cache_utils): 캐시 파일을 쓸 수 없습니다: {path} ({e})")
        return None
    return path
