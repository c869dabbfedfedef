"""패키지에 포함된 표(Satake 카탈로그)를 읽어 둡니다."""
from importlib import resources
from typing import Any, Callable

import pandas as pd

from .. import data as data_files_anchor

TABLE_DIR = "tables"


def _load_table(filename: str, loader_func: Callable[..., pd.DataFrame], **kwargs: Any) -> pd.DataFrame:
    """data/tables/<filename> 을 loader_func 로 읽습니다.

    Raises:
        ImportError: 표가 패키지에 없거나 읽을 수 없는 경우 (가져오기 단계에서 실패하도록)
    """
    ref = resources.files(data_files_anchor) / TABLE_DIR / filename
    if not ref.is_file():
        raise ImportError(f"표 '{filename}' 이(가) 패키지 데이터에 없습니다: {ref}")
    try:
        with resources.as_file(ref) as path:
            return loader_func(str(path), **kwargs)
    except (OSError, ValueError) as e:
        print(f"오류 (file_loaders): 표 '{filename}' 을(를) 읽지 못했습니다. {type(e).__name__}: {e}")
        raise ImportError(f"표 '{filename}' 읽기 실패") from e


def load_catalog(filename: str = "satake_catalog.csv") -> pd.DataFrame:
    """Satake 카탈로그. 모든 열을 문자열로 읽고 빈 칸은 빈 문자열로 둡니다."""
    table = _load_table(filename, pd.read_csv, dtype=str, keep_default_na=False)
    columns = {"name", "cartan_type", "rank", "X", "tau", "c", "s", "cutoff", "modules", "pairs"}
    missing = columns - set(table.columns)
    if missing:
        raise ImportError(f"카탈로그 '{filename}' 에 열이 없습니다: {sorted(missing)}")
    return table.set_index("name", drop=False)


try:
    SATAKE_CATALOG: pd.DataFrame = load_catalog()
except ImportError as e:
    print(f"치명적 오류 (file_loaders): 카탈로그를 불러오지 못했습니다. {e}")
    raise
