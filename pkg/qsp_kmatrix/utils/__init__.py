"""qsp_kmatrix 패키지의 유틸리티 서브패키지.

정확한 희소 행렬 연산, 설정 기술자 파서, 데이터 로더, QuasiK 캐시를 포함합니다.
"""

# 데이터 테이블
from .file_loaders import (
    SATAKE_CATALOG,
    load_catalog
)

# 설정 기술자
from .descriptors import (
    cartan_matrix,
    load_json,
    parse_nodes,
    parse_node_map,
    parse_scalar_map,
    parse_module_descriptor,
    module_label,
    parse_module_list,
    parse_pair_list
)

# 캐시
from .cache_utils import (
    CACHE_ENV,
    cache_directory,
    fingerprint
)

__all__ = [
    # 데이터 테이블
    'SATAKE_CATALOG',
    'load_catalog',
    # 설정 기술자
    'cartan_matrix',
    'load_json',
    'parse_nodes',
    'parse_node_map',
    'parse_scalar_map',
    'parse_module_descriptor',
    'module_label',
    'parse_module_list',
    'parse_pair_list',
    # 캐시
    'CACHE_ENV',
    'cache_directory',
    'fingerprint'
]
