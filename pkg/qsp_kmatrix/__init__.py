"""양자 대칭 쌍의 보편 K-행렬 패키지.

Satake 데이터와 매개변수 (c, s) 로부터 준 K-행렬 𝔛 를 정확히 계산하고,
유한 차원 가군 위에서 K-행렬 K_M 을 만들어 교환 관계, 여곱 공식,
반사 방정식 등을 정확한 행렬 항등식으로 검증합니다.
주요 기능은 `universal_K` 와 `verify` 함수를 통해 접근할 수 있습니다.
"""

from .qsp_kmatrix import (
    DatumConfig,
    catalog_config,
    config_from_json,
    datum_summary,
    build_params,
    build_module,
    universal_K,
    verify
)
from .exceptions import (
    QSPKError,
    ScalarError,
    RootDatumError,
    AdmissibilityError,
    AlgebraError,
    BraidDomainError,
    ParameterError,
    SolvabilityError,
    ModuleError,
    VerificationError,
    ConfigError
)

__all__ = [
    'DatumConfig',
    'catalog_config',
    'config_from_json',
    'datum_summary',
    'build_params',
    'build_module',
    'universal_K',
    'verify',
    'QSPKError',
    'ScalarError',
    'RootDatumError',
    'AdmissibilityError',
    'AlgebraError',
    'BraidDomainError',
    'ParameterError',
    'SolvabilityError',
    'ModuleError',
    'VerificationError',
    'ConfigError'
]

__version__ = "0.1.0"
__author__ = "qsp-kmatrix contributors"
