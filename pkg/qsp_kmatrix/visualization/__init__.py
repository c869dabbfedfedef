"""K-행렬 계산/검증 결과 시각화 서브패키지.

K_M 의 희소 패턴, 준 K-행렬의 웨이트 지지 집합, 검증 보고서 표를 제공합니다.
주요 기능은 `visualization.py` 모듈에 구현되어 있습니다.
"""

from .visualization import (
    sparsity_pattern,
    visualize_kmatrix,
    quasik_support_table,
    plot_quasik_support,
    check_table,
    print_checks
)

__all__ = [
    'sparsity_pattern',
    'visualize_kmatrix',
    'quasik_support_table',
    'plot_quasik_support',
    'check_table',
    'print_checks'
]
