"""스칼라, 근 데이터, 대수, 준 R/K-행렬, 가군 범주를 위한 핵심 서브패키지.

계산은 모두 Q(q^{1/d}) 위에서 정확하게 이루어집니다.
"""

from .scalar import ScalarField, Scalar
from .rootdata import RootDatum, SatakeDatum, validate_admissible, build_datum
from .freealg import FreeAlgebra, AlgebraElement, PLUS, MINUS
from .triangular import BraidOperators, braid_T, FWD, INV
from .quasir import QuasiR, QuasiRBuilder, quasiR_dual, quasiR_pbw, quasiR_X, R_times_RXbar
from .qsp import QSPParams, validate_params, gamma_eval, xi_eval
from .quasik import QuasiK, compute_quasik, extend, check_solvable, solve_step

from .repcat import (
    CheckResult,
    ModuleData,
    ModuleAction,
    QuasiRCache,
    build_irrep,
    tensor,
    twist,
    act,
    lusztig_T,
    lusztig_T_word,
    rhat
)

from .kmatrix import (
    KParts,
    PairContext,
    build_kparts,
    quasik_operator,
    coideal_generators,
    check_intertwining
)

__all__ = [
    'ScalarField',
    'Scalar',
    'RootDatum',
    'SatakeDatum',
    'validate_admissible',
    'build_datum',
    'FreeAlgebra',
    'AlgebraElement',
    'PLUS',
    'MINUS',
    'BraidOperators',
    'braid_T',
    'FWD',
    'INV',
    'QuasiR',
    'QuasiRBuilder',
    'quasiR_dual',
    'quasiR_pbw',
    'quasiR_X',
    'R_times_RXbar',
    'QSPParams',
    'validate_params',
    'gamma_eval',
    'xi_eval',
    'QuasiK',
    'compute_quasik',
    'extend',
    'check_solvable',
    'solve_step',
    'CheckResult',
    'ModuleData',
    'ModuleAction',
    'QuasiRCache',
    'build_irrep',
    'tensor',
    'twist',
    'act',
    'lusztig_T',
    'lusztig_T_word',
    'rhat',
    'KParts',
    'PairContext',
    'build_kparts',
    'quasik_operator',
    'coideal_generators',
    'check_intertwining'
]
