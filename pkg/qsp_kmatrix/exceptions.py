"""qsp_kmatrix 패키지의 사용자 정의 예외 클래스들.

이 모듈은 qsp_kmatrix 패키지 내에서 사용되는 사용자 정의 예외 클래스들을 정의합니다.
항등식 검증 실패는 예외가 아니라 `CheckResult`로 보고되며, 여기의 예외들은
계산 자체를 계속할 수 없는 경우에만 사용됩니다.
"""
from typing import Any, Optional, Sequence


class QSPKError(Exception):
    """qsp_kmatrix 패키지의 기본 예외 클래스.

    다른 모든 패키지 관련 사용자 정의 예외는 이 클래스를 상속받습니다.
    `except QSPKError:` 구문으로 패키지에서 발생 가능한 모든 예외를 한 번에 처리할 수 있습니다.
    """
    pass


class ScalarError(QSPKError):
    """유리함수체 스칼라 연산에서 발생하는 예외.

    0으로 나누기, 서로 다른 d를 가진 스칼라의 혼합, 파싱 실패,
    음수 인자를 받은 q-조합 함수 등에서 사용됩니다.

    Attributes:
        message (str): 에러에 대한 설명 메시지
        details (Any, optional): 에러와 관련된 추가적인 상세 정보
    """
    def __init__(self, message: str, details: Any = None):
        super().__init__(message)
        self.details = details


class RootDatumError(QSPKError):
    """근 데이터(Cartan 행렬, Weyl 군 단어) 처리 중 발생하는 예외.

    Attributes:
        message (str): 에러에 대한 설명 메시지
        condition (str): 위반된 조건의 이름 (예: "symmetrizable", "finite_type")
        details (Any, optional): 에러와 관련된 추가적인 상세 정보
    """
    def __init__(self, message: str, condition: str = "", details: Any = None):
        super().__init__(message)
        self.condition = condition
        self.details = details


class AdmissibilityError(QSPKError):
    """(X, τ) 쌍이 허용 가능(admissible)하지 않을 때 발생하는 예외.

    Attributes:
        message (str): 에러에 대한 설명 메시지
        failed (tuple): 실패한 조건 이름들
        report (dict, optional): 조건별 결과 전체
    """
    def __init__(self, message: str, failed: Sequence[str] = (), report: Optional[dict] = None):
        super().__init__(message)
        self.failed = tuple(failed)
        self.report = report


class AlgebraError(QSPKError):
    """U⁺/U⁻ 원소 연산에서 발생하는 예외.

    Attributes:
        message (str): 에러에 대한 설명 메시지
        details (Any, optional): 에러와 관련된 추가적인 상세 정보
    """
    def __init__(self, message: str, details: Any = None):
        super().__init__(message)
        self.details = details


class BraidDomainError(AlgebraError):
    """브레이드 연산자 T_i의 결과가 한쪽 부분대수를 벗어날 때 발생하는 예외.

    Attributes:
        message (str): 에러에 대한 설명 메시지
        weight (tuple, optional): 입력 원소의 웨이트
        details (Any, optional): 남은 혼합 항의 정보
    """
    def __init__(self, message: str, weight: Any = None, details: Any = None):
        super().__init__(message, details=details)
        self.weight = weight


class ParameterError(QSPKError):
    """매개변수 (c, s)가 제약 조건을 위반하거나 γ 확장이 불가능할 때 발생하는 예외.

    Attributes:
        message (str): 에러에 대한 설명 메시지
        violations (tuple): 위반된 제약 조건 이름들
    """
    def __init__(self, message: str, violations: Sequence[str] = ()):
        super().__init__(message)
        self.violations = tuple(violations)


class SolvabilityError(QSPKError):
    """quasi K-matrix 재귀 단계에서 가해 조건이나 유일해 조건이 실패할 때 발생하는 예외.

    Attributes:
        message (str): 에러에 대한 설명 메시지
        weight (tuple, optional): 실패한 단계의 웨이트 μ
        nodes (tuple): 관련된 노드 (i, j)
        details (Any, optional): 에러와 관련된 추가적인 상세 정보
    """
    def __init__(self, message: str, weight: Any = None, nodes: Sequence[int] = (), details: Any = None):
        super().__init__(message)
        self.weight = weight
        self.nodes = tuple(nodes)
        self.details = details


class ModuleError(QSPKError):
    """유한차원 가군 구성 중 발생하는 예외.

    Attributes:
        message (str): 에러에 대한 설명 메시지
        highest_weight (tuple, optional): 요청된 최고 웨이트
    """
    def __init__(self, message: str, highest_weight: Any = None):
        super().__init__(message)
        self.highest_weight = highest_weight


class VerificationError(QSPKError):
    """반드시 성립해야 하는 구조적 성질이 깨졌을 때 발생하는 예외.

    Attributes:
        message (str): 에러에 대한 설명 메시지
        identity (str): 관련된 항등식 이름
        details (Any, optional): 에러와 관련된 추가적인 상세 정보
    """
    def __init__(self, message: str, identity: str = "", details: Any = None):
        super().__init__(message)
        self.identity = identity
        self.details = details


class ConfigError(QSPKError):
    """설정 파일이나 명령행 인자가 잘못되었을 때 발생하는 예외.

    Attributes:
        message (str): 에러에 대한 설명 메시지
        filename (str): 문제가 된 파일명 또는 식별자
        error_code (str): 에러의 원인을 나타내는 간단한 코드 (예: "MALFORMED_JSON")
    """
    def __init__(self, message: str, filename: str = "", error_code: str = "MALFORMED_JSON"):
        super().__init__(message)
        self.filename = filename
        self.error_code = error_code
