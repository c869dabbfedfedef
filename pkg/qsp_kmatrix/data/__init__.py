"""qsp_kmatrix 가 사용하는 데이터 파일(주로 표)을 담는 서브패키지.

데이터 파일은 'tables' 하위 디렉터리에 있으며, `qsp_kmatrix.utils.file_loaders` 를 통해 읽습니다.
"""
