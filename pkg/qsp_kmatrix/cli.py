"""qspk 명령줄 도구.

    qspk datum  --datum A3_X2
    qspk quasik --datum A1_split --cutoff 6
    qspk verify --datum A2_qsplit --checks reflection,fusion --jobs 4 --out report.json
    qspk catalog

종료 코드: 0 (모든 검사 통과), 1 (검사 실패 또는 계산 오류), 2 (사용법/설정 오류).
"""
import argparse
import json
import os
import sys
import time
from typing import Any, Dict, List, Optional, Sequence

from . import __version__
from .core.quasik import compute_quasik
from .core.repcat import DEFAULT_MAX_RANK
from .exceptions import ConfigError, QSPKError
from .qsp_kmatrix import (ALL_CHECKS, DatumConfig, build_params, catalog_config, config_from_json, datum_summary,
                          verify)
from .utils.descriptors import load_json, parse_module_list
from .utils.file_loaders import SATAKE_CATALOG

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


def _progress(quiet: bool):
    start = time.perf_counter()

    def say(msg: str):
        if not quiet:
            print(f"[{time.perf_counter() - start:7.1f}s] {msg}", file=sys.stderr)
    return say


def _write(report: Dict[str, Any], out: Optional[str]):
    text = json.dumps(report, ensure_ascii=False, indent=2)
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text + "\n")
    else:
        print(text)


def _split(text: Optional[str]) -> List[str]:
    if not text:
        return []
    return [t.strip() for t in text.replace(";", ",").split(",") if t.strip()]


def resolve_config(args: argparse.Namespace) -> DatumConfig:
    """--datum (카탈로그 이름 또는 JSON 파일), --params, --cutoff, --modules 를 합칩니다."""
    datum = args.datum
    params = load_json(args.params) if getattr(args, "params", None) else None
    if datum.endswith(".json") or os.path.exists(datum):
        cfg = config_from_json(load_json(datum), params)
    elif params is not None:
        cfg = config_from_json({"catalog": datum}, params)
    else:
        cfg = catalog_config(datum)
    if getattr(args, "cutoff", None) is not None:
        if args.cutoff < 0:
            raise ConfigError(f"--cutoff 는 0 이상이어야 합니다: {args.cutoff}", error_code="BAD_CUTOFF")
        cfg.cutoff = args.cutoff
    if getattr(args, "modules", None):
        cfg.modules = parse_module_list(args.modules)
        cfg.pairs = [p for p in cfg.pairs if p[0] in cfg.modules and p[1] in cfg.modules]
    return cfg


def cmd_catalog(args: argparse.Namespace) -> int:
    rows = SATAKE_CATALOG.to_dict(orient="records")
    _write({"catalog": rows}, args.out)
    return EXIT_OK


def cmd_datum(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    summary = datum_summary(cfg)
    _write(summary, args.out)
    return EXIT_OK if summary["admissible"] else EXIT_FAILED


def cmd_quasik(args: argparse.Namespace) -> int:
    say = _progress(args.quiet)
    cfg = resolve_config(args)
    params = build_params(cfg)
    say(f"{cfg.name}: 준 K-행렬 계산 (cutoff {cfg.cutoff})")
    qk = compute_quasik(params, cfg.cutoff, cache_dir=args.cache_dir)
    report = {"datum": cfg.to_dict(), "quasik": qk.to_dict()}
    _write(report, args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    say = _progress(args.quiet)
    cfg = resolve_config(args)
    checks = _split(args.checks) + list(args.check or [])
    params = build_params(cfg)
    say(f"{cfg.name}: 검증 시작 (가군 {len(cfg.modules)}, 쌍 {len(cfg.pairs)})")
    report = verify(params, cfg, checks or None, jobs=args.jobs, seed=args.seed, cache_dir=args.cache_dir,
                    progress=say, max_rank=args.max_rank)
    failed = [c for c in report["checks"] if not c["passed"]]
    for c in failed:
        say(f"실패: {c['name']} ({c['details'].get('target', '')})")
    say(f"{len(report['checks']) - len(failed)}/{len(report['checks'])} 통과")
    _write(report, args.out)
    return EXIT_OK if report["passed"] else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qspk", description="양자 대칭 쌍의 보편 K-행렬 정확 계산/검증 도구")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, with_params: bool = True):
        p.add_argument("--datum", required=True, help="카탈로그 이름 또는 JSON 기술자 파일")
        if with_params:
            p.add_argument("--params", default=None, help="c, s 매개변수 JSON 파일")
            p.add_argument("--cutoff", type=int, default=None, help="준 K-행렬 높이 상한")
            p.add_argument("--cache-dir", default=None, help="QuasiK 캐시 디렉터리 (기본: $QSPK_CACHE_DIR)")
            p.add_argument("--quiet", action="store_true", help="진행 메시지를 끕니다")
        p.add_argument("--out", default=None, help="JSON 출력 파일 (기본: 표준 출력)")

    p = sub.add_parser("datum", help="근 데이터와 허용성 보고")
    common(p, with_params=False)
    p.set_defaults(func=cmd_datum)

    p = sub.add_parser("quasik", help="준 K-행렬 성분 계산")
    common(p)
    p.set_defaults(func=cmd_quasik)

    p = sub.add_parser("verify", help="가군 위의 항등식 검증")
    common(p)
    p.add_argument("--modules", default=None, help="가군 목록, 예: 'V(w1);V(w2)'")
    p.add_argument("--checks", default=None, help=f"쉼표로 구분한 검사 이름 ({', '.join(ALL_CHECKS)})")
    p.add_argument("--check", action="append", choices=ALL_CHECKS, help="검사 하나 (반복 가능)")
    p.add_argument("--jobs", type=int, default=1, help="병렬 작업 수")
    p.add_argument("--seed", type=int, default=0, help="무작위 표본 시드 (정확한 항등식 결과에는 영향 없음)")
    p.add_argument("--max-rank", type=int, default=DEFAULT_MAX_RANK, help="가군 기능의 최대 랭크")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", help="내장 Satake 카탈로그 출력")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_catalog)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"오류 (cli): {e}", file=sys.stderr)
        return EXIT_USAGE
    except QSPKError as e:
        print(f"오류 (cli): {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAILED
    except OSError as e:
        print(f"오류 (cli): 파일 입출력 실패: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
