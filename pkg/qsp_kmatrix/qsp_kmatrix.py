import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

from .core.freealg import FreeAlgebra
from .core.kmatrix import (KParts, PairContext, build_kparts, check_adxi, check_deltaK, check_deltaX, check_deltaxi,
                           check_fusion, check_intertwining, check_KX1X, check_naturality, check_quasik_intertwining,
                           check_reflection, check_RtauX_blocks, corrupted_xi, kmatrix_dump, XiFunction)
from .core.qsp import QSPParams, validate_params
from .core.quasik import (QuasiK, check_uniqueness, compute_quasik, derivation_violations, extend,
                          s_zero_support_violations, support_violations)
from .core.repcat import (DEFAULT_MAX_RANK, CheckResult, ModuleData, QuasiRCache, build_irrep,
                          check_braid_conjugation, check_deltaT, check_deltaTw0, check_hexagon,
                          check_quasiR_intertwining, check_relations, check_rhat_module_map, check_riCommute)
from .core.rootdata import RootDatum, SatakeDatum, validate_admissible
from .exceptions import ConfigError, QSPKError, VerificationError
from .utils.descriptors import (cartan_matrix, parse_module_descriptor, parse_module_list, parse_node_map,
                                parse_nodes, parse_pair_list, parse_scalar_map)
from .utils.file_loaders import SATAKE_CATALOG

GLOBAL_CHECKS = ("quasik", "support", "derivation", "uniqueness", "cXbar", "quasiR_pbw")
MODULE_CHECKS = ("relations", "braid", "commutator", "quasik_intertwining", "intertwining", "adxi", "negative_xi")
PAIR_CHECKS = ("rhat", "quasiR", "deltaT", "deltaTw0", "hexagon", "RtauX_blocks", "deltaX", "deltaK",
               "reflection", "fusion", "naturality", "deltaxi", "KX1X")
ALL_CHECKS = GLOBAL_CHECKS + MODULE_CHECKS + PAIR_CHECKS


@dataclass
class DatumConfig:
    """하나의 실행 설정. 노드 번호는 0-기반으로 저장합니다."""
    name: str
    cartan: Tuple[Tuple[int, ...], ...]
    X: Tuple[int, ...] = ()
    tau: Tuple[int, ...] = ()
    c: Dict[int, str] = field(default_factory=dict)
    s: Dict[int, str] = field(default_factory=dict)
    cutoff: int = 4
    modules: List[str] = field(default_factory=list)
    pairs: List[Tuple[str, str]] = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.cartan)

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "cartan": [list(r) for r in self.cartan], "X": [i + 1 for i in self.X],
                "tau": {str(i + 1): t + 1 for i, t in enumerate(self.tau)},
                "c": {str(i + 1): v for i, v in sorted(self.c.items())},
                "s": {str(i + 1): v for i, v in sorted(self.s.items())},
                "cutoff": self.cutoff, "modules": list(self.modules), "pairs": [list(p) for p in self.pairs]}


def _tau_tuple(mapping: Dict[int, int], rank: int) -> Tuple[int, ...]:
    tau = list(range(rank))
    for k, v in mapping.items():
        if not (1 <= k <= rank and 1 <= v <= rank):
            raise ConfigError(f"τ 의 노드 번호가 범위를 벗어났습니다: {k}:{v}", error_code="BAD_MAP")
        tau[k - 1] = v - 1
    return tuple(tau)


def _zero_based(mapping: Dict[int, str], rank: int) -> Dict[int, str]:
    for k in mapping:
        if not 1 <= k <= rank:
            raise ConfigError(f"매개변수 노드 번호가 범위를 벗어났습니다: {k}", error_code="BAD_NODE")
    return {k - 1: v for k, v in mapping.items()}


def catalog_names() -> List[str]:
    return list(SATAKE_CATALOG["name"])


def catalog_config(name: str) -> DatumConfig:
    """내장 카탈로그의 한 행을 DatumConfig 로 읽습니다.

    Raises:
        ConfigError: 이름이 카탈로그에 없는 경우 ("UNKNOWN_DATUM")
    """
    if name not in SATAKE_CATALOG.index:
        raise ConfigError(f"카탈로그에 없는 이름입니다: {name} (가능: {', '.join(catalog_names())})",
                          filename="satake_catalog.csv", error_code="UNKNOWN_DATUM")
    row = SATAKE_CATALOG.loc[name]
    rank = int(row["rank"])
    cartan = tuple(tuple(int(x) for x in r) for r in cartan_matrix(row["cartan_type"], rank).tolist())
    return DatumConfig(
        name=name,
        cartan=cartan,
        X=tuple(i - 1 for i in parse_nodes(row["X"])),
        tau=_tau_tuple(parse_node_map(row["tau"]), rank),
        c=_zero_based(parse_scalar_map(row["c"]), rank),
        s=_zero_based(parse_scalar_map(row["s"]), rank),
        cutoff=int(row["cutoff"]) if str(row["cutoff"]).strip() else 4,
        modules=parse_module_list(row["modules"]),
        pairs=parse_pair_list(row["pairs"]),
    )


def config_from_json(datum: Dict[str, Any], params: Optional[Dict[str, Any]] = None) -> DatumConfig:
    """JSON 기술자(+ 매개변수 설정)로부터 DatumConfig 를 만듭니다.

    {"catalog": 이름} 이면 카탈로그 행에서 시작하고, 나머지 키가 그 값을 덮어씁니다.
    """
    params = params or {}
    if "catalog" in datum:
        cfg = catalog_config(str(datum["catalog"]))
    else:
        if "cartan" in datum:
            try:
                cartan = tuple(tuple(int(x) for x in r) for r in datum["cartan"])
            except (TypeError, ValueError) as e:
                raise ConfigError(f"Cartan 행렬 형식 오류: {datum['cartan']!r}", error_code="BAD_CARTAN") from e
        elif "type" in datum or "cartan_type" in datum:
            series = datum.get("type", datum.get("cartan_type"))
            if "rank" not in datum:
                raise ConfigError("'type' 을 쓸 때는 'rank' 가 필요합니다.", error_code="MISSING_KEY")
            cartan = tuple(tuple(int(x) for x in r) for r in cartan_matrix(series, int(datum["rank"])).tolist())
        else:
            raise ConfigError("기술자에 'catalog', 'cartan', 'type' 중 하나가 필요합니다.", error_code="MISSING_KEY")
        cfg = DatumConfig(name=str(datum.get("name", "custom")), cartan=cartan, tau=tuple(range(len(cartan))))
    rank = cfg.rank
    if "X" in datum:
        cfg.X = tuple(i - 1 for i in parse_nodes(datum["X"]))
    if "tau" in datum:
        cfg.tau = _tau_tuple(parse_node_map(datum["tau"]), rank)
    if "cutoff" in datum:
        cfg.cutoff = int(datum["cutoff"])
    if "modules" in datum:
        cfg.modules = parse_module_list(datum["modules"])
    if "pairs" in datum:
        cfg.pairs = parse_pair_list(";".join(datum["pairs"]) if isinstance(datum["pairs"], list) else datum["pairs"])
    for key in ("c", "s"):
        source = params.get(key, datum.get(key))
        if source is not None:
            setattr(cfg, key, _zero_based(parse_scalar_map(source), rank))
    return cfg


def _frac_list(w: Sequence) -> List[str]:
    return [str(x) for x in w]


def datum_summary(cfg: DatumConfig) -> Dict[str, Any]:
    """근 데이터와 (X, τ) 의 요약. 허용성이 실패해도 예외 없이 조건별 결과를 담습니다."""
    root = RootDatum(cfg.cartan)
    sd = SatakeDatum(root, cfg.X, cfg.tau or tuple(range(root.rank)))
    report = sd.admissibility_report()
    admissible = all(report.values())
    out: Dict[str, Any] = {
        "name": cfg.name,
        "cartan": [list(r) for r in root.cartan],
        "d": root.d,
        "symmetrizers": list(root.eps),
        "finite_type": root.is_finite,
        "X": [i + 1 for i in sd.X],
        "tau": [t + 1 for t in sd.tau],
        "admissible": admissible,
        "admissibility": report,
    }
    if root.is_finite:
        out["fundamental_weights"] = [_frac_list(root.fundamental_weight(i)) for i in range(root.rank)]
    if admissible:
        out["theta"] = [_frac_list(sd.theta(root.simple_root(i))) for i in range(root.rank)]
        out["I_ns"] = [i + 1 for i in sd.I_ns]
        if root.is_finite:
            out["tau0"] = [t + 1 for t in sd.tau0]
            out["w0_word"] = [i + 1 for i in sd.w0_word]
            out["wX_word"] = [i + 1 for i in sd.wX_word]
    return out


def build_params(cfg: DatumConfig, strict: bool = True) -> QSPParams:
    """허용성 검사와 매개변수 검사를 거친 QSPParams.

    Raises:
        RootDatumError, AdmissibilityError, ParameterError
    """
    root = RootDatum(cfg.cartan)
    sd = validate_admissible(root, cfg.X, cfg.tau or tuple(range(root.rank)))
    return validate_params(sd, cfg.c, cfg.s, strict=strict)


def build_module(params: QSPParams, descriptor: Union[str, Sequence[int]],
                 max_rank: int = DEFAULT_MAX_RANK) -> ModuleData:
    labels = parse_module_descriptor(descriptor, params.root.rank) if isinstance(descriptor, str) else descriptor
    return build_irrep(params.root, labels, params.field, max_rank=max_rank)


def make_quasiR_cache(params: QSPParams) -> QuasiRCache:
    sd = params.satake
    return QuasiRCache(params.ops, sd.w0_word, sd.wX_word)


def universal_K(
    params: QSPParams,
    module: Union[str, Sequence[int], ModuleData],
    qk: Optional[QuasiK] = None,
    xi: Optional[XiFunction] = None,
    cache_dir: Optional[str] = None,
    max_rank: int = DEFAULT_MAX_RANK
) -> KParts:
    """가군 M 위의 보편 K-행렬 K_M 과 그 구성 요소를 계산합니다.

    Args:
        params (QSPParams): 검증된 매개변수
        module: "V(w1)" 같은 기술자, Dynkin 라벨, 또는 이미 만든 ModuleData
        qk (QuasiK): 재사용할 준 K-행렬 (없으면 가군의 높이 차까지 계산)
        xi: ξ 대신 쓸 함수 (대조 실험용)
        cache_dir (str): QuasiK JSON 캐시 디렉터리

    Returns:
        KParts: 𝔛_M, ξ_M, T_{w_X,M}, T_{w_0,M}, K′_M, K_M

    Raises:
        QSPKError: 패키지 예외는 그대로 다시 발생
        VerificationError: 그 밖의 예기치 않은 오류
    """
    try:
        M = module if isinstance(module, ModuleData) else build_module(params, module, max_rank)
        if qk is None:
            qk = compute_quasik(params, M.gap, cache_dir=cache_dir)
        return build_kparts(M, qk, xi)
    except QSPKError:
        raise
    except Exception as e:
        raise VerificationError(f"K-행렬 계산 중 예기치 않은 오류 발생: {str(e)}", identity="universal_K") from e


# --- 검사 실행 ---

def _labelled(results: Sequence[CheckResult], label: str) -> List[CheckResult]:
    for r in results:
        r.details.setdefault("target", label)
    return list(results)


def _failed(name: str, label: str, error: Exception) -> CheckResult:
    return CheckResult(name, False, details={"target": label, "error": f"{type(error).__name__}: {error}"})


def _global_checks(params: QSPParams, cfg: DatumConfig, qk: QuasiK, selected: Sequence[str],
                   cache_dir: Optional[str]) -> List[CheckResult]:
    out = []
    if "support" in selected:
        t0 = time.perf_counter()
        bad = [list(m) for m in support_violations(qk)]
        for j in range(params.root.rank):
            if not params.s[j]:
                bad.extend([["s_zero", j + 1, list(m)] for m in s_zero_support_violations(qk, j)])
        out.append(CheckResult("support", not bad, seconds=time.perf_counter() - t0, mismatches=bad[:10]))
    if "derivation" in selected:
        t0 = time.perf_counter()
        bad = [[list(m), i + 1] for m, i in derivation_violations(qk)]
        out.append(CheckResult("derivation", not bad, seconds=time.perf_counter() - t0, mismatches=bad[:10]))
    if "uniqueness" in selected:
        t0 = time.perf_counter()
        other = compute_quasik(params, qk.cutoff, reverse=True, cache_dir=cache_dir)
        bad = [list(m) for m in check_uniqueness(qk, other)]
        out.append(CheckResult("uniqueness", not bad, seconds=time.perf_counter() - t0, mismatches=bad[:10]))
    if "cXbar" in selected:
        t0 = time.perf_counter()
        bad = [i + 1 for i in params.satake.I_ns if params.cX_bar(i) != params.cX_bar_formula(i)]
        out.append(CheckResult("cXbar", not bad, seconds=time.perf_counter() - t0, mismatches=bad))
    if "quasiR_pbw" in selected:
        t0 = time.perf_counter()
        h = pbw_height(params, cfg.cutoff)
        qrc = make_quasiR_cache(params)
        bad = [list(m) for m in qrc.R(h).mismatched_weights(qrc.builder.pbw(h))]
        out.append(CheckResult("quasiR_pbw", not bad, seconds=time.perf_counter() - t0, mismatches=bad[:10],
                               details={"height": h}))
    return _labelled(out, cfg.name)


def pbw_height(params: QSPParams, cutoff: int) -> int:
    """이중 기저 R 과 PBW 곱 R 을 비교할 높이. 랭크 3 이상은 4 로 제한합니다."""
    return min(cutoff, 6 if params.root.rank <= 2 else 4)


def _random_element(alg: FreeAlgebra, rng: random.Random, max_height: int):
    x = alg.zero()
    for _ in range(2):
        length = rng.randint(1, max(1, max_height))
        word = tuple(rng.randrange(alg.n) for _ in range(length))
        x = x + alg.word(word, coeff=rng.randint(-3, 3) or 1)
    return x


def _module_checks(params: QSPParams, M: ModuleData, qk: QuasiK, selected: Sequence[str],
                   rng: random.Random) -> Tuple[List[CheckResult], Optional[KParts]]:
    out: List[CheckResult] = []
    n = params.root.rank
    if "relations" in selected:
        out.append(check_relations(M))
    if "braid" in selected:
        for i in range(n):
            for j in range(n):
                if i != j:
                    out.append(check_braid_conjugation(M, params.ops, i, params.algebra.E(j)))
    if "commutator" in selected:
        x = _random_element(params.algebra, rng, min(4, max(1, M.gap)))
        out.extend(check_riCommute(M, x, i) for i in range(n))
    kp = None
    if any(c in selected for c in ("quasik_intertwining", "intertwining", "adxi")):
        kp = build_kparts(M, qk)
    if "quasik_intertwining" in selected:
        out.append(check_quasik_intertwining(kp, qk))
    if "intertwining" in selected:
        out.extend(check_intertwining(kp, params))
    if "adxi" in selected:
        out.extend(check_adxi(kp, params))
    if "negative_xi" in selected and M.dim > 1:
        t0 = time.perf_counter()
        bad_kp = build_kparts(M, qk, corrupted_xi(params))
        detected = not check_intertwining(bad_kp, params)[0].passed
        out.append(CheckResult("negative_xi_detected", detected, (M.dim, M.dim), time.perf_counter() - t0))
    return _labelled(out, M.name), kp


def _pair_checks(params: QSPParams, M: ModuleData, N: ModuleData, qk: QuasiK, qrc: QuasiRCache,
                 selected: Sequence[str]) -> List[CheckResult]:
    out: List[CheckResult] = []
    sd = params.satake
    if "rhat" in selected:
        out.append(check_rhat_module_map(M, N, qrc))
    if "quasiR" in selected:
        out.append(check_quasiR_intertwining(M, N, qrc))
    if "deltaT" in selected:
        out.extend(check_deltaT(M, N, i, qrc) for i in range(params.root.rank))
    if "deltaTw0" in selected:
        out.append(check_deltaTw0(M, N, sd.w0_word, qrc))
        out.append(check_deltaTw0(M, N, sd.w0_word, qrc, inverse=True))
    if "hexagon" in selected:
        out.extend(check_hexagon(M, N, M, qrc))
    k_checks = ("RtauX_blocks", "deltaX", "deltaK", "reflection", "fusion", "naturality", "deltaxi", "KX1X")
    if any(c in selected for c in k_checks):
        ctx = PairContext(M, N, qk, qrc)
        if "RtauX_blocks" in selected:
            out.append(check_RtauX_blocks(ctx.kpM, N, params, qrc))
        if "deltaX" in selected:
            out.append(check_deltaX(ctx))
        if "deltaK" in selected:
            out.append(check_deltaK(ctx))
        if "reflection" in selected:
            out.append(check_reflection(ctx))
        if "fusion" in selected:
            out.extend(check_fusion(ctx))
        if "naturality" in selected:
            out.extend(check_naturality(ctx))
        if "deltaxi" in selected:
            out.append(check_deltaxi(ctx))
        if "KX1X" in selected:
            out.append(check_KX1X(ctx))
    return _labelled(out, f"{M.name}⊗{N.name}")


def verify(
    params: QSPParams,
    cfg: DatumConfig,
    checks: Optional[Sequence[str]] = None,
    qk: Optional[QuasiK] = None,
    jobs: int = 1,
    seed: int = 0,
    cache_dir: Optional[str] = None,
    progress: Optional[Callable[[str], None]] = None,
    max_rank: int = DEFAULT_MAX_RANK
) -> Dict[str, Any]:
    """설정된 가군과 가군 쌍 위에서 선택한 검사를 모두 실행하고 JSON 보고서용 dict 를 돌려줍니다.

    QuasiK 계산이 실패하면(가해 조건 위반 등) "quasik" 검사가 실패로 기록되고 나머지는 건너뜁니다.
    """
    selected = tuple(checks) if checks else ALL_CHECKS
    unknown = [c for c in selected if c not in ALL_CHECKS]
    if unknown:
        raise ConfigError(f"알 수 없는 검사 이름: {', '.join(unknown)} (가능: {', '.join(ALL_CHECKS)})",
                          error_code="UNKNOWN_CHECK")
    say = progress or (lambda msg: None)
    results: List[CheckResult] = []
    modules = {d: build_module(params, d, max_rank) for d in cfg.modules}
    for a, b in cfg.pairs:
        for d in (a, b):
            if d not in modules:
                modules[d] = build_module(params, d, max_rank)
    pair_gap = max([modules[a].gap + modules[b].gap for a, b in cfg.pairs] + [0])
    need = max([cfg.cutoff, pair_gap] + [M.gap for M in modules.values()])

    t0 = time.perf_counter()
    say(f"quasi K-matrix: cutoff {need}")
    try:
        if qk is None:
            qk = compute_quasik(params, need, cache_dir=cache_dir)
        elif qk.cutoff < need:
            extend(qk, need)
    except QSPKError as e:
        results.append(_failed("quasik", cfg.name, e))
        return _report(cfg, results, {}, qk)
    if "quasik" in selected:
        results.append(CheckResult("quasik", True, seconds=time.perf_counter() - t0,
                                   details={"target": cfg.name, "cutoff": qk.cutoff, "support": len(qk.comps)}))
    results.extend(_global_checks(params, cfg, qk, selected, cache_dir))

    qrc = make_quasiR_cache(params)
    if any(c in selected for c in PAIR_CHECKS) and cfg.pairs:
        h = max(min(modules[a].gap, modules[b].gap) for a, b in cfg.pairs)
        qrc.R(h)
        qrc.R_bar(h)
        qrc.R_RXbar(h)

    dumps: Dict[str, Any] = {}
    tasks: List[Tuple[str, Callable[[], List[CheckResult]]]] = []
    for d, M in modules.items():
        if d not in cfg.modules:
            continue

        def run_module(M=M, d=d) -> List[CheckResult]:
            rng = random.Random(f"{seed}:{d}")
            res, kp = _module_checks(params, M, qk, selected, rng)
            if kp is not None:
                dumps[M.name] = kmatrix_dump(kp)
            return res

        tasks.append((d, run_module))
    for a, b in cfg.pairs:
        tasks.append((f"{a}|{b}", lambda a=a, b=b: _pair_checks(params, modules[a], modules[b], qk, qrc, selected)))

    def guarded(label: str, fn: Callable[[], List[CheckResult]]) -> List[CheckResult]:
        say(f"검사: {label}")
        try:
            return fn()
        except QSPKError as e:
            return [_failed("error", label, e)]

    if jobs > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            for res in pool.map(lambda t: guarded(*t), tasks):
                results.extend(res)
    else:
        for label, fn in tasks:
            results.extend(guarded(label, fn))
    return _report(cfg, results, dumps, qk)


def _report(cfg: DatumConfig, results: List[CheckResult], dumps: Dict[str, Any],
            qk: Optional[QuasiK]) -> Dict[str, Any]:
    return {
        "datum": cfg.to_dict(),
        "passed": all(r.passed for r in results) and bool(results),
        "checks": [r.to_dict() for r in results],
        "K": dumps,
        "quasik_cutoff": qk.cutoff if qk is not None else None,
    }
