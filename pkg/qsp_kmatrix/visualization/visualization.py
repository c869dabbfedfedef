"""K-행렬과 준 K-행렬 시각화 모듈.

matplotlib 으로 K_M 의 희소 패턴과 𝔛 의 웨이트 지지 집합을 그리고,
검증 보고서를 pandas 표로 정리합니다.
"""

from typing import Any, Dict, List, Optional

import matplotlib.patches as patches
import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

try:
    font_found = False
    font_families_to_try = ['NanumGothic', 'Malgun Gothic', 'AppleGothic', 'sans-serif']
    for font_family in font_families_to_try:
        try:
            plt.rcParams['font.family'] = font_family
            font_found = True
            break
        except Exception:
            continue

    if not font_found:
        print("경고 (visualization): 한글 폰트를 설정할 수 없습니다. "
              "시스템의 sans-serif 폰트를 사용합니다. 한글이 올바르게 표시되지 않을 수 있습니다.")

    plt.rcParams['axes.unicode_minus'] = False

except Exception as e:
    print(f"경고 (visualization): 한글 폰트 설정 중 오류 발생: {e}. "
          "그래프에서 한글이 올바르게 표시되지 않을 수 있습니다.")

from ..core.kmatrix import KParts
from ..core.quasik import QuasiK
from ..utils import matrix_utils as mu_


def _weight_text(w) -> str:
    return "(" + ",".join(str(x) for x in w) + ")"


def sparsity_pattern(kp: KParts, which: str = "K") -> np.ndarray:
    """K (또는 Kprime, X, xi) 의 0 이 아닌 성분 위치를 0/1 배열로."""
    mat = getattr(kp, which)
    n = kp.module.dim
    out = np.zeros((n, n), dtype=int)
    for (r, c) in mu_.entries(mat):
        out[r, c] = 1
    return out


def visualize_kmatrix(
    kp: KParts,
    which: str = "K",
    save_path: Optional[str] = None,
    show: bool = True
):
    """가군 위 K-행렬의 희소 패턴을 웨이트 블록 경계와 함께 그립니다.

    Args:
        kp (KParts): build_kparts 결과
        which (str): "K", "Kprime", "X", "xi" 중 하나
        save_path (str): 주어지면 그림을 저장
        show (bool): plt.show() 호출 여부

    Returns:
        matplotlib.figure.Figure 또는 None (그릴 수 없는 경우)
    """
    if which not in ("K", "Kprime", "X", "xi"):
        print(f"오류 (visualize_kmatrix): 알 수 없는 행렬 이름입니다: {which}")
        return None
    M = kp.module
    pattern = sparsity_pattern(kp, which)
    if not pattern.any():
        print(f"경고 (visualize_kmatrix): {which}_{M.name} 의 성분이 모두 0 입니다.")

    size = max(4, min(14, M.dim * 0.6))
    fig, ax = plt.subplots(figsize=(size, size))
    ax.imshow(pattern, cmap='Blues', vmin=0, vmax=1)

    for idx in M.weight_blocks().values():
        lo, hi = min(idx), max(idx)
        rect = patches.Rectangle((lo - 0.5, lo - 0.5), hi - lo + 1, hi - lo + 1,
                                 linewidth=1.5, edgecolor='red', facecolor='none', zorder=2)
        ax.add_patch(rect)

    labels = [_weight_text(w) for w in M.weights]
    ax.set_xticks(np.arange(M.dim))
    ax.set_yticks(np.arange(M.dim))
    fs = 10 if M.dim <= 10 else 6
    ax.set_xticklabels(labels, rotation=90, fontsize=fs)
    ax.set_yticklabels(labels, fontsize=fs)
    ax.xaxis.set_ticks_position('top')

    plt.title(f"{which} on {M.name} (0 이 아닌 성분)", fontsize=14, fontweight='bold')
    plt.tight_layout()
    if save_path:
        fig.savefig(save_path)
    if show:
        plt.show()
    return fig


def quasik_support_table(qk: QuasiK) -> pd.DataFrame:
    """𝔛 의 웨이트별 항 수와 높이."""
    rows = [{"weight": _weight_text(m), "height": sum(m), "terms": len(list(qk.comps[m].terms()))}
            for m in qk.weights()]
    return pd.DataFrame(rows, columns=["weight", "height", "terms"])


def plot_quasik_support(qk: QuasiK, save_path: Optional[str] = None, show: bool = True):
    """랭크 2 이하면 웨이트 격자 위의 산점도, 그보다 크면 높이별 막대그래프."""
    table = quasik_support_table(qk)
    fig, ax = plt.subplots(figsize=(6, 5))
    n = qk.params.root.rank
    if n <= 2:
        pts = np.array([list(m) + [0] * (2 - n) for m in qk.weights()])
        sizes = 40 + 20 * table["terms"].to_numpy()
        ax.scatter(pts[:, 0], pts[:, 1], s=sizes, c=table["height"], cmap='viridis', zorder=2)
        ax.set_xlabel("α_1 계수")
        ax.set_ylabel("α_2 계수" if n == 2 else "")
        ax.grid(True, alpha=0.3)
    else:
        per_height = table.groupby("height")["terms"].sum()
        ax.bar(per_height.index, per_height.values, color='steelblue')
        ax.set_xlabel("높이")
        ax.set_ylabel("항 수")
    plt.title(f"준 K-행렬 지지 집합 (cutoff {qk.cutoff})", fontsize=14, fontweight='bold')
    plt.tight_layout()
    if save_path:
        fig.savefig(save_path)
    if show:
        plt.show()
    return fig


def check_table(report: Dict[str, Any]) -> pd.DataFrame:
    """verify 보고서의 검사 목록을 DataFrame 으로."""
    rows: List[Dict[str, Any]] = []
    for c in report.get("checks", []):
        rows.append({
            "check": c["name"],
            "target": c.get("details", {}).get("target", ""),
            "passed": c["passed"],
            "shape": "x".join(str(s) for s in c.get("shape", [])),
            "seconds": c.get("seconds", 0.0),
            "mismatches": len(c.get("mismatches", [])),
        })
    return pd.DataFrame(rows, columns=["check", "target", "passed", "shape", "seconds", "mismatches"])


def print_checks(report: Dict[str, Any]) -> None:
    table = check_table(report)
    if table.empty:
        print("검사 결과가 비어있습니다.")
        return
    print(table.to_string(index=False))
    failed = int((~table["passed"]).sum())
    print("-" * 30)
    print(f"통과 {len(table) - failed} / {len(table)}")
