import matplotlib.pyplot as plt

from qsp_kmatrix.core.kmatrix import build_kparts
from qsp_kmatrix.visualization import (check_table, plot_quasik_support, print_checks, quasik_support_table,
                                       sparsity_pattern, visualize_kmatrix)


def test_sparsity_pattern_matches_entries(a2_V1, a2_qk):
    kp = build_kparts(a2_V1, a2_qk)
    pattern = sparsity_pattern(kp, "xi")
    assert pattern.shape == (3, 3)
    assert pattern.sum() == 3
    assert (pattern.diagonal() == 1).all()


def test_visualize_kmatrix_saves_figure(tmp_path, a1_V2, a1_qk):
    kp = build_kparts(a1_V2, a1_qk)
    path = tmp_path / "k.png"
    fig = visualize_kmatrix(kp, save_path=str(path), show=False)
    assert fig is not None and path.exists()
    plt.close(fig)


def test_visualize_unknown_matrix(a1_V1, a1_qk, capsys):
    assert visualize_kmatrix(build_kparts(a1_V1, a1_qk), which="R", show=False) is None
    assert "오류 (visualize_kmatrix)" in capsys.readouterr().out


def test_support_table_and_plot(a2_qk):
    table = quasik_support_table(a2_qk)
    assert list(table.columns) == ["weight", "height", "terms"]
    assert table.iloc[0]["weight"] == "(0,0)"
    assert (table["height"] % 2 == 0).all()
    fig = plot_quasik_support(a2_qk, show=False)
    plt.close(fig)


def test_check_table(capsys):
    report = {"checks": [
        {"name": "relations", "passed": True, "shape": [3, 3], "seconds": 0.1, "mismatches": [],
         "details": {"target": "V(w1)"}},
        {"name": "reflection", "passed": False, "shape": [9, 9], "seconds": 0.5, "mismatches": [[0, 1, "q", "1"]],
         "details": {"target": "V(w1)⊗V(w2)"}},
    ]}
    table = check_table(report)
    assert table["passed"].tolist() == [True, False]
    assert table.loc[1, "shape"] == "9x9"
    print_checks(report)
    assert "통과 1 / 2" in capsys.readouterr().out


def test_empty_report(capsys):
    print_checks({"checks": []})
    assert "비어있습니다" in capsys.readouterr().out
