"""End-to-end CLI tests: subcommands, file outputs, exit codes."""

import json

import pytest

from defectlaw import cli

FIXTURE_FILES = {
    "alpha.c": "int alpha(int a) { return a + 1; }\n",
    "beta.c": 'const char *msg = "hi";\nint beta(void) { return 0; }\n',
    "sub/gamma.c": "/* helper */ int gamma_(int x) { return 2 * x; }\n",
}


@pytest.fixture
def source_tree(tmp_path):
    root = tmp_path / "src"
    for rel, content in FIXTURE_FILES.items():
        path = root / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(content)
    return root


def run(argv):
    return cli.main([str(a) for a in argv])


# --- scan -------------------------------------------------------------------


def test_scan_writes_metrics(source_tree, tmp_path, capsys):
    out = tmp_path / "out"
    assert run(["scan", source_tree, "--out-dir", out]) == 0
    lines = (out / "metrics.csv").read_text().splitlines()
    assert lines[0] == "id,t,a,info"
    assert len(lines) == 1 + 3
    captured = capsys.readouterr()
    assert "M=3" in captured.out


def test_scan_function_granularity(source_tree, tmp_path):
    out = tmp_path / "out"
    assert run(["scan", source_tree, "--granularity", "function",
                "--out-dir", out]) == 0
    ids = [line.split(",")[0]
           for line in (out / "metrics.csv").read_text().splitlines()[1:]]
    assert "alpha.c::alpha" in ids
    assert "beta.c" in ids  # residual holds the global declaration


def test_scan_empty_dir_fails(tmp_path, capsys):
    empty = tmp_path / "empty"
    empty.mkdir()
    assert run(["scan", empty, "--out-dir", tmp_path]) != 0
    assert "no components" in capsys.readouterr().err


def test_scan_missing_dir_fails(tmp_path, capsys):
    assert run(["scan", tmp_path / "nope", "--out-dir", tmp_path]) != 0


def test_scan_skips_unterminated_comment_with_warning(source_tree, tmp_path, capsys):
    (source_tree / "broken.c").write_text("int x; /* never closed\n")
    out = tmp_path / "out"
    assert run(["scan", source_tree, "--out-dir", out]) == 0
    captured = capsys.readouterr()
    assert "broken.c" in captured.err
    lines = (out / "metrics.csv").read_text().splitlines()
    assert len(lines) == 1 + 3  # broken file excluded, others intact


# --- simulate ---------------------------------------------------------------


def test_simulate_deterministic_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    argv = ["simulate", "--M", "2000", "--beta", "2", "--defect-rate", "0.005",
            "--seed", "7"]
    assert run(argv + ["--out-dir", a]) == 0
    assert run(argv + ["--out-dir", b]) == 0
    assert (a / "metrics.csv").read_bytes() == (b / "metrics.csv").read_bytes()
    assert (a / "defects.csv").read_bytes() == (b / "defects.csv").read_bytes()


def test_simulate_zero_rate_all_zeros(tmp_path):
    assert run(["simulate", "--M", "300", "--beta", "1.5", "--defect-rate", "0",
                "--out-dir", tmp_path]) == 0
    rows = (tmp_path / "defects.csv").read_text().splitlines()[1:]
    assert all(row.endswith(",0") for row in rows)


def test_simulate_invalid_spec_fails(tmp_path, capsys):
    assert run(["simulate", "--M", "0", "--beta", "2", "--out-dir", tmp_path]) != 0
    assert "M must be" in capsys.readouterr().err


# --- analyze ----------------------------------------------------------------


@pytest.fixture
def simulated_pair(tmp_path):
    out = tmp_path / "sim"
    # rate chosen to give mean d around 2 for the default token rule
    assert run(["simulate", "--M", "30000", "--beta", "2", "--seed", "11",
                "--defect-rate", "0.0054", "--out-dir", out]) == 0
    return out / "metrics.csv", out / "defects.csv"


def test_analyze_simulated_pair_equilibrated(simulated_pair, tmp_path, capsys):
    metrics_csv, defects_csv = simulated_pair
    out = tmp_path / "report"
    assert run(["analyze", metrics_csv, defects_csv, "--out-dir", out]) == 0
    report = json.loads((out / "maturity.json").read_text())
    assert report["verdict"] == "equilibrated"
    for name in ("bins.csv", "regression.txt", "maturity.txt",
                 "scatter_all.svg", "scatter_cut.svg"):
        assert (out / name).exists()
    assert "verdict" in capsys.readouterr().out


def test_analyze_bins_and_svg_structure(simulated_pair, tmp_path):
    metrics_csv, defects_csv = simulated_pair
    out = tmp_path / "report"
    assert run(["analyze", metrics_csv, defects_csv, "--out-dir", out]) == 0
    bins_lines = (out / "bins.csv").read_text().splitlines()
    assert bins_lines[0] == "d,n,mean_info"
    n_bins = len(bins_lines) - 1
    svg = (out / "scatter_all.svg").read_text()
    assert svg.count('<circle class="pt"') == n_bins
    assert '<line class="fit"' in svg
    assert svg.count('<line class="axis"') == 2


def test_analyze_regression_text_block(simulated_pair, tmp_path):
    metrics_csv, defects_csv = simulated_pair
    out = tmp_path / "report"
    assert run(["analyze", metrics_csv, defects_csv, "--normalize", "5000",
                "--out-dir", out]) == 0
    text = (out / "regression.txt").read_text()
    assert "Coefficients:" in text
    assert "Adjusted R-squared:" in text
    assert "normalized by 5000" in text


def test_analyze_normalization_does_not_change_verdict(simulated_pair, tmp_path):
    metrics_csv, defects_csv = simulated_pair
    plain, scaled = tmp_path / "plain", tmp_path / "scaled"
    assert run(["analyze", metrics_csv, defects_csv, "--out-dir", plain]) == 0
    assert run(["analyze", metrics_csv, defects_csv, "--normalize", "5000",
                "--out-dir", scaled]) == 0
    a = json.loads((plain / "maturity.json").read_text())
    b = json.loads((scaled / "maturity.json").read_text())
    assert a["verdict"] == b["verdict"]
    assert a["adj_r2_cut"] == pytest.approx(b["adj_r2_cut"], rel=1e-9)


def test_analyze_all_orphans_fails(tmp_path, simulated_pair, capsys):
    metrics_csv, _ = simulated_pair
    stray = tmp_path / "stray.csv"
    stray.write_text("component_id,defects\nghost.c,3\n")
    assert run(["analyze", metrics_csv, stray, "--out-dir", tmp_path]) != 0
    assert "orphan" in capsys.readouterr().err


def test_analyze_few_bins_insufficient_data_exit_zero(tmp_path, capsys):
    metrics_csv = tmp_path / "m.csv"
    defects_csv = tmp_path / "d.csv"
    metrics_csv.write_text(
        "id,t,a,info\n" + "".join(f"c{i}.c,{10+i},{5+i%3},0\n" for i in range(10))
    )
    defects_csv.write_text(
        "component_id,defects\n" + "".join(f"c{i}.c,{i % 2}\n" for i in range(10))
    )
    out = tmp_path / "rep"
    assert run(["analyze", metrics_csv, defects_csv, "--out-dir", out]) == 0
    report = json.loads((out / "maturity.json").read_text())
    assert report["verdict"] == "insufficient-data"


def test_analyze_schema_violation_names_row(tmp_path, capsys):
    metrics_csv = tmp_path / "m.csv"
    metrics_csv.write_text("id,t,a,info\nc.c,5,9,1.0\n")
    defects_csv = tmp_path / "d.csv"
    defects_csv.write_text("component_id,defects\nc.c,1\n")
    assert run(["analyze", metrics_csv, defects_csv, "--out-dir", tmp_path]) != 0
    assert "row 2" in capsys.readouterr().err


def test_analyze_fixed_d_max_flag(simulated_pair, tmp_path):
    metrics_csv, defects_csv = simulated_pair
    out = tmp_path / "fixed"
    assert run(["analyze", metrics_csv, defects_csv, "--d-max", "7",
                "--out-dir", out]) == 0
    bins_lines = (out / "bins.csv").read_text().splitlines()[1:]
    assert max(int(line.split(",")[0]) for line in bins_lines) <= 7


# --- pvalue -----------------------------------------------------------------


def test_pvalue_f_anchors(capsys):
    assert run(["pvalue", "f", "59.03", "1", "6"]) == 0
    printed = float(capsys.readouterr().out.strip())
    assert printed == pytest.approx(0.0002544, rel=0.01)

    assert run(["pvalue", "f", "130.8", "1", "11"]) == 0
    printed = float(capsys.readouterr().out.strip())
    assert printed == pytest.approx(1.907e-07, rel=0.01)


def test_pvalue_t_zero_prints_one(capsys):
    assert run(["pvalue", "t", "0", "6"]) == 0
    assert capsys.readouterr().out.strip() == "1.000"


def test_pvalue_four_significant_digits(capsys):
    assert run(["pvalue", "f", "59.03", "1", "6"]) == 0
    assert capsys.readouterr().out.strip() == "0.0002544"


def test_pvalue_domain_error_exit(capsys):
    assert run(["pvalue", "f", "-1", "1", "6"]) != 0
    assert run(["pvalue", "t", "1.5", "0"]) != 0


def test_pvalue_t_rejects_extra_df(capsys):
    assert run(["pvalue", "t", "1.5", "6", "6"]) != 0


# --- pipeline closure -------------------------------------------------------


@pytest.mark.parametrize("seed,beta,rate", [(1, 1.5, 0.002), (2, 2.5, 0.02)])
def test_analyze_accepts_any_simulate_output(tmp_path, seed, beta, rate):
    sim = tmp_path / "sim"
    assert run(["simulate", "--M", "4000", "--beta", str(beta), "--seed", str(seed),
                "--defect-rate", str(rate), "--out-dir", sim]) == 0
    assert run(["analyze", sim / "metrics.csv", sim / "defects.csv",
                "--out-dir", tmp_path / "rep"]) == 0
