import csv
import io
import json

import numpy as np
import pytest

from ringemit import analysis, cli, models


ROOT2 = 2.0 ** -0.5


def run_cli(args):
    return cli.main(args)


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def simulate_args(out, **overrides):
    base = {
        "model": "A", "omega0": "1", "omega1": "1",
        "alpha": "1", "beta": "0", "phi": "0",
        "t-max": "2", "t-steps": "8",
    }
    base.update(overrides)
    args = ["simulate"]
    for key, value in base.items():
        if value is None:
            continue
        args.extend([f"--{key}", value])
    args.extend(["--out", str(out)])
    return args


def test_simulate_csv_shape(tmp_path):
    out = tmp_path / "run.csv"
    assert run_cli(simulate_args(out)) == 0
    rows = read_rows(out)
    assert len(rows) == 9
    assert list(rows[0]) == [
        "model", "omega0", "omega1", "alpha", "beta", "phi",
        "t", "p", "p_cond_1", "p_cond_2", "p_cond_3", "norm",
    ]
    assert rows[0]["model"] == "A"
    np.testing.assert_allclose(float(rows[-1]["t"]), 2.0)
    for row in rows:
        np.testing.assert_allclose(float(row["norm"]), 1.0, atol=1e-12)
        parts = sum(float(row[f"p_cond_{j}"]) for j in (1, 2, 3))
        np.testing.assert_allclose(parts, float(row["p"]), atol=1e-14)


def test_simulate_four_site_columns(tmp_path):
    out = tmp_path / "c.csv"
    assert run_cli(simulate_args(out, model="C", omega0="2", omega1="3")) == 0
    rows = read_rows(out)
    assert "p_cond_4" in rows[0]
    assert "p_cond_5" not in rows[0]


def test_simulate_stdout(capsys):
    assert run_cli(
        ["simulate", "--model", "A", "--omega0", "1", "--omega1", "1",
         "--alpha", "1", "--beta", "0", "--phi", "0",
         "--t-max", "1", "--t-steps", "2"]
    ) == 0
    captured = capsys.readouterr().out
    rows = list(csv.DictReader(io.StringIO(captured)))
    assert len(rows) == 3
    assert rows[0]["p"] is not None


def test_simulate_zero_time_grid(tmp_path):
    out = tmp_path / "zero.csv"
    assert run_cli(simulate_args(out, **{"t-max": "0", "t-steps": "1"})) == 0
    rows = read_rows(out)
    assert len(rows) == 1
    assert float(rows[0]["t"]) == 0.0
    assert float(rows[0]["p"]) < 1e-30
    np.testing.assert_allclose(float(rows[0]["norm"]), 1.0, atol=1e-12)


def test_simulate_blocked_start_never_emits(tmp_path):
    out = tmp_path / "blocked.csv"
    args = simulate_args(
        out, model="B",
        alpha=repr(ROOT2), beta=repr(ROOT2), phi=repr(np.pi),
        **{"t-max": "10", "t-steps": "50"},
    )
    assert run_cli(args) == 0
    for row in read_rows(out):
        assert float(row["p"]) < 1e-10


def test_simulate_deterministic_bytes(tmp_path):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    args = {"model": "C", "omega0": "2", "omega1": "3",
            "alpha": "0.6", "beta": "0.8", "phi": "0.4"}
    assert run_cli(simulate_args(out1, **args)) == 0
    assert run_cli(simulate_args(out2, **args)) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_simulate_phase_sweep_flat_for_four_site(tmp_path):
    out = tmp_path / "sweep.csv"
    args = simulate_args(
        out, model="C", omega0="2", omega1="3",
        alpha=repr(ROOT2), beta=repr(ROOT2), phi=None,
        **{"t-max": "4", "t-steps": "8", "phi-steps": "12"},
    )
    assert run_cli(args) == 0
    rows = read_rows(out)
    assert len(rows) == 9 * 12
    by_t = {}
    for row in rows:
        by_t.setdefault(row["t"], []).append(float(row["p"]))
    assert len(by_t) == 9
    for values in by_t.values():
        assert len(values) == 12
        assert max(values) - min(values) < 1e-10


def test_simulate_rk4_agrees(tmp_path):
    out_s, out_r = tmp_path / "s.csv", tmp_path / "r.csv"
    assert run_cli(simulate_args(out_s, model="B")) == 0
    assert run_cli(simulate_args(out_r, model="B", method="rk4")) == 0
    for rs, rr in zip(read_rows(out_s), read_rows(out_r)):
        np.testing.assert_allclose(float(rr["p"]), float(rs["p"]), atol=1e-8)


def test_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({
        "model": "B", "omega0": 5.0, "omega1": 1.0,
        "alpha": 1.0, "beta": 0.0, "phi": 0.0,
        "t_max": 2.0, "t_steps": 4,
    }))
    out = tmp_path / "cfg.csv"
    assert run_cli(["simulate", "--config", str(cfg), "--omega0", "1", "--out", str(out)]) == 0
    rows = read_rows(out)
    assert len(rows) == 5
    assert all(float(r["omega0"]) == 1.0 for r in rows)
    assert all(r["model"] == "B" for r in rows)


def test_config_rejects_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"model": "A", "bogus": 1}))
    assert run_cli(["simulate", "--config", str(cfg)]) == 2
    assert "bogus" in capsys.readouterr().err


def test_config_rejects_malformed_json(tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text("{not json")
    assert run_cli(["simulate", "--config", str(cfg)]) == 2


@pytest.mark.parametrize(
    "mutation",
    [
        {"model": None},                      # model is mandatory
        {"alpha": "1", "beta": "1"},          # weights not normalized
        {"omega0": "0"},                      # hopping must be positive
        {"omega0": "-1"},
        {"omega1": "-0.5"},
        {"t-max": "-1"},
        {"t-steps": "0"},
        {"phi": None},                        # needed when phi-steps == 0
        {"dt": "0", "method": "rk4"},
    ],
)
def test_simulate_input_errors(tmp_path, mutation):
    out = tmp_path / "x.csv"
    assert run_cli(simulate_args(out, **mutation)) == 2


def test_bad_method_choice_is_argparse_error(tmp_path):
    with pytest.raises(SystemExit) as excinfo:
        run_cli(simulate_args(tmp_path / "x.csv", method="euler"))
    assert excinfo.value.code == 2


def test_missing_subcommand_is_argparse_error():
    with pytest.raises(SystemExit):
        run_cli([])


def test_decompose_csv(tmp_path):
    out = tmp_path / "dec.csv"
    assert run_cli(
        ["decompose", "--model", "B", "--omega0", "1", "--omega1", "1",
         "--t-max", "6", "--t-steps", "24", "--out", str(out)]
    ) == 0
    rows = read_rows(out)
    assert len(rows) == 25
    assert list(rows[0]) == ["model", "omega0", "omega1", "t", "A", "B", "C", "S", "residual"]
    for row in rows:
        a, b, c, s = (float(row[k]) for k in ("A", "B", "C", "S"))
        np.testing.assert_allclose(b, a, atol=1e-12)
        np.testing.assert_allclose(c, 2.0 * a, atol=1e-12)
        assert abs(s) < 1e-12
        assert float(row["residual"]) < 1e-10


def test_decompose_reports_ansatz_failure(tmp_path, capsys, monkeypatch):
    monkeypatch.setattr(analysis, "RESIDUAL_LIMIT", 1e-22)
    out = tmp_path / "dec.csv"
    code = run_cli(
        ["decompose", "--model", "A", "--omega0", "1", "--omega1", "1",
         "--t-max", "3", "--t-steps", "6", "--out", str(out)]
    )
    assert code == 4
    assert "residual" in capsys.readouterr().err
    # partial results still land in the file for inspection
    assert len(read_rows(out)) == 7


def test_eigen_three_site_closed_forms(tmp_path):
    out = tmp_path / "eig.csv"
    assert run_cli(
        ["eigen", "--model", "A", "--omega0", "1", "--omega1", "1", "--out", str(out)]
    ) == 0
    rows = read_rows(out)
    assert len(rows) == 12
    assert [int(r["index"]) for r in rows] == list(range(12))
    for row in rows:
        assert row["closed_form"] != ""
        np.testing.assert_allclose(
            float(row["eigenvalue"]), float(row["closed_form"]), atol=1e-10
        )
    values = [float(r["eigenvalue"]) for r in rows]
    assert values == sorted(values)


def test_eigen_four_site_closed_forms(tmp_path):
    out = tmp_path / "eig.csv"
    assert run_cli(
        ["eigen", "--model", "C", "--omega0", "2", "--omega1", "3", "--out", str(out)]
    ) == 0
    rows = read_rows(out)
    assert len(rows) == 16
    got = [float(r["eigenvalue"]) for r in rows]
    expected = np.sort(np.repeat([-6.0, -3.0, -2.0, -1.0, 1.0, 2.0, 3.0, 6.0], 2))
    np.testing.assert_allclose(got, expected, atol=1e-10)
    for row in rows:
        np.testing.assert_allclose(
            float(row["eigenvalue"]), float(row["closed_form"]), atol=1e-10
        )


def test_eigen_symmetric_model_has_no_closed_column(tmp_path):
    out = tmp_path / "eig.csv"
    assert run_cli(
        ["eigen", "--model", "B", "--omega0", "1", "--omega1", "1", "--out", str(out)]
    ) == 0
    for row in read_rows(out):
        assert row["closed_form"] == ""


def test_eigen_allows_zero_hopping(tmp_path):
    # pure coupling limit: eight dark levels and a +-1 pair, each doubled
    out = tmp_path / "eig.csv"
    assert run_cli(
        ["eigen", "--model", "A", "--omega0", "0", "--omega1", "1", "--out", str(out)]
    ) == 0
    got = [float(r["eigenvalue"]) for r in read_rows(out)]
    np.testing.assert_allclose(got, [-1, -1] + [0.0] * 8 + [1, 1], atol=1e-12)


def test_validate_passes(tmp_path):
    out = tmp_path / "report.txt"
    assert run_cli(["validate", "--out", str(out)]) == 0
    text = out.read_text()
    assert "overall: pass" in text
    assert "FAIL" not in text


def test_validate_absurd_tolerance_fails(capsys):
    assert run_cli(["validate", "--tolerance", "1e-30"]) == 1
    captured = capsys.readouterr().out
    assert "overall: FAIL" in captured


def test_validate_catches_coupling_sign_mutation(capsys, monkeypatch):
    # an injected sign error in the coupling term must trip the suite
    original = models.interaction_hamiltonian
    monkeypatch.setattr(
        models, "interaction_hamiltonian", lambda model, w1: -original(model, w1)
    )
    assert run_cli(["validate"]) == 1
    captured = capsys.readouterr().out
    failing = [line for line in captured.splitlines() if "FAIL" in line]
    assert any("hamiltonian-transcription" in line for line in failing)
    assert any("block-structure" in line for line in failing)
    assert any("closed-form" in line for line in failing)


def test_plot_requires_out(capsys):
    args = ["simulate", "--model", "A", "--omega0", "1", "--omega1", "1",
            "--alpha", "1", "--beta", "0", "--phi", "0",
            "--t-max", "1", "--t-steps", "2", "--plot"]
    assert run_cli(args) == 2
    assert "plot" in capsys.readouterr().err


def test_simulate_plot_file(tmp_path):
    out = tmp_path / "run.csv"
    assert run_cli(simulate_args(out) + ["--plot"]) == 0
    figure = tmp_path / "run.png"
    assert figure.exists()
    assert figure.stat().st_size > 0


def test_simulate_plot_heatmap(tmp_path):
    out = tmp_path / "sweep.csv"
    args = simulate_args(
        out, alpha=repr(ROOT2), beta=repr(ROOT2), phi=None,
        **{"t-max": "2", "t-steps": "4", "phi-steps": "6"},
    )
    assert run_cli(args + ["--plot"]) == 0
    assert (tmp_path / "sweep.png").exists()


def test_decompose_plot_file(tmp_path):
    out = tmp_path / "dec.csv"
    assert run_cli(
        ["decompose", "--model", "A", "--omega0", "1", "--omega1", "1",
         "--t-max", "3", "--t-steps", "12", "--out", str(out), "--plot"]
    ) == 0
    assert (tmp_path / "dec.png").exists()
