import json
import math
from pathlib import Path

import pytest

from eur_hawking import AxisSpec, BellParams, PRESETS, SweepSpec, parse_sweep_config, run_sweep
from eur_hawking.cli import main
from eur_hawking.sweeps import ConfigError, format_float


def small_spec(points=5):
    return SweepSpec(
        scenario="dp_vs_T",
        bell=BellParams(1, -1, 1),
        fixed={"p": 0.1},
        sweep_axis=AxisSpec("T_over_omega", 0.0, 2.0, points),
    )


def read(path: Path) -> str:
    return path.read_text(encoding="utf-8")


def test_run_sweep_writes_csv_and_manifest(tmp_path):
    manifest = run_sweep(small_spec(), tmp_path, figure_id="demo")
    csv_path = tmp_path / manifest.csv_path
    assert csv_path.exists()
    lines = read(csv_path).splitlines()
    assert lines[0] == "x,U_analytic,U_numeric,Ub_analytic,Ub_numeric,QD,mixedness,Psucc,status"
    assert len(lines) == 6
    assert all(line.endswith("ok") for line in lines[1:])
    payload = json.loads(read(tmp_path / "demo.manifest.json"))
    assert payload["columns"][0] == "x"
    assert payload["rows"] == 5
    assert payload["axes"]["x"]["name"] == "T_over_omega"


def test_run_sweep_is_byte_reproducible(tmp_path):
    run_sweep(small_spec(), tmp_path / "one", figure_id="demo")
    run_sweep(small_spec(), tmp_path / "two", figure_id="demo")
    assert read(tmp_path / "one/demo.csv") == read(tmp_path / "two/demo.csv")


def test_parallel_matches_serial(tmp_path):
    spec = small_spec(points=9)
    run_sweep(spec, tmp_path / "serial", figure_id="demo", jobs=1)
    run_sweep(spec, tmp_path / "parallel", figure_id="demo", jobs=3)
    assert read(tmp_path / "serial/demo.csv") == read(tmp_path / "parallel/demo.csv")


def test_degenerate_two_point_sweep(tmp_path):
    spec = SweepSpec(
        scenario="dp_vs_p",
        bell=BellParams(0.3, 0.3, 0.3),
        fixed={"T_over_omega": 1.0},
        sweep_axis=AxisSpec("p", 0.4, 0.4, 2),
    )
    run_sweep(spec, tmp_path, figure_id="flat")
    lines = read(tmp_path / "flat.csv").splitlines()
    assert len(lines) == 3
    assert lines[1] == lines[2]


def test_second_axis_grid(tmp_path):
    spec = SweepSpec(
        scenario="qwm_dp",
        bell=BellParams(0.7, 0.6, -0.8),
        fixed={"T_over_omega": 1.0},
        sweep_axis=AxisSpec("p", 0.0, 1.0, 3),
        second_axis=AxisSpec("gamma", values=(0.2, 0.8)),
    )
    manifest = run_sweep(spec, tmp_path, figure_id="grid")
    lines = read(tmp_path / "grid.csv").splitlines()
    assert lines[0].startswith("x,y,")
    assert manifest.rows == 6
    first = lines[1].split(",")
    assert first[0] == "0" and first[1] == "0.2"


def test_gammat_axis_converts_to_strength(tmp_path):
    spec = SweepSpec(
        scenario="pd_vs_gammat",
        bell=BellParams(1, -1, 1),
        fixed={"T_over_omega": 2.0},
        sweep_axis=AxisSpec("Gamma_t", 0.0, 1.0, 3),
    )
    run_sweep(spec, tmp_path, figure_id="gt")
    rows = [line.split(",") for line in read(tmp_path / "gt.csv").splitlines()[1:]]
    from eur_hawking import analytic_u_pd, hawking_coeffs

    a = hawking_coeffs(1.0, 2.0)[0]
    for row in rows:
        gamma_t = float(row[0])
        expected = analytic_u_pd(BellParams(1, -1, 1), -math.expm1(-gamma_t), a)
        assert abs(float(row[1]) - expected) < 1e-9


def test_spec_validation_errors():
    with pytest.raises(ConfigError):
        SweepSpec(
            scenario="nope",
            bell=BellParams(0, 0, 0),
            sweep_axis=AxisSpec("p", 0, 1, 5),
        ).validate()
    with pytest.raises(ConfigError):
        SweepSpec(
            scenario="dp_vs_p",
            bell=BellParams(1, 1, 1),  # unphysical, must fail before computing
            fixed={"T_over_omega": 1.0},
            sweep_axis=AxisSpec("p", 0, 1, 5),
        ).validate()
    with pytest.raises(ConfigError):
        SweepSpec(
            scenario="dp_vs_p",
            bell=BellParams(0, 0, 0),
            fixed={"T_over_omega": 1.0},
            sweep_axis=AxisSpec("p", 0, 2, 5),  # outside [0, 1]
        ).validate()
    with pytest.raises(ConfigError):
        SweepSpec(
            scenario="dp_vs_p",
            bell=BellParams(0, 0, 0),
            fixed={"T_over_omega": 1.0},
            sweep_axis=AxisSpec("p", 0, 1, 1),  # too few points
        ).validate()
    with pytest.raises(ConfigError):
        SweepSpec(
            scenario="dp_vs_p",
            bell=BellParams(0, 0, 0),
            sweep_axis=AxisSpec("p", 0, 1, 5),  # missing T_over_omega
        ).validate()


def test_quasi_physical_preset_rows_are_flagged(tmp_path):
    # fig8 family parameters sit outside the positivity tetrahedron: the
    # preset runs non-strict and every affected row reports nonpositive_state
    spec = SweepSpec(
        scenario="qwm_dp",
        bell=BellParams(0.9, -0.8, 0.6),
        fixed={"T_over_omega": 1.0},
        sweep_axis=AxisSpec("p", 0.0, 0.1, 3),
        second_axis=AxisSpec("gamma", values=(0.2,)),
        strict_physicality=False,
    )
    run_sweep(spec, tmp_path, figure_id="quasi")
    lines = read(tmp_path / "quasi.csv").splitlines()[1:]
    # at p = 0 the post-measurement matrix still has a negative eigenvalue;
    # by p = 0.05 the noise has restored positivity
    assert lines[0].endswith("nonpositive_state")
    assert lines[1].endswith("ok") and lines[2].endswith("ok")
    # strict mode refuses the same parameters up front
    with pytest.raises(ConfigError):
        SweepSpec(
            scenario="qwm_dp",
            bell=BellParams(0.9, -0.8, 0.6),
            fixed={"T_over_omega": 1.0},
            sweep_axis=AxisSpec("p", 0.0, 0.1, 3),
        ).validate()


def test_all_presets_validate():
    for name, spec in PRESETS.items():
        spec.validate()
    assert set(PRESETS) == {
        "fig1a", "fig1b", "fig2a", "fig2b", "fig3a", "fig3b", "fig4a", "fig4b",
        "fig5a", "fig5b", "fig7", "fig8a", "fig8b", "fig88a", "fig88b", "fig9a", "fig9b",
    }


def test_format_float_twelve_significant_digits():
    assert format_float(0.5) == "0.5"
    assert format_float(1.2320226537470045) == "1.23202265375"
    assert format_float(1.0) == "1"


def test_parse_sweep_config_roundtrip(tmp_path):
    text = """
# demo sweep
scenario   = qwm_pd
bell       = 0.7, 0.6, -0.8
fixed      = q: 0.6, omega: 1
sweep_axis = T_over_omega, 0, 3, 7
second_axis = gamma, values: 0.2 0.4
outputs    = U, Psucc
"""
    spec = parse_sweep_config(text)
    assert spec.scenario == "qwm_pd"
    assert spec.bell == BellParams(0.7, 0.6, -0.8)
    assert spec.fixed == {"q": 0.6, "omega": 1.0}
    assert spec.sweep_axis.points == 7
    assert spec.second_axis.values == (0.2, 0.4)
    assert spec.outputs == ("U", "Psucc")
    manifest = run_sweep(spec, tmp_path, figure_id="cfg")
    header = read(tmp_path / "cfg.csv").splitlines()[0]
    assert header == "x,y,U_analytic,U_numeric,Psucc,status"
    assert manifest.rows == 14


def test_parse_sweep_config_errors():
    with pytest.raises(ConfigError):
        parse_sweep_config("bell = 1, -1, 1")  # missing scenario and axis
    with pytest.raises(ConfigError):
        parse_sweep_config("scenario = dp_vs_p\nbell = 1, -1\nsweep_axis = p, 0, 1, 5")
    with pytest.raises(ConfigError):
        parse_sweep_config(
            "scenario = dp_vs_p\nbell = 0,0,0\nsweep_axis = p, 0, 1, 5\nmystery = 3"
        )


def test_cli_run_eval_and_exit_codes(tmp_path, capsys):
    assert main(["run", "--preset", "fig1a", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "fig1a.csv").exists()
    capsys.readouterr()

    assert main([
        "eval", "--c1", "1", "--c2", "-1", "--c3", "1", "--noise", "dp",
        "--strength", "0", "--temperature", "0", "--omega", "1",
        "--csv", str(tmp_path / "point.csv"),
    ]) == 0
    out = capsys.readouterr().out
    assert "U_numeric: 0" in out and "QD: 1" in out
    assert (tmp_path / "point.csv").read_text(encoding="utf-8").count("\n") == 2

    # unphysical Bell parameters: config error, exit 2, no traceback
    assert main([
        "eval", "--c1", "1", "--c2", "1", "--c3", "1", "--noise", "dp",
        "--strength", "0", "--temperature", "0",
    ]) == 2
    assert "config error" in capsys.readouterr().err


def test_cli_config_file_and_list_presets(tmp_path, capsys):
    config = tmp_path / "sweep.cfg"
    config.write_text(
        "scenario = dp_vs_p\nbell = 1, -1, 1\nfixed = T_over_omega: 1\n"
        "sweep_axis = p, 0, 1, 4\n",
        encoding="utf-8",
    )
    assert main(["run", "--config", str(config), "--out", str(tmp_path)]) == 0
    assert (tmp_path / "sweep.csv").exists()
    capsys.readouterr()

    bad = tmp_path / "bad.cfg"
    bad.write_text("scenario = dp_vs_p\n", encoding="utf-8")
    assert main(["run", "--config", str(bad), "--out", str(tmp_path)]) == 2
    capsys.readouterr()

    assert main(["list-presets"]) == 0
    out = capsys.readouterr().out
    assert "fig1a" in out and "fig9b" in out
