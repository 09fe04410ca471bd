import csv
import json
import subprocess
import sys

import pytest

from qrcs.cli import main
from qrcs.cost_models import CostParams
from qrcs.crossover import COARSE_CAVEAT, runtime_curves
from qrcs.mesh import MeshTopology, build_mesh, sparsity_parameter
from qrcs.precision import CAVEAT_DB_CONVENTION
from qrcs.report import Scenario, ScenarioError, emit_csv, run_scenario
from qrcs.resources import CAVEAT_NO_QEC, CAVEAT_SINGLE_POINT_FIT


def test_anchor_scenario():
    rep = run_scenario(Scenario(name="anchor", outputs=("crossover", "estimate")))
    assert rep.ok
    assert rep.results["crossover"]["n_star_exact"] == pytest.approx(5.74e9, rel=0.01)
    est = rep.results["estimate"]
    assert est["steps"] == pytest.approx(1.8e29, rel=1e-12)
    assert est["years"] == pytest.approx(1.4e17, rel=0.05)
    assert list(rep.results) == ["crossover", "estimate"]
    for caveat in (COARSE_CAVEAT, CAVEAT_SINGLE_POINT_FIT, CAVEAT_NO_QEC):
        assert caveat in rep.caveats


def test_topology_sets_effective_d():
    s = Scenario.from_dict({"cost_params": {"d": 11}, "topology": {"kind": "square2d", "m": 6}, "outputs": ["crossover"]})
    rep = run_scenario(s)
    assert rep.effective["requested_d"] == 11
    assert rep.effective["effective_d"] == 7
    assert rep.results["crossover"]["n_star_exact"] == pytest.approx(5.74e9, rel=0.01)


def test_empty_outputs():
    rep = run_scenario(Scenario())
    assert rep.results == {} and rep.caveats == [] and rep.ok
    d = rep.as_dict()
    assert d["scenario"]["name"] == "scenario"
    assert "caveats" in d


def test_kappa_law_applied():
    s = Scenario.from_dict({"cost_params": {"n": 1e6}, "kappa_law": {"mode": "scherer3d", "value": None}})
    assert run_scenario(s).effective["kappa"] == pytest.approx(1e4, rel=1e-12)


def test_validation_names_field():
    with pytest.raises(ScenarioError, match="cost_params: epsilon"):
        Scenario.from_dict({"cost_params": {"epsilon": 1.5}})
    with pytest.raises(ScenarioError, match="topology"):
        Scenario.from_dict({"topology": {"kind": "square2d", "m": 1}})
    with pytest.raises(ScenarioError, match="outputs"):
        Scenario.from_dict({"outputs": ["plot"]})
    with pytest.raises(ScenarioError, match="unknown scenario field"):
        Scenario.from_dict({"colour": "red"})


def test_artifact_error_reported():
    rep = run_scenario(Scenario(outputs=("sparsity", "crossover")))
    assert "sparsity" in rep.errors and "crossover" in rep.results
    assert not rep.ok


def test_scenario_roundtrip():
    s = Scenario.from_dict({"name": "x", "topology": {"kind": "tet5", "m": 3}, "outputs": ["sparsity"], "variant": "CJS_CKS"})
    assert Scenario.from_dict(s.to_dict()) == s


def _read(path):
    with open(path, newline="") as fh:
        return fh.read()


def test_emit_csv_series(tmp_path):
    series = runtime_curves(CostParams(n=10, d=7, kappa=1e4, epsilon=1e-2), 10, 1000, 3)
    path = emit_csv("curves", series, tmp_path / "c.csv")
    text = _read(path)
    assert text.startswith("N,t_cg,t_cjs\n")
    assert "\r" not in text and text.endswith("\n")
    rows = list(csv.reader(text.splitlines()))
    assert len(rows) == 4
    assert rows[1][0] == "1.0000000000000000e+01"
    assert float(rows[2][1]) == series.t_cg[1]


def test_emit_csv_sparsity(tmp_path):
    rep = sparsity_parameter(build_mesh(MeshTopology("square2d", 4)))
    text = _read(emit_csv("sparsity", rep, tmp_path / "s.csv"))
    assert text == "nonzeros,edges\n4,12\n7,12\n"


def test_emit_csv_unwritable(tmp_path):
    with pytest.raises(OSError, match="cannot write CSV to"):
        emit_csv("curves", [], tmp_path / "missing" / "c.csv")
    with pytest.raises(ValueError):
        emit_csv("plot", [], tmp_path / "c.csv")


def test_cli_precision_csv(tmp_path, capsys):
    assert main(["precision", "--out", str(tmp_path)]) == 0
    table = _read(tmp_path / "table_a1.csv").splitlines()
    assert table[0] == "epsilon,delta_db,range_error_pct,use_case"
    assert table[3].endswith(",Route planning")
    fig = _read(tmp_path / "fig_a2.csv").splitlines()
    assert fig[0] == "epsilon,algorithm,N,t"
    assert {line.split(",")[1] for line in fig[1:]} == {"CG", "CJS"}
    assert _read(tmp_path / "fig_a1.csv").startswith("epsilon,delta_db\n")
    out = capsys.readouterr().out
    assert "Route planning" in out and CAVEAT_DB_CONVENTION in out


def test_cli_no_caveats_text_only(monkeypatch, capsys):
    monkeypatch.setenv("QRCS_NO_CAVEATS", "1")
    assert main(["crossover"]) == 0
    assert COARSE_CAVEAT not in capsys.readouterr().out
    assert main(["crossover", "--format", "json"]) == 0
    assert COARSE_CAVEAT in json.loads(capsys.readouterr().out)["caveats"]


def test_cli_flags(capsys):
    assert main(["crossover", "--epsilon", "0.1", "--format", "json"]) == 0
    res = json.loads(capsys.readouterr().out)["results"]["crossover"]
    assert res["n_star_exact"] == pytest.approx(9.379e7, rel=1e-3)
    assert main(["sparsity", "--topology", "cubic3d", "--mesh-size", "4", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["results"]["sparsity"]["d"] == 33


def test_cli_bad_input(capsys):
    assert main(["crossover", "--epsilon", "2"]) == 2
    assert "epsilon" in capsys.readouterr().err


def test_cli_scenario_file(tmp_path, capsys):
    scenario_data = {"name": "file", "cost_params": {"epsilon": 0.1}, "outputs": ["crossover"]}
    path = tmp_path / "s.json"
    path.write_text(json.dumps(scenario_data))
    assert main(["scenario", str(path), "--format", "json"]) == 0
    first = json.loads(capsys.readouterr().out)
    assert first["scenario"]["cost_params"]["epsilon"] == 0.1
    assert main(["scenario", str(path), "--epsilon", "0.01", "--outputs", "crossover", "estimate", "--format", "json"]) == 0
    second = json.loads(capsys.readouterr().out)
    assert second["results"]["crossover"]["n_star_exact"] == pytest.approx(5.74e9, rel=0.01)
    assert "estimate" in second["results"]


def test_cli_artifact_failure_exit_code(tmp_path, capsys):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"outputs": ["crossover", "sparsity"]}))
    assert main(["scenario", str(path)]) == 1
    assert "sparsity" in capsys.readouterr().err


def test_determinism(tmp_path):
    scenario_data = {
        "name": "full",
        "topology": {"kind": "triangular2d", "m": 5},
        "outputs": ["crossover", "curves", "table_a1", "fig_a2", "estimate", "sparsity"],
    }
    path = tmp_path / "s.json"
    path.write_text(json.dumps(scenario_data))
    outputs = []
    for run in ("a", "b"):
        proc = subprocess.run(
            [sys.executable, "-m", "qrcs", "scenario", str(path), "--format", "json", "--out", str(tmp_path / run)],
            capture_output=True, check=True,
        )
        outputs.append(proc.stdout)
    assert outputs[0] == outputs[1]
    names = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert names == sorted(p.name for p in (tmp_path / "b").iterdir())
    assert len(names) == 6
    for name in names:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
