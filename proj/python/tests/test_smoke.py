import csv
import math
import pathlib
from urllib.parse import unquote

import pytest

import coloexp

ROOT = pathlib.Path(__file__).resolve().parents[2]
THREE_SITES = ROOT / "tests" / "fixtures" / "three_sites"
TOY = ROOT / "data" / "toy_two_zone"


def test_finance_helpers():
    a = coloexp.annuitize(710.0, 0.025, 30)
    pv = sum(1.025 ** -k for k in range(1, 31))
    assert a == pytest.approx(710.0 / pv, rel=1e-12)
    assert coloexp.capital_recovery_factor(0.025, 30) * 710.0 == pytest.approx(a)


def test_validate_and_errors(tmp_path):
    assert coloexp.validate(THREE_SITES) == []
    with pytest.raises(coloexp.IoError):
        coloexp.Problem(tmp_path)
    with pytest.raises(coloexp.DataError):
        coloexp.Problem(THREE_SITES, mode="hybrid")


def test_solve_metrics_and_reports(tmp_path):
    p = coloexp.Problem(THREE_SITES)
    r = p.solve()
    assert r.optimal and r.status == "optimal"
    values = r.values()
    assert len(values) == p.num_variables
    assert len(r.duals()) == p.num_rows
    m = r.metrics()
    assert m["total_cost"] == pytest.approx(r.objective, rel=1e-9)
    assert sum(m["costs"].values()) == pytest.approx(r.objective, rel=1e-9)
    r.write_reports(tmp_path)
    for name in ("capacity.csv", "dispatch.csv", "metrics.csv", "duals.csv", "costs.csv"):
        assert (tmp_path / name).exists()


def test_forced_storage_dual_matches_bump():
    base = coloexp.Problem(TOY, cost_case="mid", forced_battery_mw=7500.0).solve()
    bumped = coloexp.Problem(TOY, cost_case="mid", forced_battery_mw=7510.0).solve()
    fd = (bumped.objective - base.objective) / 10.0
    assert base.dual("sys/forced_battery") == pytest.approx(fd, rel=1e-3)
    assert base.metrics()["marginal_value_of_storage"] == pytest.approx(-base.dual("sys/forced_battery"))


def test_fixed_mode_ratios():
    m = coloexp.Problem(TOY, mode="fixed", cost_case="low", forced_battery_mw=3750.0).solve().metrics()
    for site in m["ratios"].values():
        if site["pv_grid"] is not None:
            assert site["pv_grid"] == pytest.approx(1.3, abs=1e-6)
        if site["wind_grid"] is not None:
            assert site["wind_grid"] == pytest.approx(1.0, abs=1e-6)


def test_matrix_from_manifest(tmp_path):
    manifest = tmp_path / "m.csv"
    manifest.write_text(
        "run_id,mode,cost_case,forced_battery_mw\n1,colocated,low,3750\n2,fixed,low,3750\n"
    )
    rows = coloexp.run_matrix(TOY, tmp_path / "runs", manifest=manifest, workers=2)
    assert [r["run_id"] for r in rows] == [1, 2]
    assert all(r["ok"] for r in rows)
    assert rows[1]["objective"] >= rows[0]["objective"]
    with open(tmp_path / "runs" / "summary.csv", newline="") as f:
        assert len(list(csv.DictReader(f))) == 2


highspy = pytest.importorskip("highspy")


def solve_with_highs(mps):
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.readModel(str(mps))
    h.run()
    assert h.getModelStatus() == highspy.HighsModelStatus.kOptimal
    return h


def test_highs_agrees_on_exported_mps(tmp_path):
    p = coloexp.Problem(THREE_SITES)
    ours = p.solve()
    p.export_mps(tmp_path / "model.mps")
    h = solve_with_highs(tmp_path / "model.mps")
    theirs = h.getInfo().objective_function_value
    assert ours.objective == pytest.approx(theirs, rel=1e-7)


def test_imported_highs_solution_verifies(tmp_path):
    p = coloexp.Problem(THREE_SITES)
    ours = p.solve()
    p.export_mps(tmp_path / "model.mps")
    h = solve_with_highs(tmp_path / "model.mps")
    lp = h.getLp()
    sol = h.getSolution()
    with open(tmp_path / "sol.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["kind", "id", "value"])
        for name, v in zip(lp.col_names_, sol.col_value):
            w.writerow(["var", unquote(name), repr(v)])
        # HiGHS row duals already follow d(objective)/d(rhs) for a minimisation
        for name, y in zip(lp.row_names_, sol.row_dual):
            w.writerow(["row", unquote(name), repr(y)])
    imported = p.import_solution(tmp_path / "sol.csv")
    assert imported.optimal, imported.message
    assert imported.objective == pytest.approx(ours.objective, rel=1e-7)
    for row, y in ours.duals().items():
        if row.startswith("sys/balance"):
            assert math.isclose(imported.dual(row), y, rel_tol=1e-5, abs_tol=1e-6 * max(1.0, abs(y)))
