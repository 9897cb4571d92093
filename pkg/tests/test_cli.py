import hashlib
import json

import pytest

from surfcover.cli import EXIT_ACCEPTANCE, EXIT_IO, EXIT_OK, EXIT_RESOURCE, EXIT_WORD, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_mednykh(capsys):
    code, out = run(capsys, "mednykh", "--n", "3")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["count"] == 486
    assert data["version"]


def test_mednykh_enumerate_route(capsys):
    _, out = run(capsys, "mednykh", "--n", "3", "--route", "enumerate")
    assert json.loads(out)["count"] == 486


def test_oracle_enumerate(capsys):
    _, out = run(capsys, "oracle", "--word", "a", "--n", "2", "--route", "enumerate")
    assert json.loads(out)["value"] == "1/1"


def test_oracle_routes_agree(capsys):
    _, exact = run(capsys, "oracle", "--word", "ab", "--n", "3")
    _, resolved = run(capsys, "oracle", "--word", "ab", "--n", "3", "--route", "resolution")
    _, formula = run(capsys, "oracle", "--word", "ab", "--n", "3", "--route", "formula")
    assert json.loads(exact)["value"] == json.loads(resolved)["value"] == "10/9"
    assert json.loads(formula)["value"] == pytest.approx(10 / 9, rel=1e-9)


def test_surface_stats(capsys):
    _, out = run(capsys, "surface", "--word", "abc", "--stats")
    s = json.loads(out)["stats"]
    assert (s["v"], s["e"], s["f"], s["d"], s["chi"]) == (3, 3, 0, 6, 0)


def test_surface_predicates(capsys):
    _, out = run(capsys, "surface", "--word", "abAB", "--predicates")
    p = json.loads(out)["predicates"]
    assert p["boundary_reduced"] and not p["eps_adapted"]


def test_zeta_csv(capsys):
    _, out = run(capsys, "zeta", "--n", "4", "--table", "--csv")
    lines = out.strip().splitlines()
    assert lines[0] == "excess,n,s,zeta"
    assert lines[-1] == "17/36,4,2,89/36"


def test_enemb_three_routes(capsys):
    _, out = run(capsys, "enemb", "--word", "a", "--n", "3")
    data = json.loads(out)
    assert data["exact_routes_agree"]
    assert data["formula_relative_error"] < 1e-9


def test_xstar_verify(capsys):
    _, out = run(capsys, "xstar", "--word", "a", "--n", "3", "--verify")
    data = json.loads(out)
    assert data["xstar"] == f"{data['enumeration']}/1"


def test_ovb_is_deterministic(capsys):
    _, first = run(capsys, "ovb", "--word", "ab", "--n", "3", "--seed", "11", "--trace")
    _, second = run(capsys, "ovb", "--word", "ab", "--n", "3", "--seed", "11", "--trace")
    assert hashlib.sha256(first.encode()).digest() == hashlib.sha256(second.encode()).digest()


def test_resolve_jobs_do_not_change_output(capsys):
    _, serial = run(capsys, "resolve", "--word", "ab", "--max-n", "3", "--check")
    _, parallel = run(capsys, "resolve", "--word", "ab", "--max-n", "3", "--check", "--jobs", "2")
    assert serial == parallel
    assert all(r["ok"] for r in json.loads(serial)["identity"])


def test_resolve_cache(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("SURFCOVER_CACHE_DIR", str(tmp_path))
    _, first = run(capsys, "resolve", "--word", "a", "--max-n", "2")
    assert list(tmp_path.iterdir())
    _, second = run(capsys, "resolve", "--word", "a", "--max-n", "2")
    assert first == second


def test_trace_geometric_side(capsys, tmp_path):
    spectrum = tmp_path / "spec.csv"
    spectrum.write_text("# test\nlength,primitive_length,multiplicity\n1.0,1.0,1\n2.0,1.0,1\n")
    disc = tmp_path / "disc.csv"
    disc.write_text("length,discrepancy\n1.0,1\n")
    _, out = run(capsys, "trace", "--spectrum", str(spectrum), "--T", "4", "--discrepancy", str(disc))
    data = json.loads(out)
    assert data["primitive_sum"] > 0 and data["missing_discrepancies"] == 0


def test_trace_pipeline(capsys):
    _, out = run(capsys, "trace", "--n", "100")
    assert json.loads(out)["label"].startswith("DEMONSTRATION")


def test_exit_codes(capsys, tmp_path):
    assert main(["oracle", "--word", "xyz", "--n", "2"]) == EXIT_WORD
    assert main(["oracle", "--word", "a", "--n", "9"]) == EXIT_RESOURCE
    assert main(["trace", "--spectrum", str(tmp_path / "missing.csv"), "--T", "2"]) == EXIT_IO
    with pytest.raises(SystemExit) as exc:
        main(["ovb", "--word", "a", "--eps", "1/4"])
    assert exc.value.code == 2


def test_accept_reports_failure_honestly(capsys):
    code, out = run(capsys, "accept", "--only", "2")
    data = json.loads(out)
    assert code == EXIT_ACCEPTANCE
    assert data["all_passed"] is False
    assert "seconds" not in data["rows"][0]
