"""Command line behavior, frozen through the programmatic entry point."""

import json

import pytest

from lockstep import cli
from lockstep.core import parse_problem

from test_simulation import KBO_TEXT, SAT_TEXT


@pytest.fixture
def unsat_file(tmp_path):
    f = tmp_path / "unsat.prob"
    f.write_text(KBO_TEXT)
    return str(f)


@pytest.fixture
def sat_file(tmp_path):
    f = tmp_path / "sat.prob"
    f.write_text(SAT_TEXT)
    return str(f)


def test_sup_reports_the_derivation_and_exits_one_on_unsat(unsat_file, capsys):
    assert cli.main(["sup", unsat_file]) == 1
    out = capsys.readouterr().out
    assert "factoring" in out
    assert "unsatisfiable" in out


def test_sup_prints_the_model_on_sat(sat_file, capsys):
    assert cli.main(["sup", sat_file]) == 0
    out = capsys.readouterr().out
    assert "satisfiable" in out
    assert "P(b)" in out


def test_scl_logs_rules_and_learned_clauses(unsat_file, capsys):
    assert cli.main(["scl", unsat_file]) == 1
    out = capsys.readouterr().out
    assert "backtrack" in out
    assert "learned" in out
    assert "unsatisfiable" in out


def test_simulate_prints_rounds_and_verification(unsat_file, capsys):
    assert cli.main(["simulate", unsat_file]) == 1
    out = capsys.readouterr().out
    assert "refute" in out
    assert "verification: ok" in out


def test_simulate_json_emits_a_full_trace(unsat_file, capsys):
    assert cli.main(["simulate", "--json", unsat_file]) == 1
    trace = json.loads(capsys.readouterr().out)
    assert trace["outcome"] == "unsatisfiable"
    assert trace["ok"] is True


def test_simulate_strict_escalates_verification_failures(unsat_file, capsys, monkeypatch):
    real = cli.lockstep_verify

    class Doctored:
        def __init__(self, inner):
            self._inner = inner
            self.ok = False

        def __getattr__(self, name):
            return getattr(self._inner, name)

        def failures(self):
            return ["boundary 1 (pair index 0): trail-ascends: forced for the test"]

    monkeypatch.setattr(cli, "lockstep_verify", lambda *a, **k: Doctored(real(*a, **k)))
    assert cli.main(["simulate", "--strict", unsat_file]) == 2
    assert cli.main(["simulate", unsat_file]) == 1   # without --strict only the verdict counts


def test_simulate_strict_is_quiet_on_a_clean_run(sat_file, capsys):
    assert cli.main(["simulate", "--strict", sat_file]) == 0


def test_oracle_agrees_with_the_engines(unsat_file, sat_file, capsys):
    assert cli.main(["oracle", unsat_file]) == 1
    assert cli.main(["oracle", sat_file]) == 0
    out = capsys.readouterr().out
    assert "P(b)" in out


def test_check_accepts_a_wellformed_problem(unsat_file, capsys):
    assert cli.main(["check", unsat_file]) == 0
    assert "ok" in capsys.readouterr().out


def test_check_rejects_a_broken_problem(tmp_path, capsys):
    f = tmp_path / "broken.prob"
    f.write_text("order: kbo\nprec: P\nclause: P | Q\n")
    assert cli.main(["check", str(f)]) == 2
    assert capsys.readouterr().err != ""


def test_missing_file_is_an_error(capsys):
    assert cli.main(["sup", "/no/such/file.prob"]) == 2
    assert "error" in capsys.readouterr().err


def test_gen_is_deterministic_and_parseable(capsys):
    assert cli.main(["gen", "--seed", "3"]) == 0
    first = capsys.readouterr().out
    assert cli.main(["gen", "--seed", "3"]) == 0
    second = capsys.readouterr().out
    assert first == second
    parse_problem(first)


def test_gen_writes_to_a_file(tmp_path, capsys):
    out = tmp_path / "generated.prob"
    assert cli.main(["gen", "--seed", "1", "--out", str(out)]) == 0
    parse_problem(out.read_text())


def test_fuzz_smoke(capsys):
    assert cli.main(["fuzz", "--count", "5"]) == 0
    out = capsys.readouterr().out
    assert "5" in out
    assert "agreed" in out


def test_usage_error_exits_two():
    with pytest.raises(SystemExit) as e:
        cli.main([])
    assert e.value.code == 2
