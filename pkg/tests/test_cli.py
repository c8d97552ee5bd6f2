import csv
import io
import json
from fractions import Fraction as F
from importlib.resources import files

import pytest

import boolquery.regress as regress
from boolquery.cli import EXIT_CAP, EXIT_OK, EXIT_REGRESSION, EXIT_USAGE, SCHEMA, main, parse_rational
from boolquery.core import BooleanFunction, zoo
from boolquery.funcspec import SpecError, function_from_spec, parse_spec, spec_arity

DATA = files("boolquery") / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def as_q(s):
    return F(s)


def test_measure_maj3_all(capsys):
    code, out, _ = run(capsys, "measure", "MAJ(3)", "--p", "1/2", "--all")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["schema"] == SCHEMA
    v = {k: as_q(x) for k, x in rep["values"].items()}
    assert (v["s"], v["b"], v["w"], v["l"], v["sc"], v["a"]) == (F(3, 2), F(7, 4), 2, F(5, 2), F(5, 2), F(5, 2))


def test_measure_g4_subset(capsys):
    code, out, _ = run(capsys, "measure", "G4", "--p", "1/2", "--measures", "w,sc,a")
    v = json.loads(out)["values"]
    assert code == EXIT_OK
    assert [v[k] for k in ("w", "sc", "a")] == ["37/16", "11/4", "11/4"]


def test_measure_constant_table(capsys):
    code, out, _ = run(capsys, "measure", f"tt:{DATA / 'const0.tt'}", "--p", "1/2", "--all")
    assert code == EXIT_OK
    assert all(as_q(x) == 0 for x in json.loads(out)["values"].values())


def test_exact_values_round_trip(capsys):
    _, out, _ = run(capsys, "measure", "AEQ3", "--p", "1/3", "--all")
    for k, x in json.loads(out)["values"].items():
        q = parse_rational(x)
        assert str(q) == x or f"{q.numerator}/{q.denominator}" == x


def test_csv_output(capsys):
    code, out, _ = run(capsys, "--format", "csv", "measure", "AND(2)", "--p", "1/2", "--measures", "a")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == EXIT_OK
    assert ["values.a", "3/2"] in rows


def test_cap_exceeded_exit_code(capsys):
    code, out, _ = run(capsys, "measure", "PAR(8)", "--p", "1/2", "--measures", "sc")
    assert code == EXIT_CAP
    assert "sc" in json.loads(out)["skipped"]
    code, _, _ = run(capsys, "--cap", "8", "measure", "iter(MAJ(3),2)", "--p", "1/2", "--measures", "a")
    assert code == EXIT_CAP


def test_usage_errors(capsys):
    assert run(capsys, "measure", "MAJ(3", "--p", "1/2")[0] == EXIT_USAGE
    assert run(capsys, "measure", "MAJ(3)", "--p", "x")[0] == EXIT_USAGE
    assert run(capsys, "measure", "MAJ(3)", "--measures", "s")[0] == EXIT_USAGE
    assert run(capsys, "measure", "MAJ(3)", "--p", "1/2", "--measures", "zz")[0] == EXIT_USAGE
    assert run(capsys, "nonsense")[0] == EXIT_USAGE
    assert run(capsys, "partial-info", "AND(2)", "--p", "1/2", "--critical")[0] == EXIT_USAGE


def test_config_file_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"p": "1/3", "caps": {"subcube": 3}}))
    code, out, _ = run(capsys, "--config", str(cfg), "measure", "MAJ(3)", "--measures", "a,sc")
    assert code == EXIT_OK
    assert json.loads(out)["p"] == "1/3"
    code, out, _ = run(capsys, "--config", str(cfg), "measure", "MAJ4", "--measures", "sc")
    assert code == EXIT_CAP
    code, out, _ = run(capsys, "--config", str(cfg), "measure", "MAJ(3)", "--p", "1/2", "--measures", "a")
    assert json.loads(out)["values"]["a"] == "5/2"


def test_partial_info(capsys):
    code, out, _ = run(capsys, "partial-info", "AND(2)", "--p", "3/4", "--critical")
    assert code == EXIT_OK
    assert json.loads(out)["kappa_critical"] == "1/2"
    code, out, _ = run(capsys, "partial-info", "MAJ(3)", "--p", "3/4", "--kappa", "1")
    assert json.loads(out)["sweep"][0]["cost"] == "5/2"


def test_perc_exact_and_shards(capsys):
    code, out, _ = run(capsys, "perc", "--m", "1", "--p", "1/2", "--exact", "--quantity", "w")
    rep = json.loads(out)
    assert code == EXIT_OK and rep["mode"] == "exact"
    assert rep["value"] == "17/8"
    args = ["perc", "--m", "2", "--quantity", "witness", "--samples", "3000", "--seed", "5"]
    _, one, _ = run(capsys, *args, "--shards", "1")
    _, four, _ = run(capsys, *args, "--shards", "4")
    a, b = json.loads(one), json.loads(four)
    assert a["estimate"] == b["estimate"]


def test_output_file(tmp_path, capsys):
    path = tmp_path / "rep.json"
    code, out, _ = run(capsys, "--output", str(path), "measure", "AND(2)", "--p", "1/2", "--measures", "a")
    assert code == EXIT_OK and out == ""
    assert json.loads(path.read_text())["values"]["a"] == "3/2"


def test_function_expression_language():
    assert spec_arity(parse_spec("compose(OR(2), AND(2))")) == 4
    assert function_from_spec("compose(OR(2), AND(2))") == zoo("TRIBES", [2, 2])
    assert spec_arity(parse_spec("iter(MAJ(3), 2)")) == 9
    assert spec_arity(parse_spec("xor(AEQ3, PAR(2))")) == 5
    assert spec_arity(parse_spec("perc:grid(1)")) == 7
    with pytest.raises(SpecError):
        parse_spec("MAJ(3) extra")
    with pytest.raises(SpecError):
        parse_spec("xor(MAJ(3), AND(2))")


def test_manifest_covers_every_example_row():
    ids = [r.id for r in regress.all_rows()]
    assert len(ids) == len(set(ids))
    assert sum(i.startswith("ex-") for i in ids) == regress.EXAMPLE_ROWS == 54


def _tamper_maj3(monkeypatch):
    real = regress.zoo

    def tampered(name, params=()):
        f = real(name, params)
        if name.upper() == "MAJ" and list(params) == [3]:
            return BooleanFunction(3, f.bits ^ 0b1000)
        return f

    monkeypatch.setattr(regress, "zoo", tampered)


def test_tampered_maj3_fails(monkeypatch):
    _tamper_maj3(monkeypatch)
    ids = ["acc-maj3-p1_2-sbw", "acc-maj3-p1_2-sc-a-l", "ex-09"]
    rows = regress.run_table(ids)
    assert len(rows) == 3
    assert any(r["status"] == "FAIL" for r in rows)
    assert all(r["computed"] != r["expected"] for r in rows if r["status"] == "FAIL")


def test_reproduce_subset_exit_codes(capsys, monkeypatch):
    code, out, _ = run(capsys, "reproduce", "--only", "ex-01,ex-09")
    assert code == EXIT_OK
    assert json.loads(out)["summary"]["pass"] == 2
    _tamper_maj3(monkeypatch)
    code, out, _ = run(capsys, "reproduce", "--only", "acc-maj3-p1_2-sbw")
    assert code == EXIT_REGRESSION
    assert json.loads(out)["summary"]["fail"] == 1
