import csv
import io
import json
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from eulersum.cli import SpecError, UsageError, main, parse_sum_spec
from eulersum.identities import IdentityRecord, registry
from eulersum.numerics import RealWithError
from eulersum.oracle import Kernel, L, Power, SumDescriptor, W, Z


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestList:
    def test_json(self, capsys):
        code, out, _ = run(capsys, "list", "--format", "json")
        entries = json.loads(out)
        assert code == 0 and len(entries) >= 45
        assert [e["id"] for e in entries] == list(registry())

    def test_filter(self, capsys):
        _, out, _ = run(capsys, "list", "--filter", "eq-2.*", "--format", "json")
        ids = [e["id"] for e in json.loads(out)]
        assert ids and all(i.startswith("eq-2.") for i in ids)

    def test_table_is_aligned(self, capsys):
        _, out, _ = run(capsys, "list", "--format", "table")
        lines = out.splitlines()
        assert lines[0].startswith("id") and set(lines[1]) <= {"-", " "}
        col = lines[0].index("params")
        assert all(len(line) <= col or line[col - 2:col] == "  " for line in lines[2:])

    def test_csv(self, capsys):
        _, out, _ = run(capsys, "list", "--format", "csv")
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0][0] == "id" and len(rows) == len(registry()) + 1


class TestEval:
    def test_euler_sum(self, capsys):
        code, out, _ = run(capsys, "eval", "S[2;0;p=6]", "--format", "json")
        assert code == 0
        assert abs(json.loads(out)["value"] - 1.0218970966147803) < 1e-14

    def test_kernel(self, capsys):
        code, out, _ = run(capsys, "eval", "K[m=1,k=1,r=0,type=zeta]")
        assert code == 0 and "1.644934066848" in out
        assert "N" in out and "err" in out

    def test_stirling_kernel(self, capsys):
        code, out, _ = run(capsys, "eval", "ST[p=2,k=1]", "--format", "json")
        assert code == 0 and abs(json.loads(out)["value"] - 1.6449340668482264) < 1e-8

    def test_divergent(self, capsys):
        code, _, err = run(capsys, "eval", "S[1;0;p=1]")
        assert code == 2 and "divergent" in err

    @pytest.mark.parametrize("spec, pos", [("S[1;0;p", 7), ("Q[1]", 0), ("S[1,;0;p=2]", 4),
                                           ("K[m=1,k=2,q=3]", 10), ("S[1;0;p=2]x", 10)])
    def test_parse_errors_report_position(self, capsys, spec, pos):
        code, _, err = run(capsys, "eval", spec)
        assert code == 2
        assert f"position {pos}" in err
        assert err.splitlines()[-1].index("^") == pos + 2

    def test_kernel_domain(self, capsys):
        code, _, err = run(capsys, "eval", "K[m=1,k=2,r=2]")
        assert code == 2 and "r < k" in err

    def test_parse_results(self):
        assert parse_sum_spec("S[1^2,2;0;p=3]") == SumDescriptor((Z(1, 2), Z(2)), Power(3))
        assert parse_sum_spec("Sbar[0;1;p=2]") == SumDescriptor((L(1),), Power(2), True)
        assert parse_sum_spec(" K[ type=L , k=3, m=2 ] ") == SumDescriptor((L(2),), Kernel(0, 3))
        assert parse_sum_spec("ST[p=3,k=2,r=1]") == SumDescriptor((W(3),), Kernel(1, 2))
        assert parse_sum_spec("S[1,1;0;p=3]") == parse_sum_spec("S[1^2;0;p=3]")

    @given(st.dictionaries(st.integers(1, 6), st.integers(1, 3), max_size=3),
           st.dictionaries(st.integers(1, 6), st.integers(1, 3), max_size=3),
           st.integers(0, 8), st.booleans())
    def test_parser_round_trip(self, pi1, pi2, p, bar):
        fmt = lambda d: ",".join(f"{b}^{e}" for b, e in d.items()) or "0"
        spec = f"{'Sbar' if bar else 'S'}[{fmt(pi1)};{fmt(pi2)};p={p}]"
        desc = parse_sum_spec(spec)
        assert desc.alternating == bar and desc.outer == Power(p)
        assert {f.order: f.exponent for f in desc.factors if f.kind == "zeta_n"} == pi1
        assert {f.order: f.exponent for f in desc.factors if f.kind == "L_n"} == pi2

    @given(st.text(max_size=20))
    def test_parser_never_crashes(self, text):
        try:
            parse_sum_spec(text)
        except UsageError:
            pass

    def test_spec_error_is_usage_error(self):
        assert issubclass(SpecError, UsageError)


class TestVerify:
    def test_single(self, capsys):
        code, out, _ = run(capsys, "verify", "eq-2.12", "--param", "k=5")
        assert code == 0 and "pass" in out

    def test_domain_error(self, capsys):
        code, _, err = run(capsys, "verify", "eq-2.10", "--param", "r=3", "--param", "k=2")
        assert code == 2 and "requires r < k" in err

    @pytest.mark.parametrize("argv", [["verify", "eq-9.99"], ["verify"], ["verify", "eq-2.12", "--param", "k"],
                                      ["verify", "eq-2.12", "--param", "k=abc"], ["verify", "--filter", "nope"],
                                      ["verify", "eq-2.12", "--N", "5"], ["verify", "eq-2.12", "--jobs", "0"]])
    def test_usage_errors(self, capsys, argv):
        code, _, err = run(capsys, *argv)
        assert code == 2 and err.startswith("eulersum:")

    def test_failure_exit_code(self, capsys, monkeypatch):
        false_identity = IdentityRecord("eq-0.1", "1 = 1 + 1e-3", (), lambda P: None, ({},),
                                        lambda P, ev: RealWithError(1.0), lambda P, ev: RealWithError(1.001),
                                        1e-6, "test")
        monkeypatch.setitem(registry(), "eq-0.1", false_identity)
        code, out, _ = run(capsys, "verify", "eq-0.1", "--format", "json")
        assert code == 1 and json.loads(out)["summary"]["failed"] == 1

    def test_unconfirmed_does_not_fail_the_run(self, capsys):
        code, out, _ = run(capsys, "verify", "golden-4.L11bar2", "--format", "json")
        assert code == 0
        assert json.loads(out)["summary"] == {"total": 1, "passed": 0, "failed": 0, "unconfirmed": 1}

    def test_json_report(self, capsys, tmp_path):
        out_file = tmp_path / "report.json"
        code, out, _ = run(capsys, "verify", "--filter", "eq-2.3", "--format", "json", "--out", str(out_file),
                           "--jobs", "2")
        assert code == 0 and out == ""
        report = json.loads(out_file.read_text())
        assert report["schema"] == 1
        assert set(report) == {"schema", "tool_version", "config", "results", "summary", "wall_time_seconds"}
        assert set(report["config"]) == {"N", "tol"}
        s = report["summary"]
        statuses = [r["status"] for r in report["results"]]
        assert s["total"] == len(statuses)
        assert (s["passed"], s["failed"], s["unconfirmed"]) == tuple(
            statuses.count(k) for k in ("pass", "fail", "unconfirmed"))
        assert {r["id"] for r in report["results"]} == {"eq-2.30", "eq-2.31", "eq-2.32", "eq-2.33", "eq-2.34",
                                                         "eq-2.35", "eq-2.38", "eq-2.39"}

    def test_csv_report(self, capsys):
        code, out, _ = run(capsys, "verify", "eq-2.1", "--param", "k=2", "--format", "csv")
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["id", "params", "lhs", "rhs", "residual", "pass", "status"]
        assert rows[1][:2] == ["eq-2.1", "m=1,k=2"] and len(rows) == 4

    def test_deterministic(self, capsys):
        def report():
            _, out, _ = run(capsys, "verify", "--filter", "eq-2.1", "--format", "json", "--jobs", "3")
            data = json.loads(out)
            data.pop("wall_time_seconds")
            return data

        assert report() == report()

    def test_flags_override_environment(self, capsys, monkeypatch):
        monkeypatch.setenv("EULERSUM_DEFAULT_N", "2000")
        _, out, _ = run(capsys, "verify", "eq-2.12", "--param", "k=1", "--format", "json")
        assert json.loads(out)["config"]["N"]["N"] == 2000
        _, out, _ = run(capsys, "verify", "eq-2.12", "--param", "k=1", "--format", "json", "--N", "3000")
        assert json.loads(out)["config"]["N"]["N"] == 3000

    def test_every_listed_id_is_accepted(self, capsys, monkeypatch):
        monkeypatch.setenv("EULERSUM_DEFAULT_N", "200")
        _, out, _ = run(capsys, "list", "--format", "json")
        for entry in json.loads(out):
            code, _, err = run(capsys, "verify", entry["id"], "--tol", "1e30", "--format", "csv")
            assert code == 0, (entry["id"], err)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "eulersum", "eval", "K[m=1,k=1,r=0,type=zeta]"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "1.644934066848" in proc.stdout
