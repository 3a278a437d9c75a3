import json

from bicrit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def rebuild_argv(report):
    argv = report["command"].split()
    for key, value in sorted(report["inputs"].items()):
        if value != "":
            argv += [f"--{key}", value]
    return argv


class TestExitCodes:
    def test_find_none_is_success(self, capsys):
        code, rep = run_json(capsys, "idf", "find", "--d", "27", "--k", "3")
        assert code == 0
        assert rep["verdict"] == "NONE"
        assert rep["result"]["witness"] is None

    def test_find_witness(self, capsys):
        code, rep = run_json(capsys, "idf", "find", "--d", "8", "--k", "2")
        assert code == 0
        assert rep["result"]["witness"] == {"p": "3", "r": "2", "e": "1"}

    def test_transversality_pass(self, capsys):
        code, rep = run_json(
            capsys,
            "pcf", "transversality",
            "--d", "3", "--k", "1", "--n", "1", "--m", "1", "--emax", "2",
        )
        assert code == 0
        assert rep["verdict"] == "PASS"
        assert rep["result"]["alpha_jacobian_signs"] == ["-1", "-1"]

    def test_usage_error(self, capsys):
        assert main(["idf", "find", "--d", "8"]) == 2
        assert main(["idf", "bogus"]) == 2
        assert main(["idf", "find", "--d", "6", "--k", "3"]) == 2  # domain error

    def test_unsupported_pair_is_usage_error(self, capsys):
        assert main(
            ["pcf", "integrality", "--d", "27", "--k", "3", "--n", "1", "--m", "1"]
        ) == 2

    def test_csv_only_for_tables(self, capsys):
        assert main(
            ["pcf", "integrality", "--d", "3", "--k", "1", "--n", "1", "--m", "1",
             "--format", "csv"]
        ) == 2


class TestReports:
    def test_schema_fields(self, capsys):
        _, rep = run_json(capsys, "belyi", "coeffs", "--d", "5", "--k", "2")
        assert rep["schema"] == "bicrit.report/1"
        assert rep["command"] == "belyi coeffs"
        assert rep["result"]["b"] == ["6", "-15", "10"]
        assert set(rep) == {
            "schema", "tool_version", "command", "inputs", "verdict",
            "result", "timings",
        }

    def test_exact_strings_only(self, capsys):
        _, rep = run_json(
            capsys, "pcf", "integrality", "--d", "3", "--k", "1", "--n", "2", "--m", "1"
        )

        def no_floats(node):
            assert not isinstance(node, float)
            if isinstance(node, dict):
                for v in node.values():
                    no_floats(v)
            elif isinstance(node, list):
                for v in node:
                    no_floats(v)

        no_floats(rep)

    def test_round_trip(self, capsys):
        for argv in (
            ["idf", "find", "--d", "51", "--k", "3"],
            ["idf", "mordell", "--xmax", "100"],
            ["belyi", "coeffs", "--d", "6", "--k", "2"],
            ["pcf", "transversality", "--d", "3", "--k", "1", "--n", "2",
             "--m", "1", "--emax", "1"],
            ["valdyn", "orbit", "--d", "5", "--k", "1", "--r", "0", "--e", "1",
             "--valpha", "-1", "--vbeta", "-1", "--start", "0", "--steps", "4"],
        ):
            code1, rep1 = run_json(capsys, *argv)
            code2, rep2 = run_json(capsys, *rebuild_argv(rep1))
            rep1.pop("timings")
            rep2.pop("timings")
            assert code1 == code2
            assert rep1 == rep2

    def test_orbit_payload(self, capsys):
        _, rep = run_json(
            capsys,
            "valdyn", "orbit", "--d", "5", "--k", "1", "--r", "0", "--e", "1",
            "--valpha", "-1", "--vbeta", "-1", "--start", "0", "--steps", "4",
        )
        assert rep["verdict"] == "CASE1"
        assert [e["value"] for e in rep["result"]["orbit"]] == [
            "-1", "-6", "-31", "-156"
        ]
        assert rep["result"]["certificate"]["kind"] == "diverging"

    def test_counterexamples(self, capsys):
        code, rep = run_json(capsys, "pcf", "counterexamples")
        assert code == 0
        assert rep["verdict"] == "CONFIRMED"


class TestCsv:
    def test_mordell_table(self, capsys):
        code, out = run(capsys, "idf", "mordell", "--xmax", "100", "--format", "csv")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "x,y,b,c,d"
        assert lines[1] == "2,3,1,1,11"
        assert len(lines) == 7

    def test_csv_json_same_data(self, capsys):
        _, out_csv = run(
            capsys, "idf", "scan", "--dmin", "7", "--dmax", "40", "--k", "3",
            "--format", "csv",
        )
        _, rep = run_json(
            capsys, "idf", "scan", "--dmin", "7", "--dmax", "40", "--k", "3"
        )
        header, *rows = out_csv.strip().splitlines()
        keys = header.split(",")
        from_csv = [dict(zip(keys, row.split(","))) for row in rows]
        assert from_csv == rep["result"]["rows"]

    def test_scan_marks_exception(self, capsys):
        _, rep = run_json(
            capsys, "idf", "scan", "--dmin", "26", "--dmax", "28", "--k", "3"
        )
        assert rep["result"]["exceptions"] == ["27"]
        by_d = {row["d"]: row for row in rep["result"]["rows"]}
        assert by_d["27"]["has_idf"] == "false"
        assert by_d["26"]["has_idf"] == "true"
