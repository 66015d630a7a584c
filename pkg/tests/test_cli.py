import json

import pytest

from uvlab import cli, corpus
from uvlab.sgraph import Coloring, ExplicitGraph, expand


def run_cli(args):
    return cli.main(args)


def instance_path(name):
    from importlib import resources
    return str(resources.files("uvlab") / "instances" / f"{name}.sgc")


class TestOracleProtocol:
    def test_k3_report(self, tmp_path):
        out = tmp_path / "r.json"
        code = run_cli(["run", "--instance", instance_path("k3_n2"),
                        "--protocol", "oracle", "--out", str(out)])
        assert code == 0
        report = json.loads(out.read_text())
        assert report["colorable"] is True
        g = expand(corpus.load("k3_n2"))
        assert Coloring(tuple(report["coloring"])).is_valid_for(g)

    def test_k4_not_colorable(self, tmp_path, capsys):
        code = run_cli(["run", "--instance", instance_path("k4_n2"),
                        "--protocol", "oracle"])
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["colorable"] is False and report["coloring"] is None


class TestQma2Protocol:
    def test_honest_k3_total_one(self, tmp_path):
        out = tmp_path / "r.json"
        code = run_cli(["run", "--instance", instance_path("k3_n2"),
                        "--protocol", "qma2", "--strategy", "honest",
                        "--out", str(out)])
        assert code == 0
        report = json.loads(out.read_text())
        assert report["p_total"] == 1.0
        assert report["paper_soundness_floor"] == pytest.approx(1 / (3e10 * 16))

    def test_near_strategy_on_k4(self, capsys):
        code = run_cli(["run", "--instance", instance_path("k4_n2"),
                        "--protocol", "qma2", "--strategy", "near"])
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["p_total"] == pytest.approx(1 - 1 / 24, abs=1e-12)
        assert report["declared_violations"] == 1

    def test_near_strategy_rejected_on_colorable(self, capsys):
        code = run_cli(["run", "--instance", instance_path("k3_n2"),
                        "--protocol", "qma2", "--strategy", "near"])
        assert code == cli.EXIT_INSTANCE

    def test_byte_identical_reports(self, tmp_path):
        outs = []
        for name in ("a.json", "b.json"):
            out = tmp_path / name
            assert run_cli(["run", "--instance", instance_path("k4_n2"),
                            "--protocol", "qma2", "--strategy", "random",
                            "--seed", "42", "--out", str(out)]) == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_byte_identical_monte_carlo_reports(self, tmp_path):
        outs = []
        for name in ("a.json", "b.json"):
            out = tmp_path / name
            assert run_cli(["run", "--instance", instance_path("k4_n2"),
                            "--protocol", "bellqma", "--strategy", "near",
                            "--k", "12", "--mode", "mc", "--samples", "5000",
                            "--seed", "3", "--out", str(out)]) == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_sampled_mode(self, capsys):
        code = run_cli(["run", "--instance", instance_path("k3_n2"),
                        "--protocol", "qma2", "--strategy", "honest",
                        "--mode", "mc", "--samples", "200", "--seed", "7"])
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["sampled_acceptance"] == 1.0


class TestBellqmaProtocol:
    def test_honest_default_k(self, capsys):
        code = run_cli(["run", "--instance", instance_path("k3_n2"),
                        "--protocol", "bellqma", "--strategy", "honest",
                        "--k", "240"])
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["k"] == 240
        assert report["p_total"] >= 1 - 2.0 ** (-6)
        assert report["paper_completeness_floor"] == pytest.approx(1 - 2.0 ** (-6))

    def test_mc_requires_seed(self, capsys):
        code = run_cli(["run", "--instance", instance_path("k4_n2"),
                        "--protocol", "bellqma", "--strategy", "near",
                        "--k", "12", "--mode", "mc", "--samples", "1000"])
        assert code == cli.EXIT_INSTANCE

    def test_k_must_be_at_least_two(self):
        code = run_cli(["run", "--instance", instance_path("k3_n2"),
                        "--protocol", "bellqma", "--strategy", "honest",
                        "--k", "1"])
        assert code == cli.EXIT_INSTANCE


class TestSeesawGadgetProtocols:
    def test_seesaw_report(self, capsys):
        code = run_cli(["run", "--instance", instance_path("k4_n2"),
                        "--protocol", "seesaw", "--seed", "5"])
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert {"lambda_max", "seesaw_best", "restarts", "seed"} <= set(report)
        assert report["seesaw_best"] <= report["lambda_max"] + 1e-9

    def test_gadget_report(self, capsys):
        code = run_cli(["run", "--instance", instance_path("k3_n2"),
                        "--protocol", "gadget", "--seed", "5"])
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["reconstruction_error"] < 1e-9
        assert report["honest_reduction"]["t"] == 3


class TestErrorsAndFormats:
    def test_parse_error_exit_2(self, tmp_path):
        bad = tmp_path / "bad.sgc"
        bad.write_text("SGC 1\nn 1\nm 2\nw0 = AND u0 w9\nout pair w0\nout edge w0\n")
        assert run_cli(["run", "--instance", str(bad), "--protocol", "oracle"]) == 2

    def test_missing_file_exit_2(self):
        assert run_cli(["run", "--instance", "/nope.sgc", "--protocol", "oracle"]) == 2

    def test_capacity_exit_3(self, tmp_path):
        from uvlab.sgraph import encode_explicit, format_sgc
        big = tmp_path / "big.sgc"
        circuit = encode_explicit(ExplicitGraph(2, frozenset({(0, 1)})), 9)
        big.write_text(format_sgc(circuit))
        assert run_cli(["run", "--instance", str(big),
                        "--protocol", "qma2", "--strategy", "honest"]) == 3

    def test_csv_flattening(self, tmp_path):
        out = tmp_path / "r.csv"
        assert run_cli(["run", "--instance", instance_path("k3_n2"),
                        "--protocol", "oracle", "--csv", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "key,value"
        assert any(line.startswith("colorable,") for line in lines)


class TestSuiteSummarySchema:
    def test_check_result_dict(self):
        from uvlab.suites import CheckResult
        r = CheckResult("x", True, "ok", 0.1, 2.0)
        assert set(r.to_dict()) == {"name", "passed", "detail", "seconds",
                                    "time_limit"}
        assert r.line().startswith("[PASS] x:")

    def test_failing_check_line_names_the_check(self):
        from uvlab.suites import CheckResult
        r = CheckResult("uniform_deviation_floor", False, "3 violations", 0.1)
        assert r.line().startswith("[FAIL] uniform_deviation_floor:")
        assert r.to_dict()["passed"] is False

    def test_over_budget_check_fails(self):
        from uvlab.suites import CheckResult
        r = CheckResult("slow", True, "ok", 9.0, 2.0)
        assert not r.in_budget and r.line().startswith("[FAIL]")

    def test_unknown_suite_name(self):
        from uvlab.suites import run_suite
        with pytest.raises(ValueError, match="unknown suite"):
            run_suite("everything")
