import json

import pytest

from cli import build_parser, main
from commands import COMMAND_DEFINITIONS, execute_command, parse_endomorphism
from algebra.errors import PreconditionError
from settings import load_settings

ANICK_TEXT = "x + z*(x*z - z*y); y + (x*z - z*y)*z; z"
ANICK_ROWS = ["1 + u*v", "v^2", "-u^2", "1 - u*v"]


class TestHandlers:
    def test_fox(self):
        result = execute_command("fox", {"expr": "z*x*z", "var": "x"})
        assert result["exit_code"] == 0
        assert result["derivative"] == "z'⊗z"

    def test_abelianize_and_nu(self):
        assert execute_command("abelianize", {"expr": "x*z - z*y"})["image"] == "x1*x3 - x2*x3"
        assert execute_command("nu", {"expr": "x*z^3 + z^2"})["image"] == "y3^2"

    def test_nu_of_anick_block(self):
        result = execute_command("nu", {"endo": ANICK_TEXT})
        assert result["matrix"] == [["1 + u*v", "v^2"], ["-u^2", "1 - u*v"]]

    def test_compose_words(self):
        result = execute_command("compose", {"first": "s(1, 2, y)", "second": "s(1, 3, z)"})
        assert result["endomorphism"] == "(6*x + 3*y + z, y, z)"

    def test_invert(self):
        result = execute_command("invert", {"word": "s(1, 2, y)"})
        assert result["word"] == "s(1, 1/2, -1/2*y)"

    def test_e2_decide(self):
        result = execute_command("e2-decide", {"entries": ANICK_ROWS})
        assert result["verdict"] == "NOT-IN"
        assert result["exit_code"] == 0

    def test_e2_decide_ge2f(self):
        result = execute_command("e2-decide", {"entries": ["0", "1", "1", "0"], "ge2f": True})
        assert result["verdict"] == "IN"

    def test_certify_modes(self):
        wild = execute_command("certify", {"mode": "corollary2", "endo": ANICK_TEXT})
        assert wild["status"] == "CertifiedWild"
        normalized = execute_command("certify", {"mode": "theorem1", "endo": ANICK_TEXT, "normalizer": "anick"})
        assert normalized["status"] == "CertifiedWild"
        tame = execute_command("certify", {"mode": "corollary2", "endo": "y; x; z"})
        assert tame["status"] == "TameWithDecomposition"

    def test_precondition_failures_exit_1(self):
        result = execute_command("certify", {"mode": "corollary2", "endo": "x + y^2; y; z"})
        assert result["exit_code"] == 1
        assert execute_command("fox", {"expr": "x +", "var": "x"})["exit_code"] == 1
        assert execute_command("fox", {"expr": "x", "var": "w"})["exit_code"] == 1

    def test_unknown_command(self):
        result = execute_command("nope", {})
        assert result["exit_code"] == 1
        assert "fox" in result["available_commands"]

    def test_demo_exit_codes(self):
        assert execute_command("demo-anick", {})["exit_code"] == 0
        corrupted = execute_command("demo-anick", {"corrupt_normalizer": True})
        assert corrupted["exit_code"] == 2
        assert "normalization" in corrupted["error"]

    def test_selftest_writes_report(self, tmp_path):
        result = execute_command("selftest", {"seed": 5, "profile": "small",
                                              "suites": ["relation_f32"], "report_dir": str(tmp_path)})
        assert result["exit_code"] == 0
        saved = json.loads((tmp_path / "selftest.json").read_text())
        assert saved["seed"] == 5

    def test_selftest_unknown_suite(self):
        assert execute_command("selftest", {"suites": ["bogus"]})["exit_code"] == 1

    def test_verify_round_trip(self, tmp_path):
        decided = execute_command("e2-decide", {"entries": ANICK_ROWS})
        path = tmp_path / "certificate.json"
        path.write_text(json.dumps(decided["certificate"]))
        assert execute_command("verify", {"path": str(path)})["valid"]

        tampered = dict(decided["certificate"], witness=[["1", "0"], ["0", "1"]])
        path.write_text(json.dumps(tampered))
        result = execute_command("verify", {"path": str(path)})
        assert result["exit_code"] == 2

    def test_endomorphism_document(self, tmp_path):
        path = tmp_path / "anick.json"
        path.write_text(json.dumps({"images": ANICK_TEXT.split(";")}))
        assert parse_endomorphism(file=str(path)) == parse_endomorphism(ANICK_TEXT)
        path.write_text(json.dumps({"images": ["x", "y"]}))
        with pytest.raises(PreconditionError):
            parse_endomorphism(file=str(path))

    def test_every_definition_has_a_handler(self):
        for definition in COMMAND_DEFINITIONS:
            result = execute_command(definition["name"], {"unexpected": 1})
            assert result["exit_code"] == 1
            assert "Invalid arguments" in result["error"]


def _write_matrix(tmp_path, name, rows):
    path = tmp_path / name
    path.write_text(json.dumps({"matrix": rows}))
    return str(path)


class TestMorph:
    @pytest.mark.parametrize("name, expr, image", [
        ("tau", "x*y - y*x + x", "x1"),
        ("tau", "x*y", "x1*x2"),
        ("eta", "x1*x3 + x3^2 + 2", "2 + x3^2"),
        ("rho", "y3^2 + 1", "1 + x3^2"),
        ("rho_u", "1 + u*v", "1 + l3*r3"),
        ("pi", "x*z - z*y", "x1*x3 - x2*x3"),
        ("nu_u", "1 + z'⊗z", "1 + u*v"),
    ])
    def test_element(self, name, expr, image):
        result = execute_command("morph", {"name": name, "expr": expr})
        assert result["exit_code"] == 0
        assert result["image"] == image

    def test_reports_the_morphism(self):
        result = execute_command("morph", {"name": "eta_u", "expr": "l1*r3 + l3*r3"})
        assert result["image"] == "l3*r3"
        assert result["morphism"]["target"] == "F[l3,r3]"

    def test_j2_output_feeds_matrix_filters(self, tmp_path):
        j2_rows = execute_command("j2", {"endo": ANICK_TEXT})["matrix"]
        nu_result = execute_command("morph", {"name": "nu_u", "matrix": _write_matrix(tmp_path, "j2.json", j2_rows)})
        assert nu_result["matrix"] == [["1 + u*v", "v^2"], ["-u^2", "1 - u*v"]]

        rho_path = _write_matrix(tmp_path, "nu.json", nu_result["matrix"])
        rho_result = execute_command("morph", {"name": "rho_u", "matrix": rho_path})
        assert rho_result["matrix"] == [["1 + l3*r3", "r3^2"], ["-l3^2", "1 - l3*r3"]]

    def test_full_jacobian_filter(self, tmp_path):
        rows = execute_command("jacobian", {"endo": ANICK_TEXT})["matrix"]
        result = execute_command("morph", {"name": "pi_u", "matrix": _write_matrix(tmp_path, "j.json", rows)})
        assert [row[2] for row in result["matrix"]] == ["0", "0", "1"]

    def test_failures_exit_1(self, tmp_path):
        assert execute_command("morph", {"name": "omega", "expr": "x"})["exit_code"] == 1
        assert execute_command("morph", {"name": "tau"})["exit_code"] == 1
        assert execute_command("morph", {"name": "rho", "expr": "u"})["exit_code"] == 1
        bad = _write_matrix(tmp_path, "bad.json", [["1", "0"]])
        assert execute_command("morph", {"name": "pi", "matrix": bad})["exit_code"] == 1

    def test_e2_decide_rejects_a_3x3_document(self, tmp_path):
        rows = [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]
        result = execute_command("e2-decide", {"file": _write_matrix(tmp_path, "i3.json", rows)})
        assert result["exit_code"] == 1
        assert "2×2" in result["error"]

    def test_cli(self, capsys):
        assert main(["morph", "tau", "x*y"]) == 0
        assert capsys.readouterr().out.strip() == "x1*x2"


class TestCli:
    def test_parser_builds_every_command(self):
        parser = build_parser()
        args = parser.parse_args(["e2-decide", "1", "0", "0", "1", "--ge2f"])
        assert args.entries == ["1", "0", "0", "1"]
        assert args.ge2f

    def test_json_output(self, capsys):
        assert main(["--json", "e2-decide", "1 + u*v", "v^2", "0 - u^2", "1 - u*v"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["verdict"] == "NOT-IN"
        assert "text" not in data

    def test_demo(self, capsys):
        assert main(["demo-anick"]) == 0
        assert "verdict: CertifiedWild" in capsys.readouterr().out

    def test_corrupted_demo(self, capsys):
        assert main(["demo-anick", "--corrupt-normalizer"]) == 2
        assert "normalization" in capsys.readouterr().err

    def test_bad_profile_from_environment(self, monkeypatch, capsys):
        monkeypatch.setenv("WILDCERT_PROFILE", "huge")
        assert main(["fox", "x", "x"]) == 1


class TestSettings:
    def test_defaults(self, monkeypatch):
        for name in ("WILDCERT_SEED", "WILDCERT_PROFILE", "WILDCERT_LOG_LEVEL", "WILDCERT_REPORT_DIR"):
            monkeypatch.delenv(name, raising=False)
        settings = load_settings()
        assert (settings.seed, settings.profile, settings.log_level) == (42, "small", "WARNING")

    def test_overrides_win(self, monkeypatch):
        monkeypatch.setenv("WILDCERT_SEED", "9")
        assert load_settings().seed == 9
        assert load_settings(seed=3, log_level="debug").log_level == "DEBUG"
        assert load_settings(seed=3).seed == 3

    def test_invalid_values(self, monkeypatch):
        with pytest.raises(PreconditionError):
            load_settings(profile="huge")
        monkeypatch.setenv("WILDCERT_SEED", "many")
        with pytest.raises(PreconditionError):
            load_settings()
