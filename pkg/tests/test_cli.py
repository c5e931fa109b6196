import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from credence.cli import main

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture()
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(main, [str(a) for a in args])


class TestCheck:
    def test_linda_implication_fails(self, runner):
        res = invoke(runner, "check", FIXTURES / "linda" / "session.json", "i")
        assert res.exit_code == 1
        assert "(t & f)" in res.output

    def test_linda_nt_passes(self, runner):
        res = invoke(runner, "check", FIXTURES / "linda" / "session.json", "nt")
        assert res.exit_code == 0

    def test_voting_theory_implication_fails(self, runner):
        res = invoke(runner, "check", FIXTURES / "voting" / "session.json", "s-i")
        assert res.exit_code == 1
        assert "Theory Implication" in res.output

    def test_all_applicable_by_default(self, runner):
        res = invoke(runner, "check", FIXTURES / "voting" / "session.json")
        assert "Theory Implication" in res.output
        assert "Non-Triviality" in res.output

    def test_unknown_axiom_is_input_error(self, runner):
        res = invoke(runner, "check", FIXTURES / "linda" / "session.json", "xyz")
        assert res.exit_code == 2

    def test_missing_file_is_input_error(self, runner):
        res = invoke(runner, "check", FIXTURES / "linda" / "nope.json", "i")
        assert res.exit_code == 2

    def test_json_format_deterministic(self, runner):
        args = ["--format", "json", "check", str(FIXTURES / "voting" / "session.json")]
        out1 = runner.invoke(main, args).output
        out2 = runner.invoke(main, args).output
        assert out1 == out2
        payload = json.loads(out1)
        assert payload["command"] == "check"


class TestBuild:
    def test_canonical_sound_on_linda(self, runner, tmp_path):
        out = tmp_path / "model.json"
        res = invoke(
            runner, "build", FIXTURES / "linda" / "session.json", "canonical-sound",
            "--out", out,
        )
        assert res.exit_code == 0
        data = json.loads(out.read_text())
        assert set(data["states"]) == {"v00", "v10", "v01", "v11"}

    def test_interval_on_linda_fails_with_exit_1(self, runner):
        res = invoke(
            runner, "build", FIXTURES / "linda" / "session.json", "interval-additive"
        )
        assert res.exit_code == 1
        assert "axiom I" in res.output

    def test_product_succeeds(self, runner):
        res = invoke(runner, "build", FIXTURES / "linda" / "session.json", "product")
        assert res.exit_code == 0

    def test_belief_lift_from_capacity(self, runner):
        res = invoke(
            runner, "build", FIXTURES / "strategies" / "session-maps.json",
            "belief-lift", "--model", "capacity",
        )
        assert res.exit_code == 0
        assert "likelihoods preserved" in res.output

    def test_built_model_reloads(self, runner, tmp_path):
        out = tmp_path / "interval.json"
        res = invoke(
            runner, "build", FIXTURES / "voting" / "session.json",
            "interval-additive", "--out", out,
        )
        assert res.exit_code == 0
        from credence.files import load_model, load_session

        session = load_session(FIXTURES / "voting" / "session.json")
        model = load_model(out, session.language)
        from credence.model import represents

        assert represents(model, session.assessment).ok


class TestIdentify:
    def test_linda_reports_misunderstood_pair(self, runner):
        res = invoke(runner, "identify", FIXTURES / "linda" / "session.json")
        assert res.exit_code == 1
        assert "(t & f) implies t" in res.output

    def test_voting_reports_subtheory(self, runner):
        res = invoke(runner, "identify", FIXTURES / "voting" / "session.json")
        assert res.exit_code == 0
        assert "{(r <-> !b)}" in res.output

    def test_certainty_fixture_refuses_certainty_route(self, runner):
        res = invoke(runner, "identify", FIXTURES / "certainty" / "session.json")
        assert res.exit_code == 1
        assert "refused" in res.output

    def test_trivial_assessment_all_understood(self, runner, tmp_path):
        (tmp_path / "assessment.json").write_text(
            json.dumps({"atoms": ["p"], "pi": {"p": "1/2"}})
        )
        (tmp_path / "session.json").write_text(
            json.dumps({"atoms": ["p"], "assessment": "assessment.json"})
        )
        res = invoke(runner, "identify", tmp_path / "session.json")
        assert res.exit_code == 0
        assert "all understood" in res.output

    def test_theory_override_refusal_path(self, runner, tmp_path):
        # handing a theory to an assessment that breaks axiom I: the
        # sub-theory search must refuse, and the exit code stays 1
        (tmp_path / "theory.json").write_text(json.dumps({"generators": ["f"]}))
        res = invoke(
            runner, "identify", FIXTURES / "linda" / "session.json",
            "--theory", tmp_path / "theory.json",
        )
        assert res.exit_code == 1
        assert "refused" in res.output


class TestRationalize:
    def test_maximal_model_rationalizable(self, runner):
        res = invoke(
            runner, "rationalize", FIXTURES / "strategies" / "session-rationalize.json"
        )
        assert res.exit_code == 0
        assert "rationalizable" in res.output
        assert "s3: 1/3" in res.output and "s1: 1/4" in res.output

    def test_additive_only_not_rationalizable(self, runner):
        res = invoke(
            runner, "rationalize", FIXTURES / "strategies" / "session-rationalize.json",
            "--additive-only",
        )
        assert res.exit_code == 1
        assert "1/6" in res.output

    def test_explicit_choice(self, runner):
        res = invoke(
            runner, "rationalize", FIXTURES / "strategies" / "session-rationalize.json",
            "--choice", "s1",
        )
        assert res.exit_code == 0

    def test_unknown_choice_is_input_error(self, runner):
        res = invoke(
            runner, "rationalize", FIXTURES / "strategies" / "session-rationalize.json",
            "--choice", "nope",
        )
        assert res.exit_code == 2

    def test_json_report_deterministic(self, runner):
        args = [
            "--format", "json", "rationalize",
            str(FIXTURES / "strategies" / "session-rationalize.json"),
        ]
        out1 = runner.invoke(main, args).output
        out2 = runner.invoke(main, args).output
        assert out1 == out2
        payload = json.loads(out1)
        assert payload["witness_lambda"]["w1"] == "1/4"


class TestChoquetAndMobius:
    def test_choquet_value(self, runner, tmp_path):
        act = tmp_path / "act.json"
        act.write_text(json.dumps({"w1": "3", "w2": "4", "w3": "2"}))
        res = invoke(
            runner, "choquet", FIXTURES / "strategies" / "session-maps.json",
            "--model", "capacity", "--act", act,
        )
        assert res.exit_code == 0
        assert "7/3" in res.output

    def test_mobius_masses(self, runner):
        res = invoke(
            runner, "mobius", FIXTURES / "strategies" / "session-maps.json",
            "--model", "capacity",
        )
        assert res.exit_code == 0
        assert "w1|w2|w3: 1/3" in res.output

    def test_mobius_invert_from_masses(self, runner):
        res = invoke(
            runner, "mobius", FIXTURES / "strategies" / "session-maps.json",
            "--model", "exact", "--invert",
        )
        assert res.exit_code == 0
        assert "w1|w2: 2/3" in res.output

    def test_bad_act_vector(self, runner, tmp_path):
        act = tmp_path / "act.json"
        act.write_text(json.dumps({"w1": "1"}))
        res = invoke(
            runner, "choquet", FIXTURES / "strategies" / "session-maps.json",
            "--model", "capacity", "--act", act,
        )
        assert res.exit_code == 2
