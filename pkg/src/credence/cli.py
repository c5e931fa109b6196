"""Command-line front end.

Commands operate on a session file that names the atom set and the
input files (assessment, theory, models, strategies).  Exit codes:
0 = pass/success, 1 = substantive failure (axiom violation, strategy
not rationalizable, refused identification), 2 = input error.
Reports are deterministic: statements in text order, rationals reduced.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from fractions import Fraction

import click

from . import assessment as axioms
from . import construct, files, games, identify
from .logic import LogicError
from .model import ModelError, choquet, classify_lambda, classify_truth, mobius, represents
from .model import event_label, inverse_mobius

PASS, FAIL, BAD_INPUT = 0, 1, 2

AXIOM_ORDER = ["nt", "e", "i", "ie", "a", "s-i"]
AXIOM_TITLES = {
    "nt": "Non-Triviality (NT)",
    "e": "Equivalence (E)",
    "i": "Implication (I)",
    "ie": "Inclusion/Exclusion (IE)",
    "a": "Additivity (A)",
    "s-i": "Theory Implication (S-I)",
}


class _Ctx:
    def __init__(self):
        self.format = "text"
        self.seed = None


def _emit(ctx: _Ctx, payload: dict, text_lines: list[str]):
    if ctx.format == "json":
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            click.echo(line)


def _fail_input(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(BAD_INPUT)


def _load_session(path) -> files.Session:
    try:
        return files.load_session(path)
    except (files.FileFormatError, LogicError, ModelError, axioms.AssessmentError, ValueError) as e:
        _fail_input(str(e))


@click.group()
@click.option("--format", "output_format", type=click.Choice(["text", "json"]), default=None,
              help="Report format; defaults to the session's setting.")
@click.option("--seed", type=int, default=None,
              help="Seed for randomized generators; current commands are deterministic.")
@click.pass_context
def main(ctx, output_format, seed):
    """Grade likelihood assessments, build state-space models, identify
    understood implications, and test rationalizability."""
    ctx.obj = _Ctx()
    ctx.obj.format = output_format
    ctx.obj.seed = seed


def _resolve_format(ctx: _Ctx, session: files.Session):
    if ctx.format is None:
        ctx.format = session.output_format or "text"


def _report_lines(report) -> list[str]:
    title = AXIOM_TITLES.get(report.axiom.lower(), report.axiom)
    lines = [f"{title}: {'pass' if report.passed else 'FAIL'}"]
    for v in report.violations:
        lines.append(
            f"  violated: {v.requirement}  [lhs={v.lhs}, rhs={v.rhs}]"
        )
    if report.untestable:
        lines.append(f"  untestable instances: {len(report.untestable)}")
        for u in report.untestable[:10]:
            lines.append(f"    - {u}")
        if len(report.untestable) > 10:
            lines.append(f"    ... and {len(report.untestable) - 10} more")
    return lines


@main.command()
@click.argument("session_file", type=click.Path())
@click.argument("which", nargs=-1)
@click.option("--theory", "theory_path", type=click.Path(), default=None,
              help="Theory file overriding the session's for s-i.")
@click.option("--n-max", type=int, default=3, show_default=True,
              help="Largest antecedent family size for the IE check.")
@click.pass_obj
def check(ctx, session_file, which, theory_path, n_max):
    """Check axioms (any of: nt e i ie a s-i; default all applicable)."""
    session = _load_session(session_file)
    _resolve_format(ctx, session)
    if session.assessment is None:
        _fail_input("session declares no assessment")
    theory = session.theory
    if theory_path:
        try:
            theory = files.load_theory(Path(theory_path), session.language)
        except (files.FileFormatError, LogicError) as e:
            _fail_input(str(e))
    which = [w.lower() for w in which]
    for w in which:
        if w not in AXIOM_ORDER:
            _fail_input(f"unknown axiom {w!r}; choose from {' '.join(AXIOM_ORDER)}")
    if not which:
        which = [a for a in AXIOM_ORDER if a != "s-i" or theory is not None]
    if "s-i" in which and theory is None:
        _fail_input("the s-i check needs a theory file")

    reports = []
    for w in which:
        if w == "s-i":
            reports.append(axioms.check_s_i(session.assessment, theory))
        elif w == "ie":
            reports.append(axioms.check_ie(session.assessment, n_max=n_max))
        else:
            reports.append(axioms.CHECKERS[w](session.assessment))
    lines = []
    for r in reports:
        lines.extend(_report_lines(r))
    payload = {"command": "check", "reports": [r.to_dict() for r in reports]}
    _emit(ctx, payload, lines)
    sys.exit(PASS if all(r.passed for r in reports) else FAIL)


@main.command()
@click.argument("session_file", type=click.Path())
@click.argument("construction", type=click.Choice(
    ["product", "canonical-sound", "interval-additive", "additive-sound", "belief-lift"]
))
@click.option("--out", type=click.Path(), default=None, help="Write the model JSON here.")
@click.option("--model", "model_name", default=None,
              help="Source model for belief-lift.")
@click.option("--complete-maxent", is_flag=True,
              help="Fill under-determined valuations uniformly (additive-sound only).")
@click.pass_obj
def build(ctx, session_file, construction, out, model_name, complete_maxent):
    """Build a representing model and print its certificate."""
    session = _load_session(session_file)
    _resolve_format(ctx, session)
    try:
        if construction == "belief-lift":
            source = session.model(model_name)
            outcome = construct.build_belief_lift(source, session.assessment)
        else:
            if session.assessment is None:
                _fail_input("session declares no assessment")
            if construction == "additive-sound":
                outcome = construct.build_additive_sound(
                    session.assessment, complete_maxent=complete_maxent
                )
            else:
                outcome = construct.BUILDERS[construction](session.assessment)
    except construct.BuildError as e:
        click.echo(f"build failed: {e}", err=True)
        sys.exit(FAIL)
    except (files.FileFormatError, ModelError) as e:
        _fail_input(str(e))
    model_dict = files.model_to_dict(outcome.model)
    if out:
        with open(out, "w") as fh:
            json.dump(model_dict, fh, indent=2, sort_keys=True)
    lines = [f"construction: {outcome.construction}"]
    for c in outcome.certificate:
        lines.append(f"  [{'ok' if c.ok else 'FAIL'}] {c.name}: {c.detail}")
    for n in outcome.notes:
        lines.append(f"  note: {n}")
    if out:
        lines.append(f"model written to {out}")
    payload = {"command": "build", **outcome.to_dict()}
    if not out:
        payload["model"] = model_dict
    _emit(ctx, payload, lines)
    sys.exit(PASS if outcome.ok else FAIL)


@main.command(name="identify")
@click.argument("session_file", type=click.Path())
@click.option("--theory", "theory_path", type=click.Path(), default=None)
@click.pass_obj
def identify_cmd(ctx, session_file, theory_path):
    """List which entailments the assessment respects; with a theory,
    identify the largest understood sub-theory."""
    session = _load_session(session_file)
    _resolve_format(ctx, session)
    if session.assessment is None:
        _fail_input("session declares no assessment")
    theory = session.theory
    if theory_path:
        try:
            theory = files.load_theory(Path(theory_path), session.language)
        except (files.FileFormatError, LogicError) as e:
            _fail_input(str(e))
    try:
        verdicts = identify.understood_implications(session.assessment)
    except identify.IdentifyError as e:
        _fail_input(str(e))
    misunderstood = [v for v in verdicts if not v.understood]
    lines = [f"implications within the universe: {len(verdicts)}"]
    for v in misunderstood:
        lines.append(
            f"  NOT understood: {v.antecedent} implies {v.consequent} "
            f"(margin {v.margin})"
        )
    if not misunderstood:
        lines.append("  all understood")
    payload = {
        "command": "identify",
        "verdicts": [v.to_dict() for v in verdicts],
    }
    substantive_failure = bool(misunderstood)

    if theory is not None:
        try:
            sub = identify.largest_subtheory(session.assessment, theory)
            lines.append(
                "largest understood sub-theory: {"
                + ", ".join(sub.generator_texts)
                + "}"
                + ("" if sub.unique else "  (not unique; see candidates)")
            )
            payload["largest_subtheory"] = sub.to_dict()
            if not sub.unique:
                substantive_failure = True
        except identify.IdentifyError as e:
            lines.append(f"largest sub-theory: refused ({e})")
            payload["largest_subtheory"] = {"refused": str(e)}
            substantive_failure = True
        try:
            cert = identify.subtheory_via_certainty(session.assessment, theory)
            lines.append(
                "certainty-based sub-theory: {" + ", ".join(cert.generator_texts) + "}"
            )
            payload["certainty_subtheory"] = cert.to_dict()
        except identify.IdentifyError as e:
            lines.append(f"certainty-based sub-theory: refused ({e})")
            payload["certainty_subtheory"] = {"refused": str(e)}
            substantive_failure = True
    _emit(ctx, payload, lines)
    sys.exit(FAIL if substantive_failure else PASS)


@main.command()
@click.argument("session_file", type=click.Path())
@click.option("--choice", default=None, help="Strategy to test (default: session's).")
@click.option("--model", "model_name", default=None)
@click.option("--additive-only", is_flag=True, help="Allow only additive priors.")
@click.option("--weak", is_flag=True, help="Use weak instead of strict dominance.")
@click.pass_obj
def rationalize(ctx, session_file, choice, model_name, additive_only, weak):
    """Decide whether the chosen strategy is rationalizable."""
    session = _load_session(session_file)
    _resolve_format(ctx, session)
    if not session.strategies:
        _fail_input("session declares no strategies")
    choice = choice or session.choice
    if choice is None:
        _fail_input("no strategy chosen; set 'choice' in the session or pass --choice")
    by_name = {s.name: s for s in session.strategies}
    if choice not in by_name:
        _fail_input(f"no strategy named {choice!r}")
    try:
        model = session.model(model_name)
        result = games.rationalizable(
            by_name[choice],
            session.strategies,
            model,
            additive_only=additive_only,
            weak=weak,
        )
    except (games.GamesError, files.FileFormatError, ModelError) as e:
        _fail_input(str(e))
    lines = [
        f"strategy {choice}: "
        + ("rationalizable" if result.rationalizable else "NOT rationalizable")
        + f" ({result.mode})"
    ]
    if result.dominating_mixture is not None:
        mix = ", ".join(f"{n}: {v}" for n, v in result.dominating_mixture)
        lines.append(f"  dominated by mixture {{{mix}}} with margin {result.epsilon}")
    if result.choquet_values is not None:
        vals = ", ".join(f"{n}: {v}" for n, v in result.choquet_values)
        lines.append(f"  witness values  {vals}  (witness from {result.witness_source})")
    payload = {"command": "rationalize", **result.to_dict()}
    _emit(ctx, payload, lines)
    sys.exit(PASS if result.rationalizable else FAIL)


@main.command(name="choquet")
@click.argument("session_file", type=click.Path())
@click.option("--model", "model_name", default=None)
@click.option("--act", "act_path", type=click.Path(), required=True,
              help="JSON file mapping state labels to rationals.")
@click.pass_obj
def choquet_cmd(ctx, session_file, model_name, act_path):
    """Choquet integral of a state payoff vector under a model's appraisal."""
    session = _load_session(session_file)
    _resolve_format(ctx, session)
    try:
        model = session.model(model_name)
        vec = files.load_payoff_vector(Path(act_path), model)
        value = choquet(model, vec)
    except (files.FileFormatError, ModelError) as e:
        _fail_input(str(e))
    _emit(ctx, {"command": "choquet", "value": str(value)}, [f"choquet integral: {value}"])
    sys.exit(PASS)


@main.command(name="mobius")
@click.argument("session_file", type=click.Path())
@click.option("--model", "model_name", default=None)
@click.option("--invert", is_flag=True,
              help="Rebuild the appraisal from the model's masses instead.")
@click.pass_obj
def mobius_cmd(ctx, session_file, model_name, invert):
    """Mobius masses of a model's appraisal (or the appraisal from masses)."""
    session = _load_session(session_file)
    _resolve_format(ctx, session)
    try:
        model = session.model(model_name)
        if invert:
            if model.mass is None:
                _fail_input("model carries no masses to invert")
            lam = inverse_mobius(
                {frozenset([s]): v for s, v in model.mass.items()}, model.states
            )
            out = {
                event_label(ev): str(v)
                for ev, v in sorted(lam.items(), key=lambda kv: (len(kv[0]), event_label(kv[0])))
            }
            title = "appraisal from masses"
        else:
            masses = mobius(model)
            out = {
                event_label(ev): str(v)
                for ev, v in sorted(masses.items(), key=lambda kv: (len(kv[0]), event_label(kv[0])))
                if v != 0
            }
            title = "mobius masses (zeros omitted)"
    except ModelError as e:
        _fail_input(str(e))
    lines = [f"{title}:"] + [f"  {k or '(empty)'}: {v}" for k, v in out.items()]
    _emit(ctx, {"command": "mobius", "values": out}, lines)
    sys.exit(PASS)


if __name__ == "__main__":
    main()
