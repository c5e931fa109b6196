"""JSON file schemas: sessions, assessments, theories, models, strategies
and payoff vectors.  All rationals travel as strings like "3/4" (or
integer strings); floats are rejected to keep arithmetic exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .assessment import Assessment
from .games import Strategy
from .logic import FALSE, TRUE, Language, Theory, unparse
from .model import SubjectiveModel, event_label


class FileFormatError(ValueError):
    pass


def parse_rational(value) -> Fraction:
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as e:
            raise FileFormatError(f"bad rational {value!r}: {e}") from None
    raise FileFormatError(
        f"rationals must be strings like '3/4' or integers, got {value!r}"
    )


def format_rational(value: Fraction) -> str:
    return str(value)


def _read_json(path: Path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise FileFormatError(f"file not found: {path}") from None
    except json.JSONDecodeError as e:
        raise FileFormatError(f"invalid JSON in {path}: {e}") from None


def _expect(data, key, path, kind=dict):
    if key not in data:
        raise FileFormatError(f"{path}: missing key {key!r}")
    if not isinstance(data[key], kind):
        raise FileFormatError(f"{path}: key {key!r} must be a {kind.__name__}")
    return data[key]


def load_assessment(path: Path, language: Language | None = None) -> Assessment:
    data = _read_json(path)
    atoms = _expect(data, "atoms", path, list)
    if language is None:
        language = Language(atoms)
    elif tuple(atoms) != language.atoms:
        raise FileFormatError(
            f"{path}: atom list {atoms} disagrees with the session's {list(language.atoms)}"
        )
    pi = []
    texts = {}
    for text, value in _expect(data, "pi", path).items():
        f = language.parse(text)
        pi.append((f, parse_rational(value)))
        texts[f] = text
    return Assessment(language, pi, texts=texts)


def assessment_to_dict(assessment: Assessment) -> dict:
    return {
        "atoms": list(assessment.language.atoms),
        "pi": {
            assessment.text(f): format_rational(assessment.value(f))
            for f in assessment.sorted_formulas()
        },
    }


def load_theory(path: Path, language: Language) -> Theory:
    data = _read_json(path)
    texts = _expect(data, "generators", path, list)
    return Theory.from_texts(language, texts)


def _event_from_key(key: str, states) -> frozenset:
    if key == "":
        return frozenset()
    labels = key.split("|")
    unknown = [l for l in labels if l not in states]
    if unknown:
        raise FileFormatError(f"unknown state labels in event {key!r}: {unknown}")
    return frozenset(labels)


def load_model(path: Path, language: Language, name: str | None = None) -> SubjectiveModel:
    data = _read_json(path)
    states = _expect(data, "states", path, list)
    truth = {}
    for text, labels in _expect(data, "t", path).items():
        truth[language.parse(text)] = frozenset(labels)
    lam = None
    if "lambda" in data:
        lam = {
            _event_from_key(k, set(states)): parse_rational(v)
            for k, v in data["lambda"].items()
        }
    mass = None
    if "mass" in data:
        mass = {s: parse_rational(v) for s, v in data["mass"].items()}
    return SubjectiveModel(
        language,
        states,
        truth,
        lam=lam,
        mass=mass,
        name=name or data.get("name"),
        exact_lookup=bool(data.get("exact_lookup", False)),
    )


def model_to_dict(model: SubjectiveModel) -> dict:
    out = {
        "states": list(model.states),
        "t": {
            unparse(f): sorted(ev)
            for f, ev in model.truth.items()
            if f not in (TRUE, FALSE)
        },
        "lambda": {
            event_label(ev): format_rational(v)
            for ev, v in sorted(model.lam.items(), key=lambda kv: (len(kv[0]), event_label(kv[0])))
        },
    }
    if model.mass is not None:
        out["mass"] = {s: format_rational(model.mass[s]) for s in model.states}
    if model.exact_lookup:
        out["exact_lookup"] = True
    return out


def load_strategies(path: Path, language: Language) -> list[Strategy]:
    data = _read_json(path)
    out = []
    for name, body in data.items():
        payoffs = _expect(body, "payoffs", f"{path}:{name}")
        out.append(
            Strategy(
                {language.parse(t): parse_rational(v) for t, v in payoffs.items()},
                name=name,
            )
        )
    return out


def load_payoff_vector(path: Path, model: SubjectiveModel) -> dict[str, Fraction]:
    data = _read_json(path)
    vec = {s: parse_rational(v) for s, v in data.items()}
    if set(vec) != set(model.states):
        raise FileFormatError(
            f"{path}: payoff vector must value exactly the model's states"
        )
    return vec


@dataclass
class Session:
    path: Path
    language: Language
    assessment: Assessment | None = None
    theory: Theory | None = None
    models: dict[str, SubjectiveModel] = field(default_factory=dict)
    strategies: list[Strategy] = field(default_factory=list)
    choice: str | None = None
    output_format: str = "text"

    def model(self, name: str | None) -> SubjectiveModel:
        if not self.models:
            raise FileFormatError("session declares no model files")
        if name is None:
            if len(self.models) == 1:
                return next(iter(self.models.values()))
            raise FileFormatError(
                "several models in session; pick one of: " + ", ".join(sorted(self.models))
            )
        if name not in self.models:
            raise FileFormatError(f"no model named {name!r} in session")
        return self.models[name]


def load_session(path) -> Session:
    path = Path(path)
    data = _read_json(path)
    base = path.parent
    atoms = _expect(data, "atoms", path, list)
    language = Language(atoms)
    session = Session(path=path, language=language)
    session.output_format = data.get("format", "text")
    if "assessment" in data:
        session.assessment = load_assessment(base / data["assessment"], language)
    if "theory" in data:
        session.theory = load_theory(base / data["theory"], language)
    for name, rel in data.get("models", {}).items():
        session.models[name] = load_model(base / rel, language, name)
    if "strategies" in data:
        session.strategies = load_strategies(base / data["strategies"], language)
    session.choice = data.get("choice")
    return session
