"""Likelihood assessments over a finite universe of statements, bets on
statements, and the axiom checkers that grade an assessment's logical
coherence.

An assessment is the observable primitive: exact-rational likelihood
values pi over a finite formula universe.  Preference between bets is
induced by expected value, so the checkers below reduce each rationality
axiom to arithmetic (in)equalities on pi.  All checks are relative to
the elicited universe: instances that would need a compound statement
the universe lacks are reported as untestable, never silently passed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .logic import FALSE, TRUE, Formula, Language, Theory, unparse

ZERO = Fraction(0)
ONE = Fraction(1)


class AssessmentError(ValueError):
    pass


class Assessment:
    """A map pi from a finite formula universe to [0, 1], exact rationals.

    TRUE and FALSE always belong to the universe; when missing from the
    input they are added with the normalized values 1 and 0.
    """

    def __init__(self, language: Language, pi, texts=None):
        self.language = language
        values: dict[Formula, Fraction] = {}
        order: list[Formula] = []
        for f, v in pi.items() if isinstance(pi, dict) else pi:
            v = Fraction(v)
            if f in values:
                raise AssessmentError(f"duplicate formula in universe: {unparse(f)}")
            if not ZERO <= v <= ONE:
                raise AssessmentError(
                    f"pi({unparse(f)}) = {v} falls outside [0, 1]"
                )
            values[f] = v
            order.append(f)
        if TRUE not in values:
            values[TRUE] = ONE
            order.append(TRUE)
        if FALSE not in values:
            values[FALSE] = ZERO
            order.append(FALSE)
        self.pi = values
        self.formulas = tuple(order)
        self._texts = {f: unparse(f) for f in order}
        if texts:
            self._texts.update({f: t for f, t in texts.items() if f in values})
        by_sat: dict[int, list[Formula]] = {}
        for f in order:
            by_sat.setdefault(language.sat(f), []).append(f)
        for members in by_sat.values():
            members.sort(key=self._texts.__getitem__)
        self._by_sat = by_sat

    def value(self, f: Formula) -> Fraction:
        try:
            return self.pi[f]
        except KeyError:
            raise AssessmentError(
                f"formula outside the assessed universe: {unparse(f)}"
            ) from None

    def text(self, f: Formula) -> str:
        return self._texts.get(f) or unparse(f)

    def find_equivalent(self, sat_bits: int) -> Formula | None:
        """The first (by text) universe member with the given valuation set."""
        members = self._by_sat.get(sat_bits)
        return members[0] if members else None

    def sorted_formulas(self) -> list[Formula]:
        return sorted(self.formulas, key=self._texts.__getitem__)


class Bet:
    """A finitely supported lottery over primitive one-statement bets."""

    def __init__(self, weights):
        items = list(weights.items() if isinstance(weights, dict) else weights)
        if not items:
            raise AssessmentError("a bet needs nonempty support")
        self.weights = {}
        for f, w in items:
            w = Fraction(w)
            if w <= 0:
                raise AssessmentError("bet weights must be positive")
            self.weights[f] = self.weights.get(f, ZERO) + w
        if sum(self.weights.values()) != ONE:
            raise AssessmentError("bet weights must sum to exactly 1")

    @staticmethod
    def primitive(f: Formula) -> "Bet":
        return Bet({f: ONE})

    @staticmethod
    def mix(b1: "Bet", b2: "Bet", alpha) -> "Bet":
        alpha = Fraction(alpha)
        if not ZERO <= alpha <= ONE:
            raise AssessmentError("mixture weight outside [0, 1]")
        out: dict[Formula, Fraction] = {}
        if alpha > 0:
            for f, w in b1.weights.items():
                out[f] = out.get(f, ZERO) + alpha * w
        if alpha < 1:
            for f, w in b2.weights.items():
                out[f] = out.get(f, ZERO) + (ONE - alpha) * w
        return Bet(out)


def bet_value(assessment: Assessment, bet: Bet) -> Fraction:
    """Expected value of a bet: the pi-weighted sum over its support."""
    return sum(w * assessment.value(f) for f, w in bet.weights.items())


@dataclass
class Violation:
    axiom: str
    formulas: tuple[str, ...]
    lhs: Fraction
    rhs: Fraction
    requirement: str

    def to_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "formulas": list(self.formulas),
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "requirement": self.requirement,
        }


@dataclass
class AxiomReport:
    axiom: str
    passed: bool
    violations: list[Violation] = field(default_factory=list)
    untestable: list[str] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "passed": self.passed,
            "violations": [v.to_dict() for v in self.violations],
            "untestable": list(self.untestable),
            "meta": self.meta,
        }


def _report(axiom, violations, untestable=None, meta=None) -> AxiomReport:
    violations.sort(key=lambda v: v.formulas)
    untestable = sorted(untestable or [])
    return AxiomReport(axiom, not violations, violations, untestable, meta or {})


def check_nt(a: Assessment) -> AxiomReport:
    """Non-Triviality: certainty is valued 1, impossibility 0, and every
    value lies in [0, 1]."""
    violations = []
    if a.value(TRUE) != ONE:
        violations.append(
            Violation("NT", ("T",), a.value(TRUE), ONE, "pi(T) = 1")
        )
    if a.value(FALSE) != ZERO:
        violations.append(
            Violation("NT", ("F",), a.value(FALSE), ZERO, "pi(F) = 0")
        )
    for f in a.sorted_formulas():
        v = a.value(f)
        if not ZERO <= v <= ONE:  # guarded at construction; kept for loaded data
            violations.append(
                Violation("NT", (a.text(f),), v, ONE, "0 <= pi <= 1")
            )
    return _report("NT", violations)


def check_e(a: Assessment) -> AxiomReport:
    """Equivalence: logically equivalent statements get equal values."""
    violations = []
    fs = a.sorted_formulas()
    for f, g in itertools.combinations(fs, 2):
        if a.language.equivalent(f, g) and a.value(f) != a.value(g):
            violations.append(
                Violation(
                    "E",
                    (a.text(f), a.text(g)),
                    a.value(f),
                    a.value(g),
                    f"pi({a.text(f)}) = pi({a.text(g)})",
                )
            )
    return _report("E", violations)


def check_i(a: Assessment) -> AxiomReport:
    """Implication: a statement never outvalues one it entails."""
    violations = []
    fs = a.sorted_formulas()
    for f in fs:
        for g in fs:
            if f is g:
                continue
            if a.language.implies(f, g) and a.value(g) < a.value(f):
                violations.append(
                    Violation(
                        "I",
                        (a.text(f), a.text(g)),
                        a.value(f),
                        a.value(g),
                        f"{a.text(f)} implies {a.text(g)} so "
                        f"pi({a.text(g)}) >= pi({a.text(f)})",
                    )
                )
    return _report("I", violations)


def check_ie(a: Assessment, n_max: int = 3) -> AxiomReport:
    """Inclusion/Exclusion: for every family of up to ``n_max`` statements
    below a common consequent, the alternating conjunction sum stays
    within the consequent's value.

    For a family ``phi_1..phi_k`` all entailing ``psi`` the inequality is

        pi(psi) + sum over even nonempty I of pi(AND phi_I)
                >= sum over odd I of pi(AND phi_I)

    A singleton subset's conjunction is the member itself and uses its own
    value; proper conjunctions are looked up among universe members up to
    logical equivalence (first by text when several qualify, which only
    matters if equivalence is already violated).  A family whose
    conjunction the universe lacks is reported untestable.
    """
    violations = []
    untestable = []
    fs = a.sorted_formulas()
    lang = a.language
    for psi in fs:
        ants = [f for f in fs if lang.implies(f, psi)]
        for k in range(1, n_max + 1):
            for family in itertools.combinations(ants, k):
                even = ZERO
                odd = ZERO
                missing = None
                for r in range(1, k + 1):
                    for subset in itertools.combinations(family, r):
                        if r == 1:
                            member = subset[0]
                        else:
                            bits = lang.full_mask
                            for f in subset:
                                bits &= lang.sat(f)
                            member = a.find_equivalent(bits)
                        if member is None:
                            missing = " & ".join(a.text(f) for f in subset)
                            break
                        if r % 2 == 0:
                            even += a.value(member)
                        else:
                            odd += a.value(member)
                    if missing:
                        break
                if missing:
                    untestable.append(
                        "family {%s} under %s: conjunction (%s) not assessed"
                        % (", ".join(a.text(f) for f in family), a.text(psi), missing)
                    )
                    continue
                lhs = a.value(psi) + even
                if lhs < odd:
                    violations.append(
                        Violation(
                            "IE",
                            (a.text(psi),) + tuple(a.text(f) for f in family),
                            lhs,
                            odd,
                            f"pi({a.text(psi)}) + even conjunctions >= odd conjunctions",
                        )
                    )
    return _report("IE", violations, untestable, {"n_max": n_max})


def check_a(a: Assessment) -> AxiomReport:
    """Additivity: incompatible statements' values add up to the value of
    their disjunction, whenever the disjunction is assessed."""
    violations = []
    untestable = []
    fs = a.sorted_formulas()
    lang = a.language
    for i, f in enumerate(fs):
        for g in fs[i:]:
            if lang.sat(f) & lang.sat(g):
                continue
            member = a.find_equivalent(lang.sat(f) | lang.sat(g))
            if member is None:
                untestable.append(
                    f"disjoint pair ({a.text(f)}, {a.text(g)}): disjunction not assessed"
                )
                continue
            if a.value(f) + a.value(g) != a.value(member):
                violations.append(
                    Violation(
                        "A",
                        (a.text(f), a.text(g), a.text(member)),
                        a.value(f) + a.value(g),
                        a.value(member),
                        f"pi({a.text(f)}) + pi({a.text(g)}) = pi({a.text(member)})",
                    )
                )
    return _report("A", violations, untestable)


def check_s_i(a: Assessment, theory: Theory) -> AxiomReport:
    """Theory-relative Implication: entailment modulo the theory's
    statements never reverses the value order."""
    violations = []
    fs = a.sorted_formulas()
    for f in fs:
        for g in fs:
            if f is g:
                continue
            if theory.implies(f, g) and a.value(g) < a.value(f):
                violations.append(
                    Violation(
                        "S-I",
                        (a.text(f), a.text(g)),
                        a.value(f),
                        a.value(g),
                        f"{a.text(f)} implies {a.text(g)} under the theory so "
                        f"pi({a.text(g)}) >= pi({a.text(f)})",
                    )
                )
    return _report(
        "S-I", violations, meta={"theory": list(theory.generator_texts)}
    )


CHECKERS = {
    "nt": check_nt,
    "e": check_e,
    "i": check_i,
    "ie": check_ie,
    "a": check_a,
}
