"""Constructive builders that turn an assessment (or a model) into a
subjective state-space model with prescribed structure, together with a
verified certificate of the postconditions.

Five constructions are provided:

* ``product``: one binary coordinate per assessed statement, product
  measure; always works under non-triviality but wastes structure.
* ``canonical_sound``: states are the atom valuations, truth is the
  classical one, the appraisal absorbs all incoherence (inner-extended
  off the named events).
* ``interval_additive``: initial segments of a rational partition of
  [0, 1] under length measure; truth is monotone, the appraisal additive.
* ``belief_lift``: states become nonempty events, Mobius masses become
  an additive measure; requires a totally monotone source appraisal.
* ``additive_sound``: classical truth plus a genuine probability on the
  valuations, when one exists and is pinned down by the universe.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .assessment import Assessment, check_a, check_e, check_i, check_nt
from .logic import FALSE, TRUE, Formula, unparse
from .model import ModelError, SubjectiveModel, classify_truth, mobius, represents

ZERO = Fraction(0)
ONE = Fraction(1)

MAX_PRODUCT_COORDS = 16
MAX_SOLVER_ATOMS = 10
MAX_LIFT_STATES = 12
_MAX_MATERIALIZED_FIELD_ATOMS = 12


class BuildError(ValueError):
    def __init__(self, message: str, axiom: str | None = None, report=None):
        super().__init__(message)
        self.axiom = axiom
        self.report = report


@dataclass
class CertEntry:
    name: str
    ok: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


@dataclass
class BuildOutcome:
    model: SubjectiveModel
    construction: str
    certificate: list[CertEntry]
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.certificate)

    def to_dict(self) -> dict:
        return {
            "construction": self.construction,
            "certificate": [c.to_dict() for c in self.certificate],
            "notes": list(self.notes),
        }


def _require(report, axiom: str, what: str):
    if not report.passed:
        first = report.violations[0]
        raise BuildError(
            f"{what} requires axiom {axiom}; first violation: {first.requirement} "
            f"(lhs={first.lhs}, rhs={first.rhs})",
            axiom=axiom,
            report=report,
        )


def _certify_represents(model, assessment) -> CertEntry:
    rep = represents(model, assessment)
    if not rep.ok:
        raise BuildError("internal: built model fails to reproduce the assessment")
    return CertEntry("represents", True, "zero residual on every assessed statement")


def build_product_model(assessment: Assessment) -> BuildOutcome:
    """One independent binary coordinate per statement, with the product
    measure matching each statement's value as its marginal."""
    _require(check_nt(assessment), "NT", "product construction")
    coords = [f for f in assessment.formulas if f not in (TRUE, FALSE)]
    if len(coords) > MAX_PRODUCT_COORDS:
        raise BuildError(
            f"product construction capped at {MAX_PRODUCT_COORDS} statements, "
            f"got {len(coords)}"
        )
    m = len(coords)
    states = ["w" + format(i, f"0{m}b")[::-1] if m else "w" for i in range(1 << m)]
    mass = {}
    for i, s in enumerate(states):
        p = ONE
        for j, f in enumerate(coords):
            pj = assessment.value(f)
            p *= pj if (i >> j) & 1 else ONE - pj
        mass[s] = p
    truth = {
        f: frozenset(states[i] for i in range(1 << m) if (i >> j) & 1)
        for j, f in enumerate(coords)
    }
    model = SubjectiveModel(
        assessment.language, states, truth, mass=mass, name="product"
    )
    cert = [
        _certify_represents(model, assessment),
        CertEntry("lambda additive", True, "product measure over independent coordinates"),
    ]
    notes = ["truth valuation ignores all logical structure between statements"]
    return BuildOutcome(model, "product", cert, notes)


def build_canonical_sound(assessment: Assessment) -> BuildOutcome:
    """States are the atom valuations and truth is classical; the
    appraisal carries the assessed values on the named events and is
    inner-extended elsewhere (largest assessed value of a named event
    inside)."""
    _require(check_nt(assessment), "NT", "canonical sound construction")
    _require(check_e(assessment), "E", "canonical sound construction")
    lang = assessment.language
    n = len(lang.atoms)
    states = ["v" + format(i, f"0{n}b")[::-1] if n else "v" for i in range(lang.n_valuations)]

    def event_of(bits: int) -> frozenset:
        return frozenset(states[i] for i in range(lang.n_valuations) if (bits >> i) & 1)

    truth = {f: event_of(lang.sat(f)) for f in assessment.formulas}
    lam = {}
    for f in assessment.formulas:
        lam[truth[f]] = assessment.value(f)
    lam[frozenset()] = ZERO
    lam[frozenset(states)] = ONE

    model = SubjectiveModel(assessment.language, states, truth, lam=lam, name="canonical-sound")
    notes = []
    atoms = model.field_atoms()
    if len(atoms) <= _MAX_MATERIALIZED_FIELD_ATOMS and lang.n_valuations <= 4096:
        state_bit = {s: 1 << i for i, s in enumerate(states)}
        for ev in model.field_events():
            if ev in model.lam:
                continue
            bits = 0
            for s in ev:
                bits |= state_bit[s]
            best = ZERO
            for f in assessment.formulas:
                if lang.sat(f) & ~bits == 0:
                    best = max(best, assessment.value(f))
            model.lam[ev] = best
        notes.append("appraisal inner-extended to the generated field")
    else:
        notes.append("generated field too large to materialize; appraisal kept on named events")

    cert = [_certify_represents(model, assessment)]
    flags = classify_truth(model, assessment.formulas)
    cert.append(
        CertEntry("t sound", flags.sound, "classical valuation over atom assignments")
    )
    i_report = check_i(assessment)
    if i_report.passed and len(atoms) <= _MAX_MATERIALIZED_FIELD_ATOMS:
        blocks = atoms
        mono = all(
            model.lam[ev] <= model.lam[ev | b]
            for ev in model.lam
            for b in blocks
            if not b <= ev and (ev | b) in model.lam
        )
        cert.append(CertEntry("lambda monotone on field", mono, "follows from axiom I"))
    elif not i_report.passed:
        notes.append("axiom I fails, so the appraisal is not monotone")
    return BuildOutcome(model, "canonical-sound", cert, notes)


def build_interval_additive(assessment: Assessment) -> BuildOutcome:
    """Each statement becomes the initial segment [0, pi] of a rational
    partition of the unit interval; length measure is additive and the
    nested segments make truth monotone."""
    _require(check_nt(assessment), "NT", "interval construction")
    _require(check_i(assessment), "I", "interval construction")
    cuts = sorted({ZERO, ONE} | {assessment.value(f) for f in assessment.formulas})
    states = [f"({cuts[i]},{cuts[i + 1]}]" for i in range(len(cuts) - 1)]
    mass = {s: cuts[i + 1] - cuts[i] for i, s in enumerate(states)}
    truth = {}
    for f in assessment.formulas:
        v = assessment.value(f)
        truth[f] = frozenset(states[i] for i in range(len(states)) if cuts[i + 1] <= v)
    model = SubjectiveModel(
        assessment.language,
        states,
        truth,
        mass=mass,
        name="interval-additive",
        exact_lookup=True,
    )
    cert = [_certify_represents(model, assessment)]
    flags = classify_truth(model, assessment.formulas)
    cert.append(CertEntry("t monotone", flags.monotone, "initial segments are nested"))
    cert.append(CertEntry("lambda additive", True, "length measure on a finite partition"))
    return BuildOutcome(model, "interval-additive", cert, [])


def build_belief_lift(
    model: SubjectiveModel, assessment: Assessment | None = None
) -> BuildOutcome:
    """Lift a totally monotone appraisal to an additive one: states become
    the focal events (positive Mobius mass), carrying their masses; a
    statement is true at a state-event exactly when that event sits inside
    its old truth set.  Zero-mass events are omitted; they would never
    contribute to any likelihood."""
    if len(model.states) > MAX_LIFT_STATES:
        raise BuildError(f"belief lift capped at {MAX_LIFT_STATES} states")
    try:
        masses = mobius(model)
    except ModelError as e:
        raise BuildError(f"belief lift needs the appraisal on the full powerset: {e}")
    negative = sorted(
        "|".join(sorted(ev)) for ev, m in masses.items() if m < 0
    )
    if negative:
        raise BuildError(
            "not a belief function: negative Mobius mass on " + ", ".join(negative)
        )

    def label(ev: frozenset) -> str:
        return "+".join(sorted(ev))

    subsets = sorted(
        (ev for ev, m in masses.items() if m > 0), key=lambda ev: (len(ev), label(ev))
    )
    states = [label(ev) for ev in subsets]
    mass = {label(ev): masses[ev] for ev in subsets}
    truth = {}
    for f in model.truth_domain():
        base = model.truth[f]
        truth[f] = frozenset(label(ev) for ev in subsets if ev <= base)
    lifted = SubjectiveModel(
        model.language,
        states,
        truth,
        mass=mass,
        name="belief-lift",
        exact_lookup=True,
    )
    lifted.grounded = False  # the lift rule, not the valuation rule, extends t

    cert = []
    preserved = all(
        model.lambda_of(model.truth[f]) == lifted.lambda_of(lifted.truth[f])
        for f in model.truth_domain()
    )
    if not preserved:
        raise BuildError("internal: lift failed to preserve statement likelihoods")
    cert.append(
        CertEntry("likelihoods preserved", True, "lambda(t(phi)) unchanged for every statement")
    )
    cert.append(CertEntry("lambda additive", True, "Mobius masses as state masses"))
    flags = classify_truth(lifted, model.truth_domain())
    cert.append(
        CertEntry(
            "t exact and and-distributive",
            flags.exact and flags.and_distributive,
            "subset test distributes over intersections",
        )
    )
    if assessment is not None:
        cert.insert(0, _certify_represents(lifted, assessment))
    return BuildOutcome(lifted, "belief-lift", cert, [])


def _solve_valuation_masses(assessment: Assessment):
    """Row-reduce the system  sum of masses over sat(phi) = pi(phi).

    Returns (status, data): status is "unique" (data: mass vector),
    "inconsistent" (data: None) or "underdetermined" (data: (pinned
    column values, free column set))."""
    lang = assessment.language
    nv = lang.n_valuations
    mat = []
    for f in assessment.formulas:
        bits = lang.sat(f)
        row = [ONE if (bits >> i) & 1 else ZERO for i in range(nv)]
        row.append(assessment.value(f))
        mat.append(row)
    pivots = []
    r = 0
    for c in range(nv):
        pr = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        pv = mat[r][c]
        mat[r] = [v / pv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                factor = mat[i][c]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[r])]
        pivots.append((r, c))
        r += 1
        if r == len(mat):
            break
    for i in range(r, len(mat)):
        if mat[i][-1] != 0:
            return "inconsistent", None
    pivot_cols = {c for _, c in pivots}
    free_cols = [c for c in range(nv) if c not in pivot_cols]
    if not free_cols:
        x = [ZERO] * nv
        for row, col in pivots:
            x[col] = mat[row][-1]
        return "unique", x
    pinned = {}
    for row, col in pivots:
        if all(mat[row][fc] == 0 for fc in free_cols):
            pinned[col] = mat[row][-1]
    return "underdetermined", (pinned, free_cols)


def build_additive_sound(
    assessment: Assessment, complete_maxent: bool = False
) -> BuildOutcome:
    """Classical truth over the valuations plus an additive measure
    reproducing the assessment.  Fails loudly when the universe does not
    pin every valuation's mass down; ``complete_maxent`` instead spreads
    the unassigned mass uniformly over the unresolved valuations (clearly
    non-canonical) and verifies the result."""
    _require(check_nt(assessment), "NT", "additive sound construction")
    _require(check_a(assessment), "A", "additive sound construction")
    lang = assessment.language
    if len(lang.atoms) > MAX_SOLVER_ATOMS:
        raise BuildError(f"additive sound construction capped at {MAX_SOLVER_ATOMS} atoms")
    nv = lang.n_valuations
    status, data = _solve_valuation_masses(assessment)
    notes = []
    if status == "inconsistent":
        raise BuildError(
            "no additive measure on the valuations reproduces the assessment "
            "(additivity fails at the representation level)",
            axiom="A",
        )
    if status == "unique":
        masses = data
    else:
        pinned, free_cols = data
        unresolved = sorted(
            unparse(lang.minterm(c)) for c in range(nv) if c not in pinned
        )
        if not complete_maxent:
            raise BuildError(
                "universe under-determined: no assessed combination pins down "
                + ", ".join(unresolved)
            )
        residual = ONE - sum(pinned.values(), ZERO)
        n_open = nv - len(pinned)
        share = residual / n_open
        masses = [pinned.get(c, share) for c in range(nv)]
        for f in assessment.formulas:
            bits = lang.sat(f)
            got = sum(masses[i] for i in range(nv) if (bits >> i) & 1)
            if got != assessment.value(f):
                raise BuildError(
                    "uniform completion of the unresolved valuations does not "
                    f"reproduce pi({assessment.text(f)}); the universe is "
                    "genuinely under-determined"
                )
        notes.append(
            "non-canonical: unresolved valuations filled uniformly ("
            + ", ".join(unresolved)
            + ")"
        )
    bad = [i for i, v in enumerate(masses) if v < 0]
    if bad:
        raise BuildError(
            "no additive measure reproduces the assessment: forced negative "
            "mass on " + ", ".join(unparse(lang.minterm(i)) for i in bad),
            axiom="A",
        )

    n = len(lang.atoms)
    states = ["v" + format(i, f"0{n}b")[::-1] if n else "v" for i in range(nv)]
    truth = {
        f: frozenset(states[i] for i in range(nv) if (lang.sat(f) >> i) & 1)
        for f in assessment.formulas
    }
    mass = {states[i]: masses[i] for i in range(nv)}
    model = SubjectiveModel(
        lang, states, truth, mass=mass, name="additive-sound"
    )
    cert = [_certify_represents(model, assessment)]
    flags = classify_truth(model, assessment.formulas)
    cert.append(CertEntry("t sound", flags.sound, "classical valuation over atom assignments"))
    cert.append(CertEntry("lambda additive", True, "measure on the valuations"))
    return BuildOutcome(model, "additive-sound", cert, notes)


BUILDERS = {
    "product": build_product_model,
    "canonical-sound": build_canonical_sound,
    "interval-additive": build_interval_additive,
    "additive-sound": build_additive_sound,
}
