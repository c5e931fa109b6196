"""Shared generators and independent oracles for the test suite.

The oracles here recompute expected values by routes independent of the
implementation under test: direct recursive truth-table evaluation for
entailment, the textbook alternating-sum formula for Mobius masses, and
a simplex-grid search for dominance.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from credence.assessment import Assessment
from credence.logic import FALSE, TRUE, And, Atom, Const, Formula, Language, Not, Or

ZERO = Fraction(0)
ONE = Fraction(1)


def eval_formula(f: Formula, assignment: dict[str, bool]) -> bool:
    """Direct recursive evaluation, the oracle for the bitset semantics."""
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Atom):
        return assignment[f.name]
    if isinstance(f, Not):
        return not eval_formula(f.child, assignment)
    if isinstance(f, And):
        return eval_formula(f.left, assignment) and eval_formula(f.right, assignment)
    if isinstance(f, Or):
        return eval_formula(f.left, assignment) or eval_formula(f.right, assignment)
    raise TypeError(f)


def truth_table_implies(lang: Language, f: Formula, g: Formula) -> bool:
    for bits in range(lang.n_valuations):
        assignment = lang.valuation_atoms(bits)
        if eval_formula(f, assignment) and not eval_formula(g, assignment):
            return False
    return True


def mobius_oracle(states, lam) -> dict[frozenset, Fraction]:
    """m(A) = sum over B below A of (-1)^|A - B| * lam(B), literally."""
    out = {}
    states = list(states)
    for r in range(1, len(states) + 1):
        for combo in itertools.combinations(states, r):
            a = frozenset(combo)
            m = ZERO
            for k in range(len(a) + 1):
                for sub in itertools.combinations(sorted(a), k):
                    b = frozenset(sub)
                    m += (-1) ** (len(a) - len(b)) * lam[b]
            out[a] = m
    return out


def random_fraction(rng: random.Random, den_max: int = 8) -> Fraction:
    den = rng.randint(1, den_max)
    return Fraction(rng.randint(0, den), den)


def random_capacity(rng: random.Random, states, den_max: int = 8):
    """A random monotone set function with lam(empty)=0, lam(omega)=1."""
    states = list(states)
    lam = {frozenset(): ZERO}
    for r in range(1, len(states) + 1):
        for combo in itertools.combinations(states, r):
            ev = frozenset(combo)
            floor = max(
                (lam[frozenset(sub)] for sub in itertools.combinations(sorted(ev), r - 1)),
                default=ZERO,
            )
            lam[ev] = min(ONE, floor + random_fraction(rng, den_max) * (ONE - floor))
    lam[frozenset(states)] = ONE
    return lam


def full_closure_classes(lang: Language):
    """One canonical representative formula per logical equivalence class."""
    out = []
    for bits in range(1 << lang.n_valuations):
        out.append((bits, lang.formula_from_valuations(bits)))
    return out


def random_monotone_assessment(rng: random.Random, lang: Language, classes=None) -> Assessment:
    """An assessment on one representative per class whose values respect
    entailment (a random capacity on the valuation sets), so NT, E and I
    hold by construction."""
    if classes is None:
        classes = full_closure_classes(lang)
    by_size = sorted(classes, key=lambda kv: bin(kv[0]).count("1"))
    values: dict[int, Fraction] = {}
    for bits, _ in by_size:
        if bits == 0:
            values[bits] = ZERO
            continue
        if bits == lang.full_mask:
            values[bits] = ONE
            continue
        floor = max(
            (v for b, v in values.items() if b & ~bits == 0),
            default=ZERO,
        )
        ceil = min(
            (v for b, v in values.items() if bits & ~b == 0),
            default=ONE,
        )
        if floor > ceil:  # cannot happen for capacities built small-to-large
            floor = ceil
        values[bits] = floor + random_fraction(rng) * (ceil - floor)
    return Assessment(lang, {f: values[bits] for bits, f in classes})


def random_and_closed_universe(rng: random.Random, lang: Language, n_base: int = 4):
    """Valuation-set classes closed under intersection, as formulas."""
    bases = set()
    while len(bases) < n_base:
        bits = rng.randrange(1, lang.full_mask + 1)
        bases.add(bits)
    closed = set(bases) | {0, lang.full_mask}
    changed = True
    while changed:
        changed = False
        for a, b in itertools.combinations(sorted(closed), 2):
            if a & b not in closed:
                closed.add(a & b)
                changed = True
    return [(bits, lang.formula_from_valuations(bits)) for bits in sorted(closed)]


def grid_dominance_oracle(x, alternatives, denominator: int = 12):
    """Search the mixture simplex at the given denominator for a strict
    pointwise dominator; can only confirm domination."""
    states = sorted(x)
    n = len(alternatives)
    for combo in itertools.combinations(
        range(denominator + n - 1), n - 1
    ):
        parts = []
        prev = -1
        for c in combo:
            parts.append(c - prev - 1)
            prev = c
        parts.append(denominator + n - 2 - prev)
        weights = [Fraction(p, denominator) for p in parts]
        if all(
            sum(w * alt[s] for w, alt in zip(weights, alternatives)) > x[s]
            for s in states
        ):
            return weights
    return None
