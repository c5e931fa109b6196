import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from credence.logic import (
    FALSE,
    TRUE,
    And,
    Atom,
    InconsistentTheoryError,
    Language,
    Not,
    Or,
    ParseError,
    Theory,
    UndeclaredAtomError,
    tautological_theory,
    theory_consistent,
    unparse,
)

from helpers import truth_table_implies

PQ = Language(["p", "q"])
P = Language(["p"])


def formulas(atoms=("p", "q"), max_depth=5):
    leaves = st.sampled_from([Atom(a) for a in atoms] + [TRUE, FALSE])
    return st.recursive(
        leaves,
        lambda inner: st.one_of(
            inner.map(Not),
            st.tuples(inner, inner).map(lambda t: And(*t)),
            st.tuples(inner, inner).map(lambda t: Or(*t)),
        ),
        max_leaves=2 ** max_depth,
    )


class TestParse:
    def test_and_not(self):
        assert PQ.parse("(p & !q)") == And(Atom("p"), Not(Atom("q")))

    def test_constant(self):
        assert PQ.parse("T") == TRUE
        assert PQ.parse("F") == FALSE

    def test_nested_with_constant(self):
        assert PQ.parse("((p | q) & F)") == And(Or(Atom("p"), Atom("q")), FALSE)

    def test_sugar_expands(self):
        assert PQ.parse("(p -> q)") == Or(Not(Atom("p")), Atom("q"))
        f = PQ.parse("(p <-> q)")
        assert PQ.equivalent(f, PQ.parse("((p & q) | (!p & !q))"))

    def test_syntax_error_position(self):
        with pytest.raises(ParseError) as e:
            PQ.parse("(p & ")
        assert e.value.position == 5

    def test_missing_connective(self):
        with pytest.raises(ParseError):
            PQ.parse("(p q)")

    def test_trailing_input(self):
        with pytest.raises(ParseError):
            PQ.parse("p q")

    def test_undeclared_atom(self):
        with pytest.raises(UndeclaredAtomError):
            PQ.parse("(p & r)")

    def test_bad_character(self):
        with pytest.raises(ParseError):
            PQ.parse("p + q")

    def test_atom_named_like_constant_rejected(self):
        with pytest.raises(Exception):
            Language(["T"])

    @given(formulas())
    @settings(max_examples=200)
    def test_unparse_roundtrip(self, f):
        assert PQ.parse(unparse(f)) == f


class TestSat:
    def test_single_atom(self):
        # valuation index 1 is the one making p true
        assert P.sat(Atom("p")) == 0b10

    def test_conjunction_is_intersection(self):
        assert PQ.sat(PQ.parse("(p & q)")) == PQ.sat(Atom("p")) & PQ.sat(Atom("q"))

    def test_excluded_middle(self):
        assert P.sat(P.parse("(p | !p)")) == P.full_mask

    def test_constants(self):
        assert PQ.sat(TRUE) == PQ.full_mask
        assert PQ.sat(FALSE) == 0

    @given(formulas())
    @settings(max_examples=200)
    def test_sat_matches_direct_evaluation(self, f):
        from helpers import eval_formula

        bits = PQ.sat(f)
        for i in range(PQ.n_valuations):
            assert bool((bits >> i) & 1) == eval_formula(f, PQ.valuation_atoms(i))


class TestImplication:
    def test_conjunction_implies_conjunct(self):
        assert PQ.implies(PQ.parse("(p & q)"), Atom("p"))

    def test_disjunction_introduction(self):
        assert PQ.implies(Atom("p"), PQ.parse("(p | q)"))

    def test_false_implies_anything(self):
        for text in ("p", "(p & q)", "F", "T"):
            assert PQ.implies(FALSE, PQ.parse(text))

    def test_atom_does_not_imply_conjunction(self):
        assert not PQ.implies(Atom("p"), PQ.parse("(p & q)"))

    @given(formulas(), formulas())
    @settings(max_examples=150)
    def test_agrees_with_truth_table_oracle(self, f, g):
        assert PQ.implies(f, g) == truth_table_implies(PQ, f, g)

    @given(formulas(), formulas(), formulas())
    @settings(max_examples=100)
    def test_preorder(self, f, g, h):
        assert PQ.implies(f, f)
        if PQ.implies(f, g) and PQ.implies(g, h):
            assert PQ.implies(f, h)


class TestEquivalence:
    def test_absorption_identity(self):
        f, g = Atom("p"), Atom("q")
        lhs = Or(f, And(g, Not(f)))
        assert PQ.equivalent(lhs, Or(f, g))

    def test_reflexive(self):
        f = PQ.parse("(p & !q)")
        assert PQ.equivalent(f, f)

    def test_distinct_atoms(self):
        assert not PQ.equivalent(Atom("p"), Atom("q"))

    @given(formulas(), formulas())
    @settings(max_examples=100)
    def test_equivalent_iff_mutual_implication(self, f, g):
        assert PQ.equivalent(f, g) == (PQ.implies(f, g) and PQ.implies(g, f))

    @given(formulas(), formulas())
    @settings(max_examples=100)
    def test_de_morgan_and_distributivity(self, f, g):
        assert PQ.equivalent(Not(And(f, g)), Or(Not(f), Not(g)))
        assert PQ.equivalent(Not(Or(f, g)), And(Not(f), Not(g)))
        h = Atom("p")
        assert PQ.equivalent(And(h, Or(f, g)), Or(And(h, f), And(h, g)))


class TestTheory:
    def test_contradictory_generators(self):
        assert not theory_consistent(P, [Atom("p"), Not(Atom("p"))])
        with pytest.raises(InconsistentTheoryError):
            Theory(P, [Atom("p"), Not(Atom("p"))])

    def test_water_theory_consistent(self):
        assert theory_consistent(PQ, [PQ.parse("(!q | p)")])

    def test_voting_rules_consistent(self):
        lang = Language(["r", "b", "p"])
        gens = [lang.parse("(r <-> !b)"), lang.parse("(p -> b)")]
        assert theory_consistent(lang, gens)

    def test_contains_weakening(self):
        t = Theory(PQ, [Atom("p")])
        assert t.contains(PQ.parse("(p | q)"))
        assert not t.contains(Atom("q"))
        assert t.contains(TRUE)

    def test_theory_implication(self):
        t = Theory(PQ, [PQ.parse("(!q | p)")])
        assert t.implies(Atom("q"), Atom("p"))
        assert not PQ.implies(Atom("q"), Atom("p"))

    def test_empty_theory_is_plain_implication(self):
        t = tautological_theory(PQ)
        f, g = PQ.parse("(p & q)"), Atom("p")
        assert t.implies(f, g) == PQ.implies(f, g)
        assert not t.implies(Atom("p"), Atom("q"))

    def test_voting_contradiction(self):
        lang = Language(["r", "b", "p"])
        t = Theory.from_texts(lang, ["(r <-> !b)", "(p -> b)"])
        assert t.implies(TRUE, lang.parse("!(r & p)"))

    @given(formulas(), formulas())
    @settings(max_examples=80)
    def test_tautological_theory_matches_implies(self, f, g):
        t = tautological_theory(PQ)
        assert t.implies(f, g) == PQ.implies(f, g)


class TestFormulaFromValuations:
    def test_constants(self):
        assert PQ.formula_from_valuations(PQ.full_mask) == TRUE
        assert PQ.formula_from_valuations(0) == FALSE

    def test_recovers_atom(self):
        assert PQ.formula_from_valuations(PQ.sat(Atom("p"))) == Atom("p")

    def test_negated_atom(self):
        got = PQ.formula_from_valuations(PQ.sat(PQ.parse("!q")))
        assert PQ.equivalent(got, PQ.parse("!q"))
        assert unparse(got) == "!q"

    def test_dont_cares_shrink_terms(self):
        # require p&!q true, p&q / !p&!q false, !p&q unconstrained
        include = PQ.sat(PQ.parse("(p & !q)"))
        exclude = PQ.sat(PQ.parse("(p & q)")) | PQ.sat(PQ.parse("(!p & !q)"))
        got = PQ.formula_from_valuations(include, exclude)
        assert unparse(got) == "(p & !q)"
        include2 = PQ.sat(Atom("p"))
        exclude2 = PQ.sat(PQ.parse("(!p & !q)"))
        assert unparse(PQ.formula_from_valuations(include2, exclude2)) == "p"

    @given(st.integers(min_value=0, max_value=15), st.integers(min_value=0, max_value=15))
    @settings(max_examples=200)
    def test_constraints_respected(self, include, raw_exclude):
        exclude = raw_exclude & ~include
        f = PQ.formula_from_valuations(include, exclude)
        bits = PQ.sat(f)
        assert bits & include == include
        assert bits & exclude == 0

    def test_overlap_rejected(self):
        with pytest.raises(Exception):
            PQ.formula_from_valuations(0b0011, 0b0010)

    def test_zero_atom_language(self):
        lang = Language([])
        assert lang.parse("T") == TRUE
        assert lang.sat(TRUE) == 1
        assert lang.formula_from_valuations(1) == TRUE
