import itertools
import random
from fractions import Fraction

import pytest

from credence.logic import Language
from credence.model import (
    ModelError,
    SubjectiveModel,
    choquet,
    classify_lambda,
    classify_truth,
    inverse_mobius,
    mobius,
    represents,
    totally_monotone_direct,
)

from helpers import mobius_oracle, random_capacity

F = Fraction


def powerset(states):
    out = []
    for r in range(len(states) + 1):
        out.extend(frozenset(c) for c in itertools.combinations(states, r))
    return out


def model_from_lambda(states, lam, language=None, truth=None):
    lang = language or Language([])
    return SubjectiveModel(lang, states, truth or {}, lam=lam)


@pytest.fixture(scope="module")
def transport_capacity(transport_maps):
    return transport_maps.models["capacity"]


class TestClassifyTruth:
    def test_linda_model1_not_monotone(self, linda):
        flags = classify_truth(linda.models["model1"], linda.assessment.formulas)
        assert not flags.monotone
        assert ("(t & f)", "t") in flags.witnesses["monotone"]
        assert not flags.sound

    def test_linda_model2_respects_logic(self, linda):
        flags = classify_truth(linda.models["model2"], linda.assessment.formulas)
        assert flags.monotone
        assert flags.and_distributive
        assert flags.exact

    def test_canonical_valuation_is_sound(self):
        lang = Language(["p", "q"])
        states = ["v00", "v10", "v01", "v11"]
        truth = {
            lang.parse(t): frozenset(
                states[i] for i in range(4) if (lang.sat(lang.parse(t)) >> i) & 1
            )
            for t in ("p", "q", "(p & q)", "!p", "(p | q)")
        }
        m = SubjectiveModel(lang, states, truth, mass={s: F(1, 4) for s in states})
        assert classify_truth(m).sound


class TestClassifyLambda:
    def test_linda_model2_not_monotone_with_witness(self, linda):
        flags = classify_lambda(linda.models["model2"])
        assert not flags.monotone
        assert ("w2", "w2|w3") in flags.witnesses["monotone"]

    def test_transport_capacity_monotone_not_additive(self, transport_capacity):
        flags = classify_lambda(transport_capacity)
        assert flags.monotone
        assert not flags.additive

    def test_uniform_measure_additive(self):
        states = ["a", "b", "c"]
        lam = {ev: F(len(ev), 3) for ev in powerset(states)}
        m = model_from_lambda(states, lam)
        flags = classify_lambda(m)
        assert flags.additive and flags.monotone and flags.totally_monotone and flags.symmetric

    def test_additive_iff_symmetric_and_totally_monotone(self):
        rng = random.Random(5)
        states = ["a", "b", "c"]
        seen_both = 0
        for _ in range(120):
            lam = {frozenset(): F(0), frozenset(states): F(1)}
            for ev in powerset(states):
                if 0 < len(ev) < 3:
                    lam[ev] = F(rng.randint(0, 4), 4)
            m = model_from_lambda(states, lam)
            flags = classify_lambda(m)
            assert flags.additive == (flags.symmetric and flags.totally_monotone)
            if flags.additive:
                seen_both += 1
        assert seen_both  # the equivalence was exercised on both sides

    def test_totally_monotone_matches_direct_inequalities(self):
        states = ["a", "b", "c"]
        grid = [F(0), F(1, 2), F(1)]
        proper = [ev for ev in powerset(states) if 0 < len(ev) < 3]
        checked = 0
        for values in itertools.product(grid, repeat=len(proper)):
            lam = dict(zip(proper, values))
            lam[frozenset()] = F(0)
            lam[frozenset(states)] = F(1)
            m = model_from_lambda(states, lam)
            flags = classify_lambda(m)
            assert flags.totally_monotone == (
                flags.monotone and totally_monotone_direct(m)
            )
            checked += 1
        assert checked == 3 ** 6

    def test_missing_value_reported(self):
        states = ["a", "b"]
        lam = {frozenset(): F(0), frozenset(states): F(1), frozenset(["a"]): F(1, 2)}
        lang = Language(["p"])
        m = SubjectiveModel(lang, states, {lang.parse("p"): frozenset(["a"])}, lam=lam)
        with pytest.raises(ModelError):
            classify_lambda(m)


class TestMobius:
    def test_point_mass(self):
        states = ["a", "b"]
        lam = {ev: F(1) if "a" in ev else F(0) for ev in powerset(states)}
        m = model_from_lambda(states, lam)
        masses = mobius(m)
        assert masses[frozenset(["a"])] == 1
        assert all(v == 0 for ev, v in masses.items() if ev != frozenset(["a"]))

    def test_uniform_additive_two_states(self):
        states = ["a", "b"]
        lam = {ev: F(len(ev), 2) for ev in powerset(states)}
        masses = mobius(model_from_lambda(states, lam))
        assert masses[frozenset(["a"])] == F(1, 2)
        assert masses[frozenset(["b"])] == F(1, 2)
        assert masses[frozenset(states)] == 0

    def test_vacuous_capacity(self):
        states = ["a", "b", "c"]
        lam = {ev: F(1) if ev == frozenset(states) else F(0) for ev in powerset(states)}
        masses = mobius(model_from_lambda(states, lam))
        oracle = mobius_oracle(states, lam)
        assert masses == {ev: v for ev, v in oracle.items()}
        assert masses[frozenset(states)] == 1

    def test_matches_oracle_and_inverts_exhaustively(self):
        states = ["a", "b"]
        grid = [F(0), F(1, 3), F(1)]
        proper = [frozenset(["a"]), frozenset(["b"])]
        for va, vb in itertools.product(grid, repeat=2):
            lam = {
                frozenset(): F(0),
                frozenset(states): F(1),
                proper[0]: va,
                proper[1]: vb,
            }
            m = model_from_lambda(states, lam)
            masses = mobius(m)
            assert masses == mobius_oracle(states, lam)
            back = inverse_mobius(masses, states)
            assert back == lam

    def test_roundtrip_random_up_to_six_states(self):
        rng = random.Random(17)
        for n in (3, 4, 5, 6):
            states = [f"s{i}" for i in range(n)]
            for _ in range(10):
                lam = {frozenset(): F(0), frozenset(states): F(1)}
                for ev in powerset(states):
                    if 0 < len(ev) < n:
                        lam[ev] = F(rng.randint(0, 12), 12)
                m = model_from_lambda(states, lam)
                masses = mobius(m)
                assert inverse_mobius(masses, states) == lam
                assert sum(masses.values()) == 1


class TestChoquet:
    def test_constant_payoff(self, transport_capacity):
        x = {s: F(1, 3) for s in transport_capacity.states}
        assert choquet(transport_capacity, x) == F(1, 3)

    def test_indicator_under_quarter_capacity(self, hedging):
        m = hedging.models["objective"]
        assert choquet(m, {"w1": F(1), "w2": F(0)}) == F(1, 4)

    def test_hand_evaluated_layer_sum(self, transport_capacity):
        x = {"w1": F(3), "w2": F(4), "w3": F(2)}
        assert choquet(transport_capacity, x) == F(7, 3)

    def test_negative_payoff_rejected(self, transport_capacity):
        with pytest.raises(ModelError):
            choquet(transport_capacity, {"w1": F(-1), "w2": F(0), "w3": F(0)})

    def test_comonotone_additivity(self):
        rng = random.Random(23)
        states = ["a", "b", "c", "d"]
        for _ in range(60):
            lam = random_capacity(rng, states)
            m = model_from_lambda(states, lam)
            order = states[:]
            rng.shuffle(order)
            xs = sorted(F(rng.randint(0, 8), 4) for _ in states)
            ys = sorted(F(rng.randint(0, 8), 4) for _ in states)
            x = dict(zip(order, xs))
            y = dict(zip(order, ys))
            both = {s: x[s] + y[s] for s in states}
            assert choquet(m, both) == choquet(m, x) + choquet(m, y)

    def test_monotone_in_payoff_under_capacity(self):
        rng = random.Random(29)
        states = ["a", "b", "c"]
        for _ in range(60):
            lam = random_capacity(rng, states)
            m = model_from_lambda(states, lam)
            x = {s: F(rng.randint(0, 8), 4) for s in states}
            y = {s: x[s] + F(rng.randint(0, 4), 4) for s in states}
            assert choquet(m, y) >= choquet(m, x)

    def test_additive_equals_dot_product(self):
        rng = random.Random(31)
        states = ["a", "b", "c"]
        for _ in range(40):
            weights = [F(rng.randint(0, 5)) for _ in states]
            if sum(weights) == 0:
                weights[0] = F(1)
            total = sum(weights)
            mass = {s: w / total for s, w in zip(states, weights)}
            m = SubjectiveModel(Language([]), states, {}, mass=mass)
            x = {s: F(rng.randint(0, 9), 3) for s in states}
            assert choquet(m, x) == sum(mass[s] * x[s] for s in states)


class TestRepresents:
    def test_linda_models_represent(self, linda):
        for name in ("model1", "model2"):
            rep = represents(linda.models[name], linda.assessment)
            assert rep.ok
            assert all(v == 0 for v in rep.residuals.values())

    def test_perturbed_value_reports_residual(self, linda):
        m2 = linda.models["model2"]
        lam = dict(m2.lam)
        lam[frozenset(["w2", "w3"])] = F(1, 3)
        perturbed = SubjectiveModel(
            m2.language, m2.states, dict(m2.truth), lam=lam
        )
        rep = represents(perturbed, linda.assessment)
        assert not rep.ok
        assert rep.residuals["t"] == F(1, 4) - F(1, 3)

    def test_missing_formula_reported(self, linda):
        # dropping an atom's event leaves the valuation ungroundable, so
        # the missing statement cannot be derived either
        m2 = linda.models["model2"]
        truth = dict(m2.truth)
        del truth[linda.language.parse("t")]
        stripped = SubjectiveModel(m2.language, m2.states, truth, lam=dict(m2.lam))
        rep = represents(stripped, linda.assessment)
        assert not rep.ok
        assert "t" in rep.missing
