#!/usr/bin/env python3
"""Contrast additive and general rationalizability on the hedging
fixture: the constant strategy is strictly dominated by a coin flip over
the two bets, yet a non-additive likelihood appraisal makes it the best
response.  Prints the dominance certificates and the verified witness.

Usage: python3 scripts/rationalizability_demo.py
"""

from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from credence import (  # noqa: E402
    maximal_model,
    rationalizable,
    t_circ,
    transported_vector,
)
from credence.files import load_session  # noqa: E402
from credence.games import strategy_events  # noqa: E402
from credence.model import event_label  # noqa: E402

FIXTURE = (
    Path(__file__).resolve().parent.parent
    / "fixtures" / "strategies" / "session-rationalize.json"
)


def main():
    session = load_session(FIXTURE)
    model = session.models["objective"]
    pool = session.strategies
    chosen = next(s for s in pool if s.name == session.choice)

    print("base payoff vectors:")
    for s in pool:
        print(f"  {s.name}: { {k: str(v) for k, v in t_circ(model, s).items()} }")

    additive = rationalizable(chosen, pool, model, additive_only=True)
    print(f"\nadditive priors only: rationalizable={additive.rationalizable}")
    if additive.dominating_mixture:
        mix = ", ".join(f"{n}={v}" for n, v in additive.dominating_mixture)
        print(f"  dominated by {{{mix}}} with margin {additive.epsilon}")

    events = strategy_events(model, pool)
    mm = maximal_model(model, events)
    print(f"\nmaximal model coordinates: {[event_label(e) for e in events]}"
          f" -> {len(mm.states)} states")
    for s in pool:
        vec = transported_vector(mm, model, s)
        print(f"  {s.name}: { {k: str(v) for k, v in sorted(vec.items())} }")

    general = rationalizable(chosen, pool, model)
    print(f"\ngeneral likelihood appraisals: rationalizable={general.rationalizable}")
    print(f"  witness ({general.witness_source}):")
    for ev, v in sorted(general.witness_events.items(), key=lambda kv: (len(kv[0]), event_label(kv[0]))):
        print(f"    lambda({event_label(ev) or 'empty'}) = {v}")
    print("  verified Choquet values:",
          ", ".join(f"{n}={v}" for n, v in general.choquet_values))


if __name__ == "__main__":
    main()
