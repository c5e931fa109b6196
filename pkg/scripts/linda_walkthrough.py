#!/usr/bin/env python3
"""Walk through the conjunction-fallacy fixture end to end: grade the
assessment, inspect both shipped state-space models, rebuild
representations from scratch, and identify the misperceived entailment.

Usage: python3 scripts/linda_walkthrough.py
"""

from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from credence import (  # noqa: E402
    BuildError,
    build_canonical_sound,
    build_interval_additive,
    check_e,
    check_i,
    check_nt,
    classify_lambda,
    classify_truth,
    represents,
    understood_implications,
)
from credence.files import load_session  # noqa: E402

FIXTURE = Path(__file__).resolve().parent.parent / "fixtures" / "linda" / "session.json"


def main():
    session = load_session(FIXTURE)
    a = session.assessment
    print("universe:", ", ".join(a.text(f) for f in a.sorted_formulas()))
    for check in (check_nt, check_e, check_i):
        r = check(a)
        print(f"axiom {r.axiom}: {'pass' if r.passed else 'FAIL'}")
        for v in r.violations:
            print("   ", v.requirement, f"(lhs={v.lhs}, rhs={v.rhs})")

    for name, model in session.models.items():
        rep = represents(model, a)
        t_flags = classify_truth(model, a.formulas)
        print(f"\n{name}: represents={rep.ok}")
        print("  truth valuation:", t_flags.to_dict())
        if model.mass is None:
            print("  appraisal:", classify_lambda(model).to_dict())
        else:
            print("  appraisal: additive by construction (state masses)")

    print("\nrebuilding representations:")
    sound = build_canonical_sound(a)
    print("  canonical-sound:", [(c.name, c.ok) for c in sound.certificate])
    try:
        build_interval_additive(a)
    except BuildError as e:
        print("  interval-additive refused:", e)

    print("\nidentification:")
    for v in understood_implications(a):
        if not v.understood:
            print(f"  NOT understood: {v.antecedent} implies {v.consequent} "
                  f"(margin {v.margin})")


if __name__ == "__main__":
    main()
