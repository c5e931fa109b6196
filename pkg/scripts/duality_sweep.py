#!/usr/bin/env python3
"""Sweep random entailment-respecting assessments and rebuild each one
twice: once with a sound truth valuation (incoherence absorbed by the
appraisal) and once with an additive appraisal (incoherence absorbed by
the truth valuation).  Reports how often each construction certifies its
postconditions: by design this should be always.

Usage: python3 scripts/duality_sweep.py [--count N] [--seed S] [--atoms K]
"""

import argparse
import random
import sys
import time
from dataclasses import dataclass
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))
sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from credence import (  # noqa: E402
    Language,
    build_canonical_sound,
    build_interval_additive,
    classify_lambda,
    classify_truth,
    represents,
)
from helpers import random_and_closed_universe, random_monotone_assessment  # noqa: E402


@dataclass
class SweepConfig:
    count: int = 500
    seed: int = 2024
    atoms: int = 3
    max_universe: int = 30


def run(cfg: SweepConfig) -> dict:
    lang = Language([chr(ord("a") + i) for i in range(cfg.atoms)])
    rng = random.Random(cfg.seed)
    stats = {"sound_ok": 0, "additive_ok": 0, "universe_sizes": []}
    done = 0
    start = time.monotonic()
    while done < cfg.count:
        classes = random_and_closed_universe(rng, lang, n_base=rng.randint(2, 4))
        if len(classes) > cfg.max_universe:
            continue
        a = random_monotone_assessment(rng, lang, classes)
        stats["universe_sizes"].append(len(a.formulas))

        sound = build_canonical_sound(a)
        if classify_truth(sound.model, a.formulas).sound and represents(sound.model, a).ok:
            stats["sound_ok"] += 1

        interval = build_interval_additive(a)
        if classify_lambda(interval.model).additive and represents(interval.model, a).ok:
            stats["additive_ok"] += 1
        done += 1
    stats["elapsed_s"] = time.monotonic() - start
    return stats


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=500)
    parser.add_argument("--seed", type=int, default=2024)
    parser.add_argument("--atoms", type=int, default=3)
    args = parser.parse_args()
    cfg = SweepConfig(count=args.count, seed=args.seed, atoms=args.atoms)
    stats = run(cfg)
    sizes = stats["universe_sizes"]
    print(f"assessments: {cfg.count} (atoms={cfg.atoms}, seed={cfg.seed})")
    print(f"mean universe size: {sum(sizes) / len(sizes):.1f}")
    print(f"sound-truth construction certified:   {stats['sound_ok']}/{cfg.count}")
    print(f"additive-appraisal construction certified: {stats['additive_ok']}/{cfg.count}")
    print(f"elapsed: {stats['elapsed_s']:.1f}s")
    if stats["sound_ok"] != cfg.count or stats["additive_ok"] != cfg.count:
        sys.exit(1)


if __name__ == "__main__":
    main()
