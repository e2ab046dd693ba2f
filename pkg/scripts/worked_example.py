#!/usr/bin/env python3
"""Reproduce the documented 3-candidate selection walk-through by hand.

Prints normalized metric vectors, group means and overall scores for both
weight presets so the arithmetic can be eyeballed against the docs.
"""

from layeval.selection import MetricVector, select, selection_presets

POOL = [
    MetricVector("C1", {"fkgl": 10.0, "dcrs": 8.0, "cli": 12.0}, {"alignscore": 0.6, "summac": 0.5}),
    MetricVector("C2", {"fkgl": 12.0, "dcrs": 9.0, "cli": 14.0}, {"alignscore": 0.8, "summac": 0.7}),
    MetricVector("C3", {"fkgl": 14.0, "dcrs": 10.0, "cli": 13.0}, {"alignscore": 0.7, "summac": 0.6}),
]

if __name__ == "__main__":
    for name, config in selection_presets().items():
        result = select(POOL, config)
        print(f"\npreset={name}  w_readability={config.w_readability}  "
              f"w_factuality={config.w_factuality}")
        for s in result.per_candidate:
            marker = " <-- chosen" if s.candidate_id == result.chosen_candidate_id else ""
            print(f"  {s.candidate_id}: norm_r={ {m: round(v, 4) for m, v in s.norm_readability.items()} } "
                  f"norm_f={ {m: round(v, 4) for m, v in s.norm_factuality.items()} }")
            print(f"      R={s.readability_mean:.6f}  F={s.factuality_mean:.6f}  "
                  f"S={s.overall:.6f}{marker}")
