"""Chromatic data, reduced patterns and thresholds for a few patterns.

Run: python3 demos/critical_report.py
"""
from __future__ import annotations

from multituran import Pattern, complete_pattern, cycle_pattern, reduce_minmax


def show(label, H):
    rep = reduce_minmax(H)
    print(f"{label}: chi={rep.chi} h={rep.h} color-critical={rep.is_color_critical}")
    if rep.reduced is not None:
        print(f"  reduced weights {rep.reduced.w}, max multiplicity {rep.max_mult}")
        print(f"  k*={rep.k_star}  alpha_r={rep.alpha_r}  in F_r={rep.in_Fr}")


if __name__ == "__main__":
    show("K3", complete_pattern(3))
    show("K4", complete_pattern(4))
    show("C5", cycle_pattern(5))
    show("W5 (wheel)", Pattern.from_edges(6, [(0, i) for i in range(1, 6)]
                                         + [(i, i % 5 + 1) for i in range(1, 6)]))
    show("two triangles", Pattern.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]))
