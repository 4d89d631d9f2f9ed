"""Counts of r-color-critical graphs on s vertices and of F_r members.

Run: python3 demos/census_counts.py
"""
from __future__ import annotations

from multituran import census

if __name__ == "__main__":
    print(f"{'r':>2} {'s':>2} {'chi=r':>8} {'critical':>9} {'classes':>8} {'in F_r':>7}")
    for r, s in [(3, 3), (3, 4), (3, 5), (4, 4), (4, 5)]:
        t = census(r, s)
        print(f"{r:>2} {s:>2} {t.chi_r:>8} {t.color_critical:>9} {t.classes:>8} {t.in_Fr:>7}")
