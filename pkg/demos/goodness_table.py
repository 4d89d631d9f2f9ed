"""Exact values for the triangle and C5 next to the conjectured formulas.

Run: python3 demos/goodness_table.py
"""
from __future__ import annotations

from math import comb

from multituran import complete_pattern, cycle_pattern, solve_exact, verify_goodness_formula


def table(H, cells):
    print(f"pattern {H.name or 'H'}: m={H.m}, h={H.h}")
    print(f"{'n':>3} {'k':>3} {'exact':>6} {'formula':>8}  verdict")
    for n, k in cells:
        res = verify_goodness_formula(H, n, k)
        fv = "-" if res.formula_value is None else str(res.formula_value)
        print(f"{n:>3} {k:>3} {res.report.value:>6} {fv:>8}  {res.verdict}")
    print()


if __name__ == "__main__":
    K3 = complete_pattern(3)
    # below h every pair can carry all k colors
    for k in range(1, K3.h):
        value = solve_exact(K3, 5, k).value
        print(f"K3 n=5 k={k}: exact {value}, k*C(5,2) = {k * comb(5, 2)}")
    print()
    # "deviate" at n=4 k=3: the value agrees but a second extremal graph exists
    table(K3, [(4, 3), (4, 4), (5, 4), (5, 5), (6, 4), (6, 6)])
    table(cycle_pattern(5), [(5, 5), (6, 5)])
