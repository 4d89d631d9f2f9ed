"""Which case of the 4-vertex schedule fires on random instances.

Patterns are K4 with the pair (0,1) of multiplicity 1 and random weights
elsewhere; hosts are drawn until they satisfy the size preconditions.
Every embedding order is re-checked by the certificate verifier, and each
exceptional instance is confirmed against the general prefix search.

Run: python3 demos/four_vertex_schedule.py [samples]
"""
from __future__ import annotations

import random
import sys
from collections import Counter

from multituran import MultiplicityGraph, find_rainbow_nested, verify_certificate
from multituran.friendliness import check_4cc_hypotheses, pattern_from_labels, schedule_4cc


def draw(rng):
    big = rng.randrange(5)
    hs = [rng.randint(1, 3) for _ in range(5)]
    hs[big] = rng.randint(1, 12)
    H = pattern_from_labels(*hs)
    while True:
        k = rng.randint(H.h, 2 * H.h)
        G0 = MultiplicityGraph(4, k, tuple(rng.randint(1, k) for _ in range(6)))
        if not check_4cc_hypotheses(G0, H, k):
            return G0, H


if __name__ == "__main__":
    samples = int(sys.argv[1]) if len(sys.argv) > 1 else 3000
    rng = random.Random(1)
    tally, bad, exc_found = Counter(), 0, 0
    for _ in range(samples):
        G0, H = draw(rng)
        case, cert = schedule_4cc(G0, H)
        tally[case] += 1
        if cert is None:
            exc_found += find_rainbow_nested(G0, H) is not None
        elif not verify_certificate(G0, H, cert):
            bad += 1
    for case in ("1-1", "1-2", "2", "3-1", "3-2", "3-3", "exceptional"):
        print(f"{case:>12}: {tally[case]}")
    print(f"certificates rejected: {bad}")
    print(f"exceptional instances with a copy anyway: {exc_found} of {tally['exceptional']}")
