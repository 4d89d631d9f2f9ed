"""Friendliness of small bipartite hosts for the triangle.

Hosts are K_{2,2} with every cross pair at the same multiplicity.  With
multiplicity 3 every admissible new vertex closes a multicolored triangle;
lighter hosts are not friendly and the checker reports an attachment
vector that escapes.

Run: python3 demos/friendly_host.py
"""
from __future__ import annotations

from multituran import MultiplicityGraph, complete_pattern, is_H_friendly

if __name__ == "__main__":
    K3 = complete_pattern(3)
    for heavy in (1, 2, 3):
        K = MultiplicityGraph.from_edges(4, 4, [(0, 2, heavy), (0, 3, heavy), (1, 2, heavy), (1, 3, heavy)])
        res = is_H_friendly(K, [[0, 1], [2, 3]], K3)
        print(f"cross multiplicity {heavy}: friendly={res.friendly} "
              f"checked={res.checked} witness={res.witness}")
