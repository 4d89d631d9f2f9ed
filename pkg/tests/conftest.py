from __future__ import annotations

import os
import sys
from math import comb

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from multituran.core import ColoredMultigraph, MultiplicityGraph, Pattern, pairs  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def multiplicity_graphs(draw, max_n=6, max_k=5, min_n=1):
    n = draw(st.integers(min_n, max_n))
    k = draw(st.integers(1, max_k))
    w = draw(st.lists(st.integers(0, k), min_size=comb(n, 2), max_size=comb(n, 2)))
    return MultiplicityGraph(n, k, tuple(w))


@st.composite
def colored_graphs(draw, max_n=6, max_k=4, min_n=1):
    n = draw(st.integers(min_n, max_n))
    k = draw(st.integers(1, max_k))
    ps = pairs(n)
    colors = []
    for _ in range(k):
        chosen = draw(st.lists(st.sampled_from(ps), unique=True, max_size=len(ps))) if ps else []
        colors.append(frozenset(chosen))
    return ColoredMultigraph(n, k, tuple(colors))


@st.composite
def patterns(draw, max_m=4, max_h=6, max_mult=3):
    m = draw(st.integers(2, max_m))
    w = draw(st.lists(st.integers(0, max_mult), min_size=comb(m, 2), max_size=comb(m, 2)))
    while sum(w) > max_h:
        i = max(range(len(w)), key=lambda j: w[j])
        w[i] -= 1
    if sum(w) == 0:
        w[0] = 1
    return Pattern(m, tuple(w))


@pytest.fixture
def tmp_text(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write
