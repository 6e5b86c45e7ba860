import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mesotext import vectorize as vz
from mesotext.textproc import Window


def windows(*bags):
    return [Window(i, 1, Counter(b)) for i, b in enumerate(bags)]


def test_tfidf_frozen_value():
    # term in 1 of 4 windows, 1 of 5 tokens: 0.2 * ln 4
    ws = windows("xaaaa", "b", "c", "d")
    vecs = vz.tfidf_all(ws)
    assert vecs[0].weights["x"] == pytest.approx(0.2 * math.log(4), abs=1e-9)


def test_ubiquitous_term_weight_is_zero():
    ws = windows("ab", "ac", "ad")
    vecs = vz.tfidf_all(ws)
    assert all(v.weights.get("a", 0.0) == 0.0 for v in vecs)


def test_cosine_frozen():
    a = vz.TermWeightVector(0, {"x": 1.0, "y": 1.0})
    b = vz.TermWeightVector(1, {"x": 1.0, "z": 1.0})
    assert vz.cosine(a, b) == pytest.approx(0.5)
    assert vz.cosine(a, vz.TermWeightVector(2, {})) == 0.0


def test_empty_window_rejected():
    with pytest.raises(vz.EmptyWindowError):
        vz.count_matrix(windows("a", ""))


sparse_vec = st.dictionaries(st.sampled_from("abcdefghij"), st.floats(0.01, 100.0), max_size=8)


@given(sparse_vec, sparse_vec, st.floats(0.001, 1000.0))
def test_cosine_properties(a, b, scale):
    va, vb = vz.TermWeightVector(0, a), vz.TermWeightVector(1, b)
    c = vz.cosine(va, vb)
    assert 0.0 <= c <= 1.0
    assert c == vz.cosine(vb, va)
    scaled = vz.TermWeightVector(0, {k: v * scale for k, v in a.items()})
    assert vz.cosine(scaled, vb) == pytest.approx(c, abs=1e-12)


def test_cosine_matrix_agrees_with_pairwise(rng):
    ws = [Window(i, 1, Counter(rng.choice(list("abcdefgh"), size=10).tolist())) for i in range(12)]
    vecs = vz.tfidf_all(ws)
    sim = vz.cosine_matrix(vz.vectors_to_matrix(vecs))
    for i in range(12):
        for j in range(12):
            if i != j:
                assert sim[i, j] == pytest.approx(vz.cosine(vecs[i], vecs[j]), abs=1e-12)
    np.testing.assert_array_equal(sim, sim.T)
