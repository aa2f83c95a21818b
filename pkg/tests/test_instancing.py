import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import patterns
from netident.graph import NetworkPattern, classify
from netident.instancing import (
    DourcePartition,
    NotADource,
    NumericInstance,
    WellPosednessFailure,
    check_identities,
    dependence_witness,
    instance_from_matrix,
    sample_instance,
)


def test_single_edge_instance():
    inst = sample_instance(NetworkPattern(2, [(1, 2)]), 3)
    g = inst.g(2, 1)
    assert 0.25 <= abs(g) <= 1.75
    np.testing.assert_allclose(inst.G, [[0, 0], [g, 0]])
    np.testing.assert_allclose(inst.T, [[1, 0], [g, 1]], atol=1e-15)


def test_example_a_nonzeros(example_a):
    inst = sample_instance(example_a, 11)
    rows, cols = np.nonzero(inst.G)
    assert sorted(zip(rows + 1, cols + 1)) == sorted([(2, 1), (1, 3), (2, 3), (1, 4), (2, 4), (5, 1)])


def test_seed_determinism(example_b):
    a, b = sample_instance(example_b, 99), sample_instance(example_b, 99)
    assert a.G.tobytes() == b.G.tobytes()
    assert not np.array_equal(a.G, sample_instance(example_b, 100).G)


def test_identities_trivial():
    # G = 0 does not match any pattern, so build the instance by hand
    inst = NumericInstance(NetworkPattern(2, [(1, 2)]), np.zeros((2, 2)), np.eye(2), 0)
    rep = check_identities(inst)
    assert rep.max_residual == 0.0


def test_identities_example_b(example_b):
    for seed in range(20):
        assert check_identities(sample_instance(example_b, seed)).max_relative < 1e-9


def test_identities_detect_corruption(example_b):
    inst = sample_instance(example_b, 5)
    T = inst.T.copy()
    T[1, 2] += 1e-3
    rep = check_identities(NumericInstance(example_b, inst.G, T, inst.seed))
    assert rep.max_residual >= 1e-4


def test_well_posedness_failure(monkeypatch):
    import netident.instancing as mod

    monkeypatch.setattr(mod, "MIN_ABS_DET", np.inf)
    with pytest.raises(WellPosednessFailure):
        sample_instance(NetworkPattern(2, [(1, 2)]), 0)


def test_resample_on_near_singular(monkeypatch):
    import netident.instancing as mod

    # a 2-cycle with G12*G21 close to 1 is rejected; forcing a high floor triggers resampling
    p = NetworkPattern(2, [(1, 2), (2, 1)])
    monkeypatch.setattr(mod, "MIN_ABS_DET", 0.5)
    inst = sample_instance(p, 0)
    assert abs(1 - inst.g(1, 2) * inst.g(2, 1)) >= 0.5


def test_instance_from_matrix_rejects_wrong_structure(example_a):
    G = np.zeros((5, 5))
    with pytest.raises(ValueError):
        instance_from_matrix(example_a, G)


def test_dependence_example_a(example_a):
    inst = instance_from_matrix(example_a, _example_a_matrix(g13=0.7, g14=1.3))
    rep = dependence_witness(inst, 1)
    assert rep.partition == DourcePartition(1, (2,), (3, 4), (5,))
    assert (rep.rank, rep.required_rank) == (2, 3)
    assert rep.residual < 1e-9
    assert rep.coefficients == (0.7, 1.3)


def test_dependence_example_b(example_b):
    for seed in range(5):
        inst = sample_instance(example_b, seed)
        rep = dependence_witness(inst, 1)
        assert rep.coefficients == (inst.g(1, 3), inst.g(1, 4))
        assert rep.residual < 1e-9 and rep.rank_deficient


def test_dependence_requires_dource(example_a):
    cut = example_a.without_edge(4, 2)
    with pytest.raises(NotADource):
        dependence_witness(sample_instance(cut, 0), 1)
    with pytest.raises(NotADource):
        dependence_witness(sample_instance(example_a, 0), 1, DourcePartition(1, (5,), (3, 4), (2,)))


def _example_a_matrix(g13, g14, g21=0.9, g23=-0.6, g24=1.1, g51=0.4):
    G = np.zeros((5, 5))
    G[0, 2], G[0, 3], G[1, 0], G[1, 2], G[1, 3], G[4, 0] = g13, g14, g21, g23, g24, g51
    return G


@given(patterns(max_n=10), st.integers(0, 2**63 - 1))
@settings(max_examples=200, deadline=None)
def test_instance_invariants(p, seed):
    inst = sample_instance(p, seed)
    assert np.count_nonzero(inst.G) == len(p.edges)
    assert np.array_equal(inst.G != 0, p.adjacency())
    assert np.max(np.abs((np.eye(p.n) - inst.G) @ inst.T - np.eye(p.n))) < 1e-9 * max(1, np.max(np.abs(inst.T)))
    assert check_identities(inst).max_relative < 1e-9
    for d in classify(p).dources:
        assert dependence_witness(inst, d).residual < 1e-8
