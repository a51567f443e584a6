import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from normpar import (Field, HypothesisViolated, NormSpec, PairKind, SampleConfig, definitional_check,
                     empirical_check, find_nonparallel_in_span, is_pair, peaks_preserved,
                     has_peak_preserving_form, peak_set, sample_batch, sample_pair)
from normpar.corpus import random_genperm
from normpar.oracle import apply, merge_shards, validate_counterexample
from normpar.pairs import definitional_batch, pair_batch

SPECS = [NormSpec.l1(), NormSpec.linf(), NormSpec.lp(2), NormSpec.lp(3)]
LINF = NormSpec.linf()


@pytest.mark.parametrize("field", list(Field))
@pytest.mark.parametrize("spec", SPECS, ids=str)
@pytest.mark.parametrize("kind", list(PairKind))
def test_generated_pairs_are_pairs(field, spec, kind):
    cfg = SampleConfig(seed=3, count=2000, dim=4, field=field, spec=spec, kind=kind)
    X, Y = sample_batch(cfg)
    assert X.shape == (2000, 4) and X.dtype == field.dtype
    assert pair_batch(X, Y, spec, kind).all()
    assert definitional_batch(X, Y, kind, spec).all()


def test_linf_parallel_samples_share_a_peak():
    cfg = SampleConfig(seed=9, count=200, dim=5, field=Field.COMPLEX, spec=LINF, kind=PairKind.PARALLEL)
    for i in range(cfg.count):
        x, y = sample_pair(cfg, i)
        if np.any(x) and np.any(y):
            assert peak_set(x).indices & peak_set(y).indices


@given(st.integers(0, 2**63 - 1), st.sampled_from(SPECS), st.sampled_from(list(Field)), st.integers(0, 2999))
def test_sampling_is_deterministic_and_indexable(seed, spec, field, index):
    cfg = SampleConfig(seed=seed, count=3000, dim=3, field=field, spec=spec)
    x, y = sample_pair(cfg, index)
    X, Y = sample_batch(cfg, index, index + 1)
    assert np.array_equal(x, X[0]) and np.array_equal(y, Y[0])
    assert np.array_equal(x, sample_pair(cfg, index)[0])


def test_sample_index_bounds():
    cfg = SampleConfig(count=10)
    with pytest.raises(IndexError):
        sample_pair(cfg, 10)
    with pytest.raises(ValueError):
        SampleConfig(count=0)
    with pytest.raises(ValueError):
        SampleConfig(magnitude_range=(0.0, 1.0))


def test_empirical_identity_and_genperm():
    for field in Field:
        for kind in PairKind:
            for spec in (NormSpec.l1(), LINF):
                cfg = SampleConfig(seed=1, count=10_000, dim=3, field=field, spec=spec, kind=kind)
                assert empirical_check(np.eye(3), cfg) is None
            cfg = SampleConfig(seed=2, count=10_000, dim=4, field=field, spec=LINF, kind=kind)
            Q = 3 * random_genperm(np.random.default_rng(4), 4, field)
            assert empirical_check(Q, cfg) is None


def test_empirical_finds_l1_counterexample():
    T = np.array([[1.0, 1], [0, 1]])
    cfg = SampleConfig(seed=0, count=10_000, dim=2, spec=NormSpec.l1(), kind=PairKind.TEA)
    ce = empirical_check(T, cfg)
    assert ce is not None
    assert validate_counterexample(T, ce.x, ce.y, cfg.spec, cfg.kind) == {"criterion": True, "definitional": True}
    np.testing.assert_array_equal(ce.tx, apply(T, ce.x))


def test_sharding_matches_single_run():
    T = np.array([[1, 0.5j], [-0.5j, 1]])
    cfg = SampleConfig(seed=5, count=5000, dim=2, field=Field.COMPLEX, spec=LINF, kind=PairKind.TEA)
    whole = empirical_check(T, cfg)
    shards = [empirical_check(T, cfg, start=s, stop=s + 1000) for s in range(0, 5000, 1000)]
    merged = merge_shards(shards)
    assert whole is not None and merged.index == whole.index
    assert merge_shards([None, None]) is None


def test_counterexamples_are_doubly_validated():
    rng = np.random.default_rng(2)
    for _ in range(20):
        T = rng.standard_normal((3, 3))
        for spec in (NormSpec.l1(), LINF):
            for kind in PairKind:
                cfg = SampleConfig(seed=int(rng.integers(1 << 30)), count=2000, dim=3, spec=spec, kind=kind)
                ce = empirical_check(T, cfg)
                if ce is not None:
                    assert is_pair(ce.x, ce.y, spec, kind).holds and definitional_check(ce.x, ce.y, kind, spec)
                    assert not is_pair(ce.tx, ce.ty, spec, kind).holds
                    assert not definitional_check(ce.tx, ce.ty, kind, spec)


def test_cancelled_images_are_exact_zeros():
    T = np.outer([0.3, -1.7], [-1.3, -1.3])
    x = np.array([-0.17724196, 0.17724196])
    assert np.any(T @ x != 0)
    assert not np.any(apply(T, x))
    np.testing.assert_array_equal(apply(T, np.eye(2)), T.T)
    # a rank-one map with |u1| = |u2| sends cancelling inputs to zero, which pairs with anything
    cfg = SampleConfig(seed=0, count=10_000, dim=2, spec=LINF, kind=PairKind.TEA)
    assert empirical_check(T, cfg) is None


def test_empirical_rejects_complex_on_real_space():
    with pytest.raises(ValueError):
        empirical_check(np.eye(2) * 1j, SampleConfig(dim=2))


def test_span_examples():
    x, y = find_nonparallel_in_span(np.array([1.0, 0]), np.array([0.0, 1]))
    assert not is_pair(x, y, LINF, PairKind.PARALLEL).holds
    x, y = find_nonparallel_in_span(np.array([1.0, 1]), np.array([1.0, -1]))
    np.testing.assert_allclose(x, [2, 0])
    np.testing.assert_allclose(y, [0, 2])
    assert find_nonparallel_in_span(np.array([1.0, 2]), np.array([2.0, 4])) is None
    assert find_nonparallel_in_span(np.array([1j, 2]), 2j * np.array([1j, 2])) is None


@given(st.integers(0, 2**32 - 1), st.sampled_from(list(Field)), st.integers(2, 6))
def test_span_result_lies_in_span(seed, field, n):
    rng = np.random.default_rng(seed)
    u = rng.standard_normal(n).astype(field.dtype)
    v = rng.standard_normal(n).astype(field.dtype)
    if field is Field.COMPLEX:
        u = u + 1j * rng.standard_normal(n)
        v = v + 1j * rng.standard_normal(n)
    found = find_nonparallel_in_span(u, v)
    assert found is not None
    x, y = found
    assert not is_pair(x, y, LINF, PairKind.PARALLEL).holds
    B = np.column_stack([u, v])
    for w in (x, y):
        assert np.linalg.matrix_rank(np.column_stack([B, w]), tol=1e-8 * np.abs(B).max()) == 2


def test_condition_examples():
    assert peaks_preserved(np.array([[2.0, 1], [1, 2]]))
    assert has_peak_preserving_form(np.array([[2.0, 1], [1, 2]]))
    assert peaks_preserved(2 * np.eye(3))
    A = np.array([[2.0, 1, 0], [1, 2, 0], [0, 0, 2]])
    assert not peaks_preserved(A)
    assert not has_peak_preserving_form(A)
    # the all-peak probe (1, -1, -1) maps to (1, -1, -2), losing the first two peaks
    x = np.array([1.0, -1, -1])
    assert peak_set(A.T @ x).indices == {2}
    assert has_peak_preserving_form(np.array([[2, 1 + 1j], [1 - 1j, 2]]))
    assert has_peak_preserving_form(3 * np.eye(4))
    assert not has_peak_preserving_form(np.array([[2.0, 1], [0, 2]]))
    assert not peaks_preserved(np.array([[2.0, 1], [0, 2]]))


def test_condition_hypothesis_checked():
    for A in (np.array([[1.0, 2], [2, 1]]), np.array([[-1.0, 0], [0, -1]]), np.array([[1j, 0], [0, 1]])):
        with pytest.raises(HypothesisViolated):
            peaks_preserved(A)
        with pytest.raises(HypothesisViolated):
            has_peak_preserving_form(A)


def test_condition_a_uses_random_samples():
    A = np.array([[3.0, 0.5, 0.1], [0.2, 3, 0.4], [0.1, 0.3, 3]])
    cfg = SampleConfig(seed=1, count=500, dim=3)
    assert peaks_preserved(A, cfg) is False
