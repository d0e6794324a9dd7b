import itertools
import math

import numpy as np
import pytest
from scipy.stats import rankdata

from nldd.data import DataError, Dataset, dataset_summary
from nldd.evaluate import (cross_validate, generate_synthetic, holdout_eval,
                           make_folds, observed_labelset_split,
                           scaling_experiment, wilcoxon_signed_rank)


def wilcoxon_oracle(a, b, alternative):
    """Full 2^n sign enumeration, independent of the DP in the library."""
    diffs = np.asarray(a, float) - np.asarray(b, float)
    nz = diffs[diffs != 0]
    n = nz.size
    ranks = rankdata(np.abs(nz))
    w_obs = ranks[nz > 0].sum()
    ge = le = 0
    for signs in itertools.product((0, 1), repeat=n):
        w = sum(r for r, s in zip(ranks, signs) if s)
        ge += w >= w_obs - 1e-12
        le += w <= w_obs + 1e-12
    p_greater = ge / 2 ** n
    p_less = le / 2 ** n
    if alternative == "greater":
        return p_greater
    if alternative == "less":
        return p_less
    return min(1.0, 2 * min(p_greater, p_less))


class TestWilcoxon:
    def test_all_positive_n5(self):
        res = wilcoxon_signed_rank([2, 3, 4, 5, 6], [1, 2, 3, 4, 5],
                                   alternative="greater")
        assert res.statistic == 15.0
        assert res.p_value == pytest.approx(1 / 32)
        assert res.exact

    def test_identical_samples(self):
        res = wilcoxon_signed_rank([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])
        assert res.p_value == 1.0
        assert res.statistic == 0.0
        assert res.n_effective == 0

    def test_matches_enumeration_oracle(self):
        rng = np.random.default_rng(0)
        for trial in range(100):
            n = int(rng.integers(2, 13))
            a = rng.integers(0, 5, n).astype(float)  # integers force ties
            b = rng.integers(0, 5, n).astype(float)
            if np.all(a == b):
                a[0] += 1
            for alt in ("greater", "less", "two_sided"):
                res = wilcoxon_signed_rank(a, b, alternative=alt)
                assert res.p_value == pytest.approx(
                    wilcoxon_oracle(a, b, alt)), (trial, alt)

    def test_statistic_bounds(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            n = int(rng.integers(1, 15))
            a = rng.standard_normal(n)
            b = rng.standard_normal(n)
            res = wilcoxon_signed_rank(a, b)
            assert 0 <= res.statistic <= res.n_effective * (res.n_effective + 1) / 2

    def test_normal_approximation_branch(self):
        rng = np.random.default_rng(2)
        a = rng.standard_normal(40) + 0.8
        b = rng.standard_normal(40)
        res = wilcoxon_signed_rank(a, b, alternative="greater")
        assert not res.exact
        assert res.p_value < 0.01

    def test_bad_alternative(self):
        with pytest.raises(ValueError):
            wilcoxon_signed_rank([1.0], [2.0], alternative="both")


class TestFolds:
    def test_partition_and_balance(self):
        for seed in range(5):
            plan = make_folds(23, 4, seed)
            sizes = np.bincount(plan.fold_assignments, minlength=4)
            assert sizes.sum() == 23
            assert sizes.max() - sizes.min() <= 1

    def test_determinism(self):
        a = make_folds(30, 10, 7)
        b = make_folds(30, 10, 7)
        assert np.array_equal(a.fold_assignments, b.fold_assignments)

    def test_k_bounds(self):
        with pytest.raises(ValueError):
            make_folds(10, 1, 0)
        with pytest.raises(ValueError):
            make_folds(10, 11, 0)


class TestCrossValidate:
    def test_structure_and_mean(self):
        ds = generate_synthetic(60, 4, 3, 0.7, 0.3, seed=0)
        reports, mean = cross_validate(ds, "br", k=5, seed=0)
        assert len(reports) == 5
        for metric in ("hamming", "zero_one", "jaccard", "f_measure"):
            want = np.mean([getattr(r, metric) for r in reports])
            assert getattr(mean, metric) == pytest.approx(want)
        assert mean.n_instances == 60

    def test_determinism(self):
        ds = generate_synthetic(60, 4, 3, 0.7, 0.3, seed=1)
        _, a = cross_validate(ds, "smbr", k=3, seed=2)
        _, b = cross_validate(ds, "smbr", k=3, seed=2)
        assert a == b

    def test_unknown_method(self):
        ds = generate_synthetic(30, 4, 3, 0.7, 0.3, seed=2)
        with pytest.raises(ValueError):
            cross_validate(ds, "rakel", k=3, seed=0)


class TestHoldout:
    def test_memorizing_configuration(self):
        # Every test row duplicates a training row; the double-duplicate
        # property drives the expected loss to its minimum.
        ds = generate_synthetic(80, 4, 3, 0.9, 0.0, seed=3)
        rep = holdout_eval(ds, ds, "nldd", seed=0)
        # dx=0 for every row, but a rival labelset with smaller dy can still
        # edge out a handful of instances, so allow a small margin
        assert rep.hamming < 0.02
        assert rep.zero_one < 0.05

    def test_dimension_mismatch(self):
        a = generate_synthetic(30, 4, 3, 0.7, 0.3, seed=4)
        b = generate_synthetic(30, 5, 3, 0.7, 0.3, seed=4)
        with pytest.raises(DataError):
            holdout_eval(a, b, "br")

    def test_matches_per_instance_oracle(self):
        from nldd.br import br_fit, br_predict
        from nldd.metrics import instance_metrics, aggregate
        tr = generate_synthetic(60, 4, 3, 0.7, 0.3, seed=5)
        te = generate_synthetic(20, 4, 3, 0.7, 0.3, seed=6)
        rep = holdout_eval(tr, te, "br")
        model = br_fit(tr)
        want = aggregate([instance_metrics(te.labels[i],
                                           br_predict(model, te.features[i]))
                          for i in range(te.n)])
        assert rep == want


class TestGenerateSynthetic:
    def test_full_correlation_two_labelsets(self):
        ds = generate_synthetic(100, 4, 5, 1.0, 0.2, seed=0)
        assert dataset_summary(ds)["distinct_labelsets"] <= 2

    def test_zero_correlation_many_labelsets(self):
        hi = generate_synthetic(200, 6, 4, 1.0, 0.2, seed=1)
        lo = generate_synthetic(200, 6, 4, 0.0, 0.2, seed=1)
        assert dataset_summary(lo)["distinct_labelsets"] > \
            dataset_summary(hi)["distinct_labelsets"]

    def test_correlation_monotone(self):
        def mean_abs_corr(c):
            vals = []
            for seed in range(10):
                ds = generate_synthetic(300, 6, 4, c, 0.2, seed=seed)
                cm = np.corrcoef(ds.labels.T)
                vals.append(np.abs(cm[np.triu_indices(4, 1)]).mean())
            return np.mean(vals)

        c0, c5, c1 = mean_abs_corr(0.0), mean_abs_corr(0.5), mean_abs_corr(1.0)
        assert c0 < c5 < c1

    def test_determinism(self):
        a = generate_synthetic(50, 4, 3, 0.5, 0.2, seed=9)
        b = generate_synthetic(50, 4, 3, 0.5, 0.2, seed=9)
        assert np.array_equal(a.features, b.features)
        assert np.array_equal(a.labels, b.labels)

    def test_parameter_bounds(self):
        with pytest.raises(ValueError):
            generate_synthetic(4, 4, 3, 0.5, 0.2, seed=0)
        with pytest.raises(ValueError):
            generate_synthetic(50, 4, 3, 1.5, 0.2, seed=0)


class TestScaling:
    def test_counter_quadratic_law(self):
        ds = generate_synthetic(80, 4, 3, 0.8, 0.3, seed=0)
        rows = scaling_experiment(ds, [0.5, 1.0], seed=0)
        n_train = 60
        for row in rows:
            m = round(row["fraction"] * n_train)
            assert row["distance_ops"] == math.ceil(m / 2) * math.floor(m / 2)
        ratio = rows[1]["distance_ops"] / rows[0]["distance_ops"]
        assert ratio == pytest.approx(4.0, rel=0.1)

    def test_bad_fraction(self):
        ds = generate_synthetic(80, 4, 3, 0.8, 0.3, seed=1)
        with pytest.raises(ValueError):
            scaling_experiment(ds, [0.0], seed=0)


class TestObservedSplit:
    def test_identity(self):
        ds = generate_synthetic(40, 4, 3, 0.7, 0.3, seed=0)
        observed, unobserved = observed_labelset_split(ds, ds)
        assert observed == list(range(40)) and unobserved == []

    def test_absent_labelset(self):
        tr = Dataset(np.zeros((3, 1)), np.array([[0, 0], [0, 1], [0, 1]]))
        te = Dataset(np.zeros((2, 1)), np.array([[1, 1], [0, 1]]))
        observed, unobserved = observed_labelset_split(tr, te)
        assert observed == [1] and unobserved == [0]

    def test_partition(self):
        tr = generate_synthetic(50, 4, 4, 0.3, 0.5, seed=2)
        te = generate_synthetic(30, 4, 4, 0.3, 0.5, seed=3)
        observed, unobserved = observed_labelset_split(tr, te)
        assert sorted(observed + unobserved) == list(range(30))
