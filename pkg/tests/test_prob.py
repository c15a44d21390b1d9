import csv
import io
import logging
import math

import numpy as np
import pytest
from mpmath import MPContext

from binomial_roots.prob import (
    A_CLOSED_FORM,
    EXPERIMENTS,
    TAU,
    TAU2_CLOSED_FORM,
    DistributionKit,
    TailExperimentConfig,
    TailRow,
    constant_a,
    constant_a_monte_carlo,
    density_normalization,
    fit_tail_curve,
    laplace_moment_ratio,
    logconcave_tail_check,
    loglog_expectation,
    loglog_single_gaussian,
    mean_w_monte_carlo,
    moment_bracket_check,
    moment_ratio_W,
    moment_theta,
    rearranged_norms,
    run_experiment,
    sample_unit_direction,
    tail_linear_combination,
    variance_tau2,
    variance_tau2_monte_carlo,
    wilson_interval,
    write_experiment_csv,
)
from binomial_roots.prob.report import CSV_HEADER
from binomial_roots.utils.errors import ScaleTooSmallError, WeightSumNonzeroError

HALF_SQRT2 = 1 / math.sqrt(2)


class TestQuadrature:
    def test_density_normalization(self):
        assert density_normalization() == pytest.approx(1.0, abs=1e-10)

    def test_constant_a(self):
        assert constant_a() == pytest.approx(-0.6351814227, abs=1e-9)
        assert A_CLOSED_FORM == pytest.approx(-0.6351814227, abs=1e-9)

    def test_variance(self):
        assert variance_tau2() == pytest.approx(1.2337005501, abs=1e-9)
        assert TAU**2 == pytest.approx(TAU2_CLOSED_FORM)

    def test_exponential_moments_are_factorials(self):
        assert moment_theta(4) == pytest.approx(24.0, rel=1e-8)
        assert moment_theta(6) == pytest.approx(720.0, rel=1e-8)

    def test_second_moment_ratio(self):
        assert moment_ratio_W(2) == pytest.approx(math.pi / 4, rel=1e-7)

    @pytest.mark.parametrize("p", [4, 8])
    def test_moment_ratio_stays_bounded(self, p):
        assert 0.7 < moment_ratio_W(p) < 1.1

    @pytest.mark.parametrize("p", [1, 3, 0, 18])
    def test_moment_ratio_rejects_orders(self, p):
        with pytest.raises(ValueError):
            moment_ratio_W(p)

    def test_laplace_ratio(self):
        assert laplace_moment_ratio(4) == pytest.approx(1.0, rel=1e-8)

    @pytest.mark.parametrize("t", [5, 40, 1e4, 1e300])
    def test_density_vanishes_far_right(self, t):
        ctx = MPContext()
        ctx.dps = 30
        assert DistributionKit.density_y(ctx.mpf(t), ctx) == 0

    def test_density_kept_where_it_matters(self):
        ctx = MPContext()
        ctx.dps = 30
        assert DistributionKit.density_y(ctx.mpf(2), ctx) > 0
        at_zero = DistributionKit.density_y(ctx.mpf(0), ctx)
        assert float(at_zero) == pytest.approx(math.sqrt(2 / math.pi) * math.exp(-0.5))

    def test_negative_constant_is_flagged(self, caplog):
        with caplog.at_level(logging.WARNING, logger="binomial_roots.prob.quadrature"):
            constant_a()
        assert any("0 < a < 5" in record.getMessage() for record in caplog.records)


class TestMonteCarlo:
    def test_constant_a_agrees_with_closed_form(self):
        mc = constant_a_monte_carlo(200_000, seed=1)
        assert mc.samples == 200_000
        assert mc.ci[0] < mc.estimate < mc.ci[1]
        assert mc.within(A_CLOSED_FORM, n_sigma=4)

    def test_variance_agrees_with_closed_form(self):
        assert variance_tau2_monte_carlo(200_000, seed=2).within(TAU2_CLOSED_FORM, n_sigma=4)

    def test_w_is_centred(self):
        assert mean_w_monte_carlo(200_000, seed=3).within(0.0, n_sigma=4)

    def test_results_do_not_depend_on_workers(self):
        single = constant_a_monte_carlo(120_000, seed=5, workers=1)
        pooled = constant_a_monte_carlo(120_000, seed=5, workers=3)
        assert single == pooled

    def test_samplers_match_their_moments(self):
        rng = np.random.default_rng(0)
        assert np.mean(DistributionKit.sample_theta(rng, 200_000) ** 2) == pytest.approx(2.0, rel=0.03)
        assert np.mean(np.abs(DistributionKit.sample_laplace(rng, 200_000))) == pytest.approx(1.0, rel=0.02)
        assert np.var(DistributionKit.sample_y(rng, 200_000)) == pytest.approx(TAU2_CLOSED_FORM, rel=0.03)

    def test_wilson_interval(self):
        lo, hi = wilson_interval(50, 100)
        assert lo < 0.5 < hi
        assert 0.5 - lo == pytest.approx(hi - 0.5)

        lo, hi = wilson_interval(0, 100)
        assert lo == 0.0
        assert 0 < hi < 0.05

        with pytest.raises(ValueError):
            wilson_interval(0, 0)

    @pytest.mark.parametrize("trials", [1, 7, 30, 1000, 10**6])
    def test_wilson_interval_boundaries(self, trials):
        assert wilson_interval(0, trials)[0] == 0.0
        assert wilson_interval(trials, trials)[1] == 1.0
        for successes in {0, 1, trials // 2, trials - 1, trials}:
            lo, hi = wilson_interval(successes, trials)
            assert 0.0 <= lo <= successes / trials <= hi <= 1.0


class TestTails:
    def test_tail_probabilities(self):
        theta = sample_unit_direction(4, seed=0)
        cfg = TailExperimentConfig(theta, samples=20_000, seed=1)
        rows = tail_linear_combination(cfg, [0.0, 1.0, 2.0, 4.0])
        assert rows[0].probability == 1.0
        probabilities = [r.probability for r in rows]
        assert probabilities == sorted(probabilities, reverse=True)
        assert all(r.ci_lo <= r.probability <= r.ci_hi for r in rows)

    @pytest.mark.parametrize("dim", [1, 16])
    def test_tail_decreases_in_t(self, dim):
        theta = sample_unit_direction(dim, seed=dim)
        cfg = TailExperimentConfig(theta, samples=20_000, seed=2)
        rows = tail_linear_combination(cfg, [0.5, 1.0, 2.0, 3.0, 5.0])
        probabilities = [r.probability for r in rows]
        assert all(a >= b for a, b in zip(probabilities, probabilities[1:]))
        assert all(0.0 <= r.ci_lo <= r.probability <= r.ci_hi <= 1.0 for r in rows)

    def test_tail_needs_unit_weights(self):
        with pytest.raises(ValueError):
            tail_linear_combination(TailExperimentConfig((1.0, 1.0), samples=20_000), [1.0])

    def test_tail_needs_enough_samples(self):
        with pytest.raises(ValueError):
            tail_linear_combination(TailExperimentConfig((1.0,), samples=100), [1.0])

    def test_unit_direction(self):
        theta = sample_unit_direction(16, seed=4)
        assert len(theta) == 16
        assert math.fsum(v * v for v in theta) == pytest.approx(1.0)
        assert sample_unit_direction(16, seed=4) == theta

    def test_fit_envelope(self):
        rows = [
            TailRow(t=t, probability=2 * math.exp(-1.5 * t), ci_lo=0.0, ci_hi=1.0, samples=1000)
            for t in (1.0, 2.0, 3.0, 4.0, 5.0)
        ]
        fit = fit_tail_curve(rows, (1.0,))
        assert fit.C == pytest.approx(1.5)
        assert fit.C_prime == pytest.approx(2.0)
        assert all(fit(r.t) >= r.probability * (1 - 1e-12) for r in rows)

    def test_fit_needs_two_positive_points(self):
        rows = [TailRow(t=1.0, probability=0.1, ci_lo=0, ci_hi=1, samples=10)]
        with pytest.raises(ValueError):
            fit_tail_curve(rows, (1.0,))

    def test_logconcave_bounds(self):
        cfg = TailExperimentConfig((HALF_SQRT2, -HALF_SQRT2), samples=20_000, seed=3)
        rows = logconcave_tail_check(cfg)
        assert [r.bound for r in rows] == pytest.approx([0.6065, 0.3679, 0.1353], abs=1e-4)
        assert all(r.ci_lo <= r.bound for r in rows)

    def test_logconcave_needs_zero_sum(self):
        with pytest.raises(WeightSumNonzeroError):
            logconcave_tail_check(TailExperimentConfig((1.0, 0.5), samples=20_000))

    @pytest.mark.parametrize(
        "theta, p, linf_head, l2_tail",
        [
            ((3, -4, 1, 2), 2, 4.0, math.sqrt(5)),
            ((3, -4, 1, 2), 10, 4.0, 0.0),
            ((0.5,), 1, 0.5, 0.0),
        ],
    )
    def test_rearranged_norms(self, theta, p, linf_head, l2_tail):
        norms = rearranged_norms(theta, p)
        assert norms.linf_head == linf_head
        assert norms.l2_tail == pytest.approx(l2_tail)

    def test_rearranged_norms_rejects_p(self):
        with pytest.raises(ValueError):
            rearranged_norms((1.0,), 0)

    def test_moment_bracket(self):
        rows = moment_bracket_check(sample_unit_direction(8, seed=0), p_list=(2, 4), samples=20_000, seed=1)
        assert [r.p for r in rows] == [2, 4]
        assert all(0.02 < r.ratio < 50 for r in rows)


class TestLogLog:
    def test_bounds(self):
        cfg = TailExperimentConfig((HALF_SQRT2, -HALF_SQRT2), d=100.0, samples=20_000, seed=0)
        est = loglog_expectation(cfg)
        assert est.lower_bound == pytest.approx(1.5272, abs=1e-4)
        assert est.upper_bound == pytest.approx(4.7226, abs=1e-4)
        assert est.inside_bounds

    def test_zero_weights_are_exact(self):
        est = loglog_expectation(TailExperimentConfig((0.0, 0.0), d=100.0, samples=20_000))
        assert est.estimate == est.lower_bound == pytest.approx(math.log(math.log(100)))
        assert est.std_error == 0.0

    def test_smallest_scale(self):
        cfg = TailExperimentConfig((HALF_SQRT2, -HALF_SQRT2), d=math.e**2, samples=20_000, seed=0)
        assert loglog_expectation(cfg).estimate >= math.log(2)

    @pytest.mark.parametrize("d", [math.e**2, 1e4])
    def test_estimates_fall_in_bracket(self, d):
        cfg = TailExperimentConfig((HALF_SQRT2, -HALF_SQRT2), d=d, samples=20_000, seed=5)
        est = loglog_expectation(cfg)
        assert est.lower_bound == pytest.approx(math.log(math.log(d)))
        assert est.lower_bound <= est.estimate <= est.upper_bound
        assert est.inside_bounds

        single = loglog_single_gaussian(d, samples=20_000, seed=5)
        assert single.lower_bound <= single.estimate <= single.upper_bound

    def test_needs_zero_sum(self):
        with pytest.raises(WeightSumNonzeroError):
            loglog_expectation(TailExperimentConfig((1.0, 0.0), samples=20_000))

    def test_needs_large_scale(self):
        with pytest.raises(ScaleTooSmallError):
            loglog_expectation(TailExperimentConfig((HALF_SQRT2, -HALF_SQRT2), d=5.0, samples=20_000))

    def test_single_gaussian(self):
        est = loglog_single_gaussian(100.0, samples=20_000, seed=0)
        assert est.lower_bound == pytest.approx(1.5272, abs=1e-4)
        assert est.lower_bound <= est.estimate <= est.upper_bound

        with pytest.raises(ScaleTooSmallError):
            loglog_single_gaussian(5.0)


class TestReport:
    def test_unknown_experiment(self):
        with pytest.raises(ValueError, match="Unknown experiment"):
            run_experiment("nope")

    def test_every_experiment_is_registered(self):
        assert set(EXPERIMENTS) == {
            "constant-a",
            "tau2",
            "moment-ratio",
            "tail",
            "loglog",
            "loglog-single",
            "logconcave",
            "bracket",
        }

    def test_constant_a_report(self):
        rows = run_experiment("constant-a", samples=20_000, seed=0)
        assert [row.experiment for row in rows] == ["constant-a", "constant-a"]
        assert rows[0].estimate == pytest.approx(A_CLOSED_FORM, abs=1e-9)
        assert rows[1].samples == 20_000

        out = io.StringIO()
        write_experiment_csv(rows, out)
        table = list(csv.reader(io.StringIO(out.getvalue())))
        assert table[0] == CSV_HEADER
        assert table[0] == ["experiment", "param-json", "estimate", "ci_lo", "ci_hi", "bound_lo", "bound_hi", "samples", "seed"]
        assert len(table) == 3
        assert table[1][1] == '{"method": "quadrature"}'

    def test_moment_ratio_report_includes_laplace_rows(self):
        rows = run_experiment("moment-ratio")
        laplace = [row for row in rows if "laplace" in row.params]
        assert len(rows) == 11
        assert [row.params for row in laplace] == [
            '{"law": "laplace", "p": 2}',
            '{"law": "laplace", "p": 8}',
            '{"law": "laplace", "p": 16}',
        ]
        assert all(row.estimate == pytest.approx(1.0, rel=1e-7) for row in laplace)

    def test_csv_to_path(self, tmp_path):
        path = tmp_path / "logconcave.csv"
        write_experiment_csv(run_experiment("logconcave", samples=20_000, seed=1), path)
        assert path.read_text().splitlines()[0].startswith("experiment,param-json,estimate")
        assert len(path.read_text().splitlines()) == 4
