import math
from decimal import Decimal

import numpy as np
import pytest

from binomial_roots.core import certify, has_real_root, solve
from binomial_roots.ensembles import (
    GaussianEnsemble,
    derive_seed,
    map_root_back,
    rescale_to_unit_variance,
    sample_exponent_matrix,
    sample_system,
)
from binomial_roots.arith import from_real, mul
from binomial_roots.linalg import apply_exponent, determinant
from tests.conftest import LN2, system


def test_same_seed_same_system():
    e = GaussianEnsemble(n=4, d=16, seed=123)
    assert sample_system(e) == sample_system(e)
    assert sample_system(e) != sample_system(GaussianEnsemble(n=4, d=16, seed=124))


def test_smallest_ensemble_draws_unit_exponents():
    seen = {sample_system(GaussianEnsemble(n=1, d=1, seed=seed)).A.entries for seed in range(50)}
    assert seen <= {((1,),), ((-1,),)}


def test_exponents_in_range_and_nonsingular():
    rng = np.random.default_rng(3)
    for _ in range(20):
        A = sample_exponent_matrix(rng, 3, 5)
        assert determinant(A.entries) != 0
        assert A.max_abs_entry <= 5


def test_coefficient_variances():
    variances = ((4.0, 1.0),)
    draws = np.array(
        [
            [float(c) for c in sample_system(GaussianEnsemble(1, 3, variances, seed=seed)).coefficients[0]]
            for seed in range(10_000)
        ]
    )
    assert np.mean(draws[:, 0]) == pytest.approx(0.0, abs=0.1)
    assert np.var(draws[:, 0]) == pytest.approx(4.0, abs=0.25)
    assert np.var(draws[:, 1]) == pytest.approx(1.0, abs=0.07)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"n": 0, "d": 1},
        {"n": 1, "d": 0},
        {"n": 2, "d": 1, "variances": ((1.0, 1.0),)},
        {"n": 1, "d": 1, "variances": ((0.0, 1.0),)},
        {"n": 1, "d": 1, "variances": ((math.inf, 1.0),)},
    ],
)
def test_invalid_ensembles(kwargs):
    with pytest.raises(ValueError):
        GaussianEnsemble(**kwargs)


def test_from_spec():
    e = GaussianEnsemble.from_spec({"n": 2, "d": 8, "variances": "unit", "seed": 9})
    assert e == GaussianEnsemble(n=2, d=8, seed=9)
    assert e.variances == ((1.0, 1.0), (1.0, 1.0))

    weighted = GaussianEnsemble.from_spec({"n": 1, "d": 2, "variances": [[16, 1]]})
    assert weighted.variances == ((16.0, 1.0),)
    assert weighted.seed == 0


def test_derive_seed():
    assert derive_seed(1000, 0) == 1000
    assert derive_seed(1000, 7) == 1007


class TestRescale:
    def test_unit_variances_give_unit_scaling(self):
        e = GaussianEnsemble(n=2, d=4, seed=1)
        rescaled = rescale_to_unit_variance(sample_system(e), e)
        assert all(ri.sign == 1 and abs(float(ri.logabs)) < 1e-25 for ri in rescaled.r)

    def test_equal_variances_give_unit_scaling(self):
        e = GaussianEnsemble(n=1, d=2, variances=((3.0, 3.0),))
        rescaled = rescale_to_unit_variance(system((-8, 1, [2])), e)
        assert float(rescaled.r[0].logabs) == pytest.approx(0.0, abs=1e-25)

    def test_square_root_scaling(self):
        e = GaussianEnsemble(n=1, d=2, variances=((16.0, 1.0),))
        F = system((-8, 1, [2]))
        rescaled = rescale_to_unit_variance(F, e)

        assert rescaled.F_tilde.coefficients == ((Decimal(-2), Decimal(1)),)
        assert float(rescaled.r[0].logabs) == pytest.approx(LN2, rel=1e-15)

        y = solve(rescaled.F_tilde).root
        x = map_root_back(y, rescaled.r)
        assert x[0].to_real() == pytest.approx(math.sqrt(8), rel=1e-15)
        assert certify(F, x).passes

    def test_mapped_roots_solve_the_original(self):
        checked = 0
        for seed in range(30):
            e = GaussianEnsemble(n=3, d=6, variances=((0.25, 9.0), (4.0, 1.0), (1.0, 100.0)), seed=seed)
            F = sample_system(e)
            if not has_real_root(F):
                continue
            rescaled = rescale_to_unit_variance(F, e)
            x = map_root_back(solve(rescaled.F_tilde).root, rescaled.r)
            assert certify(F, x).max_residual <= 1e-9
            direct = solve(F).root
            assert [float(v.logabs) for v in x] == pytest.approx([float(v.logabs) for v in direct], rel=1e-12, abs=1e-12)
            checked += 1
        assert checked > 0

    @pytest.mark.parametrize("n", [1, 2, 4, 6])
    def test_scaling_factors_through_the_monomial_map(self, n):
        variances = tuple((float(i + 1), 0.5 + i) for i in range(n))
        e = GaussianEnsemble(n=n, d=8, variances=variances, seed=n)
        F = sample_system(e)
        rescaled = rescale_to_unit_variance(F, e, precision=256)
        A = F.A.entries

        r_to_A = apply_exponent(list(rescaled.r), A)
        expected = [0.5 * math.log(v0 / v1) for v0, v1 in variances]
        assert [float(v.logabs) for v in r_to_A] == pytest.approx(expected, abs=1e-20)

        rng = np.random.default_rng(n)
        x = [from_real(float(v)) for v in rng.choice([-1, 1], n) * rng.lognormal(size=n)]
        scaled = apply_exponent([mul(ri, xi) for ri, xi in zip(rescaled.r, x)], A)
        product = [mul(a, b) for a, b in zip(r_to_A, apply_exponent(x, A))]
        assert [v.sign for v in scaled] == [v.sign for v in product]
        expected_logs = [float(v.logabs) for v in product]
        assert [float(v.logabs) for v in scaled] == pytest.approx(expected_logs, abs=1e-18)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            rescale_to_unit_variance(system((-8, 1, [2])), GaussianEnsemble(n=2, d=2))

    def test_map_back_length_mismatch(self):
        e = GaussianEnsemble(n=1, d=2)
        rescaled = rescale_to_unit_variance(system((-8, 1, [2])), e)
        with pytest.raises(ValueError):
            map_root_back([], rescaled.r)
