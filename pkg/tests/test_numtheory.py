import math

import numpy as np
import pytest

from zetaconv.errors import DomainError, LimitError
from zetaconv.numtheory import (ei_mellin_check, example_h, example_phi, mertens,
                                mertens_csv, moebius_sieve, verify_example)

import _oracle_values as ref
from conftest import mu_bruteforce


class TestMoebiusSieve:
    def test_first_ten(self):
        table = moebius_sieve(10)
        assert table.mu[1:11].tolist() == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]

    def test_squareful_and_three_primes(self):
        table = moebius_sieve(30)
        assert table.mu[4] == 0
        assert table.mu[30] == -1

    def test_limit_cap(self):
        with pytest.raises(LimitError):
            moebius_sieve(10 ** 8 + 1)
        with pytest.raises(LimitError):
            moebius_sieve(0)

    def test_against_trial_division(self, ev_1e6, rng):
        ns = rng.integers(1, 10 ** 6, size=1000)
        for n in ns:
            assert int(ev_1e6.table.mu[n]) == mu_bruteforce(int(n))

    def test_divisor_sums_vanish(self, ev_1e6, rng):
        # sum_{d|n} mu(d) = 0 for n > 1
        for n in rng.integers(2, 10 ** 3, size=1000):
            n = int(n)
            total = sum(int(ev_1e6.table.mu[d]) for d in range(1, n + 1) if n % d == 0)
            assert total == 0

    def test_prefix_consistency_full_table(self, ev_1e6):
        mu = ev_1e6.table.mu[1:].astype(np.int64)
        assert np.array_equal(np.diff(ev_1e6.prefix), mu)
        assert np.all(np.abs(ev_1e6.prefix[1:]) <= np.arange(1, ev_1e6.limit + 1))


class TestMertens:
    def test_small_values(self, ev_1e6):
        assert mertens(1.0, ev_1e6) == 1
        assert mertens(2.0, ev_1e6) == 0
        assert mertens(2.9, ev_1e6) == 0

    def test_m100_against_bruteforce(self, ev_1e6):
        brute = sum(mu_bruteforce(n) for n in range(1, 101))
        assert mertens(100.0, ev_1e6) == brute == ref.MERTENS_100

    def test_frozen_checkpoints(self, ev_1e6):
        assert mertens(1000.0, ev_1e6) == ref.MERTENS_1000
        assert mertens(10 ** 6, ev_1e6) == ref.MERTENS_10_6

    def test_limits(self, ev_1e6):
        with pytest.raises(DomainError):
            mertens(0.5, ev_1e6)
        with pytest.raises(LimitError):
            mertens(10 ** 6 + 1, ev_1e6)

    def test_csv_export(self, ev_1e4):
        text = mertens_csv(ev_1e4, 5)
        assert text.splitlines() == ["n,mu,M", "1,1,1", "2,-1,0", "3,-1,-1",
                                     "4,0,-1", "5,-1,-2"]


class TestExampleFunctions:
    def test_h_at_zero(self):
        expected = (ref.EI_M1 - 2.0 * ref.EI_M2)
        assert example_h(0.0, 0.75) == pytest.approx(expected, rel=1e-12)

    def test_h_sign_at_zero(self):
        # |Ei(-1)| > 2|Ei(-2)|: frozen oracle values decide the sign
        assert ref.EI_M1 - 2.0 * ref.EI_M2 < 0
        assert example_h(0.0, 0.75) < 0

    def test_h_far_right_underflow(self):
        assert abs(example_h(5.0, 0.75)) < 1e-60
        assert example_h(800.0, 0.75) == 0.0

    def test_phi_vanishes_right_of_origin(self, ev_1e4):
        for x in (0.0, 1e-9, 0.5, 3.0):
            assert example_phi(x, 0.75, ev_1e4) == 0.0

    def test_phi_on_mertens_plateau(self, ev_1e4):
        # M(2.5) = M(2) = 0
        assert example_phi(-math.log(2.5), 0.75, ev_1e4) == 0.0

    def test_phi_at_jump_point(self, ev_1e4):
        # exp/log roundoff must land on the closed side: M(5) = -2
        expected = -(5.0 ** -0.75) * (-2.0)
        assert example_phi(-math.log(5.0), 0.75, ev_1e4) == pytest.approx(expected, rel=1e-12)
        assert example_phi(-math.log(5.0), 0.75, ev_1e4) > 0

    def test_phi_step_structure(self, ev_1e4):
        sigma = 0.75
        # phi * e^{-sigma x} is piecewise constant between -log(n+1) and -log n
        for x in (-math.log(3.2), -math.log(3.8)):
            assert example_phi(x, sigma, ev_1e4) * math.exp(-sigma * x) == 1.0
        # mu(4) = 0: no jump crossing -log 4
        for x in (-math.log(4.2), -math.log(4.8)):
            assert example_phi(x, sigma, ev_1e4) * math.exp(-sigma * x) == 1.0

    def test_phi_limit_error(self, ev_1e4):
        with pytest.raises(LimitError):
            example_phi(-math.log(20000.0), 0.75, ev_1e4)


class TestVerifyExample:
    def test_passes_at_default_tolerance(self, ev_1e6):
        report = verify_example(0.75, ev=ev_1e6, tol=1e-4)
        assert report.passed
        assert report.max_abs_err < 1e-10

    def test_sigma_domain(self):
        with pytest.raises(DomainError):
            verify_example(0.4, limit=100)

    def test_truncation_floor_reported(self, ev_1e6):
        report = verify_example(0.75, ev=ev_1e6, tol=1e-30)
        assert not report.passed
        assert report.max_abs_err > 0.0

    def test_deliberate_under_truncation(self, ev_1e6):
        report = verify_example(0.75, y_trunc=1.0, ev=ev_1e6, tol=1e-4)
        assert not report.passed
        assert report.max_abs_err > 1e-2

    def test_y_sweep_monotone(self, ev_1e6):
        errs = []
        bounds = []
        for y in (math.log(1e3), math.log(1e4), math.log(1e5), math.log(1e6)):
            rep = verify_example(0.75, y_trunc=y, ev=ev_1e6)
            errs.append(rep.max_abs_err)
            bounds.append(max(rep.tail_bounds_log10))
        # realized error: non-increasing (the tail is below one ulp from the
        # first step on, so exact ties are the expected outcome)
        assert all(errs[i + 1] <= errs[i] for i in range(len(errs) - 1))
        # the analytic truncation bound keeps strictly decreasing in log space
        assert all(bounds[i + 1] < bounds[i] for i in range(len(bounds) - 1))

    def test_depth_beyond_sieve_rejected(self, ev_1e4):
        with pytest.raises(LimitError):
            verify_example(0.75, y_trunc=math.log(10 ** 6), ev=ev_1e4)

    def test_report_json_shape(self, ev_1e4):
        obj = verify_example(0.75, ev=ev_1e4, y_trunc=math.log(10 ** 4)).to_json_obj()
        assert set(obj) == {"sigma", "Y", "xs", "max_abs_err", "per_point", "pass",
                            "tail_bounds_log10"}
        assert len(obj["per_point"]) == 11
        assert set(obj["per_point"][0]) == {"x", "lhs", "rhs", "err"}


class TestEiMellin:
    @pytest.mark.parametrize("beta, s, tol", [
        (1.0, 0.75 + 0j, 1e-8),
        (2.0, 0.75 + 3j, 1e-6),
        (1.0, 0.6 + 10j, 1e-8),
    ])
    def test_examples(self, beta, s, tol):
        rep = ei_mellin_check(beta, s, tol=tol)
        assert rep.passed
        assert rep.rel_gap <= tol

    def test_near_zero_sigma_stress(self):
        rep = ei_mellin_check(1.0, 0.05 + 0j, tol=1e-8)
        assert rep.passed

    def test_domain(self):
        with pytest.raises(DomainError):
            ei_mellin_check(0.0, 0.75 + 0j)
        with pytest.raises(DomainError):
            ei_mellin_check(1.0, -0.5 + 0j)
