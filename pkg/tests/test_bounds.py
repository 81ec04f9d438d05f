import math

import numpy as np
import pytest

from qcap import bounds as bnd
from qcap.bounds import BoundParams, BoundValidityError


P_MAIN = BoundParams(n=100, p=0.4, alpha=3)
P_FIG2 = BoundParams(n=100, p=0.09, alpha=3)


def random_valid_params(rng, regime="lemma"):
    """Draw a (n, p, alpha) triple satisfying the requested regime."""
    while True:
        n = int(rng.integers(20, 200))
        alpha = int(rng.integers(3, 5))
        na1 = float(n ** (alpha - 1))
        lo, hi = 4.0 / na1, 0.5 - 1.0 / na1
        if regime == "thm2":
            lo = max(lo, 1 / 3 + 1e-9)
            if n ** (alpha - 2) <= 12:
                continue
        if lo >= hi:
            continue
        p = float(rng.uniform(lo, hi))
        params = BoundParams(n=n, p=p, alpha=alpha)
        if regime == "thm2" and not params.thm2_ok:
            continue
        if not params.lemmaB_ok:
            continue
        return params


class TestK0:
    def test_example_values(self):
        assert bnd.k0(P_MAIN) == pytest.approx(1.4995, abs=1e-12)
        assert bnd.k0(P_FIG2) == pytest.approx(10.108888888888889, abs=1e-9)

    def test_closed_form(self, rng):
        for _ in range(20):
            params = random_valid_params(rng)
            expected = (1 - params.p - 2 / params.n ** (params.alpha - 1)) / params.p
            assert bnd.k0(params) == pytest.approx(expected, rel=1e-12)

    def test_p_zero_rejected(self):
        with pytest.raises(BoundValidityError):
            bnd.k0(BoundParams(n=10, p=0.0, alpha=3))


class TestClosedForms:
    def test_upper_U(self):
        # 2n/k + ((k-1)/k)(1-p) n^alpha at n=100, p=0.4, alpha=3, k=3
        assert bnd.upper_U(P_MAIN, 3) == pytest.approx(200 / 3 + (2 / 3) * 0.6 * 1e6)

    def test_table_row_k3(self):
        t = bnd.lemma_b1(P_MAIN, 3)
        assert t.U == pytest.approx(400066.6666666666)
        assert t.L == pytest.approx(400000.0)
        assert t.Uc == pytest.approx(266733.3333333334)
        assert t.Lc == pytest.approx(266666.6666666667)
        assert t.Up == pytest.approx(466733.3333333333)
        assert t.Upp == pytest.approx(666800.0)
        assert t.f == pytest.approx(49933.333333333336)
        assert t.fc == pytest.approx(33266.666666666664)
        assert t.q_lower_next == pytest.approx(450000.0)
        assert t.qc_lower_next == pytest.approx(300000.0)

    def test_branch_switch_at_k0(self):
        # below k0 the total-private upper bound is the flat form, above it
        # the decaying form; brute-force both sides of the threshold
        kk0 = bnd.k0(P_FIG2)
        for k in range(1, 21):
            t = bnd.lemma_b1(P_FIG2, k)
            if k <= kk0:
                assert t.p_upper == pytest.approx((1 - 2 * P_FIG2.p) * P_FIG2.log2_d)
            else:
                assert t.p_upper == pytest.approx(bnd.upper_U(P_FIG2, k))

    def test_bounds_ordered(self, rng):
        # L <= U and Lc <= Uc for random valid parameter tuples
        for _ in range(100):
            params = random_valid_params(rng)
            k = int(rng.integers(1, params.n + 1))
            t = bnd.lemma_b1(params, k)
            assert t.L <= t.U + 1e-9
            assert t.Lc <= t.Uc + 1e-9
            assert t.Up >= 0 and t.Upp >= 0

    def test_L_monotone_in_k(self):
        vals = [bnd.lower_L(P_MAIN, j) for j in range(1, 50)]
        assert all(b >= a for a, b in zip(vals, vals[1:]))

    def test_Udprime_increasing_in_k(self):
        # U''(k) = n^alpha + (4n - n^alpha)/k grows with k when n^alpha > 4n
        vals = [bnd.upper_Udprime(P_FIG2, k) for k in range(11, 101)]
        assert all(b >= a for a, b in zip(vals, vals[1:]))

    def test_lemma_regime_enforced(self):
        with pytest.raises(BoundValidityError, match="lemmaB_ok"):
            bnd.lemma_b1(BoundParams(n=100, p=0.6, alpha=3), 1)


class TestTheorem1:
    def test_example_values(self):
        assert bnd.theorem1_gap(3, 4, 1) == pytest.approx(14.25)
        assert bnd.theorem1_gap(3, 4, 3) == pytest.approx(1.375)

    def test_positive_on_range(self):
        for n, alpha in [(3, 4), (4, 4), (9, 3), (100, 3)]:
            if n ** (alpha - 2) <= 8:
                continue
            for k in range(1, n + 1):
                assert bnd.theorem1_gap(n, alpha, k) > 0

    def test_regime_enforced(self):
        with pytest.raises(BoundValidityError, match="thm1_ok"):
            bnd.theorem1_gap(2, 3, 1)

    def test_k_range_enforced(self):
        with pytest.raises(BoundValidityError, match="k_range"):
            bnd.theorem1_gap(3, 4, 4)


class TestTheorem2:
    def test_example_values(self):
        f2, _ = bnd.theorem2_gaps(P_MAIN, 2)
        _, fc1 = bnd.theorem2_gaps(P_MAIN, 1)
        assert f2 == pytest.approx(99900.0)
        assert fc1 == pytest.approx(199800.0)
        assert math.log2(f2) == pytest.approx(16.6083, abs=1e-3)
        assert math.log2(fc1) == pytest.approx(17.6083, abs=1e-3)

    def test_f_nan_at_k1(self):
        f1, fc1 = bnd.theorem2_gaps(P_MAIN, 1)
        assert math.isnan(f1) and not math.isnan(fc1)

    def test_positive_on_ranges(self, rng):
        for _ in range(20):
            params = random_valid_params(rng, regime="thm2")
            for k in range(1, min(params.n, 30) + 1):
                f, fc = bnd.theorem2_gaps(params, k)
                if k >= 2:
                    assert f > 0, (params, k)
                assert fc > 0, (params, k)

    def test_k1_predicate(self):
        ok, lhs, rhs = bnd.thm2_k1_predicate(P_MAIN)
        assert ok
        assert lhs == pytest.approx(300000.0)
        assert rhs == pytest.approx(200000.0, rel=1e-9)

    def test_regime_enforced(self):
        with pytest.raises(BoundValidityError, match="thm2_ok"):
            bnd.theorem2_gaps(BoundParams(n=100, p=0.2, alpha=3), 2)


class TestEq24:
    def test_example(self):
        assert bnd.eq24_min_k(P_MAIN) == 3

    def test_matches_brute_force(self, rng):
        for _ in range(20):
            params = random_valid_params(rng, regime="thm2")
            rhs = (2.0 + params.log2_d * params.p) / (
                (1.0 - params.p) * (params.n + 1) * params.na1
            )
            brute = next(
                (k for k in range(1, params.n + 1) if (k - 1) / k >= rhs), None
            )
            if rhs >= 1.0:
                brute = None
            assert bnd.eq24_min_k(params) == brute


class TestTheorem3:
    def test_example_values(self):
        assert bnd.theorem3_c(P_FIG2, 9) == pytest.approx(91.20267260579065)
        assert bnd.theorem3_max_k(P_FIG2) == 9

    def test_c_monotone_in_k(self):
        cs = [bnd.theorem3_c(P_FIG2, k) for k in range(1, 11)]
        assert all(b > a for a, b in zip(cs, cs[1:]))

    def test_k_above_k0_rejected(self):
        with pytest.raises(BoundValidityError, match="k_range"):
            bnd.theorem3_c(P_FIG2, 11)


class TestFigures:
    def test_figure1_header_and_rows(self):
        csv = bnd.figure1_csv(P_MAIN, 5)
        lines = csv.strip().split("\n")
        assert lines[0] == "k,log2_f,log2_fc"
        assert len(lines) == 6
        k1 = lines[1].split(",")
        assert k1[0] == "1" and k1[1] == ""  # f undefined at k=1
        assert float(k1[2]) == pytest.approx(17.608197057567143, abs=1e-9)
        k2 = lines[2].split(",")
        assert float(k2[1]) == pytest.approx(16.608197057567143, abs=1e-9)

    def test_figure2_crossing(self):
        rows = bnd.figure2_rows(P_FIG2)
        qmax = rows[0][2]
        assert all(r[2] == qmax for r in rows)
        assert qmax == pytest.approx(900990.099009901)
        # the upper-bound curve dips below Qmax at k=9 and re-crosses at k=10
        assert rows[8] == (9, pytest.approx(900022.2222222224), pytest.approx(qmax))
        assert rows[9][1] > qmax
        below = [k for k, uk, _ in rows if uk < qmax]
        assert below and min(below) <= 9

    def test_figure2_csv_parses(self):
        csv = bnd.figure2_csv(P_FIG2)
        lines = csv.strip().split("\n")
        assert lines[0] == "k,U_k,Qmax"
        assert len(lines) == P_FIG2.n + 1
        data = np.array([[float(x) for x in ln.split(",")] for ln in lines[1:]])
        assert data[:, 0].tolist() == list(range(1, 101))

    def test_figure_values_12_digits(self):
        csv = bnd.figure2_csv(P_FIG2)
        cell = csv.strip().split("\n")[9].split(",")[1]
        assert len(cell.replace(".", "").replace("-", "")) <= 12


class TestParamValidation:
    def test_bad_probability(self):
        with pytest.raises(ValueError):
            BoundParams(n=10, p=1.5, alpha=3)

    def test_bad_n(self):
        with pytest.raises(ValueError):
            BoundParams(n=0, p=0.4, alpha=3)

    def test_exact_large_exponent(self):
        # n^alpha stays exact through the integer domain before conversion
        params = BoundParams(n=100, p=0.4, alpha=5)
        assert params.log2_d == float(100**5)


@pytest.fixture
def rng():
    return np.random.default_rng(777)
