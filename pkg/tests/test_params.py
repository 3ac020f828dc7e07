import math

import pytest

from trioverlay.params import (Params, derive_params, explicit_params,
                               feasible_params)


def close(a, b, rel=1e-12):
    return math.isclose(a, b, rel_tol=rel, abs_tol=0.0)


class TestDerived:
    def test_reference_point_n_1e4(self):
        # frozen from an independent evaluation of the formulas
        par = derive_params(10000, epsilon=0.1, beta=0.5, kappa=1.1)
        assert par.N == 118
        assert par.cells == 13924
        assert close(par.p, 0.015174271293851465)
        assert par.k == 334
        assert close(par.t1, 136.6850253785344)
        assert close(par.t2, 25.118864315095795)
        assert close(par.t3, 6.309573444801933)
        assert close(par.pn, 151.74271293851465)
        assert close(par.pN, 1.7905640126744728)
        assert close(par.log2n, 84.83036976765932)
        assert close(par.eps1, 0.1 ** 3)
        assert close(par.eps2, 0.1 ** 6)
        assert par.mode == "derived"
        assert par.injectable

    def test_kappa_defaults_to_one_plus_eps(self):
        par = derive_params(10000, epsilon=0.2)
        assert close(par.kappa, 1.2)
        # k grows with kappa
        assert par.k == math.ceil(1.2 * math.sqrt(10000 * math.log(10000)))

    def test_small_grid_not_injectable(self):
        # round(100/ln^2 100) = 5; 25 < 100
        par = derive_params(100)
        assert par.N == 5
        assert close(par.p, 0.10729830131446737)
        assert par.k == 24
        assert not par.injectable
        with pytest.raises(ValueError):
            par.require_injectable()

    def test_known_underivable_scales(self):
        for n, N in ((1000, 21), (2000, 35), (5000, 69)):
            par = derive_params(n)
            assert par.N == N
            assert not par.injectable

    def test_constant_C(self):
        par = derive_params(500)
        assert close(par.C, 3.0 * math.sqrt(20.0))

    def test_rejects_tiny_n(self):
        with pytest.raises(ValueError):
            derive_params(99)

    def test_rejects_bad_epsilon_beta_kappa(self):
        with pytest.raises(ValueError):
            derive_params(1000, epsilon=0.0)
        with pytest.raises(ValueError):
            derive_params(1000, epsilon=1.0)
        with pytest.raises(ValueError):
            derive_params(1000, beta=1.5)
        with pytest.raises(ValueError):
            derive_params(1000, kappa=0.9)


class TestExplicit:
    def test_spec_tiny_instance(self):
        par = explicit_params(n=9, N=3, p=1.0, k=3)
        assert (par.t1, par.t2, par.t3) == (2.25, 1.5, 0.75)
        assert par.mode == "explicit"
        assert par.injectable
        # back-solved provenance
        assert close(par.beta, math.sqrt(9 / math.log(9)))
        assert close(par.kappa, 3 / math.sqrt(9 * math.log(9)))

    def test_p_zero_allowed_explicitly(self):
        par = explicit_params(n=4, N=2, p=0.0, k=2)
        assert par.p == 0.0
        assert par.pn == 0.0

    def test_p_zero_rejected_in_derived_mode(self):
        good = explicit_params(n=4, N=2, p=0.0, k=2)
        d = good.to_dict()
        d["mode"] = "derived"
        with pytest.raises(ValueError):
            Params.from_dict(d)

    def test_grid_too_small_rejected(self):
        with pytest.raises(ValueError):
            explicit_params(n=10, N=3, p=0.5, k=3)

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            explicit_params(n=9, N=3, p=1.5, k=3)
        with pytest.raises(ValueError):
            explicit_params(n=9, N=3, p=-0.1, k=3)
        with pytest.raises(ValueError):
            explicit_params(n=9, N=3, p=0.5, k=10)  # k > n
        with pytest.raises(ValueError):
            explicit_params(n=9, N=1, p=0.5, k=3)  # N < 2

    def test_cutoff_override_and_chain(self):
        par = explicit_params(n=16, N=4, p=0.3, k=8, t1=5.0, t2=3.0, t3=1.0)
        assert (par.t1, par.t2, par.t3) == (5.0, 3.0, 1.0)
        with pytest.raises(ValueError):
            explicit_params(n=16, N=4, p=0.3, k=8, t1=2.0, t2=3.0, t3=1.0)
        with pytest.raises(ValueError):
            explicit_params(n=16, N=4, p=0.3, k=8, t1=9.0, t2=3.0, t3=1.0)

    def test_n1_degenerate_provenance_is_nan(self):
        par = explicit_params(n=1, N=2, p=0.5, k=1)
        assert math.isnan(par.beta) and math.isnan(par.kappa)


class TestFeasible:
    def test_clamps_small_scales(self):
        par = feasible_params(1000)
        assert par.mode == "clamped"
        assert par.N == 32  # ceil(sqrt(1000))
        assert par.injectable
        # p, k, cutoffs keep the derived formulas
        ref = derive_params(1000)
        assert close(par.p, ref.p) and par.k == ref.k
        assert close(par.t1, ref.t1)

    def test_identity_when_already_feasible(self):
        assert feasible_params(10000) == derive_params(10000)
        assert feasible_params(10000).mode == "derived"

    def test_minimality(self):
        for n in (150, 1000, 2000, 5000):
            par = feasible_params(n)
            if par.mode == "clamped":
                assert par.N * par.N >= n > (par.N - 1) * (par.N - 1)


class TestRecord:
    def test_roundtrip(self):
        for par in (derive_params(10000), explicit_params(n=9, N=3, p=1.0, k=3),
                    feasible_params(1000)):
            again = Params.from_dict(par.to_dict())
            assert again == par

    def test_record_carries_conventions(self):
        d = derive_params(500).to_dict()
        assert "eps1 = epsilon**3" in d["convention_eps"]
        assert d["mode"] == "derived"
        for key in ("n", "N", "p", "k", "t1", "t2", "t3", "C",
                    "beta", "kappa", "eps1", "eps2", "epsilon"):
            assert key in d

    def test_frozen(self):
        par = derive_params(500)
        with pytest.raises(Exception):
            par.n = 12
