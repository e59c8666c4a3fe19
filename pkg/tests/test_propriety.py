import itertools
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from powerlaw_priors.errors import DomainError
from powerlaw_priors.priors import AsymptoticExponents, Scope, analytic_exponents, get_prior
from powerlaw_priors.propriety import (
    Status,
    decide,
    decide_alpha_known,
    decide_general,
    decide_phi_known,
    decide_prior,
    min_n_strict,
    moment_finite_general,
)

P, I, U = Status.PROPER, Status.IMPROPER, Status.UNDETERMINED
R10 = AsymptoticExponents(k=-1, q0=-1, q_inf=-1, r0=-0.5, r_inf=-1.5)
J1 = AsymptoticExponents(k=-1, q0=-1, q_inf=-1, r0=-1, r_inf=-1)
GRID = (-2.0, -1.5, -1.0, -0.5, 0.0)

exp_st = st.sampled_from(GRID)
n_st = st.integers(min_value=1, max_value=50)


class TestAlphaKnown:
    def test_first_rule_proper(self):
        v = decide_alpha_known(AsymptoticExponents(k=-1, r0=-1), 2)
        assert v.status is P and v.moments.all_finite

    def test_n_one_improper(self):
        assert decide_alpha_known(AsymptoticExponents(k=-1, r0=-1), 1).status is I

    def test_heavy_mu(self):
        assert decide_alpha_known(AsymptoticExponents(k=-2, r0=3), 100).status is I
        assert decide_alpha_known(AsymptoticExponents(k=-2), 100).status is I

    def test_light_mu_shifts_threshold(self):
        e = AsymptoticExponents(k=0, r0=-2)
        assert decide_alpha_known(e, 1).status is I
        assert decide_alpha_known(e, 2).status is P

    def test_missing(self):
        assert decide_alpha_known(AsymptoticExponents(k=-1), 3).status is U


class TestPhiKnown:
    def test_weibull_reference(self):
        v = decide_phi_known(AsymptoticExponents(k=-1, q0=-1), 2)
        assert v.status is P
        assert v.moments.alpha_moments_finite and v.moments.mu_mean_finite is False

    def test_k_not_minus_one(self):
        assert decide_phi_known(AsymptoticExponents(k=0, q0=-1), 100).status is I

    def test_heavy_alpha(self):
        assert decide_phi_known(AsymptoticExponents(k=-1, q0=-2), 2).status is I
        assert decide_phi_known(AsymptoticExponents(k=-1, q0=-2), 3).status is P


class TestGeneral:
    def test_r10(self):
        v = decide_general(R10, 2)
        assert v.status is P and v.min_n == 2
        assert v.moments.finite_triples == ((0, 0, 0),)
        assert decide_general(R10, 1).status is I
        assert decide_general(R10, 1).min_n == 2

    def test_j1(self):
        for n in range(1, 30):
            assert decide_general(J1, n).status is I

    def test_moments(self):
        assert moment_finite_general(R10, 2, 0, 0, 0)
        assert not moment_finite_general(R10, 2, 1, 0, 0)
        assert not moment_finite_general(R10, 2, 0, 0, 1)
        with pytest.raises(DomainError):
            moment_finite_general(J1, 5, 0, 0, 0)
        with pytest.raises(DomainError):
            moment_finite_general(R10, 2, -1, 0, 0)

    def test_moment_inequality_is_literal(self):
        # wide window: 2(r + r_inf) + 1 - q0 < q < r + r0 - q_inf
        e = AsymptoticExponents(k=-1, q0=-0.5, q_inf=-3, r0=0, r_inf=-2)
        assert decide_general(e, 1).status is P
        finite = {(q, r) for q in range(5) for r in range(5) if moment_finite_general(e, 1, q, r, 0)}
        expected = {(q, r) for q in range(5) for r in range(5) if 2 * (r - 2) + 1.5 < q < r + 3}
        assert finite == expected

    def test_missing_exponent_with_failed_condition(self):
        # q_inf >= r0 already rules out propriety
        e = AsymptoticExponents(k=-1, q0=0, q_inf=0, r0=-0.5)
        assert decide_general(e, 5).status is I

    def test_missing_exponent_undecidable(self):
        e = AsymptoticExponents(k=-1, q0=-1, q_inf=-1, r0=-0.5)
        assert decide_general(e, 5).status is U


class TestProperties:
    @given(exp_st, exp_st, exp_st, exp_st, exp_st, st.integers(1, 5))
    def test_exhaustive(self, k, q0, qi, r0, ri, n):
        e = AsymptoticExponents(k=k, q0=q0, q_inf=qi, r0=r0, r_inf=ri)
        for scope in Scope:
            assert decide(e, n, scope).status in (P, I)

    def test_exhaustive_full_grid(self):
        for k, q0, qi, r0, ri in itertools.product(GRID, repeat=5):
            e = AsymptoticExponents(k=k, q0=q0, q_inf=qi, r0=r0, r_inf=ri)
            for n in range(1, 6):
                for scope in Scope:
                    assert decide(e, n, scope).status is not U

    @given(exp_st, exp_st, exp_st, exp_st, exp_st, n_st)
    def test_monotone_in_n(self, k, q0, qi, r0, ri, n):
        e = AsymptoticExponents(k=k, q0=q0, q_inf=qi, r0=r0, r_inf=ri)
        for scope in Scope:
            if decide(e, n, scope).status is P:
                assert decide(e, n + 1, scope).status is P

    @given(exp_st, exp_st, exp_st, exp_st, exp_st, n_st)
    def test_min_n_consistent(self, k, q0, qi, r0, ri, n):
        e = AsymptoticExponents(k=k, q0=q0, q_inf=qi, r0=r0, r_inf=ri)
        for scope in Scope:
            v = decide(e, n, scope)
            if v.min_n is not None:
                assert (n >= v.min_n) == (v.status is P)

    def test_min_n_strict(self):
        assert min_n_strict(1.0) == 2
        assert min_n_strict(1.5) == 2
        assert min_n_strict(-3.0) == 1


class TestBoundDirection:
    def test_upper_only_downgrades_proper(self):
        e = AsymptoticExponents(k=-1, q0=-1, q_inf=-1, r0=-0.5, r_inf=-1.5, bound="upper")
        assert decide_general(e, 2).status is U

    def test_lower_keeps_improper(self):
        e = AsymptoticExponents(k=-1, q0=-1, q_inf=-1, r0=-1, r_inf=-1, bound="lower")
        assert decide_general(e, 2).status is I
        e = AsymptoticExponents(k=-1, q0=-1, q_inf=-1, r0=-0.5, r_inf=-1.5, bound="lower")
        assert decide_general(e, 2).status is U

    def test_upper_cannot_certify_improper(self):
        e = AsymptoticExponents(k=-1, q0=-1, q_inf=-1, r0=-1, r_inf=-1, bound="upper")
        assert decide_general(e, 2).status is U


class TestCatalogVerdicts:
    @pytest.mark.parametrize("pid", ["J1", "J3", "J4b", "J5", "J6", "R7", "R8", "R9"])
    def test_general_improper(self, pid):
        for n in range(1, 40):
            assert decide_prior(get_prior(pid), n).status is I

    def test_r10(self):
        assert decide_prior(get_prior("R10"), 1).status is I
        for n in range(2, 40):
            v = decide_prior(get_prior("R10"), n)
            assert v.status is P and v.moments.finite_triples == ((0, 0, 0),)

    def test_alpha_known(self):
        for pid in ("J1", "R8"):
            spec = get_prior(pid, "alpha-known")
            assert decide_prior(spec, 1).status is I
            assert decide_prior(spec, 2).moments.all_finite

    def test_phi_known(self):
        for pid in ("J1", "R7", "R8", "R9", "R10"):
            spec = get_prior(pid, "phi-known")
            assert decide_prior(spec, 1).status is I
            v = decide_prior(spec, 2)
            assert v.status is P and v.moments.mu_mean_finite is False

    def test_json(self):
        v = decide_prior(get_prior("R10"), 2)
        doc = json.loads(v.to_json())
        assert {"status", "theorem", "min_n", "moments", "exponent_provenance"} <= set(doc)
        assert doc["status"] == "Proper" and doc["exponent_provenance"] == "analytic"

    def test_bad_n(self):
        with pytest.raises(DomainError):
            decide_general(R10, 0)
        with pytest.raises(DomainError):
            decide_general(R10, 2.0)
