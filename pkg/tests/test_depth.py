import pytest

from fibercone.classify import certify, classify_ci, classify_symmetric
from fibercone.depth import (
    DEFAULT_TRIALS,
    InconclusiveDepthError,
    UntrustedTruncationError,
    depth_certificate,
    dimension,
    is_cohen_macaulay,
    is_depth_zero,
    monomial_dimension,
    mu_monotonicity_check,
    trusted_polys,
)
from fibercone.groebner import buchberger, colon, grevlex_order, parse_poly
from fibercone.kernel import compute_kernel
from fibercone.monomials import MonomialIdeal, ideal

I234 = ideal((4, 0), (3, 2), (2, 3), (0, 4))
I2910 = ideal((10, 0), (9, 2), (2, 9), (0, 10))
INTRO = ideal((25, 0), (20, 5), (19, 19), (5, 20), (0, 25))


def kernel_polys(I, D, prime=32003):
    return trusted_polys(compute_kernel(I, D), prime)


class TestDimension:
    def test_symmetric_height_two(self):
        assert dimension(kernel_polys(I234, 6)) == 2

    def test_hypersurface_in_three_variables(self):
        assert dimension([parse_poly("z3^2", 3)]) == 2

    def test_intro_ideal(self):
        assert dimension(kernel_polys(INTRO, 8)) == 2

    def test_monomial_dimension_staircase(self):
        assert monomial_dimension(MonomialIdeal(2, ((1, 1),))) == 1
        assert monomial_dimension(MonomialIdeal(4, ((1, 0, 0, 1), (0, 0, 3, 0)))) == 2
        assert monomial_dimension(MonomialIdeal(3, ((1, 0, 0), (0, 1, 0), (0, 0, 1)))) == 0


class TestDepthZero:
    def test_case_i_is_positive_depth(self):
        assert not is_depth_zero(kernel_polys(I234, 6))

    def test_intro_ideal_is_depth_zero(self):
        assert is_depth_zero(kernel_polys(INTRO, 8))

    def test_principal_binomial_positive_depth(self):
        assert not is_depth_zero([parse_poly("z1*z2", 2)])

    def test_prime_independent(self):
        for p in (32003, 101):
            assert is_depth_zero(kernel_polys(INTRO, 8, p), p)
            assert not is_depth_zero(kernel_polys(I234, 6, p), p)


class TestDepthCertificate:
    def test_case_i_depth_two(self):
        cert = depth_certificate(kernel_polys(I234, 6), seed=5)
        assert cert.depth == 2
        assert len(cert.regular_sequence) == 2
        assert cert.socle_witness is not None

    def test_case_ii_depth_one(self):
        cert = depth_certificate(kernel_polys(I2910, 9), seed=5)
        assert cert.depth == 1

    def test_ci_depth_two(self):
        cl = certify(classify_ci(3, 3, 2, 4))
        cert = depth_certificate(trusted_polys(cl), seed=5)
        assert cert.depth == 2

    def test_intro_depth_zero(self):
        cert = depth_certificate(kernel_polys(INTRO, 8), seed=5)
        assert cert.depth == 0
        assert cert.regular_sequence == []
        assert cert.socle_witness is not None

    def test_certificate_re_checks(self):
        # every listed linear form must fix the ideal it was verified against
        prime = 32003
        polys = kernel_polys(I234, 6, prime)
        cert = depth_certificate(polys, prime, seed=9)
        order = grevlex_order(4)
        stage = buchberger(polys, order, prime)
        for coeffs in cert.regular_sequence:
            f = parse_poly(
                " + ".join(f"{c}*z{i + 1}" for i, c in enumerate(coeffs) if c), 4
            )
            assert colon(stage.elements, f, order, prime).same_ideal(stage)
            stage = buchberger(list(stage.elements) + [f], order, prime)

    def test_deterministic_for_seed(self):
        polys = kernel_polys(I2910, 9)
        a = depth_certificate(polys, seed=42)
        b = depth_certificate(polys, seed=42)
        assert a.regular_sequence == b.regular_sequence
        assert a.depth == b.depth

    def test_inconclusive_with_zero_trials(self):
        with pytest.raises(InconclusiveDepthError, match="inconclusive"):
            depth_certificate(kernel_polys(I234, 6), trials=0)

    def test_depth_at_most_dimension(self):
        for I, D in ((I234, 6), (I2910, 9), (INTRO, 8)):
            polys = kernel_polys(I, D)
            assert depth_certificate(polys, seed=1).depth <= dimension(polys)

    def test_json_round_trip(self):
        cert = depth_certificate(kernel_polys(I234, 6), seed=5)
        data = cert.to_json()
        assert data["depth"] == 2
        assert data["prime"] == 32003
        assert data["trials"] == DEFAULT_TRIALS
        assert len(data["regular_sequence"]) == 2


class TestCohenMacaulay:
    def test_case_i(self):
        assert is_cohen_macaulay(kernel_polys(I234, 6), seed=5)

    def test_case_iii_is_not(self):
        I = ideal((10, 0), (8, 3), (3, 8), (0, 10))
        assert not is_cohen_macaulay(kernel_polys(I, 7), seed=5)

    def test_down_case_i(self):
        cl = certify(classify_symmetric(1, 2, 4))
        assert is_cohen_macaulay(trusted_polys(cl), seed=5)
        assert cl.mu_j == 3


class TestGate:
    def test_report_below_window_is_rejected(self):
        report = compute_kernel(I234, 4)  # window 2 only
        with pytest.raises(UntrustedTruncationError, match="stability window"):
            trusted_polys(report)

    def test_certified_classification_is_accepted(self):
        cl = certify(classify_symmetric(2, 3, 4))
        assert len(trusted_polys(cl)) == 3

    def test_uncertified_classification_is_rejected(self):
        cl = classify_symmetric(2, 3, 4)
        with pytest.raises(UntrustedTruncationError, match="pending"):
            trusted_polys(cl)


class TestInitialIdealBound:
    def test_initial_ideal_depth_bounds_from_below(self):
        # depth of T/ini(J) never exceeds depth of T/J
        for I, D in ((I234, 6), (I2910, 9), (INTRO, 8)):
            polys = kernel_polys(I, D)
            gb = buchberger(polys, grevlex_order(I.mu))
            from fibercone.groebner import initial_ideal, z_monomial_poly

            ini_polys = [z_monomial_poly(g) for g in initial_ideal(gb).gens]
            depth_ini = depth_certificate(ini_polys, seed=2).depth
            depth_j = depth_certificate(polys, seed=2).depth
            assert depth_ini <= depth_j


class TestMonotonicity:
    def test_examples(self):
        assert mu_monotonicity_check(I234, 6)
        assert mu_monotonicity_check(ideal((2, 0), (0, 2)), 5)
        assert mu_monotonicity_check(ideal((30, 0), (29, 2), (2, 29), (0, 30)), 4)

    def test_rejects_small_k(self):
        with pytest.raises(ValueError):
            mu_monotonicity_check(I234, 1)
