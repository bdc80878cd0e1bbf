import random

import pytest

from fibercone.groebner import (
    ElimBlock,
    Polynomial,
    buchberger,
    colon,
    divide_exact,
    format_poly,
    grevlex_order,
    in_ideal,
    initial_ideal,
    intersect,
    lex_order,
    normal_form,
    parse_order,
    parse_poly,
    s_poly_reductions_vanish,
    standard_monomial_count,
)
from fibercone.monomials import MonomialIdeal, count_degree_monomials

P = 32003
LEX4 = lex_order(4)


def polys(*texts, nvars=4, p=P):
    return [parse_poly(t, nvars, p) for t in texts]


class TestOrders:
    def test_lex_keys(self):
        o = parse_order("lex:z1>z2>z3>z4", 4)
        assert o.key((1, 0, 2, 0)) > o.key((0, 5, 0, 0))

    def test_lex_permuted(self):
        o = parse_order("lex:z3>z2>z1>z4", 4)
        assert o.key((0, 0, 3, 0)) > o.key((5, 5, 0, 5))

    def test_grevlex_degree_first(self):
        o = parse_order("grevlex:z1>z2>z3>z4", 4)
        assert o.key((0, 0, 0, 3)) > o.key((1, 1, 0, 0))

    def test_grevlex_tiebreak(self):
        # equal degree: the monomial with the smaller last exponent wins
        o = parse_order("grevlex:z1>z2>z3>z4", 4)
        assert o.key((1, 0, 1, 0)) > o.key((1, 0, 0, 1))

    def test_elim_block_dominates(self):
        o = ElimBlock((3,), lex_order(4))
        assert o.key((0, 0, 0, 1)) > o.key((9, 9, 9, 0))

    def test_parse_elimination_order(self):
        # "t" names the auxiliary trailing slot of extended monomials
        o = parse_order("elim:t|lex:z1>z2", 2)
        assert o.key((0, 0, 1)) > o.key((9, 9, 0))
        assert o.key((1, 0, 0)) > o.key((0, 9, 0))

    def test_parse_rejects_bad_names(self):
        with pytest.raises(ValueError):
            parse_order("lex:z1>z2>z9", 3)
        with pytest.raises(ValueError):
            parse_order("mystery:z1>z2", 2)
        with pytest.raises(ValueError):
            parse_order("lex:z1>z1", 2)

    def test_multiplicative(self):
        rng = random.Random(13)
        for o in (lex_order(3), grevlex_order(3), ElimBlock((0,), grevlex_order(3))):
            for _ in range(200):
                a = tuple(rng.randint(0, 5) for _ in range(3))
                b = tuple(rng.randint(0, 5) for _ in range(3))
                c = tuple(rng.randint(0, 5) for _ in range(3))
                ab = tuple(x + z for x, z in zip(a, c))
                bb = tuple(x + z for x, z in zip(b, c))
                assert (o.key(a) < o.key(b)) == (o.key(ab) < o.key(bb))


class TestPolynomials:
    def test_parse_format_round_trip(self):
        f = parse_poly("z1^9*z3^10 - z2^10*z4^9", 4)
        assert parse_poly(format_poly(f), 4) == f

    def test_parse_coefficients(self):
        f = parse_poly("3*z1 - 2*z2 + z1", 2)
        assert f.to_dict() == {(1, 0): 4, (0, 1): P - 2}

    def test_zero_detection(self):
        assert parse_poly("z1 - z1", 2).is_zero

    def test_canonical_terms_sorted(self):
        f = parse_poly("z2 + z1", 2)
        assert f.terms == (((1, 0), 1), ((0, 1), 1))


class TestBuchberger:
    def test_single_variable(self):
        gb = buchberger(polys("z1"), LEX4)
        assert [format_poly(g) for g in gb.elements] == ["z1"]

    def test_case_iii_is_its_own_basis(self):
        gens = polys("z2*z3", "z2^3", "z3^3", "z1*z3^2 - z2^2*z4")
        gb = buchberger(gens, LEX4)
        assert len(gb.elements) == 4
        assert s_poly_reductions_vanish(gb)
        assert initial_ideal(gb).gen_set() == {
            (0, 1, 1, 0),
            (0, 3, 0, 0),
            (0, 0, 3, 0),
            (1, 0, 2, 0),
        }

    def test_ci_pair_under_reversed_lex(self):
        gb = buchberger(
            polys("z2^2 - z1*z4", "z3^3 - z1*z4^2"), parse_order("lex:z3>z2>z1>z4", 4)
        )
        assert len(gb.elements) == 2
        assert initial_ideal(gb).gen_set() == {(0, 2, 0, 0), (0, 0, 3, 0)}

    def test_order_of_generators_is_irrelevant(self):
        gens = polys("z2*z3", "z2^5", "z3^5", "z1*z3^4", "z2^4*z4")
        gb1 = buchberger(gens, LEX4)
        gb2 = buchberger(list(reversed(gens)), LEX4)
        assert gb1.poly_set() == gb2.poly_set()

    def test_nontrivial_completion(self):
        # lex on x > y: (x^2 - y, x*y - x) completes with y^2 - y
        o = lex_order(2)
        gb = buchberger(polys("z1^2 - z2", "z1*z2 - z1", nvars=2), o)
        assert s_poly_reductions_vanish(gb)
        f = parse_poly("z2^2 - z2", 2)
        assert in_ideal(f, gb)

    def test_leads_antichain(self):
        gens = polys("z2*z3", "z2^5", "z3^5", "z1*z3^4", "z2^4*z4")
        gb = buchberger(gens, grevlex_order(4))
        leads = gb.lead_monomials()
        for a in leads:
            for b in leads:
                if a != b:
                    assert not all(x <= y for x, y in zip(a, b))

    def test_lead_coefficients_normalized(self):
        gb = buchberger(polys("2*z1 + 2*z2", nvars=2), lex_order(2))
        assert gb.elements[0].to_dict()[(1, 0)] == 1

    def test_rejects_zero_ideal(self):
        with pytest.raises(ValueError):
            buchberger([Polynomial(())], LEX4)

    def test_prime_independence_of_leads(self):
        gens = polys("z2*z3", "z2^3", "z3^3", "z1*z3^2 - z2^2*z4")
        leads_a = buchberger(gens, LEX4, 32003).lead_monomials()
        gens_b = [parse_poly(t, 4, 101) for t in ("z2*z3", "z2^3", "z3^3", "z1*z3^2 - z2^2*z4")]
        leads_b = buchberger(gens_b, LEX4, 101).lead_monomials()
        assert set(leads_a) == set(leads_b)


class TestNormalForm:
    def test_membership_certificates(self):
        gb = buchberger(polys("z2*z3", "z2^2", "z3^2"), LEX4)
        assert in_ideal(parse_poly("z2^2*z4 + z1*z2*z3", 4), gb)
        assert not in_ideal(parse_poly("z2*z4", 4), gb)

    def test_normal_form_is_reduced(self):
        gb = buchberger(polys("z2^2 - z1*z4", nvars=4), grevlex_order(4))
        nf = normal_form(parse_poly("z2^3", 4), gb)
        assert nf == parse_poly("z1*z2*z4", 4)


class TestDivideExact:
    def test_monomial_quotient(self):
        f = parse_poly("z1^2*z2", 3)
        g = parse_poly("z1*z2", 3)
        assert divide_exact(f, g, lex_order(3), P) == parse_poly("z1", 3)

    def test_binomial_quotient(self):
        g = parse_poly("z1 + z2", 2)
        q = parse_poly("z1 - z2", 2)
        f = parse_poly("z1^2 - z2^2", 2)
        assert divide_exact(f, g, lex_order(2), P) == q

    def test_rejects_inexact(self):
        with pytest.raises(ValueError, match="not exact"):
            divide_exact(parse_poly("z1^2 + z2", 2), parse_poly("z1", 2), lex_order(2), P)


class TestColon:
    def test_principal_by_variable(self):
        gb = colon(polys("z1*z2"), parse_poly("z1", 4), LEX4)
        assert [format_poly(g) for g in gb.elements] == ["z2"]

    def test_colon_by_member_is_unit(self):
        J = polys("z2*z3", "z2^2", "z3^2")
        gb = colon(J, parse_poly("z2*z3", 4), LEX4)
        assert gb.contains_one()

    def test_case_i_by_z2(self):
        J = polys("z2*z3", "z2^2", "z3^2")
        gb = colon(J, parse_poly("z2", 4), LEX4)
        assert gb.poly_set() == buchberger(polys("z2", "z3"), LEX4).poly_set()

    def test_nonzerodivisor_fixes_ideal(self):
        J = polys("z2*z3", "z2^2", "z3^2")
        gb = buchberger(J, LEX4)
        assert colon(J, parse_poly("z1 + z4", 4), LEX4).same_ideal(gb)

    def test_zerodivisor_grows_ideal(self):
        J = polys("z1*z2", nvars=2)
        assert not colon(J, parse_poly("z1", 2), lex_order(2)).same_ideal(
            buchberger(J, lex_order(2))
        )


class TestIntersect:
    def test_principal_ideals(self):
        got = intersect(polys("z1"), polys("z2"), LEX4)
        assert [format_poly(g) for g in got.elements] == ["z1*z2"]

    def test_prime_coordinate_ideals(self):
        got = intersect(polys("z1", "z2"), polys("z3", "z4"), LEX4)
        expected = buchberger(polys("z1*z3", "z1*z4", "z2*z3", "z2*z4"), LEX4)
        assert got.poly_set() == expected.poly_set()

    def test_splitting_of_case_ii(self):
        J = buchberger(polys("z2*z3", "z2^5", "z3^5", "z1*z3^4", "z2^4*z4"), LEX4)
        J1 = polys("z2", "z3^5", "z1*z3^4")
        J2 = polys("z3", "z2^5", "z2^4*z4")
        assert intersect(J1, J2, LEX4).same_ideal(J)


class TestAgainstSympy:
    """Independent engine cross-validation on random binomial/monomial ideals."""

    def test_random_ideals_match_sympy(self):
        sympy = pytest.importorskip("sympy")
        zs = sympy.symbols("z1 z2 z3 z4")
        rng = random.Random(60902)

        def random_poly_text(rng):
            def mono():
                exps = [0, 0, 0, 0]
                for _ in range(rng.randint(1, 4)):
                    exps[rng.randrange(4)] += rng.randint(1, 2)
                return exps
            a = mono()
            if rng.random() < 0.5:
                return a, None
            b = mono()
            while sum(b) != sum(a):
                b = mono()
            return a, b

        def to_text(a, b):
            t = "*".join(f"z{i+1}^{e}" for i, e in enumerate(a) if e) or "1"
            if b is None:
                return t
            u = "*".join(f"z{i+1}^{e}" for i, e in enumerate(b) if e) or "1"
            return f"{t} - {u}"

        for _ in range(15):
            texts = [to_text(*random_poly_text(rng)) for _ in range(rng.randint(2, 4))]
            mine = buchberger([parse_poly(t, 4) for t in texts], LEX4)
            sp_gens = [
                sympy.parse_expr(t.replace("^", "**"), local_dict={s.name: s for s in zs})
                for t in texts
            ]
            try:
                sp_gb = sympy.groebner(
                    sp_gens, *zs, order="lex", domain=sympy.GF(32003)
                )
            except sympy.polys.polyerrors.ComputationFailed:
                continue  # all generators were constants; nothing to compare
            theirs = set()
            for poly in sp_gb.polys:
                terms = {}
                for exps, coeff in poly.terms():
                    terms[tuple(int(e) for e in exps)] = int(coeff) % 32003
                theirs.add(Polynomial.from_dict(terms, 32003))
            assert mine.poly_set() == theirs, f"disagreement on {texts}"


class TestStandardMonomials:
    def test_case_i_counts(self):
        ini = MonomialIdeal(4, ((0, 1, 1, 0), (0, 2, 0, 0), (0, 0, 2, 0)))
        assert standard_monomial_count(ini, 2) == 7

    def test_zero_ideal(self):
        assert standard_monomial_count([], 2, nvars=4) == 10

    def test_complete_intersection_convolution(self):
        # (z2^2, z3^r): standard monomials factor as truncations in z2 and z3
        for r in (2, 3, 5):
            ini = MonomialIdeal(4, ((0, 2, 0, 0), (0, 0, r, 0)))
            for k in range(0, 8):
                expected = sum(
                    count_degree_monomials(k - e2 - e3, 2)
                    for e2 in range(min(1, k) + 1)
                    for e3 in range(min(r - 1, k) + 1)
                    if e2 + e3 <= k
                )
                assert standard_monomial_count(ini, k) == expected
