"""Built-in regression catalog: every worked example the library reproduces.

Each check recomputes a published value from scratch and compares exactly.
The CLI `verify-paper` command runs the whole catalog and fails on any
discrepancy; the acceptance tests reuse the same functions.
"""
from __future__ import annotations

from typing import Callable, Optional

from .classify import certify, classify_ci, classify_hypersurface, classify_symmetric
from .depth import (
    depth_certificate,
    dimension,
    is_depth_zero,
    mu_monotonicity_check,
    trusted_polys,
)
from .groebner import (
    buchberger,
    initial_ideal,
    intersect,
    parse_order,
    parse_poly,
    s_poly_reductions_vanish,
)
from .kernel import (
    binomial,
    compute_kernel,
    image_of_z_monomial,
    monomial,
    rank_cross_check,
)
from .monomials import MonomialIdeal, ideal, member_strict, minimalize, mu_power_sequence

Check = Callable[[], Optional[str]]  # returns None on success, detail on failure

SYMMETRIC_234 = ideal((4, 0), (3, 2), (2, 3), (0, 4))
SYMMETRIC_2910 = ideal((10, 0), (9, 2), (2, 9), (0, 10))
SYMMETRIC_3810 = ideal((10, 0), (8, 3), (3, 8), (0, 10))
SYMMETRIC_22930 = ideal((30, 0), (29, 2), (2, 29), (0, 30))
INTRO_IDEAL = ideal((25, 0), (20, 5), (19, 19), (5, 20), (0, 25))

EXPECTED_234 = frozenset(
    [monomial((0, 1, 1, 0)), monomial((0, 2, 0, 0)), monomial((0, 0, 2, 0))]
)
EXPECTED_2910 = frozenset(
    [
        monomial((0, 1, 1, 0)),
        monomial((0, 5, 0, 0)),
        monomial((0, 0, 5, 0)),
        monomial((1, 0, 4, 0)),
        monomial((0, 4, 0, 1)),
    ]
)
EXPECTED_3810 = frozenset(
    [
        monomial((0, 1, 1, 0)),
        monomial((0, 3, 0, 0)),
        monomial((0, 0, 3, 0)),
        binomial((1, 0, 2, 0), (0, 2, 0, 1)),
    ]
)
EXPECTED_22930 = frozenset(
    [
        monomial((0, 1, 1, 0)),
        monomial((0, 15, 0, 0)),
        monomial((0, 0, 15, 0)),
        binomial((9, 0, 10, 0), (0, 10, 0, 9)),
        monomial((1, 0, 14, 0)),
        monomial((0, 14, 0, 1)),
        monomial((3, 0, 13, 0)),
        monomial((0, 13, 0, 3)),
        monomial((5, 0, 12, 0)),
        monomial((0, 12, 0, 5)),
        monomial((7, 0, 11, 0)),
        monomial((0, 11, 0, 7)),
    ]
)


def _expect(actual, expected, label: str) -> Optional[str]:
    if actual == expected:
        return None
    return f"{label}: expected {expected}, got {actual}"


def _expect_kernel(I: MonomialIdeal, D: int, expected: frozenset) -> Optional[str]:
    got = compute_kernel(I, D).generator_set()
    if got == expected:
        return None
    missing = sorted(expected - got, key=lambda g: g.sort_key())
    extra = sorted(got - expected, key=lambda g: g.sort_key())
    return f"missing {missing}, extra {extra}"


def check_kernel_234() -> Optional[str]:
    return _expect_kernel(SYMMETRIC_234, 4, EXPECTED_234)


def check_kernel_2910() -> Optional[str]:
    return _expect_kernel(SYMMETRIC_2910, 6, EXPECTED_2910)


def check_kernel_3810() -> Optional[str]:
    return _expect_kernel(SYMMETRIC_3810, 6, EXPECTED_3810)


def check_kernel_22930() -> Optional[str]:
    return _expect_kernel(SYMMETRIC_22930, 20, EXPECTED_22930)


def check_strict_membership_234() -> Optional[str]:
    from .monomials import power

    if not member_strict((5, 5), power(SYMMETRIC_234, 2)):
        return "x^5 y^5 should lie in m*I^2 (product of the middle generators)"
    if member_strict((4, 0), SYMMETRIC_234):
        return "x^4 equals a generator, so membership must not be strict"
    return None


def check_images() -> Optional[str]:
    if image_of_z_monomial(SYMMETRIC_234, (0, 1, 1, 0)) is not None:
        return "z2 z3 must map to zero for (2,3,4)"
    for k in range(1, 5):
        img = image_of_z_monomial(SYMMETRIC_234, (k, 0, 0, 0))
        if img != (4 * k, 0):
            return f"z1^{k} must map to x^{4 * k}"
    if image_of_z_monomial(SYMMETRIC_2910, (0, 5, 0, 0)) is not None:
        return "z2^5 must map to zero for (2,9,10)"
    return None


def check_classify_234() -> Optional[str]:
    cl = certify(classify_symmetric(2, 3, 4))
    for err in (
        _expect(cl.case_tag, "i", "case"),
        _expect(cl.params.get("r"), 2, "r"),
        _expect(cl.certification.status, "certified", "certification"),
        _expect(frozenset(cl.predicted_generators), EXPECTED_234, "generators"),
    ):
        if err:
            return err
    return None


def check_classify_2910() -> Optional[str]:
    cl = certify(classify_symmetric(2, 9, 10))
    for err in (
        _expect(cl.case_tag, "ii", "case"),
        _expect(cl.params.get("r"), 5, "r"),
        _expect(cl.certification.status, "certified", "certification"),
        _expect(frozenset(cl.predicted_generators), EXPECTED_2910, "generators"),
    ):
        if err:
            return err
    return None


def check_classify_3810() -> Optional[str]:
    cl = certify(classify_symmetric(3, 8, 10))
    for err in (
        _expect(cl.case_tag, "iii", "case"),
        _expect((cl.params.get("ell"), cl.params.get("m")), (1, 2), "(ell, m)"),
        _expect(cl.params.get("r"), 3, "r = m+1"),
        _expect(cl.certification.status, "certified", "certification"),
        _expect(frozenset(cl.predicted_generators), EXPECTED_3810, "generators"),
    ):
        if err:
            return err
    return None


def check_classify_22930() -> Optional[str]:
    cl = certify(classify_symmetric(2, 29, 30))
    for err in (
        _expect(cl.case_tag, "iv", "case"),
        _expect((cl.params.get("ell"), cl.params.get("m")), (9, 10), "(ell, m)"),
        _expect(cl.certification.status, "certified", "certification"),
        _expect(frozenset(cl.predicted_generators), EXPECTED_22930, "generators"),
    ):
        if err:
            return err
    return None


def check_classify_124_down() -> Optional[str]:
    cl = certify(classify_symmetric(1, 2, 4))
    expected = frozenset(
        [monomial((1, 0, 0, 1)), monomial((1, 0, 1, 0)), monomial((0, 1, 0, 1))]
    )
    for err in (
        _expect(cl.case_tag, "i", "case"),
        _expect((cl.params.get("i"), cl.params.get("j")), (1, 1), "poset minimum"),
        _expect(cl.certification.status, "certified", "certification"),
        _expect(frozenset(cl.predicted_generators), expected, "generators"),
        _expect(cl.predicted_cm, True, "Cohen-Macaulay"),
    ):
        if err:
            return err
    return None


def check_rank_234() -> Optional[str]:
    report = compute_kernel(SYMMETRIC_234, 2)
    at2 = report.generators_by_degree.get(2, [])
    if len(at2) != 3:
        return f"expected 3 degree-2 generators, got {len(at2)}"
    if not rank_cross_check(SYMMETRIC_234, 2, [], at2):
        return "rank cross-check disagrees at degree 2"
    if not rank_cross_check(SYMMETRIC_234, 1, [], []):
        return "degree 1 must contribute no generators"
    return None


def check_groebner_3810() -> Optional[str]:
    gens = [
        parse_poly(s, 4) for s in ("z2*z3", "z2^3", "z3^3", "z1*z3^2 - z2^2*z4")
    ]
    gb = buchberger(gens, parse_order("lex:z1>z2>z3>z4", 4))
    if len(gb.elements) != 4:
        return f"input should be its own basis, got {len(gb.elements)} elements"
    if not s_poly_reductions_vanish(gb):
        return "an S-pair fails to reduce to zero"
    ini = initial_ideal(gb)
    expected = frozenset([(0, 1, 1, 0), (0, 3, 0, 0), (0, 0, 3, 0), (1, 0, 2, 0)])
    return _expect(ini.gen_set(), expected, "initial ideal")


def check_groebner_ci_3324() -> Optional[str]:
    gens = [parse_poly(s, 4) for s in ("z2^2 - z1*z4", "z3^3 - z1*z4^2")]
    gb = buchberger(gens, parse_order("lex:z3>z2>z1>z4", 4))
    if len(gb.elements) != 2:
        return f"pair should be its own reduced basis, got {len(gb.elements)}"
    ini = initial_ideal(gb)
    expected = frozenset([(0, 2, 0, 0), (0, 0, 3, 0)])
    return _expect(ini.gen_set(), expected, "initial ideal")


def check_intersection_split_2910() -> Optional[str]:
    order = parse_order("lex:z1>z2>z3>z4", 4)
    J = buchberger(
        [parse_poly(s, 4) for s in ("z2*z3", "z2^5", "z3^5", "z1*z3^4", "z2^4*z4")],
        order,
    )
    J1 = [parse_poly(s, 4) for s in ("z2", "z3^5", "z1*z3^4")]
    J2 = [parse_poly(s, 4) for s in ("z3", "z2^5", "z2^4*z4")]
    if not intersect(J1, J2, order).same_ideal(J):
        return "J1 intersect J2 differs from J"
    return None


def check_depth_values() -> Optional[str]:
    cases = [
        (SYMMETRIC_234, 6, 2, 3),
        (SYMMETRIC_2910, 9, 1, 5),
        (SYMMETRIC_3810, 7, 1, 4),
    ]
    for I, D, expected_depth, expected_mu in cases:
        report = compute_kernel(I, D)
        polys = trusted_polys(report)
        cert = depth_certificate(polys, seed=11)
        if cert.depth != expected_depth:
            return f"{I.gens}: depth {cert.depth}, expected {expected_depth}"
        if report.mu != expected_mu:
            return f"{I.gens}: mu(J) {report.mu}, expected {expected_mu}"
        if (cert.depth == dimension(polys)) != (expected_mu <= 3):
            return f"{I.gens}: Cohen-Macaulay test contradicts mu(J) <= 3"
    return None


def check_intro_depth_zero() -> Optional[str]:
    report = compute_kernel(INTRO_IDEAL, 8)
    if report.stability_window < 4:
        return f"stability window {report.stability_window} < 4 at degree 8"
    if not is_depth_zero(trusted_polys(report)):
        return "the 5-generator ideal must have a depth-0 fiber cone"
    return None


def check_dimensions() -> Optional[str]:
    cases = [
        (trusted_polys(compute_kernel(SYMMETRIC_234, 6)), 2, "(2,3,4)"),
        ([parse_poly("z3^2", 3)], 2, "principal in 3 variables"),
        (trusted_polys(compute_kernel(INTRO_IDEAL, 8)), 2, "5-generator ideal"),
    ]
    for polys, expected, label in cases:
        got = dimension(polys)
        if got != expected:
            return f"{label}: dimension {got}, expected {expected}"
    return None


def check_ci_3325() -> Optional[str]:
    cl = certify(classify_ci(3, 3, 2, 5))
    expected = frozenset(
        [binomial((1, 0, 0, 1), (0, 2, 0, 0)), monomial((0, 0, 2, 0))]
    )
    for err in (
        _expect(cl.params.get("r"), 2, "r (membership search)"),
        _expect(cl.certification.status, "certified", "certification"),
        _expect(frozenset(cl.predicted_generators), expected, "generators"),
    ):
        if err:
            return err
    return None


def check_ci_3415() -> Optional[str]:
    cl = certify(classify_ci(3, 4, 1, 5))
    for err in (
        _expect((cl.params.get("r"), cl.params.get("ell")), (2, 1), "(r, ell)"),
        _expect((cl.params.get("i"), cl.params.get("j")), (0, 1), "(i, j)"),
        _expect(cl.certification.status, "certified", "certification"),
    ):
        if err:
            return err
    return None


def check_ci_3324() -> Optional[str]:
    cl = certify(classify_ci(3, 3, 2, 4))
    a, (i, j) = 3, (cl.params["i"], cl.params["j"])
    if (i, j) != (1, 0):
        return f"(i, j) = {(i, j)}, expected (1, 0)"
    u1, u2, u3, u4 = cl.ideal.gens
    lhs = tuple(a * e for e in u3)
    rhs = tuple(i * x + j * y + (a - i - j) * w for x, y, w in zip(u1, u2, u4))
    for err in (
        _expect(lhs, rhs, "pure-power identity"),
        _expect(cl.certification.status, "certified", "certification"),
    ):
        if err:
            return err
    cert = depth_certificate(trusted_polys(cl), seed=11)
    return _expect(cert.depth, 2, "depth (complete intersection)")


def check_hypersurface_examples() -> Optional[str]:
    on = certify(classify_hypersurface([2, 2], [1, 1]))
    expected_on = frozenset([binomial((1, 1, 0), (0, 0, 2))])
    plus = certify(classify_hypersurface([2, 3], [1, 2]))
    expected_plus = frozenset([monomial((0, 0, 2))])
    minus = certify(classify_hypersurface([3, 3], [1, 1]))
    expected_minus = frozenset([monomial((1, 1, 0))])
    for cl, expected, tag in (
        (on, expected_on, "H"),
        (plus, expected_plus, "H+"),
        (minus, expected_minus, "H-"),
    ):
        if cl.case_tag != tag:
            return f"expected branch {tag}, got {cl.case_tag}"
        if cl.certification.status != "certified":
            return f"{tag}: {cl.certification.status} ({cl.certification.detail})"
        if frozenset(cl.predicted_generators) != expected:
            return f"{tag}: wrong generators {sorted(g.to_json() for g in cl.predicted_generators)}"
    if plus.params.get("r") != 2:
        return f"H+ example must have r=2, got {plus.params.get('r')}"
    return None


def check_mu_tables() -> Optional[str]:
    if mu_power_sequence(ideal((2, 0), (0, 2)), 3) != [2, 3, 4]:
        return "powers of (x^2, y^2) must have mu = k+1"
    seq = mu_power_sequence(SYMMETRIC_234, 4)
    if seq[0] != 4 or any(a > b for a, b in zip(seq, seq[1:])):
        return f"mu table for (2,3,4) not monotone from 4: {seq}"
    if not mu_monotonicity_check(SYMMETRIC_22930, 4):
        return "mu table for (2,29,30) must be nondecreasing (depth 1 > 0)"
    return None


def check_minimalize() -> Optional[str]:
    got = minimalize([(2, 0), (2, 1), (0, 3)]).gen_set()
    return _expect(got, frozenset([(2, 0), (0, 3)]), "minimal generators")


CHECKS: list[tuple[str, Check]] = [
    ("kernel (2,3,4) three generators", check_kernel_234),
    ("kernel (2,9,10) five generators", check_kernel_2910),
    ("kernel (3,8,10) binomial case", check_kernel_3810),
    ("kernel (2,29,30) twelve generators", check_kernel_22930),
    ("strict membership x^5y^5 in m*I^2", check_strict_membership_234),
    ("fiber images of z-monomials", check_images),
    ("classify (2,3,4) case i", check_classify_234),
    ("classify (2,9,10) case ii", check_classify_2910),
    ("classify (3,8,10) case iii", check_classify_3810),
    ("classify (2,29,30) case iv", check_classify_22930),
    ("classify (1,2,4) below-diagonal case i", check_classify_124_down),
    ("rank cross-check (2,3,4)", check_rank_234),
    ("Groebner basis claim (3,8,10)", check_groebner_3810),
    ("Groebner basis claim (3,3,2,4)", check_groebner_ci_3324),
    ("intersection splitting (2,9,10)", check_intersection_split_2910),
    ("depth values for the symmetric examples", check_depth_values),
    ("depth 0 for the five-generator ideal", check_intro_depth_zero),
    ("Krull dimensions of fiber cones", check_dimensions),
    ("complete intersection (3,3,2,5)", check_ci_3325),
    ("complete intersection (3,4,1,5)", check_ci_3415),
    ("complete intersection (3,3,2,4) with identity", check_ci_3324),
    ("hypersurface trichotomy examples", check_hypersurface_examples),
    ("generator-count tables", check_mu_tables),
    ("minimal generator reduction", check_minimalize),
]


def run_all(verbose: bool = True) -> list[tuple[str, Optional[str]]]:
    results = []
    for name, fn in CHECKS:
        try:
            detail = fn()
        except Exception as exc:  # a crash is a failure, not an abort
            detail = f"{type(exc).__name__}: {exc}"
        results.append((name, detail))
        if verbose:
            print(("PASS " if detail is None else "FAIL ") + name)
            if detail is not None:
                print(f"     {detail}")
    return results
