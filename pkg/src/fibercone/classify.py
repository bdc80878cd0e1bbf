"""Closed-form descriptions of the defining ideal for three ideal families.

Families: n+1-generator ideals whose fiber cone is a hypersurface ring,
four-generator symmetric ideals (x^c, x^b y^a, x^a y^b, y^c), and the
complete-intersection family (x^2a, x^a y^b, x^c y^d, y^2b).  Every
prediction can be certified against the brute-force kernel computation;
certification compares exact canonical generator sets.

Trichotomies branch on exact rational comparisons; no floating point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from .kernel import (
    KernelGenerator,
    KernelReport,
    binomial,
    compute_kernel,
    image_of_z_monomial,
    monomial,
)
from .monomials import Exponents, MonomialIdeal, ideal_powers, member_strict

FAMILY_HYPERSURFACE = "hypersurface"
FAMILY_SYMMETRIC_UP = "symmetric_up"
FAMILY_SYMMETRIC_DOWN = "symmetric_down"
FAMILY_SYMMETRIC_BALANCED = "symmetric_balanced"
FAMILY_CI_TYPE1 = "ci_type_1"
FAMILY_CI_TYPE2 = "ci_type_2"
FAMILY_CI_TYPE3 = "ci_type_3"


@dataclass(frozen=True)
class Certification:
    status: str  # "pending" | "certified" | "mismatch"
    up_to_degree: Optional[int] = None
    detail: Optional[str] = None

    def to_json(self) -> dict:
        d: dict = {"status": self.status}
        if self.up_to_degree is not None:
            d["up_to_degree"] = self.up_to_degree
        if self.detail is not None:
            d["detail"] = self.detail
        return d


PENDING = Certification("pending")


@dataclass
class Classification:
    family: str
    case_tag: Optional[str]
    params: dict[str, int]
    predicted_generators: list[KernelGenerator]
    predicted_depth: Optional[int]
    predicted_cm: Optional[bool]
    certification: Certification = PENDING
    ideal: MonomialIdeal = field(default=None, repr=False)  # type: ignore[assignment]
    oracle_deferred: bool = False

    @property
    def mu_j(self) -> int:
        return len(self.predicted_generators)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "case": self.case_tag,
            "params": self.params,
            "predicted_generators": [
                g.to_json() for g in sorted(self.predicted_generators, key=KernelGenerator.sort_key)
            ],
            "predicted_depth": self.predicted_depth,
            "predicted_cm": self.predicted_cm,
            "certification": self.certification.to_json(),
        }


def hypersurface_ideal(a: list[int], b: list[int]) -> MonomialIdeal:
    """(x1^a1, ..., xn^an, x1^b1...xn^bn) with the mixed generator last."""
    n = len(a)
    gens = [tuple(a[i] if j == i else 0 for j in range(n)) for i in range(n)]
    gens.append(tuple(b))
    return MonomialIdeal(n, tuple(gens))


def symmetric_ideal(a: int, b: int, c: int) -> MonomialIdeal:
    return MonomialIdeal(2, ((c, 0), (b, a), (a, b), (0, c)))


def ci_ideal(a: int, b: int, c: int, d: int) -> MonomialIdeal:
    return MonomialIdeal(2, ((2 * a, 0), (a, b), (c, d), (0, 2 * b)))


def _strict_member_search(I: MonomialIdeal, target, cap: int, what: str) -> int:
    """Smallest k with target(k) properly divisible inside I^k."""
    powers = ideal_powers(I, cap)
    for k in range(1, cap + 1):
        if member_strict(target(k), powers[k]):
            return k
    raise ValueError(f"no {what} found with degree <= {cap}")


def classify_hypersurface(a: list[int], b: list[int]) -> Classification:
    """Hypersurface trichotomy for (x1^a1,..,xn^an, x1^b1..xn^bn)."""
    n = len(a)
    if n < 2 or len(b) != n:
        raise ValueError("need exponent lists of equal length n >= 2")
    for ai, bi in zip(a, b):
        if not 0 < bi < ai:
            raise ValueError(f"require 0 < b_i < a_i, got b={bi}, a={ai}")
    I = hypersurface_ideal(a, b)
    total = sum(Fraction(bi, ai) for ai, bi in zip(a, b))

    if total == 1:
        r = math.lcm(*(ai // math.gcd(ai, bi) for ai, bi in zip(a, b)))
        r_i = [bi * r // ai for ai, bi in zip(a, b)]
        lead = tuple(r_i) + (0,)
        trail = tuple(0 for _ in range(n)) + (r,)
        return Classification(
            family=FAMILY_HYPERSURFACE,
            case_tag="H",
            params={"r": r},
            predicted_generators=[binomial(lead, trail)],
            predicted_depth=n,
            predicted_cm=True,
            ideal=I,
        )
    if total > 1:
        r_cap = math.ceil(Fraction(n) / (total - 1)) + 1
        r = next(
            k
            for k in range(1, r_cap + 1)
            if sum(bi * k // ai for ai, bi in zip(a, b)) >= k
        )
        gen = monomial(tuple(0 for _ in range(n)) + (r,))
        return Classification(
            family=FAMILY_HYPERSURFACE,
            case_tag="H+",
            params={"r": r},
            predicted_generators=[gen],
            predicted_depth=n,
            predicted_cm=True,
            ideal=I,
        )
    # total < 1: the generator is a product of the pure-power variables
    d_cap = math.ceil(Fraction(n) / (1 - total)) + 1
    for deg in range(1, d_cap + 1):
        mins = [-(-bi * deg // ai) for ai, bi in zip(a, b)]  # ceil(b_i*deg/a_i)
        if sum(mins) <= deg:
            if sum(mins) < deg:
                # minimal-degree solution not unique; fall back to the oracle
                return Classification(
                    family=FAMILY_HYPERSURFACE,
                    case_tag="H-",
                    params={"degree": deg},
                    predicted_generators=[],
                    predicted_depth=n,
                    predicted_cm=True,
                    certification=Certification(
                        "pending", detail="minimal-degree solution not unique"
                    ),
                    ideal=I,
                    oracle_deferred=True,
                )
            gen = monomial(tuple(mins) + (0,))
            return Classification(
                family=FAMILY_HYPERSURFACE,
                case_tag="H-",
                params={"r": deg},
                predicted_generators=[gen],
                predicted_depth=n,
                predicted_cm=True,
                ideal=I,
            )
    raise ValueError("no product generator found below the degree cap")


def _poset_minimal(pairs: list[tuple[int, int]]) -> list[tuple[int, int]]:
    minimal = []
    for p in sorted(pairs):
        if not any(q[0] <= p[0] and q[1] <= p[1] for q in minimal):
            minimal.append(p)
    return minimal


def _mixed_monomial_candidates(
    degree_cap: int,
    in_kernel,
    excluded,
) -> list[tuple[int, int]]:
    """Divisibility-minimal (i, j) with z1^i z3^j in the kernel, i, j > 0.

    `in_kernel(i, j)` performs the membership test, `excluded(i, j)` drops
    multiples of already-collected generators before minimality filtering.
    """
    found: list[tuple[int, int]] = []
    for total in range(2, degree_cap + 1):
        for i in range(1, total):
            j = total - i
            if excluded(i, j):
                continue
            if any(q[0] <= i and q[1] <= j for q in found):
                continue
            if in_kernel(i, j):
                found.append((i, j))
    return _poset_minimal(found)


def classify_symmetric(a: int, b: int, c: int) -> Classification:
    """Four-generator symmetric family (x^c, x^b y^a, x^a y^b, y^c)."""
    if not 0 < a < b < c:
        raise ValueError(f"require 0 < a < b < c, got ({a}, {b}, {c})")
    if math.gcd(a, b, c) != 1:
        raise ValueError(f"require gcd(a, b, c) = 1, got ({a}, {b}, {c})")
    I = symmetric_ideal(a, b, c)

    if a + b == c:
        return Classification(
            family=FAMILY_SYMMETRIC_BALANCED,
            case_tag=None,
            params={},
            predicted_generators=[],
            predicted_depth=None,
            predicted_cm=None,
            ideal=I,
            oracle_deferred=True,
        )

    g = math.gcd(c, b - a)
    ell, m = (b - a) // g, c // g

    if a + b > c:
        # a pure power z2^r always exists with r <= a+b ((m, n) = (b, a) works)
        powers = ideal_powers(I, a + b)
        r = next(
            (k for k in range(1, a + b + 1) if member_strict((b * k, a * k), powers[k])),
            None,
        )
        if r is None:
            raise RuntimeError(f"no pure power found for ({a},{b},{c}) below {a + b}")
        degree_cap = r + ell + m
        if degree_cap + 1 > len(powers):
            powers = ideal_powers(I, degree_cap)

        def in_kernel(i: int, j: int) -> bool:
            return member_strict((c * i + a * j, b * j), powers[i + j])

        def excluded(i: int, j: int) -> bool:
            return j >= r  # multiples of z3^r; z2z3 and z2^r never divide z1^i z3^j

        L = _mixed_monomial_candidates(degree_cap, in_kernel, excluded)
        base = [monomial((0, 1, 1, 0)), monomial((0, r, 0, 0)), monomial((0, 0, r, 0))]
        params = {"r": r, "ell": ell, "m": m}
        include_binomial = m < r and not any(i0 <= ell and j0 <= m for i0, j0 in L)
        if include_binomial and not L:
            if r != m + 1:
                raise RuntimeError(
                    f"symmetric ({a},{b},{c}): binomial case expects pure power degree "
                    f"m+1={m + 1}, membership search found {r}"
                )
        gens = list(base)
        for i0, j0 in L:
            gens.append(monomial((i0, 0, j0, 0)))
            gens.append(monomial((0, j0, 0, i0)))
        if include_binomial:
            gens.append(binomial((ell, 0, m, 0), (0, m, 0, ell)))
        case = _case_tag(bool(L), include_binomial)
        family = FAMILY_SYMMETRIC_UP
    else:
        # a + b < c: base generators come from the feasibility poset
        # {(i, j) : (b-a) j / (c-b) <= i <= (b-a) j / a}
        j_cap = a * (c - b) + a + 2  # interval length >= 1 by then
        feasible: list[tuple[int, int]] = []
        for j in range(1, j_cap + 1):
            lo = max(1, -(-(b - a) * j // (c - b)))
            hi = (b - a) * j // a
            if lo <= hi:
                feasible.append((lo, j))
                if len(feasible) >= 4:
                    break
        if not feasible:
            raise ValueError(f"empty feasibility poset for ({a},{b},{c})")
        base_pairs = _poset_minimal(feasible)
        i_star, j_star = base_pairs[0]
        degree_cap = i_star + j_star + ell + m
        powers = ideal_powers(I, degree_cap)

        def in_kernel(i: int, j: int) -> bool:
            return member_strict((c * i + a * j, b * j), powers[i + j])

        def excluded(i: int, j: int) -> bool:
            return any(i0 <= i and j0 <= j for i0, j0 in base_pairs)

        for i0, j0 in base_pairs:
            if not in_kernel(i0, j0):
                raise RuntimeError(
                    f"symmetric ({a},{b},{c}): poset element {(i0, j0)} is not a kernel element"
                )
        L = _mixed_monomial_candidates(degree_cap, in_kernel, excluded)
        gens = [monomial((1, 0, 0, 1))]
        for i0, j0 in base_pairs:
            gens.append(monomial((i0, 0, j0, 0)))
            gens.append(monomial((0, j0, 0, i0)))
        for i0, j0 in L:
            gens.append(monomial((i0, 0, j0, 0)))
            gens.append(monomial((0, j0, 0, i0)))
        collected = base_pairs + L
        include_binomial = not any(i0 <= ell and j0 <= m for i0, j0 in collected)
        if include_binomial:
            gens.append(binomial((ell, 0, m, 0), (0, m, 0, ell)))
        params = {"i": i_star, "j": j_star, "ell": ell, "m": m}
        case = _case_tag(bool(L), include_binomial)
        family = FAMILY_SYMMETRIC_DOWN

    return Classification(
        family=family,
        case_tag=case,
        params=params,
        predicted_generators=gens,
        predicted_depth=2 if case == "i" else 1,
        predicted_cm=case == "i",
        ideal=I,
    )


def _case_tag(has_l: bool, has_binomial: bool) -> str:
    if has_binomial:
        return "iv" if has_l else "iii"
    return "ii" if has_l else "i"


def classify_ci(a: int, b: int, c: int, d: int) -> Classification:
    """Complete-intersection family (x^2a, x^a y^b, x^c y^d, y^2b)."""
    if math.gcd(a, c) != 1:
        raise ValueError(f"require gcd(a, c) = 1, got ({a}, {c})")
    if math.gcd(b, d) != 1:
        raise ValueError(f"require gcd(b, d) = 1, got ({b}, {d})")
    if not b >= a > c >= 1:
        raise ValueError(f"require b >= a > c >= 1, got ({a}, {b}, {c}, {d})")
    if not b < d < 2 * b:
        raise ValueError(
            f"require b < d < 2b for minimal 4-generatedness, got b={b}, d={d}"
        )
    I = ci_ideal(a, b, c, d)
    square = binomial((1, 0, 0, 1), (0, 2, 0, 0))  # z2^2 = z1 z4 up to sign
    disc = b * c + a * d - 2 * a * b

    if disc > 0:
        cap = 2 * b * c + a + b
        r = _strict_member_search(I, lambda k: (c * k, d * k), cap, "pure power of z3")
        params = {"r": r}
        r_ineq = _ci_inequality_r(a, b, c, d, cap)
        if r_ineq is not None and r_ineq != r:
            params["r_inequality"] = r_ineq
        return Classification(
            family=FAMILY_CI_TYPE1,
            case_tag=None,
            params=params,
            predicted_generators=[square, monomial((0, 0, r, 0))],
            predicted_depth=2,
            predicted_cm=True,
            ideal=I,
        )
    if disc < 0:
        cap = 2 * a * b + a + b
        for r in range(1, cap + 1):
            lo = max(1, -(-c * r // a))  # ceil(c r / a)
            hi = (2 * b - d) * r // b  # floor((2 - d/b) r)
            if lo <= hi:
                ell = lo
                break
        else:
            raise ValueError(f"no monomial generator found for ({a},{b},{c},{d})")
        i, j = (ell // 2, 0) if ell % 2 == 0 else ((ell - 1) // 2, 1)
        # z1^i z2^j z4^(r-i-j) rewrites to z2^ell z4^(r-ell) modulo the square
        # relation; the latter is the canonical (lex-least) class representative.
        gen = monomial((0, ell, 0, r - ell))
        return Classification(
            family=FAMILY_CI_TYPE2,
            case_tag=None,
            params={"r": r, "ell": ell, "i": i, "j": j},
            predicted_generators=[square, gen],
            predicted_depth=2,
            predicted_cm=True,
            ideal=I,
        )
    i, j = (c // 2, 0) if c % 2 == 0 else ((c - 1) // 2, 1)
    u = I.gens
    prod_lead = tuple(a * e for e in u[2])
    prod_trail = tuple(
        i * e1 + j * e2 + (a - i - j) * e4 for e1, e2, e4 in zip(u[0], u[1], u[3])
    )
    if prod_lead != prod_trail:
        raise RuntimeError(
            f"balanced-branch identity fails for ({a},{b},{c},{d}): "
            f"{prod_lead} != {prod_trail}"
        )
    # z1^i z2^j z4^(a-i-j) rewrites to z2^c z4^(a-c) modulo the square relation,
    # which is the canonical class representative paired against z3^a.
    return Classification(
        family=FAMILY_CI_TYPE3,
        case_tag=None,
        params={"i": i, "j": j},
        predicted_generators=[square, binomial((0, c, 0, a - c), (0, 0, a, 0))],
        predicted_depth=2,
        predicted_cm=True,
        ideal=I,
    )


def _ci_inequality_r(a: int, b: int, c: int, d: int, cap: int) -> Optional[int]:
    """Smallest s admitting positive i, j with a(2i+j) <= cs and (2b-d)s <= b(2i+j).

    The membership search can beat this value when the optimal witness needs
    i = 0 or j = 0; the difference is recorded, not used.
    """
    for s in range(1, cap + 1):
        t_lo = max(3, -(-(2 * b - d) * s // b))
        t_hi = c * s // a
        if t_lo <= t_hi:
            return s
    return None


def kernel_class(
    I: MonomialIdeal, z: Exponents, powers=None
) -> Optional[Exponents]:
    """Image monomial of a z-monomial, or None when it maps to zero."""
    return image_of_z_monomial(I, z, powers)


def _generator_is_kernel_element(
    I: MonomialIdeal, g: KernelGenerator, powers
) -> bool:
    if g.is_binomial:
        w1 = kernel_class(I, g.lead, powers)
        w2 = kernel_class(I, g.trail, powers)
        return (w1 is None and w2 is None) or w1 == w2
    return kernel_class(I, g.lead, powers) is None


def certify(
    cl: Classification, I: MonomialIdeal | None = None, slack: int = 3
) -> Classification:
    """Check a prediction against the brute-force kernel computation.

    Every predicted generator is re-verified as a kernel element, then the
    kernel is computed up to (max predicted degree + slack) and compared as
    an exact canonical set.  Oracle-deferred classifications instead adopt
    the kernel generators once the computation has a stable tail.
    """
    return certify_with_report(cl, I, slack)[0]


def certify_with_report(
    cl: Classification, I: MonomialIdeal | None = None, slack: int = 3
) -> tuple[Classification, KernelReport]:
    """certify(), also returning the kernel report backing the verdict."""
    if I is None:
        I = cl.ideal
    if I is None:
        raise ValueError("no ideal attached to the classification")

    if cl.oracle_deferred:
        report = _stable_kernel(I)
        gens = report.generators
        mu = len(gens)
        updated = replace(
            cl,
            predicted_generators=gens,
            certification=Certification("certified", up_to_degree=report.degree_bound),
            ideal=I,
        )
        if cl.family == FAMILY_SYMMETRIC_BALANCED:
            updated.predicted_cm = mu <= 3
            updated.predicted_depth = 2 if mu <= 3 else 1
        return updated, report

    max_degree = max(g.degree for g in cl.predicted_generators)
    D = max(2, max_degree + slack)
    powers = ideal_powers(I, max_degree)
    for g in cl.predicted_generators:
        if not _generator_is_kernel_element(I, g, powers):
            report = compute_kernel(I, D)
            return (
                replace(
                    cl,
                    certification=Certification(
                        "mismatch",
                        detail=f"predicted generator {g} is not a kernel element",
                    ),
                    ideal=I,
                ),
                report,
            )
    report = compute_kernel(I, D)
    predicted = frozenset(cl.predicted_generators)
    actual = report.generator_set()
    if predicted == actual:
        return (
            replace(cl, certification=Certification("certified", up_to_degree=D), ideal=I),
            report,
        )
    missing = sorted(predicted - actual, key=KernelGenerator.sort_key)
    extra = sorted(actual - predicted, key=KernelGenerator.sort_key)
    detail = f"predicted-not-found: {missing}; found-not-predicted: {extra}"
    return (
        replace(cl, certification=Certification("mismatch", detail=detail), ideal=I),
        report,
    )


def _stable_kernel(
    I: MonomialIdeal, start: int = 8, window: int = 4, cap: int = 48
) -> KernelReport:
    D = start
    while True:
        report = compute_kernel(I, D)
        if report.stability_window >= window:
            return report
        if D >= cap:
            raise ValueError(
                f"kernel of {I.gens} did not stabilize below degree {cap}"
            )
        D = min(cap, D + 4)
