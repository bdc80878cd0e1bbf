"""Dimension, depth and Cohen-Macaulayness of a fiber cone from its defining ideal.

Depth is certified, never guessed: each step of the regular sequence is a
random linear form verified to be a nonzerodivisor by an exact ideal-quotient
computation, and the terminal step carries a socle witness proving that no
further step exists.  Inputs must be truncation-trusted (a kernel report with
a long enough stable tail, or a classifier-certified generator set).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .groebner import (
    DEFAULT_PRIME,
    GroebnerBasis,
    Polynomial,
    buchberger,
    colon,
    format_poly,
    grevlex_order,
    initial_ideal,
    intersect,
    normal_form,
    z_binomial_poly,
    z_monomial_poly,
)
from .kernel import KernelGenerator, KernelReport
from .monomials import MonomialIdeal, mu_power_sequence

DEFAULT_TRIALS = 64
STABILITY_GATE = 4
_QUICK_TRIALS = 4  # nonzerodivisor attempts before falling back to the socle test


class InconclusiveDepthError(Exception):
    """Raised when no nonzerodivisor was found but the socle test denies depth 0."""


class UntrustedTruncationError(Exception):
    """Raised when a generator set lacks evidence of being complete."""


@dataclass
class DepthCertificate:
    depth: int
    regular_sequence: list[tuple[int, ...]]  # linear-form coefficient vectors
    socle_witness: Optional[Polynomial]
    trials: int
    prime: int
    seed: int

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "regular_sequence": [list(v) for v in self.regular_sequence],
            "socle_witness": None
            if self.socle_witness is None
            else format_poly(self.socle_witness, p=self.prime),
            "trials": self.trials,
            "prime": self.prime,
            "seed": self.seed,
        }


def generators_to_polys(
    gens: Sequence[KernelGenerator], nvars: int, p: int = DEFAULT_PRIME
) -> list[Polynomial]:
    out = []
    for g in gens:
        if len(g.lead) != nvars:
            raise ValueError("generator arity does not match nvars")
        if g.is_binomial:
            out.append(z_binomial_poly(g.lead, g.trail, p))
        else:
            out.append(z_monomial_poly(g.lead))
    return out


def trusted_polys(source, p: int = DEFAULT_PRIME) -> list[Polynomial]:
    """Generator polynomials from a truncation-trusted source.

    Accepts a KernelReport (stability window >= 4 required) or a certified
    Classification.
    """
    if isinstance(source, KernelReport):
        if source.stability_window < STABILITY_GATE:
            raise UntrustedTruncationError(
                f"stability window {source.stability_window} < {STABILITY_GATE}; "
                "raise the degree bound before running diagnostics"
            )
        return generators_to_polys(source.generators, source.ideal.mu, p)
    certification = getattr(source, "certification", None)
    if certification is not None:
        if certification.status != "certified":
            raise UntrustedTruncationError(
                f"classification is {certification.status}, not certified"
            )
        nvars = len(source.predicted_generators[0].lead)
        return generators_to_polys(source.predicted_generators, nvars, p)
    raise TypeError(f"cannot extract trusted generators from {type(source).__name__}")


def _nvars(J: Sequence[Polynomial]) -> int:
    for f in J:
        for m, _ in f.terms:
            return len(m)
    raise ValueError("no nonzero polynomial given")


def monomial_dimension(ini: MonomialIdeal) -> int:
    """Krull dimension of T/ini: the largest coordinate subspace avoiding ini,
    i.e. the largest variable subset containing no generator's support."""
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in ini.gens]
    if any(not s for s in supports):
        return 0  # unit ideal
    for size in range(ini.nvars, 0, -1):
        for subset in combinations(range(ini.nvars), size):
            a = frozenset(subset)
            if not any(s <= a for s in supports):
                return size
    return 0


def dimension(J: Sequence[Polynomial], p: int = DEFAULT_PRIME) -> int:
    """Krull dimension of T/J, via the initial ideal of a Groebner basis."""
    gb = buchberger(J, grevlex_order(_nvars(J)), p)
    return monomial_dimension(initial_ideal(gb))


def _socle_quotient(gb: GroebnerBasis) -> GroebnerBasis:
    """(J : m) with m the irrelevant ideal, as the intersection of (J : z_i)."""
    nvars = _nvars(gb.elements)
    current: Optional[GroebnerBasis] = None
    for i in range(nvars):
        zi = z_monomial_poly(tuple(1 if j == i else 0 for j in range(nvars)))
        quot = colon(gb.elements, zi, gb.order, gb.prime)
        if current is None:
            current = quot
        else:
            current = intersect(current.elements, quot.elements, gb.order, gb.prime)
    assert current is not None
    return current


def _socle_witness(gb: GroebnerBasis) -> Optional[Polynomial]:
    """Element of (J : m) not in J, or None when the quotient ring has positive depth."""
    soc = _socle_quotient(gb)
    for g in soc.elements:
        if not normal_form(g, gb).is_zero:
            return g
    return None


def is_depth_zero(J: Sequence[Polynomial], p: int = DEFAULT_PRIME) -> bool:
    """Deterministic socle test: depth 0 iff (J : m) != J."""
    gb = buchberger(J, grevlex_order(_nvars(J)), p)
    if gb.contains_one():
        raise ValueError("J is the unit ideal; T/J is the zero ring")
    return _socle_witness(gb) is not None


def _random_linear_form(rng: random.Random, nvars: int, p: int, full_support: bool) -> Polynomial:
    while True:
        if full_support:
            coeffs = [rng.randrange(1, p) for _ in range(nvars)]
        else:
            coeffs = [rng.randrange(p) for _ in range(nvars)]
            if not any(coeffs):
                continue
        terms = {
            tuple(1 if j == i else 0 for j in range(nvars)): c
            for i, c in enumerate(coeffs)
            if c
        }
        return Polynomial.from_dict(terms, p)


def _linear_coeffs(f: Polynomial, nvars: int) -> tuple[int, ...]:
    coeffs = [0] * nvars
    for m, c in f.terms:
        coeffs[m.index(1)] = c
    return tuple(coeffs)


def depth_certificate(
    J: Sequence[Polynomial],
    p: int = DEFAULT_PRIME,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
) -> DepthCertificate:
    """Depth of T/J with a re-checkable certificate.

    Searches random linear forms for a nonzerodivisor (full support first),
    verifying each candidate deterministically by (J : f) = J.  When the
    Krull dimension reaches zero or the socle test certifies depth 0, the
    chain stops; when neither happens within `trials`, the computation is
    inconclusive and raises rather than reporting a wrong depth.
    """
    nvars = _nvars(J)
    order = grevlex_order(nvars)
    gb = buchberger(J, order, p)
    if gb.contains_one():
        raise ValueError("J is the unit ideal; T/J is the zero ring")
    rng = random.Random(seed)
    sequence: list[tuple[int, ...]] = []

    while True:
        if monomial_dimension(initial_ideal(gb)) == 0:
            witness = _socle_witness(gb)
            assert witness is not None  # graded dimension 0 forces a nonzero socle
            return DepthCertificate(len(sequence), sequence, witness, trials, p, seed)

        found: Optional[Polynomial] = None
        used = 0
        checked_socle = False
        while used < trials:
            full = used < _QUICK_TRIALS
            if used == _QUICK_TRIALS:
                # cheap attempts exhausted; settle depth 0 before burning trials
                witness = _socle_witness(gb)
                checked_socle = True
                if witness is not None:
                    return DepthCertificate(
                        len(sequence), sequence, witness, trials, p, seed
                    )
            f = _random_linear_form(rng, nvars, p, full_support=full)
            used += 1
            if colon(gb.elements, f, order, p).same_ideal(gb):
                found = f
                break
        if found is None:
            if not checked_socle:
                witness = _socle_witness(gb)
                if witness is not None:
                    return DepthCertificate(
                        len(sequence), sequence, witness, trials, p, seed
                    )
            raise InconclusiveDepthError(
                "inconclusive: enlarge prime or trials "
                f"(no nonzerodivisor found in {trials} attempts, socle is trivial)"
            )
        sequence.append(_linear_coeffs(found, nvars))
        gb = buchberger(list(gb.elements) + [found], order, p)


def depth(
    J: Sequence[Polynomial],
    p: int = DEFAULT_PRIME,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
) -> int:
    return depth_certificate(J, p, trials, seed).depth


def is_cohen_macaulay(
    J: Sequence[Polynomial],
    p: int = DEFAULT_PRIME,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
) -> bool:
    """depth == Krull dimension."""
    return depth_certificate(J, p, trials, seed).depth == dimension(J, p)


def mu_monotonicity_check(I: MonomialIdeal, K: int) -> bool:
    """True iff mu(I^k) is nondecreasing for k = 1..K."""
    if K < 2:
        raise ValueError("K must be >= 2")
    seq = mu_power_sequence(I, K)
    return all(a <= b for a, b in zip(seq, seq[1:]))
