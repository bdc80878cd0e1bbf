"""Exact arithmetic on monomials and minimally generated monomial ideals.

Monomials are exponent tuples; an ideal is stored by its minimal generators,
which must form an antichain under componentwise divisibility.  All values are
immutable and all operations are pure functions.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Exponents = tuple[int, ...]


def degree_monomials(degree: int, nvars: int):
    """All exponent tuples of the given total degree, lexicographically ascending."""
    if nvars == 1:
        yield (degree,)
        return
    for first in range(degree + 1):
        for rest in degree_monomials(degree - first, nvars - 1):
            yield (first,) + rest


def count_degree_monomials(degree: int, nvars: int) -> int:
    from math import comb

    return comb(degree + nvars - 1, nvars - 1)


def divides(g: Exponents, m: Exponents) -> bool:
    """Componentwise g <= m."""
    return all(a <= b for a, b in zip(g, m))


def mono_mul(a: Exponents, b: Exponents) -> Exponents:
    return tuple(x + y for x, y in zip(a, b))


def total_degree(m: Exponents) -> int:
    return sum(m)


def _check_vectors(vectors: Iterable[Sequence[int]]) -> list[Exponents]:
    vs = [tuple(int(e) for e in v) for v in vectors]
    if not vs:
        raise ValueError("empty generating set")
    n = len(vs[0])
    for v in vs:
        if len(v) != n:
            raise ValueError(f"mixed exponent-vector lengths: {len(v)} vs {n}")
        if any(e < 0 for e in v):
            raise ValueError(f"negative exponent in {v}")
    return vs


def antichain(candidates: Iterable[Sequence[int]]) -> tuple[Exponents, ...]:
    """Componentwise-minimal elements of `candidates`, sorted descending.

    Every input vector is divisible by some output vector.  Duplicates are
    collapsed.  Raises on empty input.
    """
    vs = set(_check_vectors(candidates))
    if len(next(iter(vs))) == 2:
        # 2-variable staircase sweep: x ascending, keep strictly decreasing y.
        kept: list[Exponents] = []
        best_y: int | None = None
        for v in sorted(vs):
            if best_y is None or v[1] < best_y:
                kept.append(v)
                best_y = v[1]
        return tuple(sorted(kept, reverse=True))
    kept = []
    for v in sorted(vs, key=lambda v: (total_degree(v), v)):
        # degree-ascending, so any divisor of v is already in kept
        if not any(divides(k, v) for k in kept):
            kept.append(v)
    return tuple(sorted(kept, reverse=True))


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by its minimal generators, in a fixed order.

    The generator order is preserved as given (it fixes the indexing of the
    fiber variables z1..zm); it must already be an antichain.
    """

    nvars: int
    gens: tuple[Exponents, ...]

    def __post_init__(self) -> None:
        if self.nvars < 1:
            raise ValueError("nvars must be positive")
        if not self.gens:
            raise ValueError("empty generating set")
        seen = set()
        for g in self.gens:
            if len(g) != self.nvars:
                raise ValueError(f"generator {g} has length != nvars={self.nvars}")
            if any(e < 0 for e in g):
                raise ValueError(f"negative exponent in generator {g}")
            if g in seen:
                raise ValueError(f"duplicate generator {g}")
            seen.add(g)
        for g in self.gens:
            for h in self.gens:
                if g is not h and divides(g, h):
                    raise ValueError(
                        f"not an antichain: {g} divides {h}; pass minimalize=True to reduce"
                    )

    @property
    def mu(self) -> int:
        return len(self.gens)

    def gen_set(self) -> frozenset[Exponents]:
        return frozenset(self.gens)

    def same_ideal(self, other: "MonomialIdeal") -> bool:
        """Equality as ideals (generator order ignored)."""
        return self.nvars == other.nvars and self.gen_set() == other.gen_set()

    def contains(self, m: Exponents) -> bool:
        return any(divides(g, m) for g in self.gens)

    def to_json(self) -> dict:
        return {"nvars": self.nvars, "generators": [list(g) for g in self.gens]}


def minimalize(candidates: Iterable[Sequence[int]], nvars: int | None = None) -> MonomialIdeal:
    """Ideal generated by `candidates`, reduced to its minimal generators."""
    gens = antichain(candidates)
    return MonomialIdeal(nvars if nvars is not None else len(gens[0]), gens)


def ideal(*gens: Sequence[int]) -> MonomialIdeal:
    """MonomialIdeal from generators in the given order (must be an antichain)."""
    vs = _check_vectors(gens)
    return MonomialIdeal(len(vs[0]), tuple(vs))


def power(I: MonomialIdeal, k: int) -> MonomialIdeal:
    """Minimal generators of I^k."""
    if k < 1:
        raise ValueError("power exponent must be >= 1")
    return ideal_powers(I, k)[k]


def ideal_powers(I: MonomialIdeal, k: int) -> list[MonomialIdeal]:
    """[None-slot, I^1, ..., I^k] computed incrementally with minimalization."""
    powers: list[MonomialIdeal] = [I, I]  # index 0 unused
    for _ in range(2, k + 1):
        prev = powers[-1].gens
        candidates = {mono_mul(g, u) for g in prev for u in I.gens}
        powers.append(MonomialIdeal(I.nvars, antichain(candidates)))
    return powers[: k + 1]


def member_strict(m: Sequence[int], I: MonomialIdeal) -> bool:
    """True iff m lies in max-ideal * I, i.e. some generator properly divides m."""
    mt = tuple(m)
    if len(mt) != I.nvars:
        raise ValueError(f"monomial {mt} has length != nvars={I.nvars}")
    return any(divides(g, mt) and g != mt for g in I.gens)


def mu_power_sequence(I: MonomialIdeal, K: int) -> list[int]:
    """[mu(I^1), ..., mu(I^K)]."""
    if K < 1:
        raise ValueError("K must be >= 1")
    return [P.mu for P in ideal_powers(I, K)[1:]]


def parse_ideal(text: str, minimalize_input: bool = False) -> MonomialIdeal:
    """Parse "25,0; 20,5; 19,19" into a MonomialIdeal (whitespace-insensitive).

    Non-antichain input is rejected unless minimalize_input is set; generator
    order is preserved as written.
    """
    chunks = [c for c in text.replace(" ", "").replace("\t", "").split(";") if c]
    if not chunks:
        raise ValueError("empty generating set")
    vectors = []
    for chunk in chunks:
        try:
            vectors.append(tuple(int(p) for p in chunk.split(",")))
        except ValueError as exc:
            raise ValueError(f"malformed exponent tuple {chunk!r}") from exc
    if minimalize_input:
        return minimalize(vectors)
    return ideal(*vectors)


def format_ideal(I: MonomialIdeal) -> str:
    return "; ".join(",".join(str(e) for e in g) for g in I.gens)
