"""Exact Groebner bases over a prime field for ideals in the fiber variables.

Small-scale Buchberger engine (4-7 variables, monomial/binomial-heavy input)
with Gebauer-Moeller pair pruning, plus the derived operations needed by the
depth diagnostics: initial ideals, normal forms, ideal quotients and
intersections via an elimination variable, and Hilbert-function counting.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .monomials import Exponents, MonomialIdeal, antichain

DEFAULT_PRIME = 32003

Term = tuple[Exponents, int]


def _mul(a: Exponents, b: Exponents) -> Exponents:
    return tuple(x + y for x, y in zip(a, b))


def _div(a: Exponents, b: Exponents) -> Optional[Exponents]:
    q = []
    for x, y in zip(a, b):
        if x < y:
            return None
        q.append(x - y)
    return tuple(q)


def _lcm(a: Exponents, b: Exponents) -> Exponents:
    return tuple(max(x, y) for x, y in zip(a, b))


class MonomialOrder:
    """Total order on exponent tuples refining divisibility; compare by key()."""

    def key(self, m: Exponents) -> tuple:
        raise NotImplementedError

    def max_monomial(self, monos: Iterable[Exponents]) -> Exponents:
        return max(monos, key=self.key)


@dataclass(frozen=True)
class Lex(MonomialOrder):
    priority: tuple[int, ...]  # variable indices, most significant first

    def key(self, m: Exponents) -> tuple:
        return tuple(m[i] for i in self.priority)


@dataclass(frozen=True)
class GrevLex(MonomialOrder):
    priority: tuple[int, ...]

    def key(self, m: Exponents) -> tuple:
        return (sum(m), tuple(-m[i] for i in reversed(self.priority)))


@dataclass(frozen=True)
class ElimBlock(MonomialOrder):
    """Front block dominates: compared by degree then lex before the inner order."""

    front: tuple[int, ...]
    inner: MonomialOrder

    def key(self, m: Exponents) -> tuple:
        fr = tuple(m[i] for i in self.front)
        return (sum(fr), fr, self.inner.key(m))


def lex_order(nvars: int) -> Lex:
    return Lex(tuple(range(nvars)))


def grevlex_order(nvars: int) -> GrevLex:
    return GrevLex(tuple(range(nvars)))


def parse_order(text: str, nvars: int) -> MonomialOrder:
    """Parse order names like "lex:z1>z2>z3>z4", "grevlex:...", "elim:t|lex:...".

    In an elimination block, the name "t" denotes the auxiliary variable that
    occupies the extra trailing slot of extended monomials.
    """
    kind, _, rest = text.partition(":")
    if kind == "elim":
        front_part, _, inner_part = rest.partition("|")
        front = tuple(
            nvars if v.strip() == "t" else _var_index(v, nvars)
            for v in front_part.split(">")
        )
        return ElimBlock(front, parse_order(inner_part, nvars))
    names = [v.strip() for v in rest.split(">") if v.strip()]
    priority = tuple(_var_index(v, nvars) for v in names)
    if sorted(priority) != list(range(nvars)):
        raise ValueError(f"order {text!r} must list each of z1..z{nvars} exactly once")
    if kind == "lex":
        return Lex(priority)
    if kind == "grevlex":
        return GrevLex(priority)
    raise ValueError(f"unknown order kind {kind!r}")


def _var_index(name: str, nvars: int) -> int:
    name = name.strip()
    if not name.startswith("z"):
        raise ValueError(f"bad variable name {name!r}")
    i = int(name[1:]) - 1
    if not 0 <= i < nvars:
        raise ValueError(f"variable {name!r} out of range for {nvars} variables")
    return i


@dataclass(frozen=True)
class Polynomial:
    """Sparse polynomial over GF(p), canonical as a sorted tuple of terms."""

    terms: tuple[Term, ...]  # sorted descending by exponent tuple, coeffs in [1, p)

    @staticmethod
    def from_dict(coeffs: dict[Exponents, int], p: int) -> "Polynomial":
        items = tuple(
            sorted(((m, c % p) for m, c in coeffs.items() if c % p), reverse=True)
        )
        return Polynomial(items)

    def to_dict(self) -> dict[Exponents, int]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def lead_monomial(self, order: MonomialOrder) -> Exponents:
        return order.max_monomial(m for m, _ in self.terms)

    def degree(self) -> int:
        return max(sum(m) for m, _ in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m, _ in self.terms}
        return len(degs) <= 1


def z_monomial_poly(exps: Exponents) -> Polynomial:
    return Polynomial(((tuple(exps), 1),))


def z_binomial_poly(lead: Exponents, trail: Exponents, p: int) -> Polynomial:
    return Polynomial.from_dict({tuple(lead): 1, tuple(trail): p - 1}, p)


def parse_poly(text: str, nvars: int, p: int = DEFAULT_PRIME) -> Polynomial:
    """Parse plain syntax like "z1^9*z3^10 - z2^10*z4^9"."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict[Exponents, int] = {}
    sign = 1
    token = ""
    chunks: list[tuple[int, str]] = []
    for ch in s:
        if ch in "+-":
            if token:
                chunks.append((sign, token))
                token = ""
            sign = 1 if ch == "+" else -1
        else:
            token += ch
    if token:
        chunks.append((sign, token))
    for sgn, term in chunks:
        coeff = sgn
        exps = [0] * nvars
        for factor in term.split("*"):
            if not factor:
                raise ValueError(f"malformed term in {text!r}")
            if factor[0] == "z":
                var, _, e = factor.partition("^")
                exps[_var_index(var, nvars)] += int(e) if e else 1
            else:
                coeff *= int(factor)
        m = tuple(exps)
        coeffs[m] = coeffs.get(m, 0) + coeff
    return Polynomial.from_dict(coeffs, p)


def format_poly(f: Polynomial, order: MonomialOrder | None = None, p: int = DEFAULT_PRIME) -> str:
    if f.is_zero:
        return "0"
    monos = [m for m, _ in f.terms]
    if order is not None:
        monos.sort(key=order.key, reverse=True)
    d = f.to_dict()
    parts: list[str] = []
    for m, mono in enumerate(monos):
        c = d[mono]
        neg = c > p // 2
        mag = p - c if neg else c
        body = "*".join(
            f"z{i + 1}^{e}" if e > 1 else f"z{i + 1}" for i, e in enumerate(mono) if e
        )
        if not body:
            body = "1"
        if mag != 1 or body == "1":
            body = f"{mag}*{body}" if body != "1" else str(mag)
        if m == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


@dataclass(frozen=True)
class GroebnerBasis:
    order: MonomialOrder
    elements: tuple[Polynomial, ...]
    prime: int
    reduced: bool = True

    def lead_monomials(self) -> tuple[Exponents, ...]:
        return tuple(g.lead_monomial(self.order) for g in self.elements)

    def poly_set(self) -> frozenset[Polynomial]:
        return frozenset(self.elements)

    def same_ideal(self, other: "GroebnerBasis") -> bool:
        """Valid when both are reduced bases under the same order and prime."""
        return self.poly_set() == other.poly_set()

    def contains_one(self) -> bool:
        return any(len(g.terms) == 1 and not any(g.terms[0][0]) for g in self.elements)


def _nf_dict(
    f: dict[Exponents, int],
    basis: list[dict[Exponents, int]],
    leads: list[Exponents],
    order: MonomialOrder,
    p: int,
) -> dict[Exponents, int]:
    """Full normal form of f against monic polynomials with the given leads."""
    key = order.key
    work = dict(f)
    remainder: dict[Exponents, int] = {}
    while work:
        m = max(work, key=key)
        c = work[m]
        for g, lm in zip(basis, leads):
            q = _div(m, lm)
            if q is not None:
                for gm, gc in g.items():
                    mm = _mul(gm, q)
                    nv = (work.get(mm, 0) - c * gc) % p
                    if nv:
                        work[mm] = nv
                    else:
                        work.pop(mm, None)
                break
        else:
            remainder[m] = c
            del work[m]
    return remainder


def _monic(f: dict[Exponents, int], order: MonomialOrder, p: int) -> dict[Exponents, int]:
    lm = max(f, key=order.key)
    c = f[lm]
    if c == 1:
        return f
    inv = pow(c, p - 2, p)
    return {m: (v * inv) % p for m, v in f.items()}


def buchberger(
    gens: Sequence[Polynomial], order: MonomialOrder, p: int = DEFAULT_PRIME
) -> GroebnerBasis:
    """Reduced Groebner basis; deterministic for a fixed input sequence."""
    key = order.key
    basis: list[dict[Exponents, int]] = []
    leads: list[Exponents] = []

    def gm_update(pairs: set[tuple[int, int]], active: set[int], h: int) -> None:
        # Gebauer-Moeller criteria for discarding unneeded S-pairs
        mh = leads[h]
        fresh: list[tuple[int, int]] = []
        candidates = sorted(active)
        lcms = {g: _lcm(mh, leads[g]) for g in candidates}
        for g in candidates:
            lcm_hg = lcms[g]
            if all(x + y == z for x, y, z in zip(mh, leads[g], lcm_hg)):
                continue  # coprime leads: S-pair reduces to zero
            if any(
                gg != g and _div(lcm_hg, lcms[gg]) is not None and lcms[gg] != lcm_hg
                for gg in candidates
            ):
                continue
            fresh.append((g, h))
        # drop duplicate-lcm fresh pairs, keep the first deterministically
        seen_lcm: set[Exponents] = set()
        for g, hh in sorted(fresh):
            l = lcms[g]
            if l in seen_lcm:
                continue
            seen_lcm.add(l)
            pairs.add((g, hh))
        # prune old pairs whose lcm is a proper multiple of a new lead situation
        for (i, j) in list(pairs):
            if j == h:
                continue
            lij = _lcm(leads[i], leads[j])
            if (
                _div(lij, mh) is not None
                and _lcm(leads[i], mh) != lij
                and _lcm(leads[j], mh) != lij
            ):
                pairs.discard((i, j))
        stale = {g for g in active if _div(leads[g], mh) is not None}
        active.difference_update(stale)
        active.add(h)

    pairs: set[tuple[int, int]] = set()
    active: set[int] = set()
    for f in gens:
        if f.is_zero:
            continue
        nf = _nf_dict(f.to_dict(), basis, leads, order, p)
        if not nf:
            continue
        nf = _monic(nf, order, p)
        basis.append(nf)
        leads.append(max(nf, key=key))
        gm_update(pairs, active, len(basis) - 1)

    if not basis:
        raise ValueError("cannot take a Groebner basis of the zero ideal")

    while pairs:
        i, j = min(pairs, key=lambda ij: (key(_lcm(leads[ij[0]], leads[ij[1]])), ij))
        pairs.discard((i, j))
        li, lj = leads[i], leads[j]
        lij = _lcm(li, lj)
        qi, qj = _div(lij, li), _div(lij, lj)
        s: dict[Exponents, int] = {}
        for m, c in basis[i].items():
            mm = _mul(m, qi)
            s[mm] = (s.get(mm, 0) + c) % p
        for m, c in basis[j].items():
            mm = _mul(m, qj)
            s[mm] = (s.get(mm, 0) - c) % p
        s = {m: c for m, c in s.items() if c}
        act = sorted(active)
        nf = _nf_dict(s, [basis[g] for g in act], [leads[g] for g in act], order, p)
        if nf:
            nf = _monic(nf, order, p)
            basis.append(nf)
            leads.append(max(nf, key=key))
            gm_update(pairs, active, len(basis) - 1)

    # inter-reduce the active elements into the unique reduced basis
    act = sorted(active, key=lambda g: key(leads[g]))
    final: list[dict[Exponents, int]] = []
    for g in act:
        others = [basis[h] for h in act if h != g]
        other_leads = [leads[h] for h in act if h != g]
        nf = _nf_dict(basis[g], others, other_leads, order, p)
        if nf:
            final.append(_monic(nf, order, p))
    final.sort(key=lambda f: key(max(f, key=key)))
    return GroebnerBasis(
        order=order,
        elements=tuple(Polynomial.from_dict(f, p) for f in final),
        prime=p,
    )


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    basis = [g.to_dict() for g in gb.elements]
    leads = [g.lead_monomial(gb.order) for g in gb.elements]
    return Polynomial.from_dict(_nf_dict(f.to_dict(), basis, leads, gb.order, gb.prime), gb.prime)


def in_ideal(f: Polynomial, gb: GroebnerBasis) -> bool:
    return normal_form(f, gb).is_zero


def s_poly_reductions_vanish(gb: GroebnerBasis) -> bool:
    """Post-check that every S-pair of the basis reduces to zero."""
    elems = gb.elements
    p, order = gb.prime, gb.order
    basis = [g.to_dict() for g in elems]
    leads = [g.lead_monomial(order) for g in elems]
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            lij = _lcm(leads[i], leads[j])
            qi, qj = _div(lij, leads[i]), _div(lij, leads[j])
            s: dict[Exponents, int] = {}
            for m, c in basis[i].items():
                mm = _mul(m, qi)
                s[mm] = (s.get(mm, 0) + c) % p
            for m, c in basis[j].items():
                mm = _mul(m, qj)
                s[mm] = (s.get(mm, 0) - c) % p
            s = {m: c for m, c in s.items() if c}
            if _nf_dict(s, basis, leads, order, p):
                return False
    return True


def initial_ideal(gb: GroebnerBasis) -> MonomialIdeal:
    """Minimalized ideal of leading monomials."""
    leads = gb.lead_monomials()
    nvars = len(leads[0])
    return MonomialIdeal(nvars, antichain(leads))


def _lift(f: Polynomial, t_exp: int, p: int) -> dict[Exponents, int]:
    """Append an elimination variable with exponent t_exp to every monomial."""
    return {m + (t_exp,): c for m, c in f.terms}


def _elimination_combine(
    A: Sequence[Polynomial], B: Sequence[Polynomial], order: MonomialOrder, p: int
) -> list[Polynomial]:
    """Groebner basis of t*A + (1-t)*B intersected with the t-free subring."""
    nvars = len(A[0].terms[0][0]) if A else len(B[0].terms[0][0])
    for f in list(A) + list(B):
        if any(len(m) != nvars for m, _ in f.terms):
            raise ValueError("mixed polynomial arities")
    ext_order = ElimBlock((nvars,), _extend_order(order))
    ext_gens: list[Polynomial] = []
    for f in A:
        ext_gens.append(Polynomial.from_dict(_lift(f, 1, p), p))
    for f in B:
        d = _lift(f, 0, p)
        for m, c in _lift(f, 1, p).items():
            d[m] = (d.get(m, 0) - c) % p
        ext_gens.append(Polynomial.from_dict({m: c for m, c in d.items() if c}, p))
    gb = buchberger(ext_gens, ext_order, p)
    kept = []
    for g in gb.elements:
        if all(m[-1] == 0 for m, _ in g.terms):
            kept.append(Polynomial(tuple((m[:-1], c) for m, c in g.terms)))
    return kept


def _extend_order(order: MonomialOrder) -> MonomialOrder:
    """The same order viewed on monomials with one trailing extra variable."""

    class _Shifted(MonomialOrder):
        def key(self, m: Exponents) -> tuple:
            return order.key(m[:-1])

    return _Shifted()


def intersect(
    A: Sequence[Polynomial], B: Sequence[Polynomial], order: MonomialOrder, p: int = DEFAULT_PRIME
) -> GroebnerBasis:
    """Reduced Groebner basis of the intersection of two ideals."""
    kept = _elimination_combine(A, B, order, p)
    if not kept:
        raise ValueError("intersection computed as zero ideal; inputs must be nonzero ideals")
    return buchberger(kept, order, p)


def divide_exact(f: Polynomial, g: Polynomial, order: MonomialOrder, p: int) -> Polynomial:
    """Quotient f/g when g divides f exactly."""
    gd = g.to_dict()
    glm = g.lead_monomial(order)
    gc = gd[glm]
    inv = pow(gc, p - 2, p)
    work = f.to_dict()
    quotient: dict[Exponents, int] = {}
    key = order.key
    while work:
        m = max(work, key=key)
        q = _div(m, glm)
        if q is None:
            raise ValueError("division is not exact")
        c = (work[m] * inv) % p
        quotient[q] = c
        for gm, gcoef in gd.items():
            mm = _mul(gm, q)
            nv = (work.get(mm, 0) - c * gcoef) % p
            if nv:
                work[mm] = nv
            else:
                work.pop(mm, None)
    return Polynomial.from_dict(quotient, p)


def colon(
    J: Sequence[Polynomial], f: Polynomial, order: MonomialOrder, p: int = DEFAULT_PRIME
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal quotient (J : f)."""
    if f.is_zero:
        raise ValueError("cannot colon by zero")
    kept = _elimination_combine(J, [f], order, p)
    quotients = [divide_exact(g, f, order, p) for g in kept]
    if not quotients:
        raise ValueError("colon computed as zero ideal; input ideal must be nonzero")
    return buchberger(quotients, order, p)


def standard_monomial_count(ini, k: int, nvars: int | None = None) -> int:
    """Number of degree-k monomials outside the monomial ideal `ini`.

    `ini` may be a MonomialIdeal or a plain iterable of exponent tuples
    (possibly empty, meaning the zero ideal).
    """
    from .monomials import degree_monomials

    if isinstance(ini, MonomialIdeal):
        gens = list(ini.gens)
        nvars = ini.nvars
    else:
        gens = [tuple(g) for g in ini]
        if nvars is None:
            if not gens:
                raise ValueError("nvars required when ini has no generators")
            nvars = len(gens[0])
    count = 0
    for m in degree_monomials(k, nvars):
        if not any(all(x >= y for x, y in zip(m, g)) for g in gens):
            count += 1
    return count
