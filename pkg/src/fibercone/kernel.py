"""Degree-truncated computation of the defining ideal of a fiber cone.

The fiber cone of a monomial ideal I with minimal generators u1..um is the
quotient of K[z1..zm] by the kernel J of zi -> ui mod (max ideal)*I.  J is
generated by monomials and homogeneous binomials, which this module finds
degree by degree: z-monomials of degree k are partitioned by their image
(a product of k generators of I), components under shifts of previously
found binomials are merged with a union-find, and each surviving class
yields one new generator.  An independent mod-p rank computation
cross-checks the count in every degree.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .monomials import (
    Exponents,
    MonomialIdeal,
    degree_monomials,
    ideal_powers,
    member_strict,
    mono_mul,
)

DEFAULT_PRIME = 32003


@dataclass(frozen=True)
class KernelGenerator:
    """A minimal generator of the defining ideal: a z-monomial or a difference
    of two z-monomials of equal degree with coprime supports (lead lex-larger)."""

    lead: Exponents
    trail: Optional[Exponents] = None

    def __post_init__(self) -> None:
        if self.trail is not None:
            if sum(self.lead) != sum(self.trail):
                raise ValueError("binomial generator must be homogeneous")
            if self.lead <= self.trail:
                raise ValueError("binomial lead must be lex-larger than trail")
            if any(min(a, b) > 0 for a, b in zip(self.lead, self.trail)):
                raise ValueError("binomial sides must be coprime")

    @property
    def is_binomial(self) -> bool:
        return self.trail is not None

    @property
    def degree(self) -> int:
        return sum(self.lead)

    def sort_key(self) -> tuple:
        return (self.degree, self.is_binomial, self.lead, self.trail or ())

    def to_json(self) -> dict:
        d: dict = {"degree": self.degree}
        if self.trail is None:
            d["kind"] = "monomial"
            d["lead"] = list(self.lead)
        else:
            d["kind"] = "binomial"
            d["lead"] = list(self.lead)
            d["trail"] = list(self.trail)
        return d


def binomial(lead: Exponents, trail: Exponents) -> KernelGenerator:
    """Canonical binomial generator: common factor canceled, lead lex-larger."""
    common = tuple(min(a, b) for a, b in zip(lead, trail))
    if any(common):
        lead = tuple(a - c for a, c in zip(lead, common))
        trail = tuple(a - c for a, c in zip(trail, common))
    if lead < trail:
        lead, trail = trail, lead
    return KernelGenerator(lead, trail)


def monomial(exps: Exponents) -> KernelGenerator:
    return KernelGenerator(tuple(exps))


@dataclass
class KernelReport:
    """Truncated description of the defining ideal up to a degree bound."""

    ideal: MonomialIdeal
    degree_bound: int
    generators_by_degree: dict[int, list[KernelGenerator]]
    mu_powers: list[int]
    stability_window: int

    @property
    def generators(self) -> list[KernelGenerator]:
        out: list[KernelGenerator] = []
        for k in sorted(self.generators_by_degree):
            out.extend(self.generators_by_degree[k])
        return out

    @property
    def mu(self) -> int:
        return sum(len(v) for v in self.generators_by_degree.values())

    def generator_set(self) -> frozenset[KernelGenerator]:
        return frozenset(self.generators)

    def to_json(self) -> dict:
        return {
            "ideal": self.ideal.to_json(),
            "degree_bound": self.degree_bound,
            "generators": [g.to_json() for g in self.generators],
            "mu_J": self.mu,
            "mu_powers": self.mu_powers,
            "stability_window": self.stability_window,
        }


class _DisjointSet:
    """Union-find over 0..n-1 with path halving; roots track the minimal member."""

    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if ra < rb:  # keep the smaller index as root: root = lex-min member
            self.parent[rb] = ra
        else:
            self.parent[ra] = rb


ZERO_CLASS = None  # sentinel image for z-monomials landing in (max ideal)*I^k


def image_of_z_monomial(
    I: MonomialIdeal, z: Exponents, powers: list[MonomialIdeal] | None = None
) -> Optional[Exponents]:
    """Image of a z-monomial in the fiber cone: the product of the generators
    it encodes, or ZERO_CLASS (None) when that product drops into m*I^k."""
    if len(z) != I.mu:
        raise ValueError(f"z-monomial has {len(z)} entries, ideal has {I.mu} generators")
    k = sum(z)
    if k == 0:
        raise ValueError("degree-0 z-monomial has no class")
    w = tuple(sum(e * g[i] for e, g in zip(z, I.gens)) for i in range(I.nvars))
    if powers is not None and len(powers) > k:
        Pk = powers[k]
    else:
        Pk = ideal_powers(I, k)[k]
    # w is a product of k generators, hence lies in I^k; it drops into m*I^k
    # exactly when it is not one of the minimal generators of I^k.
    if w in Pk.gen_set():
        return w
    assert member_strict(w, Pk)
    return ZERO_CLASS


def compute_kernel(I: MonomialIdeal, max_degree: int) -> KernelReport:
    """Minimal generators of the defining ideal in each degree <= max_degree."""
    if max_degree < 2:
        raise ValueError("max_degree must be >= 2")
    m = I.mu
    powers = ideal_powers(I, max_degree)
    found_monomials: list[Exponents] = []
    found_binomials: list[tuple[Exponents, Exponents]] = []
    gens_by_degree: dict[int, list[KernelGenerator]] = {}

    for k in range(1, max_degree + 1):
        nodes = list(degree_monomials(k, m))
        index = {node: i for i, node in enumerate(nodes)}
        gen_set = powers[k].gen_set()
        images: list[Optional[Exponents]] = []
        for node in nodes:
            w = tuple(sum(e * g[i] for e, g in zip(node, I.gens)) for i in range(I.nvars))
            images.append(w if w in gen_set else ZERO_CLASS)

        dsu = _DisjointSet(len(nodes))
        for lead, trail in found_binomials:
            d = sum(lead)
            if d >= k:
                continue
            for c in degree_monomials(k - d, m):
                dsu.union(index[mono_mul(c, lead)], index[mono_mul(c, trail)])

        dead = [False] * len(nodes)
        for g in found_monomials:
            d = sum(g)
            if d > k:
                continue
            for c in degree_monomials(k - d, m):
                dead[index[mono_mul(c, g)]] = True

        # group nodes by union-find root within the zero class and each fiber
        zero_components: dict[int, int] = {}  # root -> min node index
        zero_dead: set[int] = set()
        fibers: dict[Exponents, dict[int, int]] = {}
        for i, w in enumerate(images):
            root = dsu.find(i)
            if w is ZERO_CLASS:
                if root not in zero_components:
                    zero_components[root] = i  # nodes scanned in lex order
                if dead[i]:
                    zero_dead.add(root)
            else:
                assert not dead[i]
                comps = fibers.setdefault(w, {})
                if root not in comps:
                    comps[root] = i

        new_gens: list[KernelGenerator] = []
        for root, rep in zero_components.items():
            if root not in zero_dead:
                new_gens.append(monomial(nodes[rep]))
        for comps in fibers.values():
            if len(comps) > 1:
                reps = sorted(comps.values())
                base = nodes[reps[0]]
                for other in reps[1:]:
                    new_gens.append(binomial(nodes[other], base))

        if new_gens:
            new_gens.sort(key=KernelGenerator.sort_key)
            gens_by_degree[k] = new_gens
            for g in new_gens:
                if g.is_binomial:
                    found_binomials.append((g.lead, g.trail))
                else:
                    found_monomials.append(g.lead)

    last_new = max(gens_by_degree) if gens_by_degree else 1
    return KernelReport(
        ideal=I,
        degree_bound=max_degree,
        generators_by_degree=gens_by_degree,
        mu_powers=[P.mu for P in powers[1:]],
        stability_window=max_degree - last_new,
    )


def _row_reduce_rank(rows: list[dict[int, int]], p: int) -> int:
    """Rank of a sparse matrix over GF(p); rows are {column: coefficient} dicts."""
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for row in rows:
        r = {c: v % p for c, v in row.items() if v % p}
        while r:
            col = min(r)
            if col in pivots:
                piv = pivots[col]
                coeff = r.pop(col)
                for c, v in piv.items():
                    nv = (r.get(c, 0) - coeff * v) % p
                    if nv:
                        r[c] = nv
                    else:
                        r.pop(c, None)
            else:
                inv = pow(r[col], p - 2, p)
                lead = r.pop(col)
                pivots[col] = {c: (v * inv) % p for c, v in r.items()}
                rank += 1
                r = {}
    return rank


def rank_cross_check(
    I: MonomialIdeal,
    k: int,
    found_below: list[KernelGenerator],
    found_at_k: list[KernelGenerator],
    prime: int = DEFAULT_PRIME,
) -> bool:
    """Verify the new-generator count at degree k by independent linear algebra.

    The expected count is dim ker(phi_k) minus the dimension of the degree-k
    span of shifted lower-degree generators, both obtained by sparse row
    reduction over GF(prime).
    """
    if prime <= 2:
        raise ValueError("prime must exceed 2")
    m = I.mu
    nodes = list(degree_monomials(k, m))
    index = {node: i for i, node in enumerate(nodes)}
    Pk = ideal_powers(I, k)[k]
    gen_cols = {g: j for j, g in enumerate(Pk.gens)}

    phi_rows = []
    for node in nodes:
        w = tuple(sum(e * g[i] for e, g in zip(node, I.gens)) for i in range(I.nvars))
        col = gen_cols.get(w)
        phi_rows.append({} if col is None else {col: 1})
    dim_kernel = len(nodes) - _row_reduce_rank(phi_rows, prime)

    shift_rows = []
    for g in found_below:
        d = g.degree
        if d >= k:
            raise ValueError("found_below must contain only generators of degree < k")
        for c in degree_monomials(k - d, m):
            if g.is_binomial:
                shift_rows.append(
                    {index[mono_mul(c, g.lead)]: 1, index[mono_mul(c, g.trail)]: prime - 1}
                )
            else:
                shift_rows.append({index[mono_mul(c, g.lead)]: 1})
    dim_shifted = _row_reduce_rank(shift_rows, prime)

    return len(found_at_k) == dim_kernel - dim_shifted


def verify_report_ranks(report: KernelReport, prime: int = DEFAULT_PRIME) -> bool:
    """Run the rank cross-check in every degree of a report."""
    below: list[KernelGenerator] = []
    for k in range(2, report.degree_bound + 1):
        at_k = report.generators_by_degree.get(k, [])
        if not rank_cross_check(report.ideal, k, below, at_k, prime):
            return False
        below.extend(at_k)
    return True


def apply_variable_permutation(g: KernelGenerator, perm: list[int]) -> KernelGenerator:
    """Rename fiber variables: entry i of the result reads position perm[i]."""
    lead = tuple(g.lead[perm[i]] for i in range(len(g.lead)))
    if g.trail is None:
        return monomial(lead)
    trail = tuple(g.trail[perm[i]] for i in range(len(g.trail)))
    return binomial(lead, trail)
