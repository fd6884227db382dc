"""Ground truth for ideal computations: Buchberger with full reduction,
normal forms, bounded ideal dimension counts, and a mutant-queue elimination
that must reproduce the Buchberger output exactly.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import CapExceeded, DomainError, InconsistencyError, PreconditionError
from .linalg import RowBasis
from .rings import (
    GREVLEX,
    Monomial,
    Polynomial,
    PolySystem,
    TermOrder,
    enumerate_monomials,
)

DEFAULT_MAX_PAIRS = 200_000


@dataclass(frozen=True)
class GroebnerBasis:
    """A Groebner basis; with reduced=True it is the unique reduced basis:
    monic elements, pairwise non-dividing leading terms, fully inter-reduced,
    sorted by descending leading monomial."""

    polys: tuple[Polynomial, ...]
    order: TermOrder
    reduced: bool = True

    @property
    def max_degree(self) -> int:
        return max(g._degree for g in self.polys)

    @property
    def is_unit_ideal(self) -> bool:
        return len(self.polys) == 1 and self.polys[0]._degree == 0

    def leading_monomials(self) -> list[Monomial]:
        return [g.leading_monomial(self.order) for g in self.polys]

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, i):
        return self.polys[i]


def _nf(f: Polynomial, divisors: Sequence[Polynomial], order: TermOrder) -> Polynomial:
    """Full multivariate division remainder of f by monic divisors.

    No term of the result is divisible by any divisor's leading monomial;
    the degree never grows because the order is degree-compatible.
    """
    ring = f.ring
    p = ring.p
    key = order.key
    pairs = [(g.leading_monomial(order), g.terms) for g in divisors]
    work = dict(f.terms)
    rem: dict[Monomial, int] = {}
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        for lm, terms in pairs:
            if lm.divides(m):
                q = m / lm
                for mm, cc in terms.items():
                    if mm is lm or mm == lm:
                        continue
                    qm = mm * q
                    v = (work.get(qm, 0) - c * cc) % p
                    if v:
                        work[qm] = v
                    else:
                        del work[qm]
                break
        else:
            rem[m] = c
    return Polynomial._raw(ring, rem)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Remainder of f on division by a reduced basis; zero iff f is in the ideal."""
    return _nf(f, G.polys, G.order)


def _spoly(f: Polynomial, g: Polynomial, order: TermOrder) -> Polynomial:
    lf = f.leading_monomial(order)
    lg = g.leading_monomial(order)
    l = lf.lcm(lg)
    # both inputs monic
    return f.mul_monomial(l / lf) - g.mul_monomial(l / lg)


def _minimalize(polys: list[Polynomial], order: TermOrder) -> list[Polynomial]:
    """Keep only polynomials whose leading monomial no other kept one divides."""
    ranked = sorted(polys, key=lambda f: order.key(f.leading_monomial(order)))
    kept: list[Polynomial] = []
    kept_lms: list[Monomial] = []
    for f in ranked:
        lm = f.leading_monomial(order)
        if not any(l.divides(lm) for l in kept_lms):
            kept.append(f)
            kept_lms.append(lm)
    return kept


def _interreduce(polys: list[Polynomial], order: TermOrder) -> list[Polynomial]:
    """Tail-reduce each element against the others until stable.

    Assumes pairwise non-dividing leading monomials, so leading terms survive.
    """
    polys = [f.monic(order) for f in polys]
    changed = True
    while changed:
        changed = False
        for i in range(len(polys)):
            others = polys[:i] + polys[i + 1 :]
            r = _nf(polys[i], others, order)
            if r.terms != polys[i].terms:
                polys[i] = r.monic(order)
                changed = True
    return polys


def _sorted_basis(polys: list[Polynomial], order: TermOrder) -> tuple[Polynomial, ...]:
    return tuple(
        sorted(polys, key=lambda f: order.key(f.leading_monomial(order)), reverse=True)
    )


def _unit_basis(ring, order: TermOrder) -> GroebnerBasis:
    return GroebnerBasis((ring.one(),), order, reduced=True)


def _check_buchberger(G: GroebnerBasis):
    polys = G.polys
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if not _nf(_spoly(polys[i], polys[j], G.order), polys, G.order).is_zero:
                raise InconsistencyError("S-polynomial does not reduce to zero")


def buchberger_reduced(
    F, order: TermOrder = GREVLEX, *, max_pairs: int = DEFAULT_MAX_PAIRS, check: bool = True
) -> GroebnerBasis:
    """The unique reduced Groebner basis of the ideal generated by F.

    Pairs are processed lowest lcm degree first (normal strategy) and
    coprime leading terms are skipped (product criterion). With check=True
    the Buchberger criterion is re-verified on the result.
    """
    polys = list(F)
    if not polys:
        raise DomainError("cannot take a basis of an empty family")
    ring = polys[0].ring
    G = [f.monic(order) for f in polys if not f.is_zero]
    if not G:
        raise DomainError("cannot take a basis of all-zero generators")
    if any(f._degree == 0 for f in G):
        return _unit_basis(ring, order)

    key = order.key
    heap: list = []

    def push_pairs(upto: int, j: int):
        lj = G[j].leading_monomial(order)
        for i in range(upto):
            li = G[i].leading_monomial(order)
            l = li.lcm(lj)
            if l.degree == li.degree + lj.degree:
                continue  # coprime leading monomials: S-pair reduces to zero
            heapq.heappush(heap, (l.degree, key(l), i, j))

    for j in range(1, len(G)):
        push_pairs(j, j)

    pops = 0
    while heap:
        pops += 1
        if pops > max_pairs:
            raise CapExceeded(
                f"Buchberger exceeded {max_pairs} S-pairs", details={"basis_size": len(G)}
            )
        _, _, i, j = heapq.heappop(heap)
        r = _nf(_spoly(G[i], G[j], order), G, order)
        if r.is_zero:
            continue
        if r._degree == 0:
            return _unit_basis(ring, order)
        G.append(r.monic(order))
        push_pairs(len(G) - 1, len(G) - 1)

    result = GroebnerBasis(
        _sorted_basis(_interreduce(_minimalize(G, order), order), order),
        order,
        reduced=True,
    )
    if check:
        _check_buchberger(result)
    return result


def gbd(F, order: TermOrder = GREVLEX, **caps) -> int:
    """Maximum degree appearing in the reduced Groebner basis."""
    return buchberger_reduced(F, order, **caps).max_degree


def ideal_dim_le(G: GroebnerBasis, e: int) -> int:
    """Number of monomials of degree <= e divisible by some leading monomial.

    For a degree-compatible order this equals the dimension of the space of
    ideal elements of degree <= e.
    """
    if e < 0:
        return 0
    n = G.polys[0].ring.nvars
    lms = G.leading_monomials()
    return sum(
        1
        for m in enumerate_monomials(n, e, "at_most", G.order)
        if any(l.divides(m) for l in lms)
    )


@dataclass
class MutantStats:
    """Counters from one mutant-queue elimination run."""

    bound: int  # degree cap d_reg + 1
    n_monomials: int  # N = number of monomials of degree <= bound
    steps: int = 0  # queue elements processed
    adoptions: int = 0  # rows adopted into the echelon basis (seeds included)
    seed_rows: int = 0
    field_mults: int = 0


def mutantxl_gb(
    F: PolySystem, order: TermOrder = GREVLEX, *, max_rows: int = 200_000
) -> tuple[GroebnerBasis, MutantStats]:
    """Groebner basis via echelon closure at degree d_reg + 1.

    Requires max deg(F) <= d_reg(F) < infinity (PreconditionError otherwise;
    interreduce_tops can repair many violating systems). Echelonizes F, then
    repeatedly reduces queued monomial multiples, adopting every new pivot
    row and queueing its bounded multiples in turn, until the queue drains
    or the basis fills all N monomials. The reduced basis is extracted from
    the rows whose leading monomials minimally generate the pivot ideal.
    """
    from .invariants import degree_of_regularity  # deferred: avoids an import cycle

    d_reg = degree_of_regularity(F)
    if not isinstance(d_reg, int):
        raise PreconditionError(
            "mutant elimination needs a finite regularity degree; "
            "interreduce the system first (interreduce_tops)"
        )
    if F.max_degree() > d_reg:
        raise PreconditionError(
            f"mutant elimination needs max deg(F) <= {d_reg}; "
            "interreduce the system first (interreduce_tops)"
        )

    ring = F.ring
    n = ring.nvars
    bound = d_reg + 1
    stats = MutantStats(bound=bound, n_monomials=math.comb(n + bound, n))
    basis = RowBasis(ring, order)
    adopted: list[Polynomial] = []
    heap: list = []  # (product degree, multiplier key, row id, multiplier)
    key = order.key

    def multipliers(max_deg: int):
        if max_deg < 1:
            return []
        mons = enumerate_monomials(n, max_deg, "at_most", order)
        mons.reverse()
        return mons[1:]  # degree >= 1

    def adopt(residual: Polynomial):
        rid = len(adopted)
        adopted.append(residual)
        stats.adoptions += 1
        if basis.span_dim() > max_rows:
            stats.field_mults = basis.mult_count
            raise CapExceeded(f"elimination exceeded {max_rows} rows", stats=stats)
        for m in multipliers(bound - residual._degree):
            heapq.heappush(heap, (residual._degree + m.degree, key(m), rid, m))

    for f in F:
        residual = basis.insert_reduce(f)
        if residual:
            adopt(residual)
    stats.seed_rows = len(adopted)

    while heap and basis.span_dim() < stats.n_monomials:
        _, _, rid, m = heapq.heappop(heap)
        stats.steps += 1
        residual = basis.insert_reduce(adopted[rid].mul_monomial(m))
        if residual:
            adopt(residual)

    stats.field_mults = basis.mult_count
    minimal = _minimalize(basis.rows, order)
    result = GroebnerBasis(
        _sorted_basis(_interreduce(minimal, order), order), order, reduced=True
    )
    return result, stats
