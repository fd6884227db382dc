import random

import pytest

from soldeg import (
    GREVLEX,
    GRLEX,
    ColumnIndex,
    DimensionError,
    DomainError,
    Monomial,
    Polynomial,
    Ring,
    RowBasis,
    enumerate_monomials,
    gen_fk,
    v_space_closure,
)

from helpers import mk_polys

RING = Ring(101, ("x", "y"))


def poly(terms):
    return RING.poly(terms)


def test_first_insertion_is_its_own_residual():
    basis = RowBasis(RING)
    f = poly({(2, 0): 1, (0, 1): 1})
    residual = basis.insert_reduce(f)
    assert residual == f
    assert basis.rows == [f]


def test_scalar_multiple_reduces_to_zero():
    ring5 = Ring(5, ("x", "y"))
    basis = RowBasis(ring5)
    basis.insert_reduce(ring5.poly({(2, 0): 1, (0, 1): 1}))
    residual = basis.insert_reduce(ring5.poly({(2, 0): 2, (0, 1): 2}))
    assert residual.is_zero
    assert basis.span_dim() == 1


def test_insert_reduce_hand_elimination():
    basis = RowBasis(RING)
    basis.insert_reduce(poly({(2, 0): 1}))
    basis.insert_reduce(poly({(1, 1): 1}))
    residual = basis.insert_reduce(poly({(2, 0): 1, (1, 1): 1, (0, 2): 1}))
    assert residual == poly({(0, 2): 1})
    assert basis.pivots == {Monomial((2, 0)), Monomial((1, 1)), Monomial((0, 2))}


def test_insert_reduce_makes_residual_monic():
    basis = RowBasis(RING)
    residual = basis.insert_reduce(poly({(1, 0): 7, (0, 0): 14}))
    assert residual == poly({(1, 0): 1, (0, 0): 2})


def test_span_contains_zero_and_combinations():
    basis = RowBasis(RING)
    x = poly({(1, 0): 1})
    y = poly({(0, 1): 1})
    basis.insert_reduce(x)
    basis.insert_reduce(y)
    assert basis.span_contains(RING.zero())
    assert basis.span_contains(x.scaled(3) - y.scaled(2))
    assert not basis.span_contains(poly({(1, 1): 1}))


def test_span_contains_family_example():
    F = gen_fk(2, 101)
    V = v_space_closure(F, 2)
    assert not V.span_contains(RING.poly({(1, 0): 1}))
    assert not V.span_contains(RING.poly({(0, 1): 1}))


def test_span_dim_examples():
    assert RowBasis(RING).span_dim() == 0
    F = gen_fk(2, 101)
    assert v_space_closure(F, 2).span_dim() == 3
    assert v_space_closure(F, 3).span_dim() == 9


def test_ring_mismatch_raises():
    basis = RowBasis(RING)
    with pytest.raises(DimensionError):
        basis.insert_reduce(Ring(7, ("x", "y")).one())


def _random_polys(rng, ring, count, deg=3):
    mons = enumerate_monomials(ring.nvars, deg, "at_most")
    out = []
    while len(out) < count:
        terms = {m: rng.randrange(0, ring.p) for m in mons if rng.random() < 0.5}
        f = Polynomial(ring, terms)
        if not f.is_zero:
            out.append(f)
    return out


@pytest.mark.parametrize("seed", range(6))
@pytest.mark.parametrize("order", [GREVLEX, GRLEX])
def test_rref_invariants_after_random_insertions(seed, order):
    rng = random.Random(seed)
    basis = RowBasis(RING, order)
    polys = _random_polys(rng, RING, 12)
    inserted = 0
    last_dim = 0
    for f in polys:
        basis.insert_reduce(f)
        inserted += 1
        assert last_dim <= basis.span_dim() <= inserted
        last_dim = basis.span_dim()
    rows = basis.rows
    pivots = [r.leading_monomial(order) for r in rows]
    # pivots pairwise distinct, monic, and absent from every other row
    assert len(set(pivots)) == len(pivots)
    for r, pv in zip(rows, pivots):
        assert r.terms[pv] == 1
        for other in rows:
            if other is not r:
                assert pv not in other.terms
    # rows sorted by descending pivot
    assert all(order.compare(a, b) == 1 for a, b in zip(pivots, pivots[1:]))
    # the span contains every row and random combinations of rows
    for r in rows:
        assert basis.span_contains(r)
    combo = RING.zero()
    for r in rows:
        combo = combo + r.scaled(rng.randrange(1, RING.p))
    assert basis.span_contains(combo)


@pytest.mark.parametrize("seed", range(5))
def test_insertion_order_independence(seed):
    rng = random.Random(100 + seed)
    polys = _random_polys(rng, RING, 10)
    one = RowBasis(RING)
    for f in polys:
        one.insert_reduce(f)
    shuffled = polys[:]
    rng.shuffle(shuffled)
    two = RowBasis(RING)
    for f in shuffled:
        two.insert_reduce(f)
    assert one.rows == two.rows


def test_reduce_leaves_basis_unchanged():
    basis = RowBasis(RING)
    basis.insert_reduce(poly({(2, 0): 1, (0, 1): 5}))
    before = basis.rows
    r = basis.reduce(poly({(2, 0): 3, (1, 0): 1}))
    assert r == poly({(1, 0): 1, (0, 1): -15})
    assert basis.rows == before


# --- column index -----------------------------------------------------------


def test_column_index_lookup_is_inverse():
    cols = ColumnIndex.for_degree(2, 3, GREVLEX)
    assert len(cols) == 10
    for i, m in enumerate(cols):
        assert cols.position(m) == i
    assert Monomial((1, 1)) in cols
    with pytest.raises(DomainError):
        cols.position(Monomial((9, 9)))


def test_column_index_rejects_unsorted():
    with pytest.raises(DomainError):
        ColumnIndex([Monomial((0, 1)), Monomial((1, 0))], GREVLEX)


def test_to_dense_matches_rows():
    f1, f2 = mk_polys("p=101; vars=x,y", "x^2 + 3*y", "x*y + 1")
    basis = RowBasis(RING)
    basis.insert_reduce(f1)
    basis.insert_reduce(f2)
    cols = ColumnIndex.for_degree(2, 2, GREVLEX)
    dense = basis.to_dense(cols)
    assert len(dense) == 2
    for vec, row in zip(dense, basis.rows):
        rebuilt = Polynomial(RING, {cols[i]: c for i, c in enumerate(vec) if c})
        assert rebuilt == row
