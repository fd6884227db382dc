"""Prime fields, monomials, term orders, and sparse multivariate polynomials.

Every value in this module is immutable after construction and safe to share
between threads. Coefficients are canonical ints in [0, p); the zero
polynomial is the empty term map and its degree is the MINUS_INFINITY
sentinel, which deliberately does not compare against integers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import DimensionError, DomainError

MAX_VARS = 16

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z_0-9]*$")


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; the base set {2,3,5,7} is exact below 3_215_031_751."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7):
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """GF(p) for a prime 2 <= p < 2**31. Elements are canonical ints in [0, p)."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int) or isinstance(p, bool):
            raise DomainError(f"field modulus must be an int, got {p!r}")
        if not 2 <= p < 2**31:
            raise DomainError(f"field modulus must satisfy 2 <= p < 2**31, got {p}")
        if not is_prime(p):
            raise DomainError(f"field modulus {p} is not prime")
        self.p = p

    def normalize(self, a: int) -> int:
        return a % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise DomainError("zero is not invertible")
        return pow(a, -1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class Monomial:
    """Exponent vector of a monic monomial. Immutable and hashable; n <= MAX_VARS."""

    __slots__ = ("exps", "degree", "_hash")

    def __init__(self, exps: Iterable[int]):
        exps = tuple(exps)
        if not 1 <= len(exps) <= MAX_VARS:
            raise DimensionError(
                f"monomials carry 1..{MAX_VARS} exponents, got {len(exps)}"
            )
        if any(e < 0 for e in exps):
            raise DomainError(f"negative exponent in {exps}")
        self.exps = exps
        self.degree = sum(exps)
        self._hash = hash(exps)

    @classmethod
    def unit(cls, n: int) -> Monomial:
        return cls((0,) * n)

    @classmethod
    def variable(cls, n: int, i: int) -> Monomial:
        exps = [0] * n
        exps[i] = 1
        return cls(exps)

    @property
    def is_unit(self) -> bool:
        return self.degree == 0

    def __mul__(self, other: Monomial) -> Monomial:
        a, b = self.exps, other.exps
        if len(a) != len(b):
            raise DimensionError("variable counts differ")
        # hot path: products of valid monomials need no re-validation
        m = object.__new__(Monomial)
        m.exps = tuple(x + y for x, y in zip(a, b))
        m.degree = self.degree + other.degree
        m._hash = hash(m.exps)
        return m

    def __truediv__(self, other: Monomial) -> Monomial:
        a, b = self.exps, other.exps
        if len(a) != len(b):
            raise DimensionError("variable counts differ")
        return Monomial(tuple(x - y for x, y in zip(a, b)))

    def divides(self, other: Monomial) -> bool:
        a, b = self.exps, other.exps
        if len(a) != len(b):
            raise DimensionError("variable counts differ")
        return all(x <= y for x, y in zip(a, b))

    def lcm(self, other: Monomial) -> Monomial:
        a, b = self.exps, other.exps
        if len(a) != len(b):
            raise DimensionError("variable counts differ")
        return Monomial(tuple(max(x, y) for x, y in zip(a, b)))

    def __eq__(self, other):
        return isinstance(other, Monomial) and other.exps == self.exps

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Monomial{self.exps}"


class TermOrder:
    """Degree-compatible monomial order with precedence x1 > x2 > ... > xn.

    Only 'grevlex' and 'grlex' are accepted: every statement this library
    checks assumes degree compatibility, so plain lex is rejected outright.
    """

    __slots__ = ("kind",)

    KINDS = ("grevlex", "grlex")

    def __init__(self, kind: str):
        if kind not in self.KINDS:
            raise DomainError(
                f"term order must be degree-compatible ({'/'.join(self.KINDS)}), got {kind!r}"
            )
        self.kind = kind

    def key(self, m: Monomial):
        """Sort key: key(a) < key(b) iff a < b under this order."""
        if self.kind == "grevlex":
            return (m.degree, tuple(-e for e in reversed(m.exps)))
        return (m.degree, m.exps)

    def compare(self, a: Monomial, b: Monomial) -> int:
        """-1, 0, or +1 as a <, =, > b. Raises DimensionError on arity mismatch."""
        if len(a.exps) != len(b.exps):
            raise DimensionError("variable counts differ")
        ka, kb = self.key(a), self.key(b)
        if ka < kb:
            return -1
        if ka > kb:
            return 1
        return 0

    def __eq__(self, other):
        return isinstance(other, TermOrder) and other.kind == self.kind

    def __hash__(self):
        return hash(("TermOrder", self.kind))

    def __repr__(self):
        return f"TermOrder({self.kind!r})"


GREVLEX = TermOrder("grevlex")
GRLEX = TermOrder("grlex")


class _MinusInfinity:
    """Degree of the zero polynomial. Not comparable against integers on purpose."""

    __slots__ = ()

    def __repr__(self):
        return "-infinity"


MINUS_INFINITY = _MinusInfinity()


class Ring:
    """Polynomial ring GF(p)[x1, ..., xn] with named variables (n <= MAX_VARS)."""

    __slots__ = ("field", "names")

    def __init__(self, p: int, names: Sequence[str] | None = None, *, nvars: int | None = None):
        self.field = PrimeField(p)
        if names is None:
            if nvars is None:
                raise DomainError("give variable names or a variable count")
            names = tuple(f"x{i + 1}" for i in range(nvars))
        names = tuple(names)
        if nvars is not None and nvars != len(names):
            raise DimensionError(f"nvars={nvars} disagrees with {len(names)} names")
        if not 1 <= len(names) <= MAX_VARS:
            raise DimensionError(f"need 1..{MAX_VARS} variables, got {len(names)}")
        for name in names:
            if not _NAME_RE.match(name):
                raise DomainError(f"bad variable name {name!r}")
        if len(set(names)) != len(names):
            raise DomainError(f"duplicate variable names in {names}")
        self.names = names

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def nvars(self) -> int:
        return len(self.names)

    def monomial(self, *exps: int) -> Monomial:
        if len(exps) != self.nvars:
            raise DimensionError(f"expected {self.nvars} exponents, got {len(exps)}")
        return Monomial(exps)

    def unit_monomial(self) -> Monomial:
        return Monomial.unit(self.nvars)

    def poly(self, terms) -> Polynomial:
        """Build a polynomial from {Monomial or exponent tuple: coeff}."""
        fixed = {}
        for m, c in (terms.items() if isinstance(terms, dict) else terms):
            if not isinstance(m, Monomial):
                m = Monomial(m)
            fixed[m] = fixed.get(m, 0) + c
        return Polynomial(self, fixed)

    def constant(self, c: int) -> Polynomial:
        return Polynomial(self, {self.unit_monomial(): c})

    def one(self) -> Polynomial:
        return self.constant(1)

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def variable(self, i: int) -> Polynomial:
        return Polynomial(self, {Monomial.variable(self.nvars, i): 1})

    def variables(self) -> tuple[Polynomial, ...]:
        return tuple(self.variable(i) for i in range(self.nvars))

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and other.field == self.field
            and other.names == self.names
        )

    def __hash__(self):
        return hash((self.field, self.names))

    def __repr__(self):
        return f"Ring(GF({self.p}), {', '.join(self.names)})"


@dataclass(frozen=True)
class Term:
    """A nonzero coefficient attached to a monomial."""

    coeff: int
    monomial: Monomial

    def __post_init__(self):
        if self.coeff == 0:
            raise DomainError("terms carry nonzero coefficients")


def render_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for i, e in enumerate(m.exps):
        if e == 1:
            parts.append(names[i])
        elif e > 1:
            parts.append(f"{names[i]}^{e}")
    return "*".join(parts) if parts else "1"


class Polynomial:
    """Sparse polynomial over GF(p): a map monomial -> nonzero coefficient."""

    __slots__ = ("ring", "terms", "_degree")

    def __init__(self, ring: Ring, terms):
        fixed: dict[Monomial, int] = {}
        p = ring.p
        n = ring.nvars
        for m, c in (terms.items() if isinstance(terms, dict) else terms):
            if len(m.exps) != n:
                raise DimensionError(f"monomial {m!r} does not live in {ring!r}")
            c = (fixed.get(m, 0) + c) % p
            if c:
                fixed[m] = c
            else:
                fixed.pop(m, None)
        self.ring = ring
        self.terms = fixed
        self._degree = max(m.degree for m in fixed) if fixed else None

    @classmethod
    def _raw(cls, ring: Ring, terms: dict[Monomial, int]) -> Polynomial:
        # internal fast path: caller guarantees canonical nonzero coefficients
        self = object.__new__(cls)
        self.ring = ring
        self.terms = terms
        self._degree = max(m.degree for m in terms) if terms else None
        return self

    @classmethod
    def zero_poly(cls, ring: Ring) -> Polynomial:
        return cls._raw(ring, {})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self):
        """Total degree; MINUS_INFINITY for the zero polynomial."""
        return self._degree if self._degree is not None else MINUS_INFINITY

    def _check_same_ring(self, other: Polynomial):
        if other.ring != self.ring:
            raise DimensionError(f"mixed rings: {self.ring!r} vs {other.ring!r}")

    def __add__(self, other: Polynomial) -> Polynomial:
        self._check_same_ring(other)
        p = self.ring.p
        res = dict(self.terms)
        for m, c in other.terms.items():
            v = (res.get(m, 0) + c) % p
            if v:
                res[m] = v
            else:
                res.pop(m, None)
        return Polynomial._raw(self.ring, res)

    def __sub__(self, other: Polynomial) -> Polynomial:
        self._check_same_ring(other)
        p = self.ring.p
        res = dict(self.terms)
        for m, c in other.terms.items():
            v = (res.get(m, 0) - c) % p
            if v:
                res[m] = v
            else:
                res.pop(m, None)
        return Polynomial._raw(self.ring, res)

    def __neg__(self) -> Polynomial:
        p = self.ring.p
        return Polynomial._raw(self.ring, {m: p - c for m, c in self.terms.items()})

    def scaled(self, c: int) -> Polynomial:
        p = self.ring.p
        c %= p
        if c == 0:
            return Polynomial.zero_poly(self.ring)
        return Polynomial._raw(self.ring, {m: v * c % p for m, v in self.terms.items()})

    def mul_monomial(self, m: Monomial, coeff: int = 1) -> Polynomial:
        p = self.ring.p
        coeff %= p
        if coeff == 0:
            return Polynomial.zero_poly(self.ring)
        if coeff == 1:
            return Polynomial._raw(self.ring, {mm * m: c for mm, c in self.terms.items()})
        return Polynomial._raw(
            self.ring, {mm * m: c * coeff % p for mm, c in self.terms.items()}
        )

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scaled(other)
        if isinstance(other, Monomial):
            return self.mul_monomial(other)
        self._check_same_ring(other)
        p = self.ring.p
        res: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                v = (res.get(m, 0) + c1 * c2) % p
                if v:
                    res[m] = v
                else:
                    res.pop(m, None)
        return Polynomial._raw(self.ring, res)

    def __rmul__(self, other):
        if isinstance(other, (int, Monomial)):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, e: int) -> Polynomial:
        if not isinstance(e, int) or e < 0:
            raise DomainError("polynomial powers take non-negative int exponents")
        result = self.ring.one()
        for _ in range(e):
            result = result * self
        return result

    def top(self) -> Polynomial:
        """Homogeneous part of largest degree."""
        if self.is_zero:
            raise DomainError("the zero polynomial has no top part")
        d = self._degree
        return Polynomial._raw(
            self.ring, {m: c for m, c in self.terms.items() if m.degree == d}
        )

    def leading_monomial(self, order: TermOrder) -> Monomial:
        if self.is_zero:
            raise DomainError("the zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_coeff(self, order: TermOrder) -> int:
        return self.terms[self.leading_monomial(order)]

    def leading_term(self, order: TermOrder) -> Term:
        m = self.leading_monomial(order)
        return Term(self.terms[m], m)

    def monic(self, order: TermOrder) -> Polynomial:
        lc = self.leading_coeff(order)
        if lc == 1:
            return self
        return self.scaled(self.ring.field.inv(lc))

    def render(self, order: TermOrder | None = None) -> str:
        if not self.terms:
            return "0"
        order = order if order is not None else GREVLEX
        names = self.ring.names
        parts = []
        for m in sorted(self.terms, key=order.key, reverse=True):
            c = self.terms[m]
            if m.is_unit:
                parts.append(str(c))
            elif c == 1:
                parts.append(render_monomial(m, names))
            else:
                parts.append(f"{c}*{render_monomial(m, names)}")
        return " + ".join(parts)

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and other.ring == self.ring
            and other.terms == self.terms
        )

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Polynomial({self.render()!r})"


class PolySystem:
    """Non-empty ordered family of nonzero polynomials over one ring."""

    __slots__ = ("ring", "polys")

    def __init__(self, ring: Ring, polys: Iterable[Polynomial]):
        polys = tuple(polys)
        if not polys:
            raise DomainError("a polynomial system must be non-empty")
        for f in polys:
            if f.ring != ring:
                raise DimensionError("system members must share one ring")
            if f.is_zero:
                raise DomainError("system members must be nonzero")
        self.ring = ring
        self.polys = polys

    def degrees(self) -> tuple[int, ...]:
        return tuple(f._degree for f in self.polys)

    def max_degree(self) -> int:
        return max(self.degrees())

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.polys)

    def __len__(self) -> int:
        return len(self.polys)

    def __getitem__(self, i: int) -> Polynomial:
        return self.polys[i]

    def __eq__(self, other):
        return (
            isinstance(other, PolySystem)
            and other.ring == self.ring
            and other.polys == self.polys
        )

    def __repr__(self):
        return f"PolySystem([{'; '.join(f.render() for f in self.polys)}])"


def _exponents_exactly(n: int, d: int) -> Iterator[tuple[int, ...]]:
    if n == 1:
        yield (d,)
        return
    for e in range(d + 1):
        for rest in _exponents_exactly(n - 1, d - e):
            yield (e,) + rest


def enumerate_monomials(
    n: int, d: int, mode: str = "exactly", order: TermOrder = GREVLEX
) -> list[Monomial]:
    """All monic monomials in n variables, sorted descending under `order`.

    mode="exactly" lists degree d (count C(d+n-1, d)); mode="at_most" lists
    degrees 0..d (count C(n+d, n)).
    """
    if n < 1:
        raise DomainError("need at least one variable")
    if d < 0:
        raise DomainError("degree bound must be non-negative")
    if mode == "exactly":
        exps = _exponents_exactly(n, d)
    elif mode == "at_most":
        exps = (e for dd in range(d + 1) for e in _exponents_exactly(n, dd))
    else:
        raise DomainError(f"mode must be 'exactly' or 'at_most', got {mode!r}")
    mons = [Monomial(e) for e in exps]
    mons.sort(key=order.key, reverse=True)
    return mons
