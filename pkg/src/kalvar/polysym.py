"""Sparse multivariate polynomial arithmetic over exact coefficient
domains, the structured matrix attached to a Kalman variety, its minors,
and the trace-minor identity.

Monomials are exponent tuples over a fixed ring; term order is graded
reverse lexicographic throughout, which fixes serialization and the
column order of the finite-field linear algebra downstream.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Iterable, Sequence

from .report import CheckReport


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Rationals:
    """Exact rational coefficients (Fraction under the hood)."""

    name = "QQ"

    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x) -> Fraction:
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def power(self, a, e: int):
        return Fraction(a) ** e

    def is_zero(self, a) -> bool:
        return a == 0

    def render(self, a) -> str:
        return str(a)


class PrimeField:
    """Integers mod a prime p, elements stored as ints in [0, p)."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1 % p

    def coerce(self, x) -> int:
        if isinstance(x, Fraction):
            num = x.numerator % self.p
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return num * pow(den, self.p - 2, self.p) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def power(self, a, e: int):
        return pow(a, e, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def rand(self, rng):
        return rng.randrange(self.p)

    def rand_nonzero(self, rng):
        return rng.randrange(1, self.p)

    def render(self, a) -> str:
        return str(a % self.p)


QQ = Rationals()


def grevlex_key(exp: tuple[int, ...]) -> tuple:
    """Sort key putting monomials in graded reverse lexicographic
    descending order when sorted ascending by this key."""
    return (-sum(exp), tuple(reversed(exp)))


class PolyRing:
    """A polynomial ring: variable count, coefficient domain, names."""

    def __init__(self, nvars: int, domain=QQ, names: Callable[[int], str] | Sequence[str] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        self.nvars = nvars
        self.domain = domain
        if names is None:
            self._name = lambda k: f"x{k}"
        elif callable(names):
            self._name = names
        else:
            names = list(names)
            if len(names) != nvars:
                raise ValueError("wrong number of names")
            self._name = lambda k: names[k]

    def var_name(self, k: int) -> str:
        return self._name(k)

    def compatible(self, other: "PolyRing") -> bool:
        return self is other or (self.nvars == other.nvars and self.domain is other.domain)

    def zero(self) -> "SparsePoly":
        return SparsePoly(self, {})

    def const(self, c) -> "SparsePoly":
        c = self.domain.coerce(c)
        if self.domain.is_zero(c):
            return self.zero()
        return SparsePoly(self, {(0,) * self.nvars: c})

    def one(self) -> "SparsePoly":
        return self.const(1)

    def var(self, k: int) -> "SparsePoly":
        if not 0 <= k < self.nvars:
            raise ValueError(f"variable index {k} out of range")
        exp = tuple(1 if i == k else 0 for i in range(self.nvars))
        return SparsePoly(self, {exp: self.domain.one})

    def monomial(self, exp: Sequence[int], c=1) -> "SparsePoly":
        exp = tuple(int(e) for e in exp)
        if len(exp) != self.nvars or any(e < 0 for e in exp):
            raise ValueError(f"bad exponent vector {exp!r}")
        c = self.domain.coerce(c)
        if self.domain.is_zero(c):
            return self.zero()
        return SparsePoly(self, {exp: c})


class SparsePoly:
    """Immutable-by-convention sparse polynomial: {exponent tuple: coeff}."""

    __slots__ = ("ring", "terms", "_compiled")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._compiled = None

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def _check_ring(self, other: "SparsePoly") -> None:
        if not self.ring.compatible(other.ring):
            raise ValueError("mixed rings")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        self._check_ring(other)
        dom = self.ring.domain
        out = dict(self.terms)
        for e, c in other.terms.items():
            acc = dom.add(out.get(e, dom.zero), c)
            if dom.is_zero(acc):
                out.pop(e, None)
            else:
                out[e] = acc
        return SparsePoly(self.ring, out)

    def __neg__(self):
        dom = self.ring.domain
        return SparsePoly(self.ring, {e: dom.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = self.ring.domain.coerce(other)
            dom = self.ring.domain
            if dom.is_zero(c):
                return self.ring.zero()
            return SparsePoly(self.ring, {e: dom.mul(v, c) for e, v in self.terms.items()})
        self._check_ring(other)
        dom = self.ring.domain
        out: dict = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                acc = dom.add(out.get(e, dom.zero), dom.mul(ca, cb))
                if dom.is_zero(acc):
                    out.pop(e, None)
                else:
                    out[e] = acc
        return SparsePoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return (
            isinstance(other, SparsePoly)
            and self.ring.compatible(other.ring)
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((
            self.ring.nvars,
            id(self.ring.domain),
            tuple(sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]))),
        ))

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]))

    def evaluate(self, point: Sequence):
        """Value at a point given as one domain element per variable."""
        if len(point) != self.ring.nvars:
            raise ValueError("point has wrong length")
        dom = self.ring.domain
        if self._compiled is None:
            self._compiled = [
                (c, tuple((k, e) for k, e in enumerate(exp) if e))
                for exp, c in self.sorted_terms()
            ]
        total = dom.zero
        for c, powers in self._compiled:
            acc = c
            for k, e in powers:
                acc = dom.mul(acc, dom.power(point[k], e))
            total = dom.add(total, acc)
        return total

    def map_domain(self, ring: PolyRing) -> "SparsePoly":
        """Recoerce coefficients into another ring with the same nvars."""
        if ring.nvars != self.ring.nvars:
            raise ValueError("variable count mismatch")
        dom = ring.domain
        out: dict = {}
        for e, c in self.terms.items():
            v = dom.coerce(c)
            if not dom.is_zero(v):
                out[e] = v
        return SparsePoly(ring, out)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        dom = self.ring.domain
        bits = []
        for exp, c in self.sorted_terms():
            factors = [dom.render(c)]
            for k, e in enumerate(exp):
                if e:
                    factors.append(f"{self.ring.var_name(k)}^{e}")
            bits.append("*".join(factors))
        return " + ".join(bits)

    def __repr__(self) -> str:
        return f"SparsePoly({self})"


@dataclass(frozen=True)
class BlockLayout:
    """Row-major variable layout for End(V) with the invariant flag
    blocks: variable x[i][j] (1-based) has index (i-1)*n + (j-1).  The
    top-left d x d block acts on L, the bottom-left (n-d) x d block maps
    L into the complement."""

    d: int
    n: int

    def __post_init__(self) -> None:
        if not 1 <= self.d < self.n:
            raise ValueError(f"need 1 <= d < n, got d={self.d}, n={self.n}")

    def var_index(self, i: int, j: int) -> int:
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise ValueError(f"matrix position ({i},{j}) out of range")
        return (i - 1) * self.n + (j - 1)

    def var_name(self, k: int) -> str:
        i, j = divmod(k, self.n)
        return f"x[{i + 1}][{j + 1}]"

    def ring(self, domain=QQ) -> PolyRing:
        return PolyRing(self.n * self.n, domain, self.var_name)

    def alpha(self, ring: PolyRing) -> "PolyMatrix":
        """Top-left d x d block of generic variables."""
        d = self.d
        return PolyMatrix([
            [ring.var(self.var_index(i, j)) for j in range(1, d + 1)]
            for i in range(1, d + 1)
        ])

    def gamma(self, ring: PolyRing) -> "PolyMatrix":
        """Bottom-left (n-d) x d block of generic variables."""
        d, n = self.d, self.n
        return PolyMatrix([
            [ring.var(self.var_index(i, j)) for j in range(1, d + 1)]
            for i in range(d + 1, n + 1)
        ])

    def block_of_row(self, row: int) -> int:
        """Which stacked block a global row of the reduced matrix is in."""
        return row // (self.n - self.d)


class PolyMatrix:
    """Dense matrix of SparsePoly entries."""

    def __init__(self, entries: Sequence[Sequence[SparsePoly]]):
        entries = [list(row) for row in entries]
        if not entries or not entries[0]:
            raise ValueError("matrix must be nonempty")
        width = len(entries[0])
        if any(len(row) != width for row in entries):
            raise ValueError("ragged rows")
        self.entries = entries
        self.nrows = len(entries)
        self.ncols = width
        self.ring = entries[0][0].ring

    def __getitem__(self, rc: tuple[int, int]) -> SparsePoly:
        r, c = rc
        return self.entries[r][c]

    def matmul(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = self.ring.zero()
                for k in range(self.ncols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return PolyMatrix(out)

    def stack(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ncols != other.ncols:
            raise ValueError("shape mismatch")
        return PolyMatrix(self.entries + other.entries)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix([[self.entries[r][c] for c in cols] for r in rows])

    def degrees(self) -> list[list[int]]:
        return [[e.degree() for e in row] for row in self.entries]

    def evaluate(self, point: Sequence) -> list[list]:
        return [[e.evaluate(point) for e in row] for row in self.entries]

    def replace_rows(self, rows: Iterable[int], source: "PolyMatrix") -> "PolyMatrix":
        if source.nrows != self.nrows or source.ncols != self.ncols:
            raise ValueError("shape mismatch")
        rows = set(rows)
        return PolyMatrix([
            (source.entries[i] if i in rows else self.entries[i])
            for i in range(self.nrows)
        ])

    def to_dict(self) -> dict:
        return {
            "rows": self.nrows,
            "cols": self.ncols,
            "entries": [[str(e) for e in row] for row in self.entries],
        }


def _det(entries: list[list[SparsePoly]], ring: PolyRing) -> SparsePoly:
    k = len(entries)
    if k == 1:
        return entries[0][0]
    # expand along the row with fewest nonzero entries
    r = min(range(k), key=lambda i: sum(0 if e.is_zero() else 1 for e in entries[i]))
    total = ring.zero()
    cols = list(range(k))
    for pos, c in enumerate(cols):
        e = entries[r][c]
        if e.is_zero():
            continue
        sub = [
            [entries[i][j] for j in cols if j != c]
            for i in range(k)
            if i != r
        ]
        cof = e * _det(sub, ring)
        total = total + cof if (r + pos) % 2 == 0 else total - cof
    return total


def determinant(m: PolyMatrix) -> SparsePoly:
    if m.nrows != m.ncols:
        raise ValueError("determinant of non-square matrix")
    return _det(m.entries, m.ring)


def minor(m: PolyMatrix, rows: Sequence[int], cols: Sequence[int]) -> SparsePoly:
    """Determinant of the square submatrix on the given rows and columns
    (0-based), by cofactor expansion along the sparsest row."""
    rows, cols = tuple(rows), tuple(cols)
    if len(rows) != len(cols):
        raise ValueError("minor needs equally many rows and columns")
    if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
        raise ValueError("repeated row or column index")
    if not rows:
        return m.ring.one()
    return determinant(m.submatrix(rows, cols))


def reduced_kalman_matrix(d: int, n: int, domain=QQ) -> PolyMatrix:
    """The stacked d(n-d) x d matrix whose block r is gamma * alpha^r,
    rows of block r homogeneous of degree r + 1."""
    layout = BlockLayout(d, n)
    ring = layout.ring(domain)
    alpha = layout.alpha(ring)
    gamma = layout.gamma(ring)
    block = gamma
    stacked = gamma
    for _ in range(1, d):
        block = block.matmul(alpha)
        stacked = stacked.stack(block)
    return stacked


def row_compositions(d: int, n: int) -> list[tuple[int, ...]]:
    """All ways to pick d rows from the stacked blocks: compositions
    (a_0, ..., a_{d-1}) with sum d and 0 <= a_r <= n - d."""
    out = []
    for comp in itertools.product(range(min(d, n - d) + 1), repeat=d):
        if sum(comp) == d:
            out.append(comp)
    return out


def enumerate_minors(
    d: int, n: int, composition: Sequence[int], matrix: PolyMatrix | None = None
) -> list[tuple[tuple[int, ...], SparsePoly]]:
    """All maximal minors of the reduced matrix taking composition[r]
    rows from block r, with their global row index sets.  The count is
    the product of binomial(n-d, composition[r])."""
    composition = tuple(composition)
    if len(composition) != d or sum(composition) != d:
        raise ValueError(f"composition must have {d} entries summing to {d}")
    if any(a < 0 or a > n - d for a in composition):
        raise ValueError(f"composition entries must lie in [0, {n - d}]")
    if matrix is None:
        matrix = reduced_kalman_matrix(d, n)
    per_block = [
        itertools.combinations(range(r * (n - d), (r + 1) * (n - d)), a)
        for r, a in enumerate(composition)
    ]
    cols = tuple(range(d))
    out = []
    for pick in itertools.product(*per_block):
        rows = tuple(itertools.chain.from_iterable(pick))
        out.append((rows, minor(matrix, rows, cols)))
    assert len(out) == prod_comb(d, n, composition)
    return out


def prod_comb(d: int, n: int, composition: Sequence[int]) -> int:
    out = 1
    for a in composition:
        out *= comb(n - d, a)
    return out


def all_top_minors(d: int, n: int, domain=QQ) -> list[tuple[tuple[int, ...], SparsePoly]]:
    """Every d x d minor of the reduced matrix, grouped by composition,
    in deterministic order."""
    matrix = reduced_kalman_matrix(d, n, domain)
    out = []
    for comp in row_compositions(d, n):
        out.extend(enumerate_minors(d, n, comp, matrix))
    return out


def wedge_trace(m: PolyMatrix, i: int) -> SparsePoly:
    """Trace of the i-th exterior power: sum of the principal i x i
    minors."""
    if m.nrows != m.ncols:
        raise ValueError("wedge trace needs a square matrix")
    if not 0 <= i <= m.nrows:
        raise ValueError(f"need 0 <= i <= {m.nrows}")
    total = m.ring.zero()
    for rows in itertools.combinations(range(m.nrows), i):
        total = total + minor(m, rows, rows)
    return total


def trace_identity_check(d: int, i: int) -> CheckReport:
    """Verify, on fully generic symbolic matrices, that the trace of the
    i-th exterior power of one matrix times the determinant of another
    equals the sum over size-i row sets of the determinant after
    replacing those rows with the corresponding rows of the product."""
    if not 1 <= i <= d:
        raise ValueError(f"need 1 <= i <= d, got i={i}, d={d}")

    def namer(k: int) -> str:
        block, rest = divmod(k, d * d)
        r, c = divmod(rest, d)
        return f"{'ab'[block]}[{r + 1}][{c + 1}]"

    ring = PolyRing(2 * d * d, QQ, namer)
    a_mat = PolyMatrix([[ring.var(r * d + c) for c in range(d)] for r in range(d)])
    alpha = PolyMatrix([[ring.var(d * d + r * d + c) for c in range(d)] for r in range(d)])
    lhs = wedge_trace(alpha, i) * determinant(a_mat)
    product = a_mat.matmul(alpha)
    rhs = ring.zero()
    for rows in itertools.combinations(range(d), i):
        rhs = rhs + determinant(a_mat.replace_rows(rows, product))
    diff = lhs - rhs
    passed = diff.is_zero()
    details = [] if passed else [{"kind": "nonzero_difference", "difference": str(diff)}]
    return CheckReport(
        check="trace-minor-identity",
        params={"d": d, "i": i},
        passed=passed,
        details=details,
        data={"lhs_terms": len(lhs.terms), "rhs_terms": len(rhs.terms)},
    )


def evaluate(p: SparsePoly, point: Sequence):
    return p.evaluate(point)
