"""Numerical verification over prime fields: random points on the
variety, graded linear algebra on spans of generator multiples, and the
checks that compare those measurements against the resolution
predictions.

All randomness flows through an explicitly seeded generator and every
check is deterministic given its configuration.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .polysym import (
    BlockLayout,
    PolyRing,
    PrimeField,
    SparsePoly,
    all_top_minors,
    determinant,
    grevlex_key,
    is_prime,
    reduced_kalman_matrix,
)
from .report import CheckReport
from .resolution import (
    KalmanParams,
    chain_resolution,
    hilbert_numerator,
    minimal_generators,
)

DEFAULT_MODULUS = 32003
ALTERNATE_MODULUS = 46337
DEFAULT_MONOMIAL_CAP = 10**6


@dataclass(frozen=True)
class PrimeFieldConfig:
    """Modulus and seed for the randomized finite-field checks."""

    modulus: int = DEFAULT_MODULUS
    seed: int = 2026
    monomial_cap: int = DEFAULT_MONOMIAL_CAP

    def __post_init__(self) -> None:
        if not is_prime(self.modulus):
            raise ValueError(f"modulus {self.modulus} is not prime")
        if self.monomial_cap < 1:
            raise ValueError("monomial cap must be positive")

    def field(self) -> PrimeField:
        return PrimeField(self.modulus)

    def rng(self) -> random.Random:
        return random.Random(self.seed)


@dataclass(frozen=True)
class KalmanPoint:
    """A matrix over GF(p) carrying an eigenvector supported in the
    distinguished subspace, hence a point of the rank-drop locus."""

    entries: tuple[tuple[int, ...], ...]
    eigenvector: tuple[int, ...]
    eigenvalue: int
    modulus: int

    @property
    def n(self) -> int:
        return len(self.entries)

    def flatten(self) -> tuple[int, ...]:
        """Row-major coordinates matching the variable layout."""
        return tuple(itertools.chain.from_iterable(self.entries))

    def eigen_residual(self) -> tuple[int, ...]:
        """phi . vhat - t . vhat mod p; all zeros for a valid point."""
        p = self.modulus
        n = self.n
        d = len(self.eigenvector)
        vhat = list(self.eigenvector) + [0] * (n - d)
        out = []
        for i in range(n):
            acc = sum(self.entries[i][j] * vhat[j] for j in range(n)) % p
            out.append((acc - self.eigenvalue * vhat[i]) % p)
        return tuple(out)


def random_kalman_point(d: int, n: int, gf: PrimeField, rng: random.Random) -> KalmanPoint:
    """Random matrix fixing a line inside the span of the first d
    coordinates: draw the eigenvector and eigenvalue, fill every column
    except one at random, then solve the remaining column."""
    if not 1 <= d < n:
        raise ValueError(f"need 1 <= d < n, got d={d}, n={n}")
    p = gf.p
    v = [gf.rand(rng) for _ in range(d)]
    if all(c == 0 for c in v):
        v[rng.randrange(d)] = gf.rand_nonzero(rng)
    t = gf.rand(rng)
    support = [j for j in range(d) if v[j] != 0]
    k = support[rng.randrange(len(support))]
    phi = [[gf.rand(rng) for _ in range(n)] for _ in range(n)]
    vhat = v + [0] * (n - d)
    vk_inv = gf.inv(v[k])
    for i in range(n):
        partial = sum(phi[i][j] * v[j] for j in range(d) if j != k) % p
        phi[i][k] = (t * vhat[i] - partial) * vk_inv % p
    return KalmanPoint(
        entries=tuple(tuple(row) for row in phi),
        eigenvector=tuple(v),
        eigenvalue=t,
        modulus=p,
    )


def _to_field(generators: Sequence[SparsePoly], gf: PrimeField) -> list[SparsePoly]:
    out = []
    for g in generators:
        if isinstance(g.ring.domain, PrimeField):
            if g.ring.domain.p != gf.p:
                raise ValueError("generator modulus does not match configuration")
            out.append(g)
        else:
            out.append(g.map_domain(PolyRing(g.ring.nvars, gf, g.ring._name)))
    return out


def vanishing_test(
    generators: Sequence[SparsePoly],
    d: int,
    n: int,
    trials: int = 100,
    cfg: PrimeFieldConfig = PrimeFieldConfig(),
) -> CheckReport:
    """Evaluate every generator at random points of the rank-drop locus;
    all values must be zero."""
    gf = cfg.field()
    rng = cfg.rng()
    gens = _to_field(generators, gf)
    failures = []
    for trial in range(trials):
        point = random_kalman_point(d, n, gf, rng)
        if any(point.eigen_residual()):
            failures.append({"kind": "bad_point", "trial": trial})
            continue
        coords = point.flatten()
        for gi, g in enumerate(gens):
            value = g.evaluate(coords)
            if value % gf.p != 0:
                failures.append({
                    "kind": "nonvanishing",
                    "trial": trial,
                    "generator": gi,
                    "value": value,
                })
    return CheckReport(
        check="random-point-vanishing",
        params={"d": d, "n": n, "trials": trials, "modulus": cfg.modulus, "seed": cfg.seed},
        passed=not failures,
        details=failures[:20],
        data={"generator_count": len(gens), "failure_count": len(failures)},
    )


class MonomialCapExceeded(Exception):
    def __init__(self, required: int, cap: int):
        super().__init__(
            f"degree piece needs {required} monomials, cap is {cap}; "
            "raise the cap to proceed"
        )
        self.required = required
        self.cap = cap


def monomial_count(nvars: int, degree: int) -> int:
    return comb(nvars - 1 + degree, degree)


def monomials_of_degree(nvars: int, degree: int, cap: int = DEFAULT_MONOMIAL_CAP) -> list[tuple[int, ...]]:
    """All exponent tuples of the given total degree, listed in the
    canonical descending term order."""
    count = monomial_count(nvars, degree)
    if count > cap:
        raise MonomialCapExceeded(count, cap)
    out: list[tuple[int, ...]] = []
    exp = [0] * nvars

    def fill(pos: int, remaining: int) -> None:
        if pos == nvars - 1:
            exp[pos] = remaining
            out.append(tuple(exp))
            exp[pos] = 0
            return
        for e in range(remaining, -1, -1):
            exp[pos] = e
            fill(pos + 1, remaining - e)
        exp[pos] = 0

    fill(0, degree)
    out.sort(key=grevlex_key)
    assert len(out) == count
    return out


class SpanEliminator:
    """Incremental sparse row reduction over GF(p).  Rows are dicts
    {column index: coefficient}; pivot rows are normalized to lead
    coefficient one and kept as absorbed."""

    def __init__(self, p: int):
        self.p = p
        self.pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def absorb(self, row: dict[int, int]) -> bool:
        """Reduce a row against the current pivots; returns True when it
        contributes a new pivot."""
        p = self.p
        r = {c: v % p for c, v in row.items() if v % p}
        while r:
            lead = min(r)
            piv = self.pivots.get(lead)
            if piv is None:
                inv = pow(r[lead], p - 2, p)
                self.pivots[lead] = {c: v * inv % p for c, v in r.items()}
                return True
            c0 = r[lead]
            for col, pc in piv.items():
                acc = (r.get(col, 0) - c0 * pc) % p
                if acc:
                    r[col] = acc
                else:
                    r.pop(col, None)
        return False


def _generator_rows(
    gens: Sequence[SparsePoly],
    degree: int,
    col_index: dict[tuple[int, ...], int],
    nvars: int,
    min_multiplier_degree: int,
    cap: int,
):
    """Yield sparse rows for monomial multiples m*g with deg(m*g) equal
    to the target degree and deg(m) at least the given minimum."""
    for g in gens:
        if g.is_zero():
            continue
        if not g.is_homogeneous():
            raise ValueError("generators must be homogeneous")
        q = g.degree()
        mdeg = degree - q
        if mdeg < min_multiplier_degree:
            continue
        terms = list(g.terms.items())
        for mono in monomials_of_degree(nvars, mdeg, cap):
            yield {
                col_index[tuple(a + b for a, b in zip(exp, mono))]: c
                for exp, c in terms
            }


def graded_ideal_dimension(
    generators: Sequence[SparsePoly],
    degree: int,
    cfg: PrimeFieldConfig = PrimeFieldConfig(),
) -> int:
    """Dimension of the degree piece of the ideal spanned by the
    generators, as the rank of the matrix of all monomial multiples."""
    gf = cfg.field()
    gens = _to_field(generators, gf)
    if not gens:
        return 0
    nvars = gens[0].ring.nvars
    cols = monomials_of_degree(nvars, degree, cfg.monomial_cap)
    col_index = {m: i for i, m in enumerate(cols)}
    elim = SpanEliminator(gf.p)
    for row in _generator_rows(gens, degree, col_index, nvars, 0, cfg.monomial_cap):
        elim.absorb(row)
    return elim.rank


def truncated_hilbert(
    generators: Sequence[SparsePoly],
    d: int,
    n: int,
    max_degree: int,
    cfg: PrimeFieldConfig = PrimeFieldConfig(),
) -> list[int]:
    """Dimensions of the graded pieces of the quotient by the generator
    ideal, degrees 0 through max_degree."""
    nvars = n * n
    out = []
    for e in range(max_degree + 1):
        rank = graded_ideal_dimension(generators, e, cfg)
        out.append(monomial_count(nvars, e) - rank)
    return out


def minimality_report(
    d: int,
    n: int,
    max_degree: int,
    cfg: PrimeFieldConfig = PrimeFieldConfig(),
    generators: Sequence[SparsePoly] | None = None,
) -> CheckReport:
    """Compare, degree by degree, the number of fresh generators the
    span of minor multiples actually needs against the count predicted
    by the resolution.

    In each degree the rows coming from proper multiples (multiplier
    degree at least one) are absorbed first; the generators of that
    exact degree are absorbed on top, and the rank jump is the number of
    new generators the ideal needs there.
    """
    params = KalmanParams(1, d, n)
    gf = cfg.field()
    if generators is None:
        gens = [p.map_domain(BlockLayout(d, n).ring(gf)) for _, p in all_top_minors(d, n)]
    else:
        gens = _to_field(generators, gf)
    gens = [g for g in gens if not g.is_zero()]
    nvars = n * n

    predicted: dict[int, int] = {}
    for rec in minimal_generators(d, n):
        if rec.multiplicity > 0:
            predicted[rec.degree] = predicted.get(rec.degree, 0) + rec.multiplicity

    per_degree = []
    failures = []
    for e in range(1, max_degree + 1):
        cols = monomials_of_degree(nvars, e, cfg.monomial_cap)
        col_index = {m: i for i, m in enumerate(cols)}
        elim = SpanEliminator(gf.p)
        for row in _generator_rows(gens, e, col_index, nvars, 1, cfg.monomial_cap):
            elim.absorb(row)
        from_lower = elim.rank
        for row in _generator_rows(
            [g for g in gens if g.degree() == e], e, col_index, nvars, 0, cfg.monomial_cap
        ):
            elim.absorb(row)
        ideal_dim = elim.rank
        new_gens = ideal_dim - from_lower
        want = predicted.get(e, 0)
        entry = {
            "degree": e,
            "ideal_dim": ideal_dim,
            "from_lower": from_lower,
            "new_generators": new_gens,
            "predicted_new": want,
        }
        per_degree.append(entry)
        if new_gens != want:
            failures.append(entry)

    return CheckReport(
        check="generator-minimality",
        params={
            "d": d,
            "n": n,
            "s": params.s,
            "max_degree": max_degree,
            "modulus": cfg.modulus,
        },
        passed=not failures,
        details=failures,
        data={"per_degree": per_degree, "generator_count": len(gens)},
    )


def truncated_hilbert_check(
    d: int,
    n: int,
    max_degree: int,
    cfg: PrimeFieldConfig = PrimeFieldConfig(),
) -> CheckReport:
    """Measure the quotient's graded dimensions by rank computations and
    compare against the expansion of the rational series obtained from
    the resolution."""
    gens = [p for _, p in all_top_minors(d, n)]
    measured = truncated_hilbert(gens, d, n, max_degree, cfg)
    expected = hilbert_numerator(chain_resolution(1, d, n)).expand(max_degree)
    mismatches = [
        {"degree": e, "measured": m, "expected": x}
        for e, (m, x) in enumerate(zip(measured, expected))
        if m != x
    ]
    return CheckReport(
        check="truncated-hilbert",
        params={"d": d, "n": n, "max_degree": max_degree, "modulus": cfg.modulus},
        passed=not mismatches,
        details=mismatches,
        data={"measured": measured, "expected": expected},
    )


def hypersurface_check(
    d: int,
    trials: int = 100,
    cfg: PrimeFieldConfig = PrimeFieldConfig(),
) -> CheckReport:
    """For n = d + 1 the variety is a hypersurface: its defining
    determinant must be homogeneous of degree d(d+1)/2, and must vanish
    at random points of the locus."""
    n = d + 1
    gf = cfg.field()
    det = determinant(reduced_kalman_matrix(d, n, gf))
    expected_degree = d * (d + 1) // 2
    degree_ok = det.is_homogeneous() and det.degree() == expected_degree
    inner = vanishing_test([det], d, n, trials, cfg)
    details = list(inner.details)
    if not degree_ok:
        details.insert(0, {
            "kind": "wrong_degree",
            "degree": det.degree(),
            "expected": expected_degree,
        })
    return CheckReport(
        check="hypersurface-determinant",
        params={"d": d, "n": n, "trials": trials, "modulus": cfg.modulus},
        passed=degree_ok and inner.passed,
        details=details,
        data={
            "degree": det.degree(),
            "expected_degree": expected_degree,
            "term_count": len(det.terms),
        },
    )


def minors_vanishing_check(
    d: int,
    n: int,
    trials: int = 50,
    cfg: PrimeFieldConfig = PrimeFieldConfig(),
) -> CheckReport:
    """All maximal minors of the stacked matrix vanish on random points
    of the locus."""
    gf = cfg.field()
    gens = [p for _, p in all_top_minors(d, n, gf) if not p.is_zero()]
    inner = vanishing_test(gens, d, n, trials, cfg)
    return CheckReport(
        check="minor-vanishing",
        params=inner.params,
        passed=inner.passed,
        details=inner.details,
        data=inner.data,
    )
