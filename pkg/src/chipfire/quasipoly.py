"""Exact-rational quasipolynomials: evaluation, fitting and detection.

A quasipolynomial of period p and degree d is stored as p rows of d + 1
Fractions; row r holds the coefficients c_0..c_d of the polynomial in c
used when ``c % p == r``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .graph import Graph, spanning_tree_count


class InsufficientSamplesError(ValueError):
    """Too few sample points to interpolate and verify every residue class."""


@dataclass(frozen=True)
class Quasipolynomial:
    period: int
    degree: int
    coefficients: tuple[tuple[Fraction, ...], ...]
    onset: int = 0

    def __post_init__(self):
        if self.period < 1 or self.degree < 0:
            raise ValueError("need period >= 1 and degree >= 0")
        if len(self.coefficients) != self.period or any(
                len(row) != self.degree + 1 for row in self.coefficients):
            raise ValueError("coefficient table does not match period and degree")

    def __call__(self, c: int) -> int:
        return evaluate(self, c)

    def branch(self, r: int) -> tuple[Fraction, ...]:
        return self.coefficients[r % self.period]

    def leading_coefficients(self) -> tuple[Fraction, ...]:
        return tuple(row[-1] for row in self.coefficients)

    def reduced(self) -> Quasipolynomial:
        """Smallest period and degree describing the same function."""
        rows = self.coefficients
        d = self.degree
        while d > 0 and all(row[d] == 0 for row in rows):
            d -= 1
        rows = tuple(row[:d + 1] for row in rows)
        for p in range(1, self.period + 1):
            if self.period % p == 0 and all(rows[r] == rows[r % p] for r in range(self.period)):
                return Quasipolynomial(p, d, rows[:p], self.onset)
        return self  # unreachable: p == period always matches

    def to_json(self) -> dict:
        return {
            "period": self.period,
            "degree": self.degree,
            "onset": self.onset,
            "coefficients": [[[f.numerator, f.denominator] for f in row]
                             for row in self.coefficients],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> Quasipolynomial:
        rows = tuple(tuple(Fraction(a, b) for a, b in row) for row in data["coefficients"])
        return cls(data["period"], data["degree"], rows, data.get("onset", 0))


def evaluate(q: Quasipolynomial, c: int) -> int:
    if c < q.onset:
        raise ValueError(f"c={c} is below the onset {q.onset}")
    row = q.coefficients[c % q.period]
    value = Fraction(0)
    for coeff in reversed(row):
        value = value * c + coeff
    if value.denominator != 1:
        raise ArithmeticError(f"quasipolynomial is not integral at c={c}: {value}")
    return value.numerator


def interpolate(points: Sequence[tuple[int, int]]) -> tuple[Fraction, ...]:
    """Monomial coefficients (low to high) of the Lagrange interpolant."""
    m = len(points)
    coeffs = [Fraction(0)] * m
    for i, (xi, yi) in enumerate(points):
        # basis polynomial prod_{j != i} (x - xj) / (xi - xj)
        basis = [Fraction(1)]
        denom = 1
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        scale = Fraction(yi, denom)
        for k in range(m):
            coeffs[k] += scale * basis[k]
    return tuple(coeffs)


def _poly_eval(coeffs: Sequence[Fraction], x: int) -> Fraction:
    value = Fraction(0)
    for coeff in reversed(coeffs):
        value = value * x + coeff
    return value


def fit_quasipolynomial(values: Mapping[int, int], period: int, degree: int,
                        onset: int = 0) -> Quasipolynomial | None:
    """Interpolate each residue class through its first ``degree + 1`` samples.

    Returns the fit only if every further sample in the class matches
    exactly. Raises InsufficientSamplesError when some class has fewer than
    ``degree + 2`` samples at or after ``onset``.
    """
    if period < 1 or degree < 0:
        raise ValueError("need period >= 1 and degree >= 0")
    classes: list[list[tuple[int, int]]] = [[] for _ in range(period)]
    for c in sorted(values):
        if c >= onset:
            classes[c % period].append((c, values[c]))
    short = [r for r, pts in enumerate(classes) if len(pts) < degree + 2]
    if short:
        raise InsufficientSamplesError(
            f"insufficient samples: residue classes {short} mod {period} need "
            f"{degree + 2} points from c={onset}")
    rows = []
    for pts in classes:
        coeffs = interpolate(pts[:degree + 1])
        if any(_poly_eval(coeffs, c) != v for c, v in pts[degree + 1:]):
            return None
        rows.append(coeffs)
    return Quasipolynomial(period, degree, tuple(rows), onset)


def _solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Unique solution of an overdetermined exact system, or None.

    None means rank deficiency or inconsistency; callers treat both as no fit.
    """
    ncols = len(rows[0])
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][col] != 0), None)
        if piv is None:
            return None
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][col]
        a[r] = [v * inv for v in a[r]]
        for i in range(len(a)):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [v - f * w for v, w in zip(a[i], a[r])]
        r += 1
    if any(row[-1] != 0 for row in a[r:]):
        return None
    return [a[i][-1] for i in range(ncols)]


def fit_graded(values: Mapping[int, int], period: int, degree: int, onset: int = 0,
               periodic_terms: int = 1) -> Quasipolynomial | None:
    """Fit where only the coefficients of degree < ``periodic_terms`` vary with c mod period.

    Each coefficient of a quasipolynomial may have its own period; this
    model shares the high-degree coefficients across residue classes, so it
    needs far fewer samples than per-class interpolation. The fit must
    reproduce every sample from ``onset`` on, with at least ``period`` more
    samples than unknowns.
    """
    if not 0 <= periodic_terms <= degree + 1:
        raise ValueError("periodic_terms must lie in 0..degree+1")
    pts = sorted((c, v) for c, v in values.items() if c >= onset)
    shared = degree + 1 - periodic_terms
    unknowns = shared + periodic_terms * period
    if len(pts) < unknowns + period:
        raise InsufficientSamplesError(
            f"insufficient samples: {len(pts)} points from c={onset}, need {unknowns + period}")
    rows, rhs = [], []
    for c, v in pts:
        row = [Fraction(0)] * unknowns
        for j in range(periodic_terms):
            row[j * period + c % period] = Fraction(c ** j)
        for j in range(periodic_terms, degree + 1):
            row[periodic_terms * period + j - periodic_terms] = Fraction(c ** j)
        rows.append(row)
        rhs.append(Fraction(v))
    sol = _solve_exact(rows, rhs)
    if sol is None:
        return None
    table = []
    for r in range(period):
        coeffs = [sol[j * period + r] for j in range(periodic_terms)]
        coeffs += sol[periodic_terms * period:]
        table.append(tuple(coeffs))
    return Quasipolynomial(period, degree, tuple(table), onset)


@dataclass(frozen=True)
class Detection:
    period: int
    degree: int
    onset: int
    quasipolynomial: Quasipolynomial


def _fit_any(values, period, degree, onset):
    """Return (fit or None, whether any model had enough samples)."""
    try:
        return fit_quasipolynomial(values, period, degree, onset), True
    except InsufficientSamplesError:
        pass
    # graded models are submodels of per-class interpolation, so they are
    # only worth trying when per-class interpolation lacked samples
    enough = False
    if period > 1:
        for m in range(1, degree + 1):
            try:
                q = fit_graded(values, period, degree, onset, m)
            except InsufficientSamplesError:
                break
            enough = True
            if q is not None:
                return q, True
    return None, enough


def detect_quasipolynomial(values: Mapping[int, int], max_period: int, max_degree: int,
                           max_onset: int | None = None) -> Detection | None:
    """Earliest-onset, then smallest-period, then lowest-degree exact fit.

    Candidates without enough samples to verify are skipped. The reported
    period is that of the fitted function, so a graded or per-class fit that
    turns out to repeat with a smaller period is not reported at the larger
    one.
    """
    if not values:
        return None
    cs = sorted(values)
    if cs != list(range(cs[0], cs[-1] + 1)):
        raise ValueError("values must cover a contiguous range of c")
    if max_onset is None:
        max_onset = cs[-1]
    for onset in range(cs[0], max(cs[0], max_onset) + 1):
        for period in range(1, max_period + 1):
            for degree in range(max_degree + 1):
                q, enough = _fit_any(values, period, degree, onset)
                if q is not None:
                    q = q.reduced()
                    return Detection(q.period, q.degree, onset, q)
                if not enough:
                    # higher degrees only need more samples
                    break
    return None


def expected_leading_coefficient(n: int, kappa: int) -> Fraction:
    return Fraction(1, math.factorial(n - 1) * kappa)


def leading_coefficient_check(q: Quasipolynomial, g: Graph) -> bool:
    """Every branch has degree n-1 coefficient exactly 1/((n-1)! kappa(G))."""
    if q.degree != g.n - 1:
        return False
    expected = expected_leading_coefficient(g.n, spanning_tree_count(g))
    return all(lead == expected for lead in q.leading_coefficients())


def format_polynomial(coeffs: Sequence[Fraction], var: str = "c") -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        a = coeffs[k]
        if a == 0:
            continue
        sign = "-" if a < 0 else "+"
        mag = abs(a)
        if k == 0:
            body = str(mag)
        else:
            power = var if k == 1 else f"{var}^{k}"
            body = power if mag == 1 else f"({mag}){power}" if mag.denominator != 1 else f"{mag}{power}"
        terms.append((sign, body))
    if not terms:
        return "0"
    head_sign, head = terms[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def format_branches(q: Quasipolynomial, var: str = "c") -> list[str]:
    return [f"{var} = {r} mod {q.period}: {format_polynomial(row, var)}"
            for r, row in enumerate(q.coefficients)]
