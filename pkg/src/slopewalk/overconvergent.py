"""Truncated U_2 on weight-0 2-adic overconvergent forms, hauptmodul basis.

The weight-0 space is parametrized by the level-2 hauptmodul
f = Delta(q^2)/Delta(q) = q prod (1+q^n)^24. The change-of-basis solve is
upper triangular against f^i = q^i + higher, so the expansion coefficients
of U_2(f^j) in powers of f are exact integers determined row by row; within
the working precision the residual is driven to literal zero. Low columns
finish early (empirically U_2(f^j) is a polynomial of degree 2j in f) and
the rows left over certify that; columns whose expansion outruns the window
are finite-sectioned, which is the standard truncation, and their entries
below row N are still exact. Valuations grow down the rows and along the
lower part of the columns (the recorded compactness witness); Newton slopes
of the truncation's exact characteristic polynomial are its eigenvalue
valuations, and stabilization under growing N is the diagnostic that the
spectral data has converged.

No slope value in this module is asserted a priori; expected sequences live
in the frozen fixture store and were produced by this code, then pinned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InsufficientPrecision, InvariantError
from .linalg import charpoly as _charpoly
from .padic import NewtonPolygon, val
from .qseries import QSeries, hauptmodul_f, u_p
from .serialize import exact_decimal, rat_to_str

BASIS_TAG = "powers of hauptmodul f, degrees 0..N-1"


@dataclass(frozen=True)
class TruncatedCompactOperator:
    """N x N finite section of U_2 in the hauptmodul power basis."""

    size: int
    matrix: tuple[tuple[int, ...], ...]
    basis_tag: str
    q_prec: int
    column_degrees: tuple[int, ...]
    residual_margins: tuple[int, ...]  # zero rows certified past each column's degree
    # empirical compactness witness: min valuation on/below the diagonal per
    # column (grows with j), plus per-row minima (grow with i)
    column_min_valuations: tuple[Fraction | None, ...]
    row_min_valuations: tuple[Fraction | None, ...]
    integral: bool


def u2_matrix_weight0(n: int, prec: int) -> TruncatedCompactOperator:
    """Expand U_2(f^j) for j < n in powers of f and take the N x N block.

    Requires prec >= 2n + 8. Each column solve is genuinely upper
    triangular (f^i = q^i + higher with integer coefficients), so the
    expansion coefficients are exact integers; the rows past each column's
    final degree are checked to vanish and their count is recorded as that
    column's residual margin.
    """
    if n < 1:
        raise InsufficientPrecision(f"need n >= 1, got {n}")
    if prec < 2 * n + 8:
        raise InsufficientPrecision(f"need prec >= 2n + 8 = {2 * n + 8}, got {prec}")
    f = hauptmodul_f(prec)
    rows = prec // 2  # known coefficients of each U_2 image
    powers = [[0] * rows for _ in range(rows)]
    powers[0][0] = 1
    fpow = None
    for i in range(1, rows):
        fpow = f if fpow is None else (fpow * f)
        if fpow[i] != 1:
            raise InvariantError(f"f^{i} is not monic at q^{i}; basis is broken")
        powers[i] = list(fpow.coeffs[:rows])
    columns: list[dict[int, int]] = []
    degrees: list[int] = []
    margins: list[int] = []
    current = QSeries.one(prec)
    for j in range(n):
        series = u_p(current, 2)
        if j < n - 1:
            current = current * f
        e = list(series.coeffs[:rows])
        coeffs: dict[int, int] = {}
        for i in range(rows):
            ci = e[i]
            if ci == 0:
                continue
            if not isinstance(ci, int):
                raise InvariantError(f"non-integer expansion coefficient {ci} in column {j}")
            coeffs[i] = ci
            pi = powers[i]
            for t in range(i, rows):
                if pi[t]:
                    e[t] -= ci * pi[t]
        if any(e):
            raise InvariantError(f"column {j} solve left a nonzero residual")
        deg = max(coeffs) if coeffs else 0
        degrees.append(deg)
        margins.append(rows - 1 - deg)
        columns.append(coeffs)
    matrix = tuple(tuple(columns[j].get(i, 0) for j in range(n)) for i in range(n))
    col_vals: list[Fraction | None] = []
    for j in range(n):
        nonzero = [matrix[i][j] for i in range(j, n) if matrix[i][j] != 0]
        col_vals.append(min((Fraction(val(c, 2)) for c in nonzero), default=None))
    row_vals: list[Fraction | None] = []
    for i in range(n):
        nonzero = [matrix[i][j] for j in range(n) if matrix[i][j] != 0]
        row_vals.append(min((Fraction(val(c, 2)) for c in nonzero), default=None))
    integral = all(
        isinstance(matrix[i][j], int) for i in range(n) for j in range(n)
    )
    return TruncatedCompactOperator(
        n,
        matrix,
        BASIS_TAG,
        prec,
        tuple(degrees),
        tuple(margins),
        tuple(col_vals),
        tuple(row_vals),
        integral,
    )


@dataclass(frozen=True)
class OcSlopeReport:
    size: int
    slopes: tuple[Fraction, ...]
    zero_root_multiplicity: int
    compared_to: int | None
    stable_prefix: int | None

    def to_json_obj(self) -> dict:
        return {
            "size": self.size,
            "slopes": [rat_to_str(s) for s in self.slopes],
            "zero_roots": self.zero_root_multiplicity,
            "compared_to": self.compared_to,
            "stable_prefix": self.stable_prefix,
        }


def oc_slopes(op: TruncatedCompactOperator, reference: OcSlopeReport | None = None) -> OcSlopeReport:
    """Sorted Newton slopes of the truncation's characteristic polynomial.

    When a report for another truncation is supplied, the stabilization
    comparison (length of the common sorted-slope prefix) is filled in.
    """
    cp = _charpoly([list(row) for row in op.matrix])
    polygon = NewtonPolygon.from_polynomial(cp, 2)
    slopes = tuple(polygon.slopes())
    compared_to = stable = None
    if reference is not None:
        compared_to = reference.size
        stable = stable_prefix_length(slopes, reference.slopes)
    return OcSlopeReport(op.size, slopes, polygon.zero_root_multiplicity, compared_to, stable)


def stable_prefix_length(a, b) -> int:
    n = 0
    for x, y in zip(a, b):
        if x != y:
            break
        n += 1
    return n


def slopes_to_csv(report: OcSlopeReport) -> str:
    """CSV rows 'N,index,slope_num,slope_den', one per slope."""
    lines = ["N,index,slope_num,slope_den"]
    for idx, s in enumerate(report.slopes):
        lines.append(f"{report.size},{idx},{s.numerator},{s.denominator}")
    return "\n".join(lines)


def slopes_to_plot_data(report: OcSlopeReport, decimals: int = 6) -> str:
    """gnuplot-ready 'index slope' rows; decimal rendering is exact integer
    arithmetic, not float."""
    return "\n".join(
        f"{idx} {exact_decimal(s, decimals)}" for idx, s in enumerate(report.slopes)
    )
