"""Routh-array construction, Hurwitz testing, and proportional-gain
stability intervals for characteristic polynomials affine in the gain K.

The gain interval is found by a 101-point grid scan refined by bisection,
so it works for any affine-in-K characteristic polynomial, not just low
orders with closed-form boundaries.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    InputError,
    NoImaginaryPairError,
    NoStableGainError,
    ZeroLeadingCoefficientError,
)
from .freq import UltimateParams
from .tf import Polynomial, RationalTransferFunction, poly_roots

GRID_POINTS = 101
DEFAULT_TOL = 1e-6


@dataclass(frozen=True)
class RouthArray:
    """Full Routh table. ``rows[0]`` is the s^n row; ``marginal`` is set
    whenever a zero first-column entry or an all-zero row was remedied."""

    rows: tuple[tuple[float, ...], ...]
    labels: tuple[str, ...]
    marginal: bool

    @property
    def first_column(self) -> tuple[float, ...]:
        return tuple(r[0] for r in self.rows)

    def sign_changes(self) -> int:
        count = 0
        col = [v for v in self.first_column if v != 0.0]
        for a, b in zip(col, col[1:]):
            if (a > 0) != (b > 0):
                count += 1
        return count


@dataclass(frozen=True)
class AffineGainPolynomial:
    """Characteristic polynomial den(s) + K*num(s) of a proportional loop."""

    base: Polynomial
    slope: Polynomial

    @classmethod
    def for_proportional_loop(cls, plant: RationalTransferFunction) -> "AffineGainPolynomial":
        return cls(base=plant.den, slope=plant.num)

    def at(self, k: float) -> Polynomial:
        return self.base + self.slope.scale(k)


@dataclass(frozen=True)
class StabilityInterval:
    """Open interval of proportional gains K for which the loop is
    Hurwitz-stable. When a boundary coincides with the search-range edge
    the corresponding ``unbounded_*`` flag marks it as a clipped sentinel
    rather than a true stability boundary."""

    k_min: float
    k_max: float
    tolerance: float
    unbounded_below: bool = field(default=False)
    unbounded_above: bool = field(default=False)

    def __post_init__(self):
        if not self.k_min < self.k_max:
            raise InputError(f"empty interval: [{self.k_min}, {self.k_max}]")


def _aux_derivative_row(above: tuple[float, ...], power: int) -> list[float]:
    # Auxiliary polynomial from the row above has powers power, power-2, ...
    # Its derivative replaces an all-zero row (symmetric root pattern).
    return [(power - 2 * j) * c if power - 2 * j > 0 else 0.0 for j, c in enumerate(above)]


def routh_array(p: Polynomial) -> RouthArray:
    """Build the Routh table of ``p``.

    Remedies follow the classroom conventions: an exact zero in the first
    column is replaced by a signed epsilon (1e-9 times the row scale) and
    an all-zero row by the derivative of the auxiliary polynomial; both
    set the ``marginal`` flag.
    """
    if p.is_zero:
        raise ZeroLeadingCoefficientError("zero polynomial has no Routh array")
    n = p.degree
    if n < 1:
        raise InputError("Routh array requires degree >= 1")
    width = n // 2 + 1
    c = p.coeffs

    def padded(vals):
        out = list(vals)
        return out + [0.0] * (width - len(out))

    rows: list[list[float]] = [padded(c[0::2]), padded(c[1::2])]
    marginal = False

    def remedy(i: int) -> None:
        nonlocal marginal
        row = rows[i]
        if all(v == 0.0 for v in row):
            power = n - (i - 1)
            rows[i] = padded(_aux_derivative_row(tuple(rows[i - 1]), power))
            marginal = True
        elif row[0] == 0.0:
            scale = max(abs(v) for v in row)
            row[0] = 1e-9 * scale
            marginal = True

    remedy(1)
    for i in range(2, n + 1):
        prev, prev2 = rows[i - 1], rows[i - 2]
        row = [
            (prev[0] * prev2[j + 1] - prev2[0] * prev[j + 1]) / prev[0] if j + 1 < width else 0.0
            for j in range(width)
        ]
        rows.append(row)
        remedy(i)

    labels = tuple(f"s^{n - i}" for i in range(n + 1))
    return RouthArray(tuple(tuple(r) for r in rows), labels, marginal)


def is_hurwitz(p: Polynomial) -> bool:
    """True iff every root of ``p`` has strictly negative real part.

    Zero sign changes in the first Routh column means no right-half-plane
    roots; a remedied (marginal) array signals imaginary-axis roots, which
    are not strictly Hurwitz.
    """
    arr = routh_array(p)
    return arr.sign_changes() == 0 and not arr.marginal


def _is_stable_at(char: AffineGainPolynomial, k: float) -> bool:
    q = char.at(k)
    if q.is_zero or q.degree < 1:
        return False
    return is_hurwitz(q)


def _bisect_boundary(char: AffineGainPolynomial, k_stable: float, k_unstable: float, tol: float) -> float:
    lo, hi = k_stable, k_unstable
    while abs(hi - lo) > tol:
        mid = 0.5 * (lo + hi)
        if _is_stable_at(char, mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def gain_stability_interval(
    char: AffineGainPolynomial,
    search: tuple[float, float],
    tol: float = DEFAULT_TOL,
) -> StabilityInterval:
    """Maximal open interval of stabilizing K inside the search range.

    Scans a 101-point grid, keeps the widest contiguous stable run, and
    refines each boundary by bisection to within ``tol``. Raises
    ``NoStableGainError`` when no scanned gain is stabilizing.
    """
    k_lo, k_hi = search
    if not k_lo < k_hi:
        raise InputError(f"search range must satisfy K_lo < K_hi, got {search}")
    if tol <= 0.0:
        raise InputError(f"tol must be positive, got {tol}")

    grid = np.linspace(k_lo, k_hi, GRID_POINTS)
    stable = [_is_stable_at(char, k) for k in grid]
    runs = []
    start = None
    for i, s in enumerate(stable):
        if s and start is None:
            start = i
        elif not s and start is not None:
            runs.append((start, i - 1))
            start = None
    if start is not None:
        runs.append((start, len(grid) - 1))
    if not runs:
        raise NoStableGainError(f"no stabilizing gain found in [{k_lo}, {k_hi}]")

    first, last = max(runs, key=lambda r: r[1] - r[0])
    if first == 0:
        k_min, open_below = k_lo, True
    else:
        k_min, open_below = _bisect_boundary(char, float(grid[first]), float(grid[first - 1]), tol), False
    if last == len(grid) - 1:
        k_max, open_above = k_hi, True
    else:
        k_max, open_above = _bisect_boundary(char, float(grid[last]), float(grid[last + 1]), tol), False
    return StabilityInterval(k_min, k_max, tol, open_below, open_above)


def ultimate_params_from_interval(char: AffineGainPolynomial, interval: StabilityInterval) -> UltimateParams:
    """Ultimate gain and period at the upper stability boundary.

    k_u is the interval's upper endpoint; the period comes from the
    imaginary-axis root pair of the characteristic polynomial there
    (T_u = 2*pi/omega). A boundary crossed by a real root instead raises
    ``NoImaginaryPairError``.
    """
    k_u = interval.k_max
    q = char.at(k_u)
    if q.is_zero or q.degree < 1:
        raise NoImaginaryPairError(f"characteristic polynomial degenerates at K = {k_u}")
    re_tol = max(interval.tolerance, 1e-9)
    pairs = [r for r in poly_roots(q) if abs(r.real) < re_tol and abs(r.imag) > re_tol]
    if not pairs:
        raise NoImaginaryPairError(
            f"no imaginary-axis root pair at K = {k_u}; boundary is a real-root crossing"
        )
    omega = max(abs(r.imag) for r in pairs)
    return UltimateParams(k_u=k_u, T_u=2.0 * np.pi / omega)
