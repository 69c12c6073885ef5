"""Real-coefficient polynomial and rational transfer-function algebra.

Polynomials store coefficients in descending powers of s (``coeffs[0]``
is the leading coefficient). Rational functions are stored raw; equality
and golden-value comparisons are defined after normalizing the
denominator's leading coefficient to 1 (see ``normalized``).
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateLoopError, ZeroPolynomialError

# Leading coefficients smaller than this (relative to the largest
# coefficient) are trimmed: products of process-scale coefficients never
# legitimately produce smaller leading terms.
TRIM_REL = 1e-12


@dataclass(frozen=True)
class Polynomial:
    """Polynomial with real coefficients in descending powers of s."""

    coeffs: tuple[float, ...]

    def __post_init__(self):
        c = [float(x) for x in self.coeffs]
        if not c:
            c = [0.0]
        scale = max(abs(x) for x in c)
        if scale == 0.0:
            c = [0.0]
        else:
            while len(c) > 1 and abs(c[0]) < TRIM_REL * scale:
                c.pop(0)
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0.0

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return -1 if self.is_zero else len(self.coeffs) - 1

    def __call__(self, s: complex) -> complex:
        acc = 0.0 + 0.0j if isinstance(s, complex) else 0.0
        for c in self.coeffs:
            acc = acc * s + c
        return acc

    def deriv(self) -> "Polynomial":
        n = self.degree
        if n <= 0:
            return Polynomial((0.0,))
        return Polynomial(tuple(c * (n - i) for i, c in enumerate(self.coeffs[:-1])))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        pad = len(a) - len(b)
        return Polynomial(tuple(x + (b[i - pad] if i >= pad else 0.0) for i, x in enumerate(a)))

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        return poly_mul(self, other)

    def scale(self, k: float) -> "Polynomial":
        return Polynomial(tuple(k * c for c in self.coeffs))


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    """Product polynomial; degree adds for nonzero inputs."""
    if a.is_zero or b.is_zero:
        return Polynomial((0.0,))
    return Polynomial(tuple(np.convolve(a.coeffs, b.coeffs)))


def _pair_conjugates(roots: list[complex]) -> list[complex]:
    # Force exact conjugate pairs out of the nearly-paired eigenvalues a
    # companion matrix yields for real coefficients.
    ctol = 1e-8
    reals = [r for r in roots if abs(r.imag) <= ctol * (1.0 + abs(r))]
    upper = sorted((r for r in roots if r.imag > ctol * (1.0 + abs(r))), key=lambda r: (r.real, r.imag))
    lower = sorted((r for r in roots if r.imag < -ctol * (1.0 + abs(r))), key=lambda r: (r.real, -r.imag))
    out = [complex(r.real, 0.0) for r in reals]
    for u, v in zip(upper, lower):
        m = 0.5 * (u + v.conjugate())
        out.append(m)
        out.append(m.conjugate())
    # unpaired leftovers (odd counts) are numerically real
    for r in upper[len(lower):] + lower[len(upper):]:
        out.append(complex(r.real, 0.0))
    return out


def poly_roots(p: Polynomial) -> tuple[complex, ...]:
    """All roots of ``p`` via the companion-matrix eigenvalues, polished
    by Newton iteration; conjugate pairing is exact for real input.

    Returns an empty tuple for degree-0 polynomials. Raises
    ``ZeroPolynomialError`` for the zero polynomial.
    """
    if p.is_zero:
        raise ZeroPolynomialError("roots of the zero polynomial are undefined")
    if p.degree == 0:
        return ()
    raw = [complex(r) for r in np.roots(p.coeffs)]
    dp = p.deriv()
    polished = []
    for r in raw:
        x = r
        for _ in range(3):
            d = dp(x)
            if abs(d) == 0.0:
                break
            x = x - p(x) / d
        polished.append(x)
    paired = _pair_conjugates(polished)
    return tuple(sorted(paired, key=lambda r: (r.real, r.imag)))


@dataclass(frozen=True)
class RationalTransferFunction:
    """Ratio of two real polynomials in s."""

    num: Polynomial
    den: Polynomial

    def __post_init__(self):
        if self.den.is_zero:
            raise ZeroPolynomialError("denominator must be a nonzero polynomial")

    def __call__(self, s: complex) -> complex:
        return self.num(s) / self.den(s)

    def __mul__(self, other: "RationalTransferFunction") -> "RationalTransferFunction":
        return RationalTransferFunction(poly_mul(self.num, other.num), poly_mul(self.den, other.den))

    def scale(self, k: float) -> "RationalTransferFunction":
        return RationalTransferFunction(self.num.scale(k), self.den)

    def normalized(self) -> "RationalTransferFunction":
        """Equivalent function with a monic denominator (the canonical
        form used for equality and golden-value comparison)."""
        lead = self.den.coeffs[0]
        return RationalTransferFunction(self.num.scale(1.0 / lead), self.den.scale(1.0 / lead))

    def poles(self) -> tuple[complex, ...]:
        return poly_roots(self.den)

    def zeros(self) -> tuple[complex, ...]:
        if self.num.is_zero:
            return ()
        return poly_roots(self.num)

    @property
    def is_proper(self) -> bool:
        return self.num.degree <= self.den.degree


def rtf(num, den) -> RationalTransferFunction:
    """Shorthand constructor from coefficient sequences (descending powers)."""
    return RationalTransferFunction(Polynomial(tuple(num)), Polynomial(tuple(den)))


def unity_feedback(forward: RationalTransferFunction) -> RationalTransferFunction:
    """Close a unity-feedback loop around ``forward``.

    Returns forward / (1 + forward) = num / (den + num), trimmed. Raises
    ``DegenerateLoopError`` when den + num collapses to the zero
    polynomial.
    """
    closed_den = forward.den + forward.num
    if closed_den.is_zero:
        raise DegenerateLoopError("den + num is the zero polynomial")
    return RationalTransferFunction(forward.num, closed_den)
