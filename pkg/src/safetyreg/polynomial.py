"""Low-degree polynomial kernel: real roots up to degree four, bivariate conics and
resultant elimination of one variable between two conics.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

EPS_ROOT = 1e-10
EPS_COEFF = 1e-13


class RealRoot(NamedTuple):
    value: float
    multiplicity: int


@dataclass(frozen=True)
class Polynomial:
    """Univariate polynomial, coefficients in ascending order of degree.

    Leading coefficients that are negligible relative to the largest coefficient are
    trimmed on construction, so ``degree`` is the numerically meaningful degree.
    """

    coefficients: tuple[float, ...]

    def __init__(self, coefficients: Sequence[float]):
        coeffs = [float(c) for c in coefficients]
        scale = max((abs(c) for c in coeffs), default=0.0)
        while coeffs and abs(coeffs[-1]) <= EPS_COEFF * scale:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def derivative(self) -> Polynomial:
        return Polynomial([i * c for i, c in enumerate(self.coefficients)][1:])

    @classmethod
    def from_roots(cls, roots: Sequence[float], lead: float = 1.0) -> Polynomial:
        return cls(np.polynomial.polynomial.polyfromroots(roots) * lead)


def _polish(p: Polynomial, dp: Polynomial, x: float) -> float:
    for _ in range(8):
        d = dp(x)
        if d == 0.0:
            break
        step = p(x) / d
        x_new = x - step
        if abs(p(x_new)) >= abs(p(x)):
            break
        x = x_new
    return x


def real_roots(p: Polynomial | Sequence[float]) -> list[RealRoot]:
    """Real roots of a polynomial of degree at most four, ascending.

    Roots come from the companion-matrix eigenvalues, are polished with Newton steps
    and accepted when ``|p(x)| <= EPS_ROOT * max(1, max|coef|)``.  Clustered roots are
    merged and reported once with their multiplicity.
    """
    if not isinstance(p, Polynomial):
        p = Polynomial(p)
    if p.is_zero:
        raise ValueError("polynomial is identically zero")
    if p.degree > 4:
        raise ValueError(f"degree {p.degree} exceeds 4")
    if p.degree == 0:
        return []
    c = p.coefficients
    if p.degree == 1:
        return [RealRoot(-c[0] / c[1], 1)]

    scale = max(1.0, max(abs(v) for v in c))
    tol = EPS_ROOT * scale
    dp = p.derivative()
    raw = np.roots(c[::-1])
    accepted: list[float] = []
    for z in raw:
        x = float(z.real)
        if abs(z.imag) > 1e-5 * (1.0 + abs(x)):
            continue
        x = _polish(p, dp, x)
        if abs(p(x)) <= tol:
            accepted.append(x)
    accepted.sort()

    roots: list[RealRoot] = []
    for x in accepted:
        if roots and abs(x - roots[-1].value) <= 1e-6 * (1.0 + abs(x)):
            prev = roots[-1]
            n = prev.multiplicity
            roots[-1] = RealRoot((prev.value * n + x) / (n + 1), n + 1)
        else:
            roots.append(RealRoot(x, 1))
    return roots


@dataclass(frozen=True, slots=True)
class Conic:
    """``c + a*x + b*y + axx*x^2 + axy*x*y + ayy*y^2``."""

    c: float = 0.0
    a: float = 0.0
    b: float = 0.0
    axx: float = 0.0
    axy: float = 0.0
    ayy: float = 0.0

    def __call__(self, x: float, y: float) -> float:
        return self.c + x * (self.a + self.axx * x + self.axy * y) + y * (self.b + self.ayy * y)

    def grad_x(self) -> tuple[float, float, float]:
        """Partial derivative in x as an affine form ``(const, coef_x, coef_y)``."""
        return (self.a, 2.0 * self.axx, self.axy)

    def grad_y(self) -> tuple[float, float, float]:
        return (self.b, self.axy, 2.0 * self.ayy)

    def in_x(self) -> list[np.ndarray]:
        """Coefficients in x (ascending), each an ascending polynomial in y."""
        return [
            np.array([self.c, self.b, self.ayy]),
            np.array([self.a, self.axy]),
            np.array([self.axx]),
        ]

    def scale(self) -> float:
        return max(abs(self.c), abs(self.a), abs(self.b), abs(self.axx), abs(self.axy), abs(self.ayy))


def affine_product(f: tuple[float, float, float], g: tuple[float, float, float]) -> Conic:
    """Product of two affine forms ``k + kx*x + ky*y``."""
    return Conic(
        c=f[0] * g[0],
        a=f[0] * g[1] + f[1] * g[0],
        b=f[0] * g[2] + f[2] * g[0],
        axx=f[1] * g[1],
        axy=f[1] * g[2] + f[2] * g[1],
        ayy=f[2] * g[2],
    )


def conic_sub(p: Conic, q: Conic) -> Conic:
    return Conic(p.c - q.c, p.a - q.a, p.b - q.b, p.axx - q.axx, p.axy - q.axy, p.ayy - q.ayy)


def _pmul(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.polynomial.polynomial.polymul(u, v)


def _psub(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.polynomial.polynomial.polysub(u, v)


def _x_degree(coeffs: list[np.ndarray], tol: float) -> int:
    for d in (2, 1):
        if np.any(np.abs(coeffs[d]) > tol):
            return d
    return 0


def resultant_in_x(p: Conic, q: Conic) -> Polynomial:
    """Resultant of two conics with respect to x: a polynomial in y (degree <= 4)
    vanishing at the y-coordinates of their common points.

    Uses the Sylvester determinant for the actual x-degrees of the two conics.
    """
    tol = EPS_COEFF * max(p.scale(), q.scale(), 1e-300)
    P, Q = p.in_x(), q.in_x()
    dp, dq = _x_degree(P, tol), _x_degree(Q, tol)
    if dp == 0 and dq == 0:
        # neither depends on x: common points lie where both vanish in y
        raise ValueError("resultant undefined: neither conic depends on x")
    if dp == 0:
        return Polynomial(P[0] if dq == 1 else _pmul(P[0], P[0]))
    if dq == 0:
        return Polynomial(Q[0] if dp == 1 else _pmul(Q[0], Q[0]))
    if dp == 1 and dq == 1:
        return Polynomial(_psub(_pmul(P[1], Q[0]), _pmul(P[0], Q[1])))
    if dp == 2 and dq == 2:
        a2, a1, a0 = P[2], P[1], P[0]
        b2, b1, b0 = Q[2], Q[1], Q[0]
        t1 = _psub(_pmul(a2, b0), _pmul(a0, b2))
        t2 = _psub(_pmul(a2, b1), _pmul(a1, b2))
        t3 = _psub(_pmul(a1, b0), _pmul(a0, b1))
        return Polynomial(_psub(_pmul(t1, t1), _pmul(t2, t3)))
    # one quadratic (a2 x^2 + a1 x + a0), one linear (b1 x + b0)
    if dp == 1:
        P, Q = Q, P
    a2, a1, a0 = P[2], P[1], P[0]
    b1, b0 = Q[1], Q[0]
    res = _pmul(a2, _pmul(b0, b0))
    res = _psub(res, _pmul(a1, _pmul(b0, b1)))
    res = np.polynomial.polynomial.polyadd(res, _pmul(a0, _pmul(b1, b1)))
    return Polynomial(res)


def solve_quadratic(c0: float, c1: float, c2: float) -> list[float]:
    """Real roots of ``c0 + c1 x + c2 x^2`` (any degree down to constant)."""
    scale = max(abs(c0), abs(c1), abs(c2))
    if scale == 0.0:
        return []
    if abs(c2) <= EPS_COEFF * scale:
        if abs(c1) <= EPS_COEFF * scale:
            return []
        return [-c0 / c1]
    disc = c1 * c1 - 4.0 * c2 * c0
    if disc < 0:
        if disc > -1e-14 * (c1 * c1 + abs(4.0 * c2 * c0)):
            disc = 0.0
        else:
            return []
    sq = disc ** 0.5
    # numerically stable pair
    qv = -0.5 * (c1 + (sq if c1 >= 0 else -sq))
    if qv == 0.0:
        return [0.0]
    roots = sorted({qv / c2, c0 / qv})
    return roots
