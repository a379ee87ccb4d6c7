"""Exact integrals of (polynomial x Gaussian) over R^2n.

Everything here is driven by the identity

    integral p(xi) exp(-(xi-s)^T Q (xi-s)) dxi
        = pi^(D/2)/sqrt(det Q) * E[p(Y + s)],  Y ~ N(0, Q^-1/2),

with the central moments E[Y_i1 ... Y_ik] evaluated by Wick/Isserlis pairing.
Polynomials are kept as dense maps from exponent tuples to complex
coefficients; degrees stay <= 6 here (|P|^2 |xi|^2 with P quadratic), so no
sparse machinery is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as _iterprod
from math import comb

import numpy as np

__all__ = [
    "MAX_DEGREE",
    "PolyExpr",
    "GaussianWeight",
    "poly_product",
    "squared_radius",
    "integrate_poly_gaussian",
]

MAX_DEGREE = 6


class PolyExpr:
    """Complex-coefficient polynomial in D real variables, total degree <= 6."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[tuple[int, ...], complex] | None = None):
        self.nvars = int(nvars)
        self.terms: dict[tuple[int, ...], complex] = {}
        if terms:
            for mono, coef in terms.items():
                if len(mono) != self.nvars:
                    raise ValueError("exponent tuple length does not match nvars")
                if sum(mono) > MAX_DEGREE:
                    raise ValueError(f"monomial degree {sum(mono)} exceeds {MAX_DEGREE}")
                if coef != 0:
                    self.terms[tuple(int(k) for k in mono)] = complex(coef)

    @classmethod
    def constant(cls, nvars: int, value: complex) -> "PolyExpr":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def affine(cls, coeffs, const: complex = 0.0) -> "PolyExpr":
        """const + sum_i coeffs[i] * xi_i."""
        coeffs = np.asarray(coeffs, dtype=complex)
        nvars = coeffs.size
        terms: dict[tuple[int, ...], complex] = {(0,) * nvars: complex(const)}
        for i, ci in enumerate(coeffs):
            if ci != 0:
                mono = [0] * nvars
                mono[i] = 1
                terms[tuple(mono)] = complex(ci)
        return cls(nvars, terms)

    @property
    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def __add__(self, other):
        if np.isscalar(other):
            other = PolyExpr.constant(self.nvars, other)
        out = dict(self.terms)
        for mono, coef in other.terms.items():
            out[mono] = out.get(mono, 0.0) + coef
        return PolyExpr(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return PolyExpr(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if np.isscalar(other):
            other = PolyExpr.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if np.isscalar(other):
            return PolyExpr(self.nvars, {m: c * other for m, c in self.terms.items()})
        return poly_product(self, other)

    __rmul__ = __mul__

    def conjugate(self) -> "PolyExpr":
        """Complex conjugate (the variables are real)."""
        return PolyExpr(self.nvars, {m: np.conj(c) for m, c in self.terms.items()})

    def shifted(self, shift) -> "PolyExpr":
        """Polynomial q with q(y) = p(y + shift)."""
        shift = np.asarray(shift, dtype=float)
        if shift.shape != (self.nvars,):
            raise ValueError("shift length does not match nvars")
        out: dict[tuple[int, ...], complex] = {}
        for mono, coef in self.terms.items():
            # per-variable binomial expansion of prod (y_i + s_i)^k_i
            choices = []
            for i, k in enumerate(mono):
                si = shift[i]
                if k == 0:
                    choices.append([(0, 1.0)])
                elif si == 0.0:
                    choices.append([(k, 1.0)])
                else:
                    choices.append([(j, comb(k, j) * si ** (k - j)) for j in range(k + 1)])
            for combo in _iterprod(*choices):
                new_mono = tuple(j for j, _ in combo)
                w = coef
                for _, f in combo:
                    w *= f
                out[new_mono] = out.get(new_mono, 0.0) + w
        return PolyExpr(self.nvars, out)

    def __call__(self, x) -> complex | np.ndarray:
        x = np.asarray(x, dtype=float)
        total = np.zeros(x.shape[:-1], dtype=complex)
        for mono, coef in self.terms.items():
            term = np.full(x.shape[:-1], coef, dtype=complex)
            for i, k in enumerate(mono):
                if k:
                    term = term * x[..., i] ** k
            total += term
        return complex(total) if total.ndim == 0 else total

    def __repr__(self):
        return f"PolyExpr(nvars={self.nvars}, nterms={len(self.terms)}, degree={self.degree})"


def poly_product(a: PolyExpr, b: PolyExpr) -> PolyExpr:
    """Coefficient-wise convolution; raises if the combined degree exceeds 6."""
    if a.nvars != b.nvars:
        raise ValueError("polynomials act on different variable counts")
    if a.degree + b.degree > MAX_DEGREE:
        raise ValueError(f"product degree {a.degree + b.degree} exceeds {MAX_DEGREE}")
    out: dict[tuple[int, ...], complex] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            mono = tuple(ka + kb for ka, kb in zip(ma, mb))
            out[mono] = out.get(mono, 0.0) + ca * cb
    return PolyExpr(a.nvars, out)


def squared_radius(nvars: int) -> PolyExpr:
    """sum_i xi_i^2."""
    terms = {}
    for i in range(nvars):
        mono = [0] * nvars
        mono[i] = 2
        terms[tuple(mono)] = 1.0
    return PolyExpr(nvars, terms)


@dataclass(frozen=True)
class GaussianWeight:
    """scale * exp(-(xi - shift)^T precision (xi - shift)) on R^nvars."""

    precision: np.ndarray
    shift: np.ndarray
    scale: float = 1.0

    def __post_init__(self):
        Q = np.asarray(self.precision, dtype=float).copy()
        s = np.atleast_1d(np.asarray(self.shift, dtype=float)).copy()
        if Q.ndim != 2 or Q.shape[0] != Q.shape[1] or s.shape != (Q.shape[0],):
            raise ValueError("precision must be square and match the shift length")
        Q = 0.5 * (Q + Q.T)
        if np.linalg.eigvalsh(Q).min() <= 0.0:
            raise ValueError("precision matrix is not positive definite")
        Q.flags.writeable = False
        s.flags.writeable = False
        object.__setattr__(self, "precision", Q)
        object.__setattr__(self, "shift", s)

    @property
    def nvars(self) -> int:
        return self.precision.shape[0]


def _central_moment(indices: tuple[int, ...], cov: np.ndarray, memo: dict) -> float:
    """E[prod_k Y_{indices[k]}] for Y ~ N(0, cov), by recursive Isserlis pairing."""
    if len(indices) % 2:
        return 0.0
    if not indices:
        return 1.0
    got = memo.get(indices)
    if got is not None:
        return got
    first, rest = indices[0], indices[1:]
    total = 0.0
    for j in range(len(rest)):
        sub = rest[:j] + rest[j + 1 :]
        total += cov[first, rest[j]] * _central_moment(sub, cov, memo)
    memo[indices] = total
    return total


def integrate_poly_gaussian(p: PolyExpr, w: GaussianWeight) -> complex:
    """Exact value of integral p(xi) * w(xi) dxi over R^nvars."""
    if p.nvars != w.nvars:
        raise ValueError("polynomial and weight dimensions differ")
    D = w.nvars
    cov = np.linalg.inv(w.precision) / 2.0
    const = w.scale * np.pi ** (D / 2.0) / np.sqrt(np.linalg.det(w.precision))
    centered = p.shifted(w.shift) if np.any(w.shift) else p
    memo: dict = {}
    total = 0.0 + 0.0j
    for mono, coef in centered.terms.items():
        idx = tuple(i for i, k in enumerate(mono) for _ in range(k))
        total += coef * _central_moment(idx, cov, memo)
    return complex(const * total)
