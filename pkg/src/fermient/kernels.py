"""Closed-form position-space kernels of Fermi projections.

For a bounded momentum region gamma, the spectral projection onto
momenta in gamma acts by convolution with

    K(u) = (2*pi)^(-d) * integral_gamma exp(i p . u) dp,   u = q - q',

and every shape in the catalog admits a closed form: sinc combinations
for interval unions, per-axis products for boxes, and Bessel or
elementary radial forms for balls.  Kernels are Hermitian for any
gamma (K(-u) = conj(K(u))) and real exactly when gamma = -gamma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import j1

from .geometry import Ball, Box, Domain, GeometryError, IntervalUnion, TWO_PI

__all__ = ["FermiKernel", "fermi_kernel", "kernel_eval", "is_hermitian_sample"]

# Below this |p_F * r| the Bessel/elementary radial forms switch to
# Taylor branches: the d=3 numerator sin(x) - x*cos(x) loses ~x^{-2}
# relative digits to cancellation, and both forms divide by powers of r.
_SMALL_ARGUMENT = 0.25


def _interval_union_kernel(intervals, u):
    """Kernel of a union of momentum intervals at displacements u.

    Each interval [a, b] contributes (e^{ibu} - e^{iau}) / (2*pi*i*u),
    evaluated in the equivalent singularity-free form

        (len / 2*pi) * sinc(len * u / 2*pi) * e^{i * mid * u},

    np.sinc being sin(pi x)/(pi x) with the u = 0 limit built in.
    """
    out = np.zeros(np.shape(u), dtype=complex)
    for a, b in intervals:
        length = b - a
        mid = 0.5 * (a + b)
        out += (length / TWO_PI) * np.sinc(length * u / TWO_PI) \
            * np.exp(1j * mid * u)
    return out


def _ball_radial(p_fermi, d, r):
    """Radial factor of the ball kernel at centered displacement radii r."""
    shape = np.shape(r)
    r = np.atleast_1d(np.asarray(r, dtype=float))
    x = p_fermi * r
    small = np.abs(x) < _SMALL_ARGUMENT
    out = np.empty_like(r)
    if d == 2:
        # p_F^2 / (2*pi) * J1(x)/x, with J1(x)/x -> 1/2 as x -> 0.
        xs = x[small]
        x2 = xs * xs
        out[small] = p_fermi ** 2 / TWO_PI * (
            0.5 - x2 / 16.0 + x2 * x2 / 384.0 - x2 ** 3 / 18432.0
        )
        xl = x[~small]
        out[~small] = p_fermi ** 2 / TWO_PI * j1(xl) / xl
        return out.reshape(shape)
    if d == 3:
        # (sin x - x cos x) / (2*pi^2 r^3); the numerator's Taylor series
        # is sum_{k>=1} (-1)^{k+1} * 2k * x^{2k+1} / (2k+1)!.
        xs = x[small]
        x2 = xs * xs
        series = (1.0 / 3.0) + x2 * (-1.0 / 30.0 + x2 * (
            1.0 / 840.0 + x2 * (-1.0 / 45360.0 + x2 / 3991680.0)))
        out[small] = p_fermi ** 3 / (2.0 * math.pi ** 2) * series
        xl = x[~small]
        rl = r[~small]
        out[~small] = (np.sin(xl) - xl * np.cos(xl)) \
            / (2.0 * math.pi ** 2 * rl ** 3)
        return out.reshape(shape)
    raise GeometryError(f"no radial ball kernel in d={d}")


@dataclass(frozen=True)
class FermiKernel:
    """Translation-invariant kernel of the projection onto momenta in gamma.

    Immutable and reentrant; all evaluation is vectorized over
    displacement arrays.  ConvexPolygon momentum regions are out of
    scope (no catalog closed form).
    """

    gamma: Domain

    def __post_init__(self):
        g = self.gamma
        if isinstance(g, (IntervalUnion, Box)):
            return
        if isinstance(g, Ball) and g.dim in (1, 2, 3):
            return
        raise GeometryError(
            f"no closed-form Fermi kernel for {type(g).__name__}"
        )

    @property
    def dim(self) -> int:
        return self.gamma.dim

    @property
    def is_real(self) -> bool:
        return self.gamma.is_centrally_symmetric

    @property
    def diagonal_value(self) -> float:
        """K(0) = |gamma| / (2*pi)^d, the bulk particle density."""
        return self.gamma.volume() / TWO_PI ** self.dim

    def displacement(self, u) -> np.ndarray:
        """Kernel values at displacements u.

        u has shape (..., d) for d >= 2 and any shape for d = 1.
        Returns a complex array of the batch shape, or a real one when
        gamma is centrally symmetric (the exact kernel is then real, so
        the roundoff-level imaginary part is dropped).
        """
        g = self.gamma
        if self.dim == 1:
            u1 = np.asarray(u, dtype=float)
            vals = _interval_union_kernel(g.as_interval_union().intervals, u1)
        elif isinstance(g, Box):
            uv = np.asarray(u, dtype=float)
            vals = np.ones(uv.shape[:-1], dtype=complex)
            for axis, bounds in enumerate(g.bounds):
                vals = vals * _interval_union_kernel((bounds,), uv[..., axis])
        else:
            uv = np.asarray(u, dtype=float)
            center = np.array(g.center)
            r = np.sqrt(np.sum(uv * uv, axis=-1))
            radial = _ball_radial(g.radius, g.dim, r)
            if g.is_centrally_symmetric:
                vals = radial
            else:
                vals = radial * np.exp(1j * (uv @ center))
        if self.is_real and np.iscomplexobj(vals):
            return vals.real
        return vals

    def evaluate(self, q, q2) -> np.ndarray:
        """K(q, q2) on points or batches of points."""
        qa = np.asarray(q, dtype=float)
        qb = np.asarray(q2, dtype=float)
        if self.dim == 1:
            if qa.ndim and qa.shape[-1] == 1:
                qa = qa[..., 0]
            if qb.ndim and qb.shape[-1] == 1:
                qb = qb[..., 0]
        elif qa.shape[-1] != self.dim or qb.shape[-1] != self.dim:
            raise GeometryError(
                f"points of dimension {qa.shape[-1]} passed to a d={self.dim} kernel"
            )
        return self.displacement(qa - qb)


def fermi_kernel(gamma: Domain) -> FermiKernel:
    return FermiKernel(gamma)


def kernel_eval(kernel: FermiKernel, q, q2) -> complex:
    """Single-pair kernel value K(q, q2)."""
    val = kernel.evaluate(q, q2)
    return complex(val) if np.iscomplexobj(val) else float(val)


def is_hermitian_sample(kernel: FermiKernel, sample_pairs, tol: float = 1e-12,
                        evaluator=None) -> bool:
    """Check K(q, q') = conj(K(q', q)) on a list of point pairs.

    evaluator overrides the kernel's own evaluation (used by negative
    controls with deliberately corrupted kernels)."""
    ev = evaluator if evaluator is not None else kernel.evaluate
    for q, q2 in sample_pairs:
        forward = complex(np.asarray(ev(q, q2)))
        backward = complex(np.asarray(ev(q2, q)))
        if abs(forward - np.conj(backward)) > tol:
            return False
    return True
