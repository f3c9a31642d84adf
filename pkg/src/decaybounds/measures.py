"""Integral-transform representations of the supported function classes.

Two catalogs are provided: completely monotonic functions written as
f(x) = int_0^inf exp(-x tau) w(tau) dtau + sum_i w_i exp(-x tau_i)
(``LaplaceMeasure``: density w on (0, support_upper] plus positive atoms),
and Markov-type functions written as
f(x) = int_{-inf}^{upper} v(omega) / (x - omega) domega
(``CauchyMeasure``: density v on (-inf, support_upper], upper <= 0).

Every catalog entry carries the closed-form f so representations can be
validated by quadrature reconstruction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import erf, exp1

from .quadrature import integrate, integrate_semi_infinite


@dataclass(frozen=True)
class LaplaceMeasure:
    name: str
    closed_form: object
    density: object = None           # vectorized w(tau) on (0, support_upper]
    support_upper: float = math.inf
    singularity_exponent: float = 0.0  # w(tau) ~ tau**p as tau -> 0+
    atoms: tuple = ()                # ((location > 0, weight > 0), ...)

    def __post_init__(self):
        for loc, weight in self.atoms:
            if loc <= 0 or weight <= 0:
                raise ValueError("atoms must have positive location and weight")

    @property
    def has_representation(self):
        return self.density is not None or bool(self.atoms)

    def reconstruct(self, x, tol=1e-10):
        """Evaluate f(x) from the representation (quadrature + atoms)."""
        if not self.has_representation:
            raise ValueError(
                f"measure {self.name!r} is a catalog stub without a stored "
                "density; only its closed form is available")
        total = 0.0
        if self.density is not None:
            f = lambda t: np.exp(-x * t) * self.density(t)
            if math.isinf(self.support_upper):
                r = integrate_semi_infinite(f, 0.0, tol,
                                            singularity_a=self.singularity_exponent)
            else:
                r = integrate(f, 0.0, self.support_upper, tol,
                              singularity_a=self.singularity_exponent)
            if not r.converged:
                raise RuntimeError(f"reconstruction quadrature failed for {self.name}")
            total += r.value
        for loc, weight in self.atoms:
            total += weight * math.exp(-x * loc)
        return total


@dataclass(frozen=True)
class CauchyMeasure:
    name: str
    closed_form: object
    density: object                  # vectorized v(omega), omega <= support_upper
    support_upper: float = 0.0
    singularity_exponent: float = 0.0  # |v| ~ (upper - omega)**p near the upper end
    laplace_transform: object = None   # closed-form g(tau) = int exp(tau w) dgamma(w)
    transform_singularity: float = 0.0  # g(tau) ~ tau**p as tau -> 0+
    signed: bool = False
    # Oscillatory |density| tails make total-variation integrals expensive;
    # beyond tail_start (in s = -omega) the bounds may integrate this smooth
    # pointwise upper envelope instead, staying rigorous.
    tail_envelope: object = None
    tail_start: float = math.inf

    def __post_init__(self):
        if self.support_upper > 0:
            raise ValueError("support must lie in (-inf, 0]")

    def density_s(self, s):
        """Density in the reflected variable s = -omega >= -support_upper."""
        return self.density(-np.asarray(s, dtype=float))

    def abs_density_s(self, s):
        """|v(-s)|: the bounds integrate against the total variation."""
        return np.abs(self.density_s(s))

    def reconstruct(self, x, tol=1e-10):
        """Evaluate f(x) = int v(omega)/(x - omega) domega by quadrature."""
        s0 = -self.support_upper
        f = lambda s: self.density_s(s) / (x + s)
        r = integrate_semi_infinite(f, s0, tol,
                                    singularity_a=self.singularity_exponent)
        if not r.converged:
            raise RuntimeError(f"reconstruction quadrature failed for {self.name}")
        return r.value


def _parse_parameter(name, key):
    head, _, rest = name.partition(":")
    if head != key or not rest:
        raise ValueError(f"expected {key}:<value>, got {name!r}")
    return float(rest)


def laplace_catalog(name):
    """Named completely monotonic functions with their transform data.

    ``inv``, ``exp``, ``phi1``, ``inv_sqrt``, ``inv_pow:<sigma>``,
    ``log1p_inv`` and ``exp_inv`` (the last is a stub: no representation
    with positive atom locations exists because of its unit jump at 0).
    """
    if name == "inv":
        return LaplaceMeasure(
            name="inv",
            closed_form=lambda x: 1.0 / x,
            density=lambda t: np.ones_like(np.asarray(t, dtype=float)),
        )
    if name == "exp":
        return LaplaceMeasure(
            name="exp",
            closed_form=lambda x: np.exp(-x),
            atoms=((1.0, 1.0),),
        )
    if name == "phi1":
        return LaplaceMeasure(
            name="phi1",
            closed_form=lambda x: -np.expm1(-x) / x,
            density=lambda t: np.ones_like(np.asarray(t, dtype=float)),
            support_upper=1.0,
        )
    if name == "inv_sqrt":
        c = 1.0 / math.sqrt(math.pi)
        return LaplaceMeasure(
            name="inv_sqrt",
            closed_form=lambda x: x ** -0.5,
            density=lambda t: c * np.asarray(t, dtype=float) ** -0.5,
            singularity_exponent=-0.5,
        )
    if name.startswith("inv_pow"):
        sigma = _parse_parameter(name, "inv_pow")
        if sigma <= 0:
            raise ValueError(f"inv_pow requires sigma > 0, got {sigma}")
        c = 1.0 / math.gamma(sigma)
        return LaplaceMeasure(
            name=name,
            closed_form=lambda x: x ** -sigma,
            density=lambda t: c * np.asarray(t, dtype=float) ** (sigma - 1.0),
            singularity_exponent=min(sigma - 1.0, 0.0),
        )
    if name == "log1p_inv":
        # Frullani: log(1 + 1/x) = int_0^inf exp(-x tau) (1 - exp(-tau))/tau dtau
        return LaplaceMeasure(
            name="log1p_inv",
            closed_form=lambda x: np.log1p(1.0 / x),
            density=lambda t: -np.expm1(-np.asarray(t, dtype=float)) / np.asarray(t, dtype=float),
        )
    if name == "exp_inv":
        return LaplaceMeasure(
            name="exp_inv",
            closed_form=lambda x: np.exp(1.0 / x),
        )
    raise ValueError(f"unknown Laplace-class function {name!r}")


def cauchy_catalog(name):
    """Named Markov-type functions with support on (-inf, 0].

    ``inv_sqrt``, ``expsqrt:<t>`` and ``log1p_over_z``.
    """
    if name == "inv_sqrt":
        return CauchyMeasure(
            name="inv_sqrt",
            closed_form=lambda x: x ** -0.5,
            density=lambda w: 1.0 / (math.pi * np.sqrt(-np.asarray(w, dtype=float))),
            support_upper=0.0,
            singularity_exponent=-0.5,
            laplace_transform=lambda t: 1.0 / np.sqrt(math.pi * t),
            transform_singularity=-0.5,
        )
    if name.startswith("expsqrt"):
        tpar = _parse_parameter(name, "expsqrt")
        if tpar <= 0:
            raise ValueError(f"expsqrt requires t > 0, got {tpar}")

        def density(w):
            w = np.asarray(w, dtype=float)
            return np.sin(tpar * np.sqrt(-w)) / (-math.pi * w)

        # This density represents (1 - exp(-t sqrt(z)))/z: it is positive
        # near omega = 0 and the transform at z -> inf carries total mass
        # +1, so the sign-consistent closed form is the one below.
        return CauchyMeasure(
            name=name,
            closed_form=lambda x: -np.expm1(-tpar * np.sqrt(x)) / x,
            density=density,
            support_upper=0.0,
            singularity_exponent=-0.5,
            laplace_transform=lambda t: erf(tpar / (2.0 * np.sqrt(t))),
            signed=True,
            tail_envelope=lambda s: np.minimum(
                tpar / (math.pi * np.sqrt(np.asarray(s, dtype=float))),
                1.0 / (math.pi * np.asarray(s, dtype=float))),
            tail_start=(32.0 * math.pi / tpar) ** 2,
        )
    if name == "log1p_over_z":
        return CauchyMeasure(
            name="log1p_over_z",
            closed_form=lambda x: np.log1p(x) / x,
            density=lambda w: 1.0 / (-np.asarray(w, dtype=float)),
            support_upper=-1.0,
            laplace_transform=lambda t: exp1(t),
        )
    raise ValueError(f"unknown Cauchy-class function {name!r}")


def laplace_transform_of_cauchy(measure, tau, tol=1e-10, use_abs=False):
    """g(tau) = int_{-inf}^{upper} exp(tau omega) dgamma(omega), tau > 0.

    The stored closed form is used when available; for total-variation
    integrals of signed measures (``use_abs=True``) or measures without a
    closed form, the integral is evaluated by semi-infinite quadrature.
    Raises when the quadrature does not converge (divergent integrals are
    reported the same way, with a diagnostic).
    """
    if tau <= 0:
        raise ValueError("the transform needs tau > 0")
    if measure.laplace_transform is not None and not (use_abs and measure.signed):
        return float(measure.laplace_transform(tau))
    dens = measure.abs_density_s if use_abs else measure.density_s
    s0 = -measure.support_upper
    f = lambda s: np.exp(-tau * s) * dens(s)
    r = integrate_semi_infinite(f, s0, tol,
                                singularity_a=measure.singularity_exponent)
    if not r.converged:
        raise RuntimeError(
            f"Laplace transform of {measure.name} did not converge at tau={tau}; "
            "the integral may be divergent")
    return r.value
