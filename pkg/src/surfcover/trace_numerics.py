"""Test functions for the Selberg trace formula and numerical evaluation of its sides.

The bump psi0(x) = exp(-1/(1/4 - x^2)) lives on (-1/2, 1/2) and
phi0 = psi0 * psi0 (convolution) on (-1, 1). Since psi0 is even, its Fourier
transform is real, so the transform of phi0 is a square and is non-negative
on the real and imaginary axes.
"""

from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Mapping

import numpy as np
from scipy import integrate

QUAD_EPSREL = 1e-12
QUAD_TOLERANCE = 1e-10  # accepted error relative to max(|value|, scale)
# transforms are measured against hat(psi0)(0), roughly 7e-3
TRANSFORM_SCALE = 7e-3
QUAD_LIMIT = 400
GENUS_TWO_AREA = 4 * math.pi


class QuadratureError(ArithmeticError):
    """Raised when adaptive quadrature does not reach its tolerance."""


def _quad(func, lo, hi, scale: float = 0.0, **kwargs) -> float:
    """Adaptive quadrature; fails when the error estimate exceeds the tolerance."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        value, abserr = integrate.quad(
            func, lo, hi, epsabs=QUAD_EPSREL * scale, epsrel=QUAD_EPSREL, limit=QUAD_LIMIT, **kwargs
        )
    if not abserr <= QUAD_TOLERANCE * max(abs(value), scale):
        raise QuadratureError(f"error estimate {abserr:.3g} on [{lo}, {hi}] exceeds tolerance")
    return value


def psi0(x: float) -> float:
    gap = 0.25 - x * x
    if gap <= 0:
        return 0.0
    return math.exp(-1.0 / gap)


@lru_cache(maxsize=1 << 16)
def phi0(x: float) -> float:
    """Self-convolution of psi0, by quadrature over the overlap of the supports."""
    x = abs(x)
    if x >= 1:
        return 0.0
    lo, hi = x - 0.5, 0.5
    return _quad(lambda t: psi0(x - t) * psi0(t), lo, hi)


def psi0_hat(xi: complex) -> float:
    """Fourier transform of psi0 at a real or purely imaginary point."""
    xi = complex(xi)
    if xi.real != 0 and xi.imag != 0:
        raise ValueError("xi must be real or purely imaginary")
    if xi.imag == 0:
        r = abs(xi.real)
        if r == 0:
            return 2 * _quad(psi0, 0, 0.5)
        return 2 * _quad(psi0, 0, 0.5, TRANSFORM_SCALE, weight="cos", wvar=r)
    t = abs(xi.imag)
    return 2 * _quad(lambda x: psi0(x) * math.cosh(t * x), 0, 0.5)


def phi0_hat(xi: complex) -> float:
    """Fourier transform of phi0 through the convolution theorem."""
    return psi0_hat(xi) ** 2


def phi0_hat_direct(xi: complex) -> float:
    """Fourier transform of phi0 by direct quadrature of phi0 (independent route)."""
    xi = complex(xi)
    if xi.imag == 0:
        r = abs(xi.real)
        if r == 0:
            return 2 * _quad(phi0, 0, 1)
        return 2 * _quad(phi0, 0, 1, TRANSFORM_SCALE, weight="cos", wvar=r)
    t = abs(xi.imag)
    return 2 * _quad(lambda x: phi0(x) * math.cosh(t * x), 0, 1)


@dataclass(frozen=True)
class TestFunction:
    """phi_T(x) = phi0(x / T), supported on (-T, T)."""

    T: float

    __test__ = False  # not a pytest class

    def __post_init__(self):
        if not self.T > 0:
            raise ValueError("T must be positive")

    def __call__(self, x: float) -> float:
        return phi0(x / self.T)

    @property
    def support(self) -> float:
        return self.T

    def fourier(self, xi: complex) -> float:
        """Transform via the scaling relation hat(phi_T)(xi) = T hat(phi0)(T xi)."""
        return self.T * phi0_hat(complex(xi) * self.T)

    def fourier_direct(self, xi: complex) -> float:
        """Transform by quadrature of phi_T itself."""
        xi = complex(xi)
        T = self.T
        if xi.imag == 0:
            r = abs(xi.real)
            if r == 0:
                return 2 * _quad(self, 0, T)
            return 2 * _quad(self, 0, T, TRANSFORM_SCALE * T, weight="cos", wvar=r)
        t = abs(xi.imag)
        return 2 * _quad(lambda x: self(x) * math.cosh(t * x), 0, T)


def build_phi(T: float) -> TestFunction:
    return TestFunction(float(T))


def fourier(f: TestFunction, xi: complex) -> float:
    return f.fourier(xi)


@lru_cache(maxsize=64)
def c_eps(eps: float) -> float:
    """Mass of phi0 on [1 - eps, 1]; the constant of the exponential lower bound."""
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    return _quad(phi0, 1 - eps, 1)


def fourier_lower_bound(T: float, t: float, eps: float) -> float:
    """C_eps T exp(T (1 - eps) t)."""
    return c_eps(eps) * T * math.exp(T * (1 - eps) * t)


# --- integral term -------------------------------------------------------


@lru_cache(maxsize=4)
def _first_moment_envelope(cutoff: float = 200.0) -> float:
    """Integral of |r| |hat(phi0)(r)| over r >= 0, truncated where the transform is negligible."""
    return _quad(lambda r: r * abs(phi0_hat(r)), 0, cutoff)


def integral_term(T: float, cutoff: float = 200.0) -> float:
    """Integral over the real line of r hat(phi_T)(r) tanh(pi r), in the rescaled form."""
    inner = _quad(lambda r: r * phi0_hat(r) * math.tanh(math.pi * r / T), 0, cutoff)
    return 2 * inner / T


def integral_term_bound(T: float, cutoff: float = 200.0) -> float:
    return 2 * _first_moment_envelope(cutoff) / T


# --- length spectra ------------------------------------------------------


@dataclass(frozen=True)
class LengthRecord:
    length: float
    primitive_length: float
    multiplicity: int = 1

    def __post_init__(self):
        if not (self.length > 0 and self.primitive_length > 0):
            raise ValueError("lengths must be positive")
        if self.primitive_length > self.length * (1 + 1e-12):
            raise ValueError("primitive length exceeds length")
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")
        k = self.length / self.primitive_length
        if abs(k - round(k)) > 1e-6:
            raise ValueError(f"length {self.length} is not a multiple of {self.primitive_length}")

    @property
    def power(self) -> int:
        return round(self.length / self.primitive_length)

    @property
    def is_primitive(self) -> bool:
        return self.power == 1


@dataclass(frozen=True)
class LengthSpectrum:
    records: tuple[LengthRecord, ...]
    source: str = ""

    def primitive(self) -> list[LengthRecord]:
        return [r for r in self.records if r.is_primitive]

    def nonprimitive(self) -> list[LengthRecord]:
        return [r for r in self.records if not r.is_primitive]

    @property
    def max_length(self) -> float:
        return max((r.length for r in self.records), default=0.0)

    def count_up_to(self, T: float) -> int:
        return sum(r.multiplicity for r in self.records if r.length <= T)

    def to_csv(self) -> str:
        out = io.StringIO()
        if self.source:
            out.write(f"# source: {self.source}\n")
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["length", "primitive_length", "multiplicity"])
        for r in self.records:
            writer.writerow([repr(r.length), repr(r.primitive_length), r.multiplicity])
        return out.getvalue()


def parse_spectrum(text: str, source: str = "") -> LengthSpectrum:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    reader = csv.DictReader(lines)
    expected = {"length", "primitive_length", "multiplicity"}
    if reader.fieldnames is None or set(reader.fieldnames) != expected:
        raise ValueError(f"spectrum header must be {sorted(expected)}")
    records = tuple(
        LengthRecord(float(row["length"]), float(row["primitive_length"]), int(row["multiplicity"]))
        for row in reader
    )
    return LengthSpectrum(records, source)


def read_spectrum(path: str | Path) -> LengthSpectrum:
    path = Path(path)
    return parse_spectrum(path.read_text(), source=str(path))


def synthetic_spectrum(max_length: float, density: float = 1.0, shortest: float = 1.0, powers: int = 3) -> LengthSpectrum:
    """Spectrum with about density * e^L primitive geodesics up to length L, plus their powers.

    Primitive lengths are spread over unit windows [m, m + 1); each window
    holds round(density * (e^{m+1} - e^m)) geodesics split over a few lengths.
    """
    records = []
    prims = []
    m = math.floor(shortest)
    while m < max_length:
        count = max(1, round(density * (math.exp(m + 1) - math.exp(m))))
        slots = 4
        for j in range(slots):
            ell = max(shortest, m + (j + 0.5) / slots)
            if ell > max_length:
                continue
            mult = count // slots + (1 if j < count % slots else 0)
            if mult:
                prims.append((ell, mult))
        m += 1
    for ell, mult in prims:
        records.append(LengthRecord(ell, ell, mult))
        for k in range(2, powers + 1):
            if k * ell <= max_length:
                records.append(LengthRecord(k * ell, ell, mult))
    records.sort(key=lambda r: (r.length, r.primitive_length))
    return LengthSpectrum(tuple(records), source=f"synthetic(max_length={max_length}, density={density})")


# --- geometric side -------------------------------------------------------


def _hyperbolic_weight(ell: float) -> float:
    return 1.0 / (2.0 * math.sinh(ell / 2.0))


@dataclass(frozen=True)
class GeometricSide:
    T: float
    primitive_sum: float
    nonprimitive_term: float | None  # exact bottom line, if lift data was supplied
    nonprimitive_bound: float | None  # n times the non-primitive sum, if n was supplied
    missing_discrepancies: int

    def as_dict(self) -> dict:
        return {
            "T": self.T,
            "primitive_sum": self.primitive_sum,
            "nonprimitive_term": self.nonprimitive_term,
            "nonprimitive_bound": self.nonprimitive_bound,
            "missing_discrepancies": self.missing_discrepancies,
        }


def _lookup(table: Mapping[float, float], ell: float):
    for key, value in table.items():
        if math.isclose(float(key), ell, rel_tol=1e-9, abs_tol=1e-12):
            return value
    return None


def geometric_side(
    spectrum: LengthSpectrum,
    T: float,
    fix_discrepancy: Mapping[float, float],
    n: int | None = None,
    lift_sums: Mapping[float, float] | None = None,
) -> GeometricSide:
    """Difference of geometric sides between a degree-n cover and the base surface.

    The discrepancy of a primitive class is fix - 1, keyed by its length.
    Records beyond the support of phi_T contribute nothing. For non-primitive
    records, lift_sums gives the sum of primitive lengths of the lifts; the
    bound replaces it by n times the length.
    """
    phi = build_phi(T)
    missing = 0
    primitive_sum = 0.0
    for r in spectrum.primitive():
        if r.length >= T:
            continue
        disc = _lookup(fix_discrepancy, r.length)
        if disc is None:
            missing += 1
            continue
        primitive_sum += r.multiplicity * float(disc) * r.length * _hyperbolic_weight(r.length) * phi(r.length)
    if missing:
        warnings.warn(f"{missing} primitive classes have no discrepancy; treated as 0")
    exact = None
    if lift_sums is not None:
        exact = 0.0
        for r in spectrum.nonprimitive():
            if r.length >= T:
                continue
            lifted = _lookup(lift_sums, r.length)
            if lifted is None:
                raise KeyError(f"no lift data for length {r.length}")
            exact += r.multiplicity * (float(lifted) - r.primitive_length) * _hyperbolic_weight(r.length) * phi(r.length)
    bound = None
    if n is not None:
        bound = n * sum(
            r.multiplicity * r.length * _hyperbolic_weight(r.length) * phi(r.length)
            for r in spectrum.nonprimitive()
            if r.length < T
        )
    return GeometricSide(T, primitive_sum, exact, bound, missing)


# --- bound pipeline -------------------------------------------------------


@dataclass(frozen=True)
class PipelineReport:
    n: int
    T: float
    eps: float
    word_length_cutoff: float
    spectrum_complete: bool
    integral_term: float
    integral_bound: float
    nonprimitive_bound: float
    primitive_envelope: float
    primitive_bound: float
    expectation_bound: float
    markov_threshold: float
    markov_probability: float
    amplifier_lower_bound: float
    label: str = "DEMONSTRATION: numbers only, no probabilistic claim"
    notes: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def bound_pipeline_demo(spectrum: LengthSpectrum, n: int, c: float = 1.0, A: float = 1.0, eps: float = 0.01) -> PipelineReport:
    """Assemble the chain bounding the expected transform at the smallest new eigenvalue.

    With T = 4 log n: the integral term and its envelope, the non-primitive
    bound, and the primitive sum weighted by (log n)^A / n. The Markov step
    divides the total by n^{1 + eps}.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    T = 4 * math.log(n)
    phi = build_phi(T)
    notes = []
    complete = spectrum.max_length >= T
    if not complete:
        notes.append(f"spectrum ends at {spectrum.max_length:.3f} < T = {T:.3f}; sums are truncated")
    area_factor = (n - 1) * GENUS_TWO_AREA / (4 * math.pi)
    integral = area_factor * integral_term(T)
    integral_env = area_factor * integral_term_bound(T)
    nonprim = 0.0
    for r in spectrum.primitive():
        k = 2
        while k * r.length < T:
            ell = k * r.length
            nonprim += r.multiplicity * ell * _hyperbolic_weight(ell) * phi(ell)
            k += 1
    nonprim *= n
    envelope = sum(
        r.multiplicity * r.length * _hyperbolic_weight(r.length) * phi(r.length)
        for r in spectrum.primitive()
        if r.length < T
    )
    primitive = (math.log(n) ** A / n) * envelope
    total = abs(integral) + nonprim + primitive
    threshold = n ** (1 + eps)
    amplifier = fourier_lower_bound(T, 0.25 + eps, eps)
    return PipelineReport(
        n=n,
        T=T,
        eps=eps,
        word_length_cutoff=c * math.log(n),
        spectrum_complete=complete,
        integral_term=integral,
        integral_bound=integral_env,
        nonprimitive_bound=nonprim,
        primitive_envelope=envelope,
        primitive_bound=primitive,
        expectation_bound=total,
        markov_threshold=threshold,
        markov_probability=total / threshold,
        amplifier_lower_bound=amplifier,
        notes=notes,
    )


def nonnegativity_grid(real_max: float = 100.0, imag_max: float = 5.0, step: float = 0.01) -> tuple[float, float]:
    """Minimum of hat(phi0) over grids on the real and imaginary axes."""
    real = np.arange(0.0, real_max + step / 2, step)
    imag = np.arange(0.0, imag_max + step / 2, step)
    return (
        min(phi0_hat(float(r)) for r in real),
        min(phi0_hat(1j * float(t)) for t in imag),
    )
