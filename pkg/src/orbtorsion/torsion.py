"""Closed-form heat-trace terms and their asymptotic structure.

The elliptic Mellin value is the alternating sum over twists of exact
antiderivatives of class polynomials, integrated from 0 to the matching
spectral shift, weighted per conjugacy class.  The identity value uses the
block-count ``n+1`` stand-in (proportional to, not equal to, the true
Plancherel-weighted sum, whose normalisation is not pinned down here)
unless explicit per-twist coefficient lists are supplied.

Everything stays exact as long as class weights are rational; rotation
angles enter only through Laurent exponents, so Mellin values are carried
as maps from exponent vectors to rationals and substituted numerically
only for reporting.  When every angle denominator divides 4 the phase
factors are powers of i and the substitution itself is exact.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .algebra import Exponents, NuPolynomial, PhasePolynomial
from .elliptic import alternating_sum, class_polynomial, coefficient_table, identity_alternating_sum
from .lie import EllipticClass, RayConfig, spectral_shift, spectral_shifts, weyl_dimension

PhaseMap = dict[Exponents, Fraction]


@dataclass(frozen=True)
class OrbifoldData:
    """Orbifold-level inputs: volume, elliptic classes, optional true identity data."""

    n: int
    volume: Fraction | float
    classes: tuple[EllipticClass, ...] = ()
    plancherel: tuple[tuple[Fraction, ...], ...] | None = None

    def __post_init__(self):
        if not (self.volume > 0):
            raise ValueError("volume must be positive")
        object.__setattr__(self, "classes", tuple(self.classes))
        for cls in self.classes:
            if not 1 <= cls.d <= self.n:
                raise ValueError(f"elliptic class block count {cls.d} out of range 1..{self.n}")
        if self.plancherel is not None:
            rows = tuple(tuple(Fraction(c) for c in row) for row in self.plancherel)
            if len(rows) != self.n + 1:
                raise ValueError(f"plancherel data needs {self.n + 1} coefficient lists")
            object.__setattr__(self, "plancherel", rows)


@dataclass(frozen=True)
class NormalizedValue:
    """A torsion-side quantity plus whether it rests on the stand-in normalisation."""

    value: Fraction | float | complex
    standin: bool


class InsufficientSamples(ValueError):
    """Not enough grid points to resolve the polynomial degree."""


def integrate_to(p, lam) -> Fraction | complex | PhaseMap:
    """Antiderivative vanishing at 0, evaluated at ``lam``.

    Accepts an exact polynomial (rational result), a phase polynomial
    (term-wise map of rationals), or a plain coefficient sequence that may
    be complex after phase substitution.
    """
    if lam < 0:
        raise ValueError("integration endpoint must be non-negative")
    if isinstance(p, NuPolynomial):
        return p.antiderivative_at(lam)
    if isinstance(p, PhasePolynomial):
        out: PhaseMap = {}
        for key, poly in p.terms.items():
            val = poly.antiderivative_at(lam)
            if val:
                out[key] = val
        return out
    total = 0j
    power = complex(lam)
    for j, c in enumerate(p):
        total += complex(c) * power / (j + 1)
        power *= lam
    return total


def _map_add(a: PhaseMap, b: PhaseMap, scale: Fraction = Fraction(1)) -> PhaseMap:
    out = dict(a)
    for key, val in b.items():
        s = out.get(key, Fraction(0)) + scale * val
        if s:
            out[key] = s
        elif key in out:
            del out[key]
    return out


def mellin_elliptic_maps(cfg: RayConfig, orb: OrbifoldData) -> list[PhaseMap]:
    """Per-class exact elliptic Mellin values as weighted exponent maps."""
    maps: list[PhaseMap] = []
    for cls in orb.classes:
        acc: PhaseMap = {}
        weight = Fraction(cls.weight)
        for k in range(cfg.n + 1):
            piece = integrate_to(class_polynomial(cfg, k, cls).value, spectral_shift(cfg, k))
            acc = _map_add(acc, piece, weight * (-1) ** k)
        maps.append(acc)
    return maps


def phase_value(key: Exponents, angles: Sequence[Fraction]) -> complex:
    """Numeric value of one Laurent monomial at the class's rotation angles."""
    turn = sum(Fraction(e) * a for e, a in zip(key, angles))
    return cmath.exp(2j * math.pi * float(turn))


def exact_phase_value(key: Exponents, angles: Sequence[Fraction]) -> tuple[Fraction, Fraction] | None:
    """Exact (re, im) of a monomial when every angle denominator divides 4."""
    power = 0
    for e, a in zip(key, angles):
        if 4 % a.denominator:
            return None
        power += e * a.numerator * (4 // a.denominator)
    return {
        0: (Fraction(1), Fraction(0)),
        1: (Fraction(0), Fraction(1)),
        2: (Fraction(-1), Fraction(0)),
        3: (Fraction(0), Fraction(-1)),
    }[power % 4]


def mellin_elliptic(cfg: RayConfig, orb: OrbifoldData) -> complex:
    """Elliptic Mellin value with numeric phase substitution (near-real)."""
    total = 0j
    for cls, phase_map in zip(orb.classes, mellin_elliptic_maps(cfg, orb)):
        for key, val in phase_map.items():
            total += float(val) * phase_value(key, cls.angles)
    return total


def mellin_elliptic_exact(cfg: RayConfig, orb: OrbifoldData) -> tuple[Fraction, Fraction] | None:
    """Exact (re, im) of the elliptic Mellin value, or None when angles forbid it."""
    re = Fraction(0)
    im = Fraction(0)
    for cls, phase_map in zip(orb.classes, mellin_elliptic_maps(cfg, orb)):
        for key, val in phase_map.items():
            parts = exact_phase_value(key, cls.angles)
            if parts is None:
                return None
            re += val * parts[0]
            im += val * parts[1]
    return re, im


def reduce_exponents(phase_map: PhaseMap, angles: Sequence[Fraction]) -> PhaseMap:
    """Collapse exponent keys to the per-angle residues that fix the phase factor.

    Two keys reduce to the same residue vector exactly when their phase
    factors agree as complex numbers, so reduced maps difference exactly
    along a residue class of the shift parameter.
    """
    out: PhaseMap = {}
    for key, val in phase_map.items():
        reduced = tuple((e * a.numerator) % a.denominator for e, a in zip(key, angles))
        s = out.get(reduced, Fraction(0)) + val
        if s:
            out[reduced] = s
        elif reduced in out:
            del out[reduced]
    return out


def mellin_elliptic_record(cfg: RayConfig, orb: OrbifoldData) -> PhaseMap:
    """Class-tagged reduced exponent map; an exact fingerprint of the value."""
    record: PhaseMap = {}
    for idx, (cls, phase_map) in enumerate(zip(orb.classes, mellin_elliptic_maps(cfg, orb))):
        for key, val in reduce_exponents(phase_map, cls.angles).items():
            record[(idx,) + key] = val
    return record


def standin_polynomials(cfg: RayConfig) -> list[NuPolynomial]:
    """Identity-class stand-in polynomials, one per twist (block count n+1)."""
    out = []
    for k in range(cfg.n + 1):
        poly = class_polynomial(cfg, k, cfg.n + 1).value
        out.append(poly.terms.get((), NuPolynomial.zero()))
    return out


def _even_from_coeffs(coeffs: Sequence[Fraction]) -> NuPolynomial:
    dense: list[Fraction] = []
    for c in coeffs:
        dense.extend((Fraction(c), Fraction(0)))
    return NuPolynomial(dense[:-1] if dense else ())


def identity_polynomials(cfg: RayConfig, orb: OrbifoldData) -> tuple[list[NuPolynomial], bool]:
    """Per-twist identity polynomials and whether they are the stand-in."""
    if orb.plancherel is not None:
        return [_even_from_coeffs(row) for row in orb.plancherel], False
    return standin_polynomials(cfg), True


def mellin_identity(cfg: RayConfig, orb: OrbifoldData) -> NormalizedValue:
    """Identity Mellin value: volume times the alternating integral sum."""
    polys, standin = identity_polynomials(cfg, orb)
    total = Fraction(0)
    for k, poly in enumerate(polys):
        total += (-1) ** k * poly.antiderivative_at(spectral_shift(cfg, k))
    if isinstance(orb.volume, (int, Fraction)):
        value: Fraction | float = Fraction(orb.volume) * total
    else:
        value = float(orb.volume) * float(total)
    return NormalizedValue(value, standin)


def l2_log_torsion(cfg: RayConfig, orb: OrbifoldData) -> NormalizedValue:
    """Half the identity Mellin value."""
    mi = mellin_identity(cfg, orb)
    return NormalizedValue(mi.value / 2, mi.standin)


def log_torsion(cfg: RayConfig, orb: OrbifoldData) -> NormalizedValue:
    """Half the sum of identity and elliptic Mellin values.

    Exponentially small corrections in the shift parameter are dropped, not
    computed.
    """
    mi = mellin_identity(cfg, orb)
    me = mellin_elliptic(cfg, orb)
    return NormalizedValue((complex(float(mi.value)) + me) / 2, mi.standin)


def gaussian_moment(i: int, t: float) -> float:
    """Exact Gaussian moment: integral of exp(-t x^2) x^(2i) over the line."""
    if t <= 0:
        raise ValueError("t must be positive")
    double_fact = 1.0
    for j in range(1, 2 * i, 2):
        double_fact *= j
    return double_fact / (2.0 * t) ** i * math.sqrt(math.pi / t)


def _alternating_heat_sum(polys_at_imag: Sequence[Sequence[complex]], shifts: Sequence[int], t: float) -> complex:
    total = 0j
    for k, coeffs in enumerate(polys_at_imag):
        gauss = sum(c * gaussian_moment(i, t) for i, c in enumerate(coeffs))
        total += (-1) ** (k + 1) * math.exp(-t * shifts[k] ** 2) * gauss
    return total


def _at_imag(coeffs: Sequence[complex]) -> list[complex]:
    # nu^{2i} evaluated on the imaginary axis contributes (-1)^i x^{2i}
    return [c * (-1) ** i for i, c in enumerate(coeffs)]


def heat_trace_identity(cfg: RayConfig, orb: OrbifoldData, t: float) -> float:
    """Identity heat-trace term in closed form via Gaussian moments."""
    if t <= 0:
        raise ValueError("t must be positive")
    polys, _ = identity_polynomials(cfg, orb)
    coeff_rows = [_at_imag([float(p.coefficient(2 * i)) for i in range(p.degree // 2 + 1)]) if p else [0.0]
                  for p in polys]
    value = 2.0 * float(orb.volume) * _alternating_heat_sum(coeff_rows, spectral_shifts(cfg), t)
    return value.real


def heat_trace_elliptic(cfg: RayConfig, orb: OrbifoldData, t: float) -> complex:
    """Elliptic heat-trace term in closed form via Gaussian moments."""
    if t <= 0:
        raise ValueError("t must be positive")
    shifts = spectral_shifts(cfg)
    total = 0j
    for cls in orb.classes:
        rows = [_at_imag(coefficient_table(cfg, k, cls)) for k in range(cfg.n + 1)]
        total += 2.0 * float(cls.weight) * _alternating_heat_sum(rows, shifts, t)
    return total


@dataclass(frozen=True)
class PseudoPolyReport:
    """Per-residue polynomial degrees of a sampled pseudopolynomial."""

    q: int
    residue_degrees: tuple[int, ...]
    global_degree: int
    leading: tuple[complex | None, ...]

    def __post_init__(self):
        if self.global_degree != max(self.residue_degrees):
            raise ValueError("global degree must be the max over residues")


def _diff(seq: list) -> list:
    out = []
    for a, b in zip(seq[1:], seq):
        if isinstance(a, Mapping) or isinstance(b, Mapping):
            a = a if isinstance(a, Mapping) else {}
            b = b if isinstance(b, Mapping) else {}
            out.append(_map_add(dict(a), dict(b), Fraction(-1)))
        else:
            out.append(a - b)
    return out


def _is_zero(x, tol: float) -> bool:
    if isinstance(x, Mapping):
        return all(_is_zero(v, tol) for v in x.values())
    if tol == 0:
        return x == 0
    return abs(x) <= tol


def _default_evaluate(x) -> complex | None:
    if isinstance(x, Mapping):
        return None
    if isinstance(x, Fraction):
        return complex(float(x))
    return complex(x)


def pseudopoly_extract(
    values: Sequence,
    q: int,
    tol: float = 0.0,
    evaluate: Callable[[object], complex | None] | None = None,
) -> PseudoPolyReport:
    """Detect per-residue polynomial degrees by forward finite differences.

    ``values[m]`` may be numbers (compared against ``tol``; exact equality
    when ``tol`` is 0) or exact exponent maps as produced by
    :func:`mellin_elliptic_record` (always exact).  The reported degree per
    residue class mod ``q`` is the smallest D whose (D+1)-th differences
    all vanish.  ``evaluate`` turns a difference object into a complex
    number for the leading-coefficient report.
    """
    if q < 1:
        raise ValueError("q must be at least 1")
    evaluate = evaluate or _default_evaluate
    degrees: list[int] = []
    leading: list[complex | None] = []
    for r in range(q):
        seq = list(values[r::q])
        if len(seq) < 2:
            raise InsufficientSamples(f"residue {r} has {len(seq)} samples; need at least 2")
        rows = [seq]
        while len(rows[-1]) > 1:
            rows.append(_diff(rows[-1]))
        degree = None
        for dd in range(len(rows) - 1):
            if all(_is_zero(x, tol) for x in rows[dd + 1]):
                degree = dd
                break
        if degree is None:
            raise InsufficientSamples(
                f"residue {r}: degree not resolved with {len(seq)} samples")
        degrees.append(degree)
        top = evaluate(rows[degree][0])
        scale = math.factorial(degree) * q ** degree
        leading.append(None if top is None else top / scale)
    return PseudoPolyReport(q, tuple(degrees), max(degrees), tuple(leading))


@dataclass(frozen=True)
class GrowthRow:
    m: int
    raw: float
    normalized: float


def coefficient_growth_table(cfg: RayConfig, cls: EllipticClass, m_grid: Sequence[int]) -> list[GrowthRow]:
    """Largest phase-substituted coefficient per shift, normalised by the growth bound."""
    if not m_grid:
        raise ValueError("empty shift grid")
    rows = []
    exponent = 2 * (cls.d - 1) + cls.d * (cls.d - 1) // 2
    for m in m_grid:
        if m < 1:
            raise ValueError("growth grids need m >= 1 for the normalisation")
        at_m = cfg.at(m)
        raw = max(abs(c)
                  for k in range(cfg.n + 1)
                  for c in coefficient_table(at_m, k, cls))
        rows.append(GrowthRow(m, raw, raw / m ** exponent))
    return rows


def sup_growth_table(
    cfg: RayConfig,
    cls: EllipticClass,
    m_grid: Sequence[int],
    nu_fracs: Sequence[float] = (0.0, 0.25, 0.5, 0.75, 1.0),
) -> list[GrowthRow]:
    """Sup of the class polynomials along the imaginary segment of each shift window.

    The polynomials are evaluated at i*nu with nu running through the
    closed interval between the smallest shift and the k-th shift (both
    endpoints included via ``nu_fracs``), matching the bounding argument,
    which controls factors of the form nu^2 minus a squared shift.
    """
    if not m_grid:
        raise ValueError("empty shift grid")
    if not nu_fracs:
        raise ValueError("empty evaluation grid")
    rows = []
    angles = cls.radians()
    exponent = cls.d * (cls.d - 1) // 2
    for m in m_grid:
        if m < 1:
            raise ValueError("growth grids need m >= 1 for the normalisation")
        at_m = cfg.at(m)
        shifts = spectral_shifts(at_m)
        low = shifts[-1]
        raw = 0.0
        for k in range(cfg.n + 1):
            poly = class_polynomial(at_m, k, cls).value
            for f in nu_fracs:
                nu = low + f * (shifts[k] - low)
                raw = max(raw, abs(poly.numeric_eval(angles, 1j * nu)))
        rows.append(GrowthRow(m, raw, raw / m ** exponent))
    return rows


def telescoping_check(cfg: RayConfig, cls: EllipticClass | int) -> bool:
    """Exact split of the alternating integral at the smallest shift.

    The full alternating integral must equal the constant alternating sum
    times the smallest shift plus the alternating tail integrals from that
    shift upward.
    """
    shifts = spectral_shifts(cfg)
    low = shifts[-1]
    lhs: PhaseMap = {}
    tails: PhaseMap = {}
    for k in range(cfg.n + 1):
        poly = class_polynomial(cfg, k, cls).value
        sign = Fraction((-1) ** k)
        full = integrate_to(poly, shifts[k])
        at_low = integrate_to(poly, low)
        lhs = _map_add(lhs, full, sign)
        tails = _map_add(tails, full, sign)
        tails = _map_add(tails, at_low, -sign)
    const = alternating_sum(cfg, cls).constants()
    rhs = _map_add(tails, {k: Fraction(low) * v for k, v in const.items()})
    return lhs == rhs


def dimension_ratio(cfg: RayConfig) -> Fraction:
    """Identity alternating sum over the representation dimension."""
    return identity_alternating_sum(cfg) / weyl_dimension(cfg)
