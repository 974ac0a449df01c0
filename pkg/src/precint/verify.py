"""Independent oracles: brute-force valuation recomputation, module
equality of bases at a point, the integrality certificate, and seeded
random-operator generators for the property suites.

Everything here deliberately avoids the production caches: solution tables
are rebuilt from scratch at a freshly shifted anchor on every entry point,
so agreement with the main path is evidence, not tautology.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import _linalg
from .errors import PrecintError, SingularTransitionError
from .fields import (
    INFINITY,
    AlgebraicPoint,
    Poly,
    RationalFunction,
    Valuation,
    galois_norm_uniformizer,
    nu_at_factor,
)
from .integral import BasisMatrix
from .ore import OreOperator, QuotientElement, default_anchor
from .qvalues import nu_q
from .valuation import singular_points


# ---------------------------------------------------------------------------
# A cache-free solution table
# ---------------------------------------------------------------------------


def _fresh_solution_table(modulus: OreOperator, orbit: AlgebraicPoint,
                          anchor: int, lo: int, hi: int) -> Dict[int, Dict]:
    """Unroll the identity-window solutions across [lo, hi] with plain loops;
    no state survives the call."""
    modulus = modulus.normalized()
    ell = modulus.polynomial_coeffs()
    r = modulus.order
    root = orbit.orbit().value()
    lo = min(lo, anchor)
    hi = max(hi, anchor + r - 1)
    ell_at: Dict[Tuple[int, int], RationalFunction] = {}

    def lev(i: int, w: int) -> RationalFunction:
        key = (i, w)
        if key not in ell_at:
            ell_at[key] = RationalFunction(ell[i].shift(root + w))
        return ell_at[key]

    one = RationalFunction.one()
    zero = RationalFunction.zero()
    table: Dict[int, Dict] = {}
    for j in range(1, r + 1):
        vals = {anchor + i - 1: (one if i == j else zero) for i in range(1, r + 1)}
        for p in range(anchor + r, hi + 1):
            w = p - r
            acc = zero
            for i in range(r):
                acc = acc + lev(i, w) * vals[w + i]
            vals[p] = -acc / lev(r, w)
        for p in range(anchor - 1, lo - 1, -1):
            acc = zero
            for i in range(1, r + 1):
                acc = acc + lev(i, p) * vals[p + i]
            vals[p] = -acc / lev(0, p)
        table[j] = vals
    return table


def _element_val(element: QuotientElement, table: Dict[int, Dict],
                 root, offset: int) -> Valuation:
    if element.is_zero:
        return INFINITY
    z = root + offset
    shifted = [(i, c.shift(z)) for i, c in enumerate(element.coords)
               if not c.is_zero]
    best = INFINITY
    for j in table:
        acc = RationalFunction.zero()
        for i, cz in shifted:
            acc = acc + cz * table[j][offset + i]
        v = nu_q(acc)
        if v < best:
            best = v
    return best


def brute_val(element: QuotientElement, point: AlgebraicPoint,
              modulus: OreOperator, window: int) -> Valuation:
    """Recompute the value of an element at a point from first principles:
    fresh anchor `window` positions further left, no caching.

    The window must be at least the order plus the spread of the singular
    offsets, so the shifted anchor is still left of every coefficient root.
    """
    modulus = modulus.normalized()
    r = modulus.order
    if element.dimension != r:
        raise PrecintError("element dimension does not match the operator order")
    orbit = point.orbit()
    if window < r + _singular_spread(modulus, orbit):
        raise PrecintError("window is too small for this operator")
    anchor = default_anchor(modulus, orbit) - window
    table = _fresh_solution_table(modulus, orbit, anchor,
                                  point.offset, point.offset + r - 1)
    return _element_val(element, table, orbit.value(), point.offset)


def _singular_spread(modulus: OreOperator, orbit: AlgebraicPoint) -> int:
    left, right = singular_points(modulus, orbit)
    offs = left + right
    return max(offs) - min(offs) if offs else 0


# ---------------------------------------------------------------------------
# Module equality of bases at a point
# ---------------------------------------------------------------------------


def _matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> List[List]:
    n, m, k = len(a), len(b[0]), len(b)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = RationalFunction.zero()
            for t in range(k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def module_equal_at(a: BasisMatrix, b: BasisMatrix,
                    point: AlgebraicPoint) -> bool:
    """True when both bases generate the same module of local integral
    combinations at the point: the transition matrix T with A = T*B must
    have entries of nonnegative valuation and determinant of valuation 0."""
    norm = galois_norm_uniformizer(point)
    mb = b.coord_matrix()
    inv = _linalg.invert(mb)
    if inv is None:
        raise SingularTransitionError("second basis does not span the space")
    ma = a.coord_matrix()
    da = _linalg.determinant(ma)
    if da.is_zero:
        raise SingularTransitionError("first basis does not span the space")
    transition = _matmul(ma, inv)
    for row in transition:
        for entry in row:
            if not entry.is_zero and nu_at_factor(entry, norm) < 0:
                return False
    det = _linalg.determinant(transition)
    return nu_at_factor(det, norm) == 0


# ---------------------------------------------------------------------------
# The integrality certificate
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CertificateViolation:
    sample: int
    exponents: Tuple[int, ...]
    value: object  # int or "infinity"
    claimed_integral: bool


@dataclass(frozen=True)
class CertificateReport:
    point: str
    samples: int
    seed: int
    window: int
    violations: Tuple[CertificateViolation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json_dict(self) -> dict:
        return {
            "point": self.point,
            "samples": self.samples,
            "seed": self.seed,
            "window": self.window,
            "passed": self.passed,
            "violations": [
                {
                    "sample": v.sample,
                    "exponents": list(v.exponents),
                    "value": v.value,
                    "claimed_integral": v.claimed_integral,
                }
                for v in self.violations
            ],
        }

    def to_text(self) -> str:
        status = "ok" if self.passed else f"{len(self.violations)} violation(s)"
        lines = [
            f"certificate at {self.point}: {status} "
            f"({self.samples} samples, seed {self.seed})"
        ]
        for v in self.violations:
            lines.append(
                f"  sample {v.sample}: exponents {list(v.exponents)} "
                f"gave value {v.value}"
            )
        return "\n".join(lines)


def _random_unit(rng: random.Random, point: AlgebraicPoint,
                 norm: Poly) -> RationalFunction:
    """A rational function with valuation exactly 0 at the point (and all of
    its conjugates): numerator coprime to the point's minimal polynomial,
    denominator a unit by construction."""
    while True:
        coeffs = [Fraction(rng.randint(-3, 3)) for _ in range(rng.randint(1, 3))]
        num = Poly(coeffs)
        if num.is_zero:
            continue
        if num.degree >= norm.degree and (num % norm).is_zero:
            continue
        break
    c = rng.choice((0, 1, -1, 2))
    if c == 0:
        den = Poly.one()
    else:
        den = galois_norm_uniformizer(point.shifted(c))
    return RationalFunction(num, den)


def certificate(modulus: OreOperator, basis: BasisMatrix,
                point: AlgebraicPoint, samples: int, seed: int,
                window: Optional[int] = None) -> CertificateReport:
    """Sample random coordinate vectors with prescribed valuations at the
    point and check the two-way integrality criterion against a fresh
    brute-force solution table.

    Coordinates are random units times powers of the point's minimal
    polynomial with exponents in {-2..2}; a clean report means integrality
    of the combination is exactly equivalent to all exponents being
    nonnegative.  The sampled values are byte-for-byte what repeated
    brute_val calls would compute; the table is simply built once.
    """
    modulus = modulus.normalized()
    r = modulus.order
    if basis.dimension != r:
        raise PrecintError("basis size does not match the operator order")
    orbit = point.orbit()
    if window is None:
        window = r + _singular_spread(modulus, orbit) + 2
    anchor = default_anchor(modulus, orbit) - window
    lo = point.offset
    hi = point.offset + r - 1
    table = _fresh_solution_table(modulus, orbit, anchor, lo, hi)
    root = orbit.value()
    z = root + point.offset
    # the action is linear over coefficients evaluated at z + q, so each
    # basis row meets each solution only once, outside the sample loop
    row_values = []
    for row in basis.rows:
        shifted = [(i, c.shift(z)) for i, c in enumerate(row.coords)
                   if not c.is_zero]
        per_solution = []
        for j in range(1, r + 1):
            acc = RationalFunction.zero()
            for i, cz in shifted:
                acc = acc + cz * table[j][point.offset + i]
            per_solution.append(acc)
        row_values.append(per_solution)
    norm = galois_norm_uniformizer(point)
    norm_at_z = RationalFunction(norm).shift(z)
    rng = random.Random(seed)
    violations: List[CertificateViolation] = []
    for s in range(samples):
        exponents = tuple(rng.randint(-2, 2) for _ in range(r))
        coeffs_at_z = [
            _random_unit(rng, point, norm).shift(z) * norm_at_z ** e
            for e in exponents
        ]
        value = INFINITY
        for j in range(r):
            acc = RationalFunction.zero()
            for i in range(r):
                acc = acc + coeffs_at_z[i] * row_values[i][j]
            v = nu_q(acc)
            if v < value:
                value = v
        claimed = all(e >= 0 for e in exponents)
        if (value >= 0) != claimed:
            violations.append(CertificateViolation(
                s, exponents, value if value is not INFINITY else "infinity",
                claimed))
    return CertificateReport(str(point), samples, seed, window,
                             tuple(violations))


# ---------------------------------------------------------------------------
# Random operators for the property suites
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RandomOperatorSpec:
    """Shape of the operators drawn for property tests."""

    order: int = 2
    coeff_degree: int = 2
    height: int = 3
    seed: int = 0

    def __post_init__(self):
        if not 1 <= self.order <= 3:
            raise ValueError("order must be between 1 and 3")
        if not 0 <= self.coeff_degree <= 2:
            raise ValueError("coefficient degree must be between 0 and 2")
        if self.height < 1:
            raise ValueError("height must be positive")


def _random_poly(rng: random.Random, max_degree: int, height: int,
                 nonzero: bool) -> Poly:
    while True:
        degree = rng.randint(0, max_degree)
        p = Poly([Fraction(rng.randint(-height, height))
                  for _ in range(degree + 1)])
        if not nonzero or not p.is_zero:
            return p


def random_operator(spec: RandomOperatorSpec,
                    rng: Optional[random.Random] = None) -> OreOperator:
    """One operator with nonzero trailing and leading coefficients."""
    rng = rng or random.Random(spec.seed)
    coeffs = []
    for i in range(spec.order + 1):
        endpoint = i in (0, spec.order)
        coeffs.append(_random_poly(rng, spec.coeff_degree, spec.height,
                                   nonzero=endpoint))
    return OreOperator(tuple(RationalFunction(p) for p in coeffs))


def random_operators(spec: RandomOperatorSpec, count: int) -> List[OreOperator]:
    rng = random.Random(spec.seed)
    return [random_operator(spec, rng) for _ in range(count)]
