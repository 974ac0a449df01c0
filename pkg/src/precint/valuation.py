"""The shift-case value function, orbit singularity analysis, valuation
growth, and construction of the finite per-orbit worklist.

All quantities live on one orbit rho + Z.  Offsets are plain integers; the
identity-window solution basis is anchored left of every vanishing offset
of the trailing and leading coefficients, which pins the left liminf of
every solution at zero and makes the value of a residue class B at a point
the minimum q-valuation of (B . b_j) there.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .errors import MissingRightBoundError, PrecintError
from .fields import INFINITY, AlgebraicPoint, Valuation
from .ore import (
    OreOperator,
    QuotientElement,
    SolutionBasis,
    anchored_basis,
    apply_element_all,
    default_anchor,
    root_offsets,
)
from .qvalues import nu_q


def singular_points(modulus: OreOperator,
                    orbit: AlgebraicPoint) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Offsets where leftward extension can drop the valuation (roots of the
    trailing coefficient) and where rightward extension can (roots of the
    leading coefficient, shifted by the order)."""
    modulus = modulus.normalized()
    ell = modulus.polynomial_coeffs()
    r = modulus.order
    left = root_offsets(ell[0], orbit)
    right = tuple(sorted(n + r for n in root_offsets(ell[r], orbit)))
    return left, right


@dataclass(frozen=True)
class OrbitAnalysis:
    """Everything needed to evaluate the value function on one orbit."""

    operator: OreOperator
    orbit: AlgebraicPoint
    singular_left: Tuple[int, ...]
    singular_right: Tuple[int, ...]
    basis: SolutionBasis
    growths: Tuple[int, ...]

    @staticmethod
    def analyze(modulus: OreOperator, orbit: AlgebraicPoint,
                anchor: Optional[int] = None) -> "OrbitAnalysis":
        modulus = modulus.normalized()
        if not modulus.is_valid_modulus:
            raise PrecintError("operator must have nonzero trailing and leading coefficients")
        orbit = orbit.orbit()
        left, right = singular_points(modulus, orbit)
        default = default_anchor(modulus, orbit)
        if anchor is None:
            anchor = default
        elif anchor > default:
            raise PrecintError(
                f"anchor {anchor} is right of the default {default}; the value "
                "function requires an anchor left of every coefficient root"
            )
        basis = anchored_basis(modulus, orbit, anchor)
        growths = _compute_growths(basis, left, right)
        return OrbitAnalysis(modulus, orbit, left, right, basis, growths)

    @property
    def order(self) -> int:
        return self.basis.order

    @property
    def has_singularities(self) -> bool:
        return bool(self.singular_left or self.singular_right)

    def left_edge(self) -> Optional[int]:
        """Leftmost offset at which the standard basis could fail to be a
        local integral basis: the first root of either extreme coefficient."""
        r = self.order
        candidates = list(self.singular_left) + [n - r for n in self.singular_right]
        return min(candidates) if candidates else None

    def right_edge(self) -> Optional[int]:
        candidates = list(self.singular_left) + list(self.singular_right)
        return max(candidates) if candidates else None


def _window_min(basis: SolutionBasis, j: int, start: int, length: int) -> Valuation:
    best = INFINITY
    for n in range(start, start + length):
        v = nu_q(basis.value(j, n))
        if v < best:
            best = v
    return best


def _compute_growths(basis: SolutionBasis, left: Tuple[int, ...],
                     right: Tuple[int, ...]) -> Tuple[int, ...]:
    r = basis.order
    if not left and not right:
        return (0,) * r
    edge = max(tuple(left) + tuple(right))
    growths = []
    for j in range(1, r + 1):
        # the left liminf of an anchored solution is 0 by construction
        rightmost = _window_min(basis, j, edge + 1, r)
        if rightmost is INFINITY:
            raise PrecintError("solution vanishes on a full window")
        growths.append(rightmost)
    return tuple(growths)


def valuation_growth(analysis: OrbitAnalysis, j: int) -> int:
    """Right liminf minus left liminf of the j-th anchored solution."""
    if not 1 <= j <= analysis.order:
        raise ValueError(f"solution index {j} out of range")
    return analysis.growths[j - 1]


def val_at(element: QuotientElement, point: AlgebraicPoint,
           analysis: OrbitAnalysis) -> Valuation:
    """Value of a residue class at a point of the analyzed orbit: the
    minimum over the anchored solutions of nu_q((B . b_j)(point))."""
    if not point.same_orbit(analysis.orbit):
        raise PrecintError("point does not lie in the analyzed orbit")
    if element.is_zero:
        return INFINITY
    values = apply_element_all(element, analysis.basis, point.offset)
    return min(nu_q(v) for v in values)


@dataclass(frozen=True)
class ZSpec:
    """Optional right bounds, per orbit key.  A bound is mandatory for any
    orbit where some anchored solution has nonzero valuation growth."""

    bounds: Dict[str, int] = field(default_factory=dict)

    def bound_for(self, orbit_key: str) -> Optional[int]:
        return self.bounds.get(orbit_key)


def detect_orbits(modulus: OreOperator) -> Tuple[AlgebraicPoint, ...]:
    """Orbits that contain a root of the trailing or leading coefficient,
    in a deterministic order."""
    modulus = modulus.normalized()
    ell = modulus.polynomial_coeffs()
    from .fields import factor

    seen = {}
    for poly in (ell[0], ell[-1]):
        if poly.degree < 1:
            continue
        for fac, _ in factor(poly):
            orbit = AlgebraicPoint(fac, 0).orbit()
            seen[orbit.min_poly.coeffs] = orbit
    orbits = list(seen.values())
    orbits.sort(key=lambda o: (o.min_poly.degree, o.min_poly.coeffs))
    return tuple(orbits)


def worklist_points(analysis: OrbitAnalysis, zspec: ZSpec) -> List[int]:
    """The contiguous range of offsets to process in one orbit.

    Runs from the leftmost root of the extreme coefficients up to the
    rightmost singular offset (all growths zero) or the user's right bound
    (some growth nonzero; mandatory then).  Points inside the range that
    need no update are processed as no-ops.
    """
    if not analysis.has_singularities:
        return []
    lo = analysis.left_edge()
    hi = analysis.right_edge()
    key = analysis.orbit.orbit_key()
    bound = zspec.bound_for(key)
    if any(g != 0 for g in analysis.growths):
        if bound is None:
            raise MissingRightBoundError(key, analysis.growths)
        hi = bound
    elif bound is not None:
        hi = min(hi, bound)
    return list(range(lo, hi + 1))


def worklist(modulus: OreOperator,
             zspec: Optional[ZSpec] = None) -> List[Tuple[AlgebraicPoint, List[int]]]:
    """All (orbit, offsets) pairs requiring treatment, empty for operators
    whose extreme coefficients never vanish."""
    zspec = zspec or ZSpec()
    out = []
    for orbit in detect_orbits(modulus):
        analysis = OrbitAnalysis.analyze(modulus, orbit)
        pts = worklist_points(analysis, zspec)
        out.append((orbit, pts))
    return out
