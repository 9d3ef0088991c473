"""Fiberwise motion planners on sphere bundles over complex projective space.

A point of CP^n is represented by a unit vector ``z`` in C^{n+1}, up to a
unit complex phase (:class:`ProjectiveRep`).  The main planner works on the
unit sphere bundle of (canonical line bundle) + (trivial line): a point
over the line [z] is a pair ``(w, s)`` with ``w`` a vector inside the line,
``s`` real and ``|w|^2 + s^2 = 1`` -- a 2-sphere per fiber
(:class:`BundlePoint`).  The circle planner (:func:`plan_hopf`) works on
unit vectors of the line alone, embedded here as the equator ``s = 0``.

Planning is a case split on :func:`classify_pair`, which partitions the
same-fiber pairs (x, y) into n + 3 pieces:

* piece 0: non-antipodal pairs, joined by a constant-speed geodesic arc
  (the normalized interpolation of the endpoints, run at uniform angular
  speed so its parametric velocity never exceeds the arc length);
* piece 1: antipodal pairs off the poles ``(0, +-1)``, joined in three
  steps -- flatten x to the equator, rotate its line component by the phase
  e^{i pi t}, and unflatten to -x;
* piece 2 + j: antipodal pairs at the poles over the open cell of CP^n
  whose last nonzero homogeneous coordinate is the j-th, joined by a polar
  rotation towards a direction the cell section picks continuously.

On every piece the plan is continuous in (x, y); no plan can be continuous
across all pieces at once, which is the point of the TC lower bounds.  All
formulas act on ``(w, s)`` only, never on the representative ``z`` alone,
so everything is invariant under ``z -> lambda z``.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

__all__ = [
    "TOL_ANTI",
    "TOL_CELL",
    "ProjectiveRep",
    "BundlePoint",
    "PlannedPath",
    "fiber_inner",
    "fiber_distance",
    "classify_pair",
    "cell_index",
    "cell_section",
    "alpha_deform",
    "plan",
    "plan_hopf",
    "NotSameFiberError",
    "DegenerateRepresentativeError",
]

# default classification tolerances: deterministic piece assignment, with the
# snap segment absorbing the resulting endpoint slack
TOL_ANTI = 1e-8
TOL_CELL = 1e-10

_SNAP_EPS = 1e-12
_UNIT_TOL = 1e-9


class NotSameFiberError(ValueError):
    """The two points do not lie over the same base point."""


class DegenerateRepresentativeError(ValueError):
    """No homogeneous coordinate of the representative exceeds the tolerance."""


def _hdot(a: np.ndarray, b: np.ndarray) -> complex:
    """Hermitian inner product <a, b> = sum a_i * conj(b_i)."""
    return complex(np.vdot(b, a))


def _as_complex_vector(v) -> np.ndarray:
    arr = np.asarray(v, dtype=complex)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("expected a non-empty one-dimensional complex vector")
    return arr


class ProjectiveRep:
    """A unit representative of a point of CP^n (a line in C^{n+1})."""

    __slots__ = ("z",)

    def __init__(self, z):
        z = _as_complex_vector(z)
        norm = float(np.linalg.norm(z))
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"representative must be a unit vector (norm {norm})")
        z = z.copy()
        z.setflags(write=False)
        object.__setattr__(self, "z", z)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("ProjectiveRep is immutable")

    @classmethod
    def normalized(cls, v) -> "ProjectiveRep":
        v = _as_complex_vector(v)
        norm = np.linalg.norm(v)
        if norm == 0:
            raise ValueError("cannot normalise the zero vector")
        return cls(v / norm)

    @property
    def n(self) -> int:
        """The projective dimension: vectors live in C^{n+1}."""
        return self.z.size - 1

    def same_line(self, other: "ProjectiveRep", tol: float = _UNIT_TOL) -> bool:
        return abs(_hdot(self.z, other.z)) >= 1.0 - tol

    def __repr__(self) -> str:
        return f"ProjectiveRep({np.array2string(self.z, precision=4)})"


class BundlePoint:
    """A point of the sphere bundle: base line, line component ``w``, height ``s``.

    ``w`` must lie in the line spanned by the representative and
    ``|w|^2 + s^2 = 1``.  The pairs ``(z, w, s)`` and ``(lambda z, w, s)``
    describe the same point.
    """

    __slots__ = ("z", "w", "s")

    def __init__(self, z: ProjectiveRep, w, s: float):
        if not isinstance(z, ProjectiveRep):
            z = ProjectiveRep(z)
        w = _as_complex_vector(w)
        if w.size != z.z.size:
            raise ValueError("w must have the same ambient dimension as z")
        s = float(s)
        residual = float(np.linalg.norm(w - _hdot(w, z.z) * z.z))
        if residual > _UNIT_TOL:
            raise ValueError(f"w is not in the line of z (residual {residual:.2e})")
        norm2 = float(np.linalg.norm(w)) ** 2 + s * s
        if abs(norm2 - 1.0) > _UNIT_TOL:
            raise ValueError(f"|w|^2 + s^2 = {norm2} is not 1")
        w = w.copy()
        w.setflags(write=False)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "s", s)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("BundlePoint is immutable")

    @classmethod
    def from_fiber(cls, z: ProjectiveRep, c: complex, s: float) -> "BundlePoint":
        """The point ``(c*z, s)``; requires ``|c|^2 + s^2 = 1``."""
        return cls(z, complex(c) * z.z, s)

    @classmethod
    def section_point(cls, z: ProjectiveRep, sign: float = 1.0) -> "BundlePoint":
        """The distinguished pole ``(w = 0, s = +-1)`` of the trivial summand."""
        return cls(z, np.zeros_like(z.z), math.copysign(1.0, sign))

    @property
    def w_norm(self) -> float:
        return float(np.linalg.norm(self.w))

    def antipode(self) -> "BundlePoint":
        return BundlePoint(self.z, -self.w, -self.s)

    def __repr__(self) -> str:
        return f"BundlePoint(w={np.array2string(self.w, precision=4)}, s={self.s:.4f})"


def _require_same_fiber(x: BundlePoint, y: BundlePoint) -> None:
    if x.w.size != y.w.size or not x.z.same_line(y.z):
        raise NotSameFiberError("points lie over different base points")


def fiber_inner(x: BundlePoint, y: BundlePoint) -> float:
    """Scalar product in the fiber: Re<w, w'> + s*s' (orthogonal-sum metric)."""
    _require_same_fiber(x, y)
    return float(np.real(_hdot(x.w, y.w))) + x.s * y.s


def fiber_distance(x: BundlePoint, y: BundlePoint) -> float:
    """Euclidean distance of the fiber coordinates (gauge-invariant)."""
    _require_same_fiber(x, y)
    dw = float(np.linalg.norm(x.w - y.w))
    return math.hypot(dw, x.s - y.s)


def cell_index(z: ProjectiveRep, tol_cell: float = TOL_CELL) -> int:
    """Index j of the open cell of CP^n containing [z].

    The 2j-cell consists of the lines whose last nonzero homogeneous
    coordinate is the j-th.
    """
    mags = np.abs(z.z)
    idx = np.nonzero(mags > tol_cell)[0]
    if idx.size == 0:
        raise DegenerateRepresentativeError(
            f"all coordinates are below the cell tolerance {tol_cell}"
        )
    return int(idx[-1])


def cell_section(z: ProjectiveRep, j: int, tol_cell: float = TOL_CELL) -> np.ndarray:
    """Unit vector in the line [z] whose j-th coordinate is real and positive.

    Continuous on the open 2j-cell and invariant under ``z -> lambda z``:
    the phase of the j-th coordinate is divided out.
    """
    zj = complex(z.z[j])
    if abs(zj) <= tol_cell:
        raise DegenerateRepresentativeError(
            f"coordinate {j} has magnitude {abs(zj):.2e} <= {tol_cell}"
        )
    return (zj.conjugate() / abs(zj)) * z.z


def classify_pair(
    x: BundlePoint,
    y: BundlePoint,
    tol_anti: float = TOL_ANTI,
    tol_cell: float = TOL_CELL,
) -> int:
    """Partition piece of a same-fiber pair, in {0, ..., n+2}.

    0 for non-antipodal pairs; 1 for antipodal pairs with ``x`` off the
    poles; 2 + (cell index of the base point) for antipodal pole pairs.
    """
    d = fiber_inner(x, y)
    if d > -1.0 + tol_anti:
        return 0
    if x.w_norm > tol_anti:
        return 1
    return 2 + cell_index(x.z, tol_cell)


def alpha_deform(x: BundlePoint, t: float) -> BundlePoint:
    """Deformation flattening the trivial component: identity at t=0, at t=1
    the retraction onto the equator ``(w/|w|, 0)``.

    Shrinks ``s`` by the factor ``1 - t`` and renormalises; undefined on the
    poles ``w = 0``.
    """
    if x.w_norm == 0.0:
        raise ValueError("the retraction is undefined on the poles (w = 0)")
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must lie in [0, 1]")
    w, s = _alpha_coords(x.w, x.s, t)
    return BundlePoint(x.z, w, s)


def _alpha_coords(w: np.ndarray, s: float, t: float) -> tuple[np.ndarray, float]:
    s_scaled = (1.0 - t) * s
    norm = math.hypot(float(np.linalg.norm(w)), s_scaled)
    return w / norm, s_scaled / norm


# -- path segments -----------------------------------------------------------
#
# Every segment evaluates fiber coordinates (w, s) on its own local time
# u in [0, 1], at angular speed at most pi (plus conditioning slack), and is
# analytic in u.


class GeodesicSegment:
    """Constant-speed arc between non-antipodal fiber points.

    Same image and endpoints as the normalized straight-line interpolation,
    reparametrized to uniform angular speed (= the arc angle, always < pi).
    """

    kind = "interpolation"

    def __init__(self, start: tuple[np.ndarray, float], end: tuple[np.ndarray, float]):
        self.w0, self.s0 = start
        self.w1, self.s1 = end
        inner = float(np.real(_hdot(self.w0, self.w1))) + self.s0 * self.s1
        self.theta = math.acos(max(-1.0, min(1.0, inner)))
        self.sin_theta = math.sin(self.theta)

    def fiber_at(self, u: float) -> tuple[np.ndarray, float]:
        if self.theta < 1e-9:
            # nearly equal endpoints: plain interpolation is exact enough
            w = (1.0 - u) * self.w0 + u * self.w1
            s = (1.0 - u) * self.s0 + u * self.s1
            norm = math.hypot(float(np.linalg.norm(w)), s)
            return w / norm, s / norm
        a = math.sin((1.0 - u) * self.theta) / self.sin_theta
        b = math.sin(u * self.theta) / self.sin_theta
        return a * self.w0 + b * self.w1, a * self.s0 + b * self.s1


class AlphaSegment:
    """Run the flattening deformation from parameter ``a0`` to ``a1``."""

    kind = "alpha-deformation"

    def __init__(self, point: tuple[np.ndarray, float], a0: float, a1: float):
        self.w, self.s = point
        self.a0 = a0
        self.a1 = a1

    def fiber_at(self, u: float) -> tuple[np.ndarray, float]:
        return _alpha_coords(self.w, self.s, self.a0 + u * (self.a1 - self.a0))


class PhaseRotationSegment:
    """Rotate the line component by ``e^{i phi}``, phase running phi0 -> phi1."""

    kind = "phase-rotation"

    def __init__(self, point: tuple[np.ndarray, float], phi0: float, phi1: float):
        self.w, self.s = point
        self.phi0 = phi0
        self.phi1 = phi1

    def fiber_at(self, u: float) -> tuple[np.ndarray, float]:
        angle = self.phi0 + u * (self.phi1 - self.phi0)
        phase = complex(math.cos(angle), math.sin(angle))
        return phase * self.w, self.s


class PolarSegment:
    """Great-circle rotation ``cos(a) x + sin(a) d`` for orthonormal x, d."""

    kind = "polar-rotation"

    def __init__(
        self,
        pivot: tuple[np.ndarray, float],
        direction: tuple[np.ndarray, float],
        ang0: float,
        ang1: float,
    ):
        self.wp, self.sp = pivot
        self.wd, self.sd = direction
        self.ang0 = ang0
        self.ang1 = ang1

    def fiber_at(self, u: float) -> tuple[np.ndarray, float]:
        a = self.ang0 + u * (self.ang1 - self.ang0)
        c, s = math.cos(a), math.sin(a)
        return c * self.wp + s * self.wd, c * self.sp + s * self.sd


class PlannedPath:
    """A piecewise-analytic path in one fiber, evaluable at any t in [0, 1].

    ``segments`` partition global time at ``breakpoints``; each segment is
    evaluated in its own unit-time parametrization.  The path carries the
    piece index of the partition that produced it.
    """

    __slots__ = ("piece", "z", "segments", "breakpoints", "start", "end")

    def __init__(
        self,
        piece: int,
        z: ProjectiveRep,
        segments: Sequence,
        breakpoints: Sequence[float],
        start: BundlePoint,
        end: BundlePoint,
    ):
        if len(breakpoints) != len(segments) + 1:
            raise ValueError("need one more breakpoint than segments")
        if breakpoints[0] != 0.0 or breakpoints[-1] != 1.0:
            raise ValueError("breakpoints must run from 0 to 1")
        self.piece = piece
        self.z = z
        self.segments = tuple(segments)
        self.breakpoints = tuple(float(b) for b in breakpoints)
        self.start = start
        self.end = end

    @property
    def endpoints(self) -> tuple[BundlePoint, BundlePoint]:
        return self.start, self.end

    def segment_index(self, t: float) -> int:
        if not 0.0 <= t <= 1.0:
            raise ValueError("t must lie in [0, 1]")
        for i in range(len(self.segments) - 1, -1, -1):
            if t >= self.breakpoints[i]:
                return i
        return 0

    def fiber_at(self, t: float) -> tuple[np.ndarray, float]:
        i = self.segment_index(t)
        t0, t1 = self.breakpoints[i], self.breakpoints[i + 1]
        u = (t - t0) / (t1 - t0)
        return self.segments[i].fiber_at(u)

    def at(self, t: float) -> BundlePoint:
        w, s = self.fiber_at(t)
        return BundlePoint(self.z, w, s)

    def sample(self, count: int) -> list[BundlePoint]:
        """Evaluate at ``count`` uniformly spaced times including both ends."""
        if count < 2:
            raise ValueError("need at least two samples")
        return [self.at(i / (count - 1)) for i in range(count)]

    def __repr__(self) -> str:
        kinds = ", ".join(seg.kind for seg in self.segments)
        return f"PlannedPath(piece={self.piece}, segments=[{kinds}])"


def _uniform_breakpoints(k: int) -> list[float]:
    return [i / k for i in range(k)] + [1.0]


def _coords(p: BundlePoint) -> tuple[np.ndarray, float]:
    return p.w, p.s


def plan(
    x: BundlePoint,
    y: BundlePoint,
    tol_anti: float = TOL_ANTI,
    tol_cell: float = TOL_CELL,
) -> PlannedPath:
    """Plan a fiberwise motion from x to y; dispatches on :func:`classify_pair`.

    Pairs routed to an antipodal piece whose y is not exactly -x get a final
    short interpolation segment snapping the endpoint onto y, so endpoint
    exactness survives the classification tolerance.
    """
    piece = classify_pair(x, y, tol_anti, tol_cell)
    p, q = _coords(x), _coords(y)

    if piece == 0:
        segments: list = [GeodesicSegment(p, q)]
    elif piece == 1:
        equator_w = x.w / x.w_norm
        segments = [
            AlphaSegment(p, 0.0, 1.0),
            PhaseRotationSegment((equator_w, 0.0), 0.0, math.pi),
            AlphaSegment((-x.w, -x.s), 1.0, 0.0),
        ]
        segments += _snap_segment(x, y)
    else:
        direction = cell_section(x.z, piece - 2, tol_cell)
        # orthonormalise against x; a no-op when x sits exactly on a pole
        overlap = float(np.real(_hdot(direction, x.w)))
        wd = direction - overlap * x.w
        sd = -overlap * x.s
        norm = math.hypot(float(np.linalg.norm(wd)), sd)
        segments = [PolarSegment(p, (wd / norm, sd / norm), 0.0, math.pi)]
        segments += _snap_segment(x, y)

    return PlannedPath(
        piece=piece,
        z=x.z,
        segments=segments,
        breakpoints=_uniform_breakpoints(len(segments)),
        start=x,
        end=y,
    )


def _snap_segment(x: BundlePoint, y: BundlePoint) -> list:
    anti = (-x.w, -x.s)
    dw = float(np.linalg.norm(anti[0] - y.w))
    if math.hypot(dw, anti[1] - y.s) <= _SNAP_EPS:
        return []
    return [GeodesicSegment(anti, _coords(y))]


def plan_hopf(z, z2, tol_anti: float = TOL_ANTI) -> PlannedPath:
    """Plan on the circle bundle of the canonical line: rotate z onto z2.

    Inputs are unit vectors in the same line, i.e. ``z2 = lambda * z`` with
    ``|lambda| = 1``.  Non-antipodal pairs rotate through the principal
    phase of lambda (piece 0); antipodal pairs through pi (piece 1).  The
    resulting path is returned on the equator ``s = 0`` of the sphere
    bundle.
    """
    z = _as_complex_vector(z)
    z2 = _as_complex_vector(z2)
    if abs(np.linalg.norm(z) - 1.0) > _UNIT_TOL or abs(np.linalg.norm(z2) - 1.0) > _UNIT_TOL:
        raise ValueError("inputs must be unit vectors")
    lam = _hdot(z2, z)
    if float(np.linalg.norm(z2 - lam * z)) > _UNIT_TOL:
        raise NotSameFiberError("z2 is not a unit multiple of z")

    rep = ProjectiveRep.normalized(z)
    if lam.real > -1.0 + tol_anti:
        piece = 0
        phi = math.atan2(lam.imag, lam.real)
    else:
        piece = 1
        phi = math.pi

    segment = PhaseRotationSegment((z, 0.0), 0.0, phi)
    return PlannedPath(
        piece=piece,
        z=rep,
        segments=[segment],
        breakpoints=[0.0, 1.0],
        start=BundlePoint(rep, z, 0.0),
        end=BundlePoint(rep, z2, 0.0),
    )
