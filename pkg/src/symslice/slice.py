"""The transverse slice f + g(-1)^e and orbit canonicalization on it.

The slice is an affine subspace meeting each regular orbit in a single
point, so conjugation invariants restricted to it separate orbits.  The
invariants used are the full characteristic polynomial coefficients:
redundant but conjugation-invariant and exact.  For the orthogonal
p = q family the characteristic polynomial only sees the square of the
degree-q product invariant and its fibers on the slice are +- pairs, so
exactly there one extra coordinate is appended: the Pfaffian of X J,
which is invariant under every Cayley-generated (determinant one) group
element.  The Jacobian rank check below measures separation.

Inverting the invariant map is the one place floating point appears:
a damped Gauss-Newton iteration from several deterministic starts,
followed by continued-fraction rational reconstruction at staged
denominator bounds.  Every candidate is re-verified exactly; only
exact matches are ever returned, so a NotFound is an incompleteness
signal, never a wrong answer.
"""

from __future__ import annotations

import hashlib
import json
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .exact import (
    RatMatrix,
    charpoly,
    lincomb,
    pfaffian,
    rank as matrix_rank,
    solve,
)
from .nilpotent import centralizer
from .pairs import Family, MembershipError, SymmetricPair, in_eigenspace
from .sl2 import Sl2Triple

log = logging.getLogger(__name__)

_ZERO = Fraction(0)
_ONE = Fraction(1)


class SliceDimensionError(RuntimeError):
    """The centralizer of e does not have dimension rank theta."""


class NotFound(RuntimeError):
    """The slice inverter exhausted its starts and denominator bounds.

    This does not certify that the fiber is empty.
    """


@dataclass(frozen=True)
class KostantSlice:
    pair: SymmetricPair
    triple: Sl2Triple
    slice_basis: tuple
    dim: int


@dataclass(frozen=True)
class InvariantVector:
    """Characteristic polynomial coefficients, constant term first,
    excluding the leading 1; the orthogonal p = q family carries one
    extra trailing value, the Pfaffian of X J."""

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))


def _needs_pfaffian(pair: SymmetricPair) -> bool:
    return pair.family is Family.ORTH and pair.p == pair.q


def invariant_length(pair: SymmetricPair) -> int:
    """Length of the invariant vector for this pair."""
    return pair.n + (1 if _needs_pfaffian(pair) else 0)


def make_slice(pair: SymmetricPair, triple: Sl2Triple) -> KostantSlice:
    basis = centralizer(pair, triple.e)
    if len(basis) != pair.rank_theta:
        raise SliceDimensionError(
            f"centralizer dimension {len(basis)} != rank theta {pair.rank_theta}"
        )
    return KostantSlice(pair=pair, triple=triple, slice_basis=tuple(basis), dim=len(basis))


def slice_point(slc: KostantSlice, coords) -> RatMatrix:
    coords = [Fraction(c) for c in coords]
    if len(coords) != slc.dim:
        raise ValueError(f"expected {slc.dim} coordinates, got {len(coords)}")
    n = slc.pair.n
    return slc.triple.f + lincomb(coords, slc.slice_basis, n, n)


def invariants(pair: SymmetricPair, x: RatMatrix) -> InvariantVector:
    if not in_eigenspace(pair, x, -1):
        raise MembershipError("element is not in g(-1)")
    vals = charpoly(x).coeffs[:-1]
    if _needs_pfaffian(pair):
        vals = vals + (pfaffian(x * pair.form),)
    return InvariantVector(vals)


def _invariant_values(pair: SymmetricPair, x: RatMatrix) -> tuple:
    # membership-free fast path used by the inverter's exact verification
    vals = charpoly(x).coeffs[:-1]
    if _needs_pfaffian(pair):
        vals = vals + (pfaffian(x * pair.form),)
    return vals


def invariants_to_json(v: InvariantVector) -> str:
    return json.dumps([str(x) for x in v.values])


def invariants_from_json(text: str) -> InvariantVector:
    data = json.loads(text)
    if not isinstance(data, list):
        raise ValueError("invariant vector must be a JSON array of rationals")
    try:
        vals = [Fraction(str(x)) for x in data]
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational in invariant vector: {exc}") from exc
    return InvariantVector(tuple(vals))


@dataclass(frozen=True)
class NewtonConfig:
    """Solver schedule; constants are configuration, not contract."""

    max_iter: int = 200
    starts: int = 25
    start_radius: float = 12.0
    tol: float = 1e-11
    attempt_tol: float = 1e-3
    polish_iter: int = 3
    denominator_bounds: tuple = (10**3, 10**6, 10**12)


def _float_charpoly_tail(m: np.ndarray) -> np.ndarray:
    """Characteristic polynomial coefficients below the leading 1,
    constant term first, by the Faddeev-LeVerrier recurrence."""
    n = m.shape[0]
    cs = np.zeros(n + 1, dtype=m.dtype)
    cs[n] = 1.0
    mk = m.copy()
    ident = np.eye(n, dtype=m.dtype)
    for k in range(1, n + 1):
        if k > 1:
            mk = m @ (mk + cs[n - k + 1] * ident)
        cs[n - k] = -np.trace(mk) / k
    return cs[:-1]


def _float_pfaffian(m: np.ndarray) -> float:
    """Pfaffian of a skew-symmetric float matrix, with magnitude pivoting."""
    n = m.shape[0]
    a = m.copy()
    pf = m.dtype.type(1.0)
    for k in range(0, n, 2):
        piv_j = k + 1 + int(np.argmax(np.abs(a[k, k + 1 :])))
        if a[k, piv_j] == 0:
            return m.dtype.type(0.0)
        if piv_j != k + 1:
            a[[k + 1, piv_j], :] = a[[piv_j, k + 1], :]
            a[:, [k + 1, piv_j]] = a[:, [piv_j, k + 1]]
            pf = -pf
        pivot = a[k, k + 1]
        pf *= pivot
        for i in range(k + 2, n):
            f = a[k, i] / pivot
            if f:
                a[i, :] -= f * a[k + 1, :]
                a[:, i] -= f * a[:, k + 1]
            g = a[k + 1, i] / pivot
            if g:
                a[i, :] += g * a[k, :]
                a[:, i] += g * a[:, k]
    return pf


def _target_seed(target: InvariantVector) -> int:
    blob = ",".join(str(v) for v in target.values).encode()
    return int.from_bytes(hashlib.sha256(blob).digest()[:8], "big")


def invert_on_slice(
    slc: KostantSlice, target: InvariantVector, config: NewtonConfig | None = None
) -> list[Fraction]:
    """Coordinates a with invariants(slice_point(a)) equal to the target, exactly.

    Damped Gauss-Newton in floating point from deterministic
    pseudo-random starts seeded by the target hash, then
    continued-fraction reconstruction at staged denominator bounds and
    exact re-verification.  Raises NotFound when every start and bound
    is exhausted.
    """
    cfg = config or NewtonConfig()
    pair = slc.pair
    n = pair.n
    expect = invariant_length(pair)
    if len(target.values) != expect:
        raise ValueError(f"expected {expect} invariant values, got {len(target.values)}")
    d = slc.dim
    with_pf = _needs_pfaffian(pair)

    f0 = np.array([[float(x) for x in slc.triple.f.row(i)] for i in range(n)])
    basis = [
        np.array([[float(x) for x in b.row(i)] for i in range(n)])
        for b in slc.slice_basis
    ]
    jform = (
        np.array([[float(x) for x in pair.form.row(i)] for i in range(n)])
        if with_pf
        else None
    )
    tvals = np.array([float(v) for v in target.values])
    # Each invariant is homogeneous of known degree in the element
    # (coefficient k has degree n - k, the Pfaffian degree n / 2), so an
    # element-size estimate s sets the natural scale s^deg per component.
    # Structurally zero components then sit at their float noise level
    # instead of poisoning the residual norm.
    degrees = [n - k for k in range(n)] + ([n // 2] if with_pf else [])
    size_est = 1.0
    for dg, tv in zip(degrees, np.abs(tvals)):
        if tv > 0 and dg > 0:
            size_est = max(size_est, float(tv) ** (1.0 / dg))
    scale = np.array(
        [max(1.0, size_est**dg, abs(tv)) for dg, tv in zip(degrees, tvals)]
    )

    def residual(a, dtype=np.float64):
        m = f0.astype(dtype).copy()
        for ai, bi in zip(a, basis):
            m += dtype(ai) * bi.astype(dtype)
        vals = _float_charpoly_tail(m)
        if with_pf:
            vals = np.append(vals, _float_pfaffian(m @ jform.astype(dtype)))
        return (vals - tvals.astype(dtype)) / scale.astype(dtype)

    def jacobian(a, r0, dtype=np.float64):
        cols = []
        for i in range(d):
            h = 1e-6 * max(1.0, abs(float(a[i])))
            ah = a.copy()
            ah[i] += h
            cols.append((residual(ah, dtype) - r0) / dtype(h))
        return np.stack(cols, axis=1)

    def gauss_newton(a, iters, dtype=np.float64):
        a = a.astype(dtype)
        r = residual(a, dtype)
        if not np.all(np.isfinite(np.asarray(r, dtype=np.float64))):
            return a, np.inf
        best = np.max(np.abs(r))
        for _ in range(iters):
            if best < cfg.tol:
                break
            jac = jacobian(a, r, dtype)
            if not np.all(np.isfinite(np.asarray(jac, dtype=np.float64))):
                break
            step, *_ = np.linalg.lstsq(
                jac.astype(np.float64), -r.astype(np.float64), rcond=None
            )
            step = step.astype(dtype)
            lam = 1.0
            improved = False
            while lam > 2.0**-24:
                cand = a + dtype(lam) * step
                rc = residual(cand, dtype)
                nc = np.max(np.abs(rc))
                if np.isfinite(nc) and nc < best:
                    a, r, best = cand, rc, nc
                    improved = True
                    break
                lam /= 2.0
            if not improved:
                break
        return a, best

    def reconstruct(a):
        for bound in cfg.denominator_bounds:
            cand = [Fraction(float(x)).limit_denominator(bound) for x in a]
            point = slice_point(slc, cand)
            if _invariant_values(pair, point) == target.values:
                return cand
        return None

    rng = random.Random(_target_seed(target))
    for attempt in range(cfg.starts):
        if attempt == 0:
            a0 = np.zeros(d)
        else:
            a0 = np.array(
                [rng.uniform(-cfg.start_radius, cfg.start_radius) for _ in range(d)]
            )
        a, best = gauss_newton(a0, cfg.max_iter)
        if best > cfg.attempt_tol:
            continue
        a_ld, _ = gauss_newton(a.astype(np.longdouble), cfg.polish_iter, np.longdouble)
        for cand_vec in (a_ld, a):
            got = reconstruct(np.asarray(cand_vec, dtype=np.float64))
            if got is not None:
                log.debug("slice inversion succeeded on start %d", attempt)
                return got
    raise NotFound(
        "slice inversion exhausted all starts and denominator bounds; "
        "this does not certify the fiber is empty"
    )


@lru_cache(maxsize=None)
def _derivative_weights(n: int) -> tuple:
    """Weights w with sum_j w_j * t_j^m = delta_{m,1} over nodes t_j = 0..n.

    Applying them to exact samples of a degree <= n polynomial curve
    yields its exact derivative at 0.
    """
    vt = RatMatrix(
        [[Fraction(t) ** m for t in range(n + 1)] for m in range(n + 1)], cols=n + 1
    )
    rhs = [_ONE if m == 1 else _ZERO for m in range(n + 1)]
    w = solve(vt, rhs)
    if w is None:
        raise AssertionError("Vandermonde system must be solvable")
    return tuple(w)


def jacobian_rank_at(slc: KostantSlice, coords) -> int:
    """Exact rank of the Jacobian of the invariant map at the given point.

    Each partial derivative comes from exact polynomial interpolation of
    the invariants along a coordinate line (the map is polynomial of
    degree at most n), so no floating point is involved.
    """
    coords = [Fraction(c) for c in coords]
    if len(coords) != slc.dim:
        raise ValueError(f"expected {slc.dim} coordinates, got {len(coords)}")
    pair = slc.pair
    n = pair.n
    nvals = invariant_length(pair)
    weights = _derivative_weights(n)
    cols = []
    for i in range(slc.dim):
        samples = []
        for t in range(n + 1):
            shifted = list(coords)
            shifted[i] += t
            samples.append(_invariant_values(pair, slice_point(slc, shifted)))
        col = [
            sum((w * s[k] for w, s in zip(weights, samples)), _ZERO)
            for k in range(nvals)
        ]
        cols.append(col)
    jac = RatMatrix(
        [[cols[i][k] for i in range(slc.dim)] for k in range(nvals)], cols=slc.dim
    )
    return matrix_rank(jac)
