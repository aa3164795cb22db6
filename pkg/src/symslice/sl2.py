"""Completion of a nilpotent element to a rational sl2 triple.

The completion is two exact linear solves.  First a joint system finds
h in g(1) that both satisfies [h, e] = 2e and lies in the image of
ad_e; then, with h fixed, f in g(-1) is pinned down by [e, f] = h and
[h, f] = -2f.  Canonical particular solutions (zero in every non-pivot
coordinate) keep the output deterministic; the second system has a
unique solution anyway, which the tests check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import RatMatrix, lincomb, solve, vec
from .nilpotent import is_relatively_regular
from .pairs import MembershipError, SymmetricPair, bracket, in_eigenspace

_ZERO = Fraction(0)


class NoTriple(RuntimeError):
    """Raised when no sl2 completion exists for the given element."""


@dataclass(frozen=True)
class Sl2Triple:
    e: RatMatrix
    f: RatMatrix
    h: RatMatrix


def complete_triple(pair: SymmetricPair, e: RatMatrix) -> Sl2Triple:
    """Complete a nonzero nilpotent e in g(-1) to a triple (e, f, h).

    Raises NoTriple when either solve is inconsistent, which happens
    exactly for degenerate inputs (e = 0, e not nilpotent, or e not
    relatively regular in a way that starves the h system).
    """
    if not in_eigenspace(pair, e, -1):
        raise MembershipError("e is not in g(-1)")
    if e.is_zero():
        raise NoTriple("e = 0 cannot be part of an sl2 triple")

    n = pair.n
    nn = n * n
    plus = pair.basis_plus
    amb = pair.basis_g
    dp, dg = len(plus), len(amb)

    # Joint system over (h, y): [h, e] = 2e and [e, y] = h.
    cols_he = [vec(bracket(b, e)) for b in plus]
    cols_ey = [vec(bracket(e, b)) for b in amb]
    cols_p = [vec(b) for b in plus]
    target = vec(2 * e)
    rows = []
    rhs = []
    for idx in range(nn):
        rows.append([cols_he[j][idx] for j in range(dp)] + [_ZERO] * dg)
        rhs.append(target[idx])
    for idx in range(nn):
        rows.append(
            [-cols_p[j][idx] for j in range(dp)]
            + [cols_ey[j][idx] for j in range(dg)]
        )
        rhs.append(_ZERO)
    sol = solve(RatMatrix(rows, cols=dp + dg), rhs)
    if sol is None:
        raise NoTriple("no h in g(1) with [h,e] = 2e lies in the image of ad_e")
    h = lincomb(sol[:dp], plus, n, n)

    # With h fixed: f in g(-1) with [e, f] = h and [h, f] = -2f.
    minus = pair.basis_minus
    dm = len(minus)
    cols_ef = [vec(bracket(e, b)) for b in minus]
    cols_hf = [vec(bracket(h, b) + 2 * b) for b in minus]
    hvec = vec(h)
    rows = []
    rhs = []
    for idx in range(nn):
        rows.append([cols_ef[j][idx] for j in range(dm)])
        rhs.append(hvec[idx])
    for idx in range(nn):
        rows.append([cols_hf[j][idx] for j in range(dm)])
        rhs.append(_ZERO)
    sol = solve(RatMatrix(rows, cols=dm), rhs)
    if sol is None:
        raise NoTriple("the f system is inconsistent for this (e, h)")
    f = lincomb(sol, minus, n, n)

    triple = Sl2Triple(e=e, f=f, h=h)
    if not (
        bracket(h, e) == 2 * e
        and bracket(h, f) == -2 * f
        and bracket(e, f) == h
    ):
        raise NoTriple("completion failed exact verification")
    return triple


def verify_triple(pair: SymmetricPair, t: Sl2Triple) -> list[tuple[str, bool]]:
    """Evaluate every triple invariant independently.

    Returns (check name, result) pairs; the triple is valid for the pair
    exactly when all results are true.
    """
    checks = []
    shapes_ok = all(m.shape == (pair.n, pair.n) for m in (t.e, t.f, t.h))
    if not shapes_ok:
        names = [
            "bracket_he",
            "bracket_hf",
            "bracket_ef",
            "h_in_g_plus",
            "e_in_g_minus",
            "f_in_g_minus",
            "nonzero",
            "f_regular",
        ]
        return [(name, False) for name in names]
    checks.append(("bracket_he", bracket(t.h, t.e) == 2 * t.e))
    checks.append(("bracket_hf", bracket(t.h, t.f) == -2 * t.f))
    checks.append(("bracket_ef", bracket(t.e, t.f) == t.h))
    checks.append(("h_in_g_plus", in_eigenspace(pair, t.h, +1)))
    e_ok = in_eigenspace(pair, t.e, -1)
    f_ok = in_eigenspace(pair, t.f, -1)
    checks.append(("e_in_g_minus", e_ok))
    checks.append(("f_in_g_minus", f_ok))
    checks.append(
        ("nonzero", not (t.e.is_zero() or t.f.is_zero() or t.h.is_zero()))
    )
    # f inherits relative regularity from e; vacuous when e is not regular.
    if e_ok and f_ok:
        f_reg = (not is_relatively_regular(pair, t.e)) or is_relatively_regular(pair, t.f)
    else:
        f_reg = False
    checks.append(("f_regular", f_reg))
    return checks
