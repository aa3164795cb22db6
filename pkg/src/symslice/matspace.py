"""The correspondence between g(-1) and p x q matrices, with the group action.

For the orthogonal and symplectic pairs the lower-left block of an
element of g(-1) is pinned to the upper-right block by the form, so
projection to the upper-right block is a linear isomorphism onto
M_{p,q}, equivariant for the block-diagonal group acting by conjugation
on one side and by (g1, g2) . A = g1 A g2^{-1} on the other.  For GL
both blocks are free and the correspondence takes the pair (A, B).

Rational group elements are generated exactly: products of elementary
matrices for GL, Cayley transforms of form-skew block-diagonal elements
otherwise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .exact import RatMatrix, block_antidiag, block_diag, inverse, lincomb
from .pairs import (
    Family,
    MembershipError,
    SymmetricPair,
    exchange,
    in_eigenspace,
    signed_exchange,
)

_ONE = Fraction(1)


class RetryExhausted(RuntimeError):
    """Random group element generation kept hitting singular draws."""


@dataclass(frozen=True)
class GroupElement:
    g: RatMatrix
    g_inv: RatMatrix

    def inverse(self) -> "GroupElement":
        return GroupElement(g=self.g_inv, g_inv=self.g)


def group_element(pair: SymmetricPair, g: RatMatrix) -> GroupElement:
    """Wrap and validate a matrix as an element of the fixed subgroup."""
    ge = GroupElement(g=g, g_inv=inverse(g))
    _check_group_element(pair, ge)
    return ge


def _check_group_element(pair: SymmetricPair, ge: GroupElement):
    g = ge.g
    if g.shape != (pair.n, pair.n):
        raise ValueError(f"expected a {pair.n} x {pair.n} matrix, got {g.shape}")
    if pair.invol * g != g * pair.invol:
        raise ValueError("group element must be block diagonal")
    if pair.form is not None:
        if pair.form * ge.g_inv.transpose() * pair.form_inv != g:
            raise ValueError("group element fails the form condition")


def to_matrix_space(pair: SymmetricPair, x: RatMatrix) -> RatMatrix:
    """Project an element of g(-1) to its upper-right p x q block."""
    if not in_eigenspace(pair, x, -1):
        raise MembershipError("element is not in g(-1)")
    return x.submatrix(0, pair.p, pair.p, pair.n)


def from_matrix_space(
    pair: SymmetricPair, a: RatMatrix, b: RatMatrix | None = None
) -> RatMatrix:
    """Assemble the element of g(-1) with upper-right block a.

    The lower-left block is pinned by the form for the orthogonal and
    symplectic families; for GL it is free and must be passed as b.
    """
    p, q = pair.p, pair.q
    if a.shape != (p, q):
        raise ValueError(f"expected a {p} x {q} block, got {a.shape}")
    if pair.family is Family.GL:
        if b is None:
            raise ValueError("the GL correspondence needs both blocks (A, B)")
        if b.shape != (q, p):
            raise ValueError(f"expected a {q} x {p} block, got {b.shape}")
        return block_antidiag(a, b)
    if b is not None:
        raise ValueError("the lower-left block is determined by the form")
    if pair.family is Family.ORTH:
        y = exchange(q) * a.transpose() * exchange(p)
    else:
        y = signed_exchange(q) * a.transpose() * signed_exchange(p)
    return block_antidiag(a, y)


def act(pair: SymmetricPair, ge: GroupElement, x: RatMatrix) -> RatMatrix:
    """Conjugation action on g(-1)."""
    if x.shape != (pair.n, pair.n):
        raise ValueError(f"expected a {pair.n} x {pair.n} matrix, got {x.shape}")
    return ge.g * x * ge.g_inv


def act_mpq(pair: SymmetricPair, ge: GroupElement, a: RatMatrix) -> RatMatrix:
    """The (g1, g2) . A = g1 A g2^{-1} action on p x q matrices."""
    p, n = pair.p, pair.n
    if a.shape != (p, pair.q):
        raise ValueError(f"expected a {p} x {pair.q} block, got {a.shape}")
    g1 = ge.g.submatrix(0, p, 0, p)
    g2_inv = ge.g_inv.submatrix(p, n, p, n)
    return g1 * a * g2_inv


def cayley(pair: SymmetricPair, s: RatMatrix) -> RatMatrix:
    """(I - S)(I + S)^{-1}; lands in the group when S is form-skew.

    Raises ValueError when I + S is singular.
    """
    if s.shape != (pair.n, pair.n):
        raise ValueError(f"expected a {pair.n} x {pair.n} matrix, got {s.shape}")
    ident = RatMatrix.identity(pair.n)
    return (ident - s) * inverse(ident + s)


def _unimodular(rng: random.Random, n: int, height: int) -> RatMatrix:
    """Product of elementary row operations: determinant is +-1 exactly.

    The operation count is kept modest so the entries stay small; exact
    arithmetic downstream (conjugation, centralizer kernels) degrades
    with entry size, not with matrix count.
    """
    m = [[_ONE if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for _ in range(n + 3):
        op = rng.randrange(6)
        i = rng.randrange(n)
        j = rng.randrange(n)
        if op < 4 and i != j:
            c = Fraction(rng.randint(1, height) * rng.choice((1, -1)))
            m[i] = [a + c * b for a, b in zip(m[i], m[j])]
        elif op == 4 and i != j:
            m[i], m[j] = m[j], m[i]
        else:
            m[i] = [-a for a in m[i]]
    return RatMatrix(m, cols=n)


def random_group_element(
    pair: SymmetricPair, seed: int, height: int = 5, max_retries: int = 64
) -> GroupElement:
    """Deterministic pseudo-random rational point of the fixed subgroup.

    GL: block-diagonal products of elementary integer matrices with
    determinant +-1.  Orthogonal and symplectic: Cayley transform of a
    random form-skew block-diagonal element, retrying on the
    (probabilistically negligible) singular draws.
    """
    if height < 1:
        raise ValueError("height must be at least 1")
    rng = random.Random(seed)
    if pair.family is Family.GL:
        g1 = _unimodular(rng, pair.p, height)
        g2 = _unimodular(rng, pair.q, height)
        g = block_diag(g1, g2)
        ge = GroupElement(g=g, g_inv=inverse(g))
    else:
        basis = pair.basis_plus
        for _ in range(max_retries):
            coeffs = [Fraction(rng.randint(-height, height)) for _ in basis]
            s = lincomb(coeffs, basis, pair.n, pair.n)
            try:
                g = cayley(pair, s)
            except ValueError:
                continue
            ge = GroupElement(g=g, g_inv=inverse(g))
            break
        else:
            raise RetryExhausted(
                f"no invertible I + S found in {max_retries} draws"
            )
    _check_group_element(pair, ge)
    return ge
