"""Complete a nilpotent to an sl2 triple and invert the invariant map.

The triple comes from two exact linear solves.  The affine slice
f + centralizer(e) then meets each regular orbit once, so invariants
(characteristic polynomial coefficients, plus a Pfaffian for the
orthogonal p = q family) can be inverted to produce the canonical
rational representative of an orbit.
"""

from fractions import Fraction

from symslice import (
    Family,
    complete_triple,
    invariants,
    invert_on_slice,
    jacobian_rank_at,
    make_pair,
    make_slice,
    matrix_to_text,
    regular_nilpotent,
    slice_point,
    verify_triple,
)

pair = make_pair(Family.SP, 4, 2)
e = regular_nilpotent(pair)
triple = complete_triple(pair, e)
print("symplectic (4,2) triple checks:")
for name, ok in verify_triple(pair, triple):
    print(f"  {name:<14} {ok}")

slc = make_slice(pair, triple)
print(f"\nslice dimension: {slc.dim}")

coords = [Fraction(7, 3)]
x = slice_point(slc, coords)
print("slice point at coordinates (7/3):")
print(matrix_to_text(x))

v = invariants(pair, x)
print("its invariants:", [str(val) for val in v.values])

recovered = invert_on_slice(slc, v)
print("inverted back to coordinates:", [str(c) for c in recovered])
assert recovered == coords

print("jacobian rank at that point:", jacobian_rank_at(slc, coords), "(= rank)")
