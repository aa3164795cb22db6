"""Canonicalize a conjugated element back to its slice representative.

A random rational group element moves a slice point around its orbit;
the invariants do not change, and inverting them on the slice recovers
the original coordinates exactly.  The same pipeline backs the
`symslice canonicalize` command.
"""

from fractions import Fraction

from symslice import (
    Family,
    act,
    complete_triple,
    invariants,
    invert_on_slice,
    is_relatively_regular,
    make_pair,
    make_slice,
    matrix_to_text,
    random_group_element,
    regular_nilpotent,
    slice_point,
)

pair = make_pair(Family.ORTH, 3, 3)
triple = complete_triple(pair, regular_nilpotent(pair))
slc = make_slice(pair, triple)

coords = [Fraction(1), Fraction(-2, 5), Fraction(3)]
x = slice_point(slc, coords)
print("canonical representative at coordinates (1, -2/5, 3):")
print(matrix_to_text(x))

g = random_group_element(pair, seed=2024, height=3)
y = act(pair, g, x)
print("a conjugate of it (same orbit, messier entries):")
print(matrix_to_text(y))

print("conjugate is still relatively regular:", is_relatively_regular(pair, y))
assert invariants(pair, y) == invariants(pair, x)
print("invariants agree exactly with the original")

recovered = invert_on_slice(slc, invariants(pair, y))
print("canonical coordinates recovered from the conjugate:",
      [str(c) for c in recovered])
assert recovered == coords

print("\nthe CLI equivalent:")
print("  symslice canonicalize --family o --p 3 --q 3 --matrix conjugate.txt")
