"""Build the symplectic fermion algebra A(n) mode by mode and check its basic structure."""

from sympferm import ffva
from sympferm.qseries import DEN, full_character

e, f = ffva.generator("e"), ffva.generator("f")
print("e(1) f(1) pairing :", ffva.circle(e, 1, f))
print("f(1) e(1) pairing :", ffva.circle(f, 1, e))
print(":e f:             :", ffva.wick(e, f))
print("T(e)              :", ffva.translate(e))

print("\nThe Virasoro element and its self-products")
for n in (1, 2, 3):
    L = ffva.virasoro(n)
    print(f"  n={n}: L(3)L = {ffva.circle(L, 3, L)}   L(1)L == 2L: {ffva.circle(L, 1, L) == L * 2}")

print("\nWeight-space dimensions of A(2) against the product formula")
dims = ffva.fock_dimensions(2, 1, 8)
series = full_character(2, 1, 9 * DEN).coefficients(offset=4)[:9]
print("  enumerated:", dims)
print("  character :", [int(c) for c in series])
