"""The Sp(2n) orbifold: invariant dimensions, quadratic generators and a decoupling relation."""

from sympferm import ffva, invariants as inv
from sympferm.qseries import DEN, sp_orbifold

for n, top in ((1, 10), (2, 8)):
    brute = ffva.invariant_dimensions("sp", n, 1, top)
    product = [int(c) for c in sp_orbifold(n, (top + 1) * DEN).coefficients(offset=2 * n)[: top + 1]]
    print(f"n={n} invariants by kernel computation: {brute}")
    print(f"n={n} product character             : {product}")

print("\nomega_{1,1} in the basis of derivatives of j^0, j^2 (n=1):")
expansion = inv.express_in_j_basis(inv.quadratic_generator("sp", 1, 1, 1), "sp", 1)
print(" ", {f"d^{i} j{t}": str(c) for (i, t), c in expansion.items()})

print("\nAt n=1 the generator j^2 is redundant:")
sol = inv.find_decoupling("sp", 1, 4)
print("  j2 =", " + ".join(f"({c}) {inv.format_word('sp', w)}" for w, c in sol.items()))
print("At n=2 no such relation exists at weight 4:", inv.find_decoupling("sp", 2, 4))

print("\nRemainders of the classical relations (all even entries, so nonzero):")
for n in range(1, 5):
    print(f"  R_{n}(0,...,0) = {inv.remainder('sp', n, (0,) * (2 * n + 2))}")

print("\nLeading coefficient in j^2 o_1 j^{2k} at n=3:")
for k in range(3):
    print(f"  k={k}: {inv.strong_generation_coefficient('sp_j', 3, k)}")
