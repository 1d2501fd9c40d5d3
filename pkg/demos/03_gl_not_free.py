"""The GL(1) orbifold of A(1) is of type W(2,3) yet not freely generated."""

from sympferm import characters, ffva, invariants as inv

lhs, rhs = inv.gl_generation_identity(2, 2)
print("h^1 o_1 h^2 == -5 h^3 + 2 dh^2 at n=2:", lhs == rhs)

sol = inv.find_decoupling("gl", 1, 4)
print("h^2 in terms of h^0, h^1:", {inv.format_word("gl", w): str(c) for w, c in sol.items()})

print("\ncharge-zero dimensions of A(1):", ffva.invariant_dimensions("gl", 1, 1, 8))
rep = characters.freeness_check("gl", 1, 10 * 24)
print(f"first disagreement with a free W(2,3) algebra at weight {rep.mismatch_weight}:"
      f" free {rep.free_count}, actual {rep.true_count}")
