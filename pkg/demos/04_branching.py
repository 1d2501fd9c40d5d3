"""Super root systems, the denominator identity and the branching-function decomposition."""

from sympferm import characters, rootsys
from sympferm.qseries import DEN

for name in ("gl(2|1)", "spo(2|2)", "spo(4|2)"):
    s = rootsys.build_root_system(name, 0, 0)
    print(f"{name}: odd positive roots {[str(r) for r in s.odd_pos]}")
    for point in rootsys.sample_points(s, 2, seed=42):
        lhs, rhs = rootsys.denominator_identity_eval(s, point)
        print(f"   denominator identity: {lhs} == {rhs}")

print("\nFock character as a sum of dim(Lambda) * B_Lambda up to q^8:")
for name in ("spo(2|1)", "gl(1|1)", "spo(2|2)"):
    rep = characters.decompose_check(rootsys.build_root_system(name, 0, 0), 8 * DEN)
    print(f"  {name}: equal={rep.equal}, weights used={len(rep.weights)},"
          f" coefficients nonnegative integers={rep.nonnegative_integral}")

s = rootsys.build_root_system("spo(2|1)", 0, 0)
print("\nB_0 for spo(2|1):", characters.branching(s, s.zero(), 8 * DEN))
