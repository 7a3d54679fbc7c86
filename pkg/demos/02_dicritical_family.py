"""The dicritical family with n tangent separatrices.

Run with ``python demos/02_dicritical_family.py``. For each n the germ has
multiplicity r + 1, its balanced equation has multiplicity r + 2, and the
obstruction space has dimension (n - 2)(n - 3) / 2.
"""
from folres import FamilyParams, dicritical_family, reduce
from folres.invariants import build_balanced_equation, obstruction_dimension

# ## One member in detail

params = FamilyParams.make(4, (1, 1, 1, 1), (0, 1, 2, 3))
fam = dicritical_family(params)
print("omega =", fam.omega)
print("Q'(s) =", params.derivative_q())
tree = reduce(fam.omega)
d0 = tree.components[0]
print(f"D0 dicritical={d0.dicritical} valence={tree.final.valence(0)}")
print("centres above D0:", [tree.patches[c].label() for c in tree.centers[1:]])

F = build_balanced_equation(tree, fam.separatrices)
print(f"balanced equation: {len(F.zeros)} zeros, {len(F.poles)} poles, multiplicity {F.nu0}")
obs = obstruction_dimension(tree, F.poles)
for row in obs["per_center"]:
    if row["v_c"]:
        print(f"  centre {row['center']}: v_c={row['v_c']} contributes {row['contribution']}")
print("obstruction dimension:", obs["dim"])

# ## The sequence n = 2, ..., 6

for n in range(2, 7):
    fam = dicritical_family(FamilyParams.make(n, (1,) * n, range(n)))
    tree = reduce(fam.omega)
    F = build_balanced_equation(tree, fam.separatrices)
    print(n, obstruction_dimension(tree, F.poles)["dim"], (n - 2) * (n - 3) // 2)
