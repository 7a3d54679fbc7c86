"""Reducing the cusp foliation d(y^2 - x^3).

Run with ``python demos/01_cusp_chain.py``. Three blow-ups are needed; the
last component has multiplicity 2 and carries three reduced points.
"""
# ## Parse and reduce

from folres import parse_form, parse_poly, reduce
from folres.invariants import check_rho_formula, rho
from folres.reduction import nu_poly_along_direct, tree_to_dot

omega = parse_form("2y dy - 3x^2 dx")
tree = reduce(omega)
print("form:", omega)
print("centres:", [tree.patches[c].label() for c in tree.centers])

# ## The divisor

st = tree.final
for comp in tree.components:
    kinds = [tree.patches[cp.patch].classification.kind.value for cp in st.points_on(comp.id)]
    print(f"D{comp.id}: nu={comp.nu} neighbours={st.neighbors(comp.id)} rho={rho(st, comp.id)} points={kinds}")

# ## Multiplicity from the rho weights, at every stage

for k in range(1, len(tree.centers) + 1):
    h = check_rho_formula(tree.stage(k))
    print(f"after {k} blow-up(s): nu0 + 1 = {h['lhs']}, sum nu(D) rho(D) = {h['rhs']}")

# ## Orders of the total transform of the cusp along each component

f = parse_poly("y^2 - x^3")
print("orders of y^2 - x^3:", [nu_poly_along_direct(tree, f, c.id) for c in tree.components])

# ## Dual tree

print(tree_to_dot(tree))
