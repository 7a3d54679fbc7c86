"""A germ that is not of second kind.

Run with ``python demos/03_tangent_saddle_node.py``. After one blow-up the
germ has a saddle-node whose weak direction is the divisor. The balanced
equation then has smaller multiplicity than nu0 + 1, and the defect equals
the correction sum nu(D) (Ind - 1) over such points.
"""
from folres.corpus import blown_down_saddle_node, corpus_by_name
from folres.foliation import multiplicity
from folres.invariants import build_balanced_equation, check_balanced_relation, check_component_orders
from folres.reduction import reduce, snt_set

for name in ("snt-1", "snt-2", "saddle-node-2"):
    e = corpus_by_name()[name]
    tree = reduce(e.omega)
    F = build_balanced_equation(tree, e.separatrices)
    rel = check_balanced_relation(tree, F)
    print(f"{name}: {e.omega}")
    print(f"  tangent saddle-nodes: {[s['point'] for s in snt_set(tree)]}")
    print(f"  nu0(foliation)={multiplicity(e.omega)} nu0(balanced)={F.nu0} correction={rel['correction']}")
    print(f"  relation holds: {rel['ok']}; per-component orders hold: {check_component_orders(tree, F)['ok']}")

# ## The family of constructions

for p in range(1, 5):
    tree = reduce(blown_down_saddle_node(p, -1))
    print(p, [(s["point"], s["ind"]) for s in snt_set(tree)])
