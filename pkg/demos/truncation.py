"""
Truncating Kuranishi models
===========================

A walk through the affine d-space attached to a few bar models: the ring
O', the module E with its generators and the map d.
"""

from kuranishi import SectionData, kuranishi_model, truncate_object, verify_dspace

sections = [
    (["x", "y"], ["x^2", "y^2", "x*y"]),
    (["x"], ["x^2"]),
    (["x", "y"], ["x*y"]),
    ([], ["0"]),
    (["x", "y"], []),
]


def show(dim):
    return "infinite" if dim is None else dim


for base, section in sections:
    A = kuranishi_model(SectionData.from_strings(base, section))
    T = truncate_object(A)
    print(f"base {base}, section {section}")
    print("  O' relations:", [str(g) for g in T.oprime_ideal.nonzero_generators()] or "none")
    print("  dim O' =", show(T.oprime_dimension()))
    print("  E generators:", [str(e) for e in T.e_generators])
    print("  dim E =", show(T.e_dimension()))
    print("  d:", ", ".join(f"{e} -> {T.reduce0(d)}" for e, d in zip(T.e_generators, T.d_images)) or "zero")
    print("  axioms:", "ok" if verify_dspace(T).ok else verify_dspace(T).failures)

# the module structure: x acts on u1 through the degeneracy
A = kuranishi_model(SectionData.from_strings(["x"], ["x^2"]))
T = truncate_object(A)
u1 = T.e_generators[0]
for power in range(4):
    r = T.ring0.parse(f"x^{power}")
    print(f"x^{power} . {u1} = {T.reduce1(T.act(r, u1))}")
