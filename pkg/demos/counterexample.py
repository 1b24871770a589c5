"""
Homotopic or not? Two maps that truncation cannot tell apart
============================================================

The model of the zero locus of (x^2, y^2, xy) in the plane is compared with
the point model, and two maps out of the point are shown to differ in pi_1
while agreeing after truncation.
"""

from kuranishi import (SectionData, build_morphism, homotopy_group, kuranishi_model,
                       pi_obstruction, truncate_morphism)
from kuranishi.dspace import one_morphisms_equal

Y = kuranishi_model(SectionData.from_strings(["x", "y"], ["x^2", "y^2", "x*y"]), cap=3)
X = kuranishi_model(SectionData.from_strings([], ["0"]), cap=3)
print("level rings of Y:")
for k in range(3):
    print(f"  {k}: {Y.rings[k]}")

# the candidate cycle and its faces
R1 = Y.rings[1]
z = R1.parse("u1*u2 - u3^2")
print("d0(z) =", Y.face(1, 0)(z), "  d1(z) =", Y.face(1, 1)(z))

pi1 = homotopy_group(Y, 1)
print("dim pi_1(Y) =", pi1.dimension())
print("z is a boundary:", pi1.boundaries.contains(z))

# Phi and Psi send the point's fibre generator u1 to 0 and to z.  Ring maps
# go in the algebraic direction, from the rings of X to the rings of Y.
Phi = build_morphism(X, Y, [], ["0"])
Psi = build_morphism(X, Y, [], ["u1*u2 - u3^2"])

print("pi_1 test:", pi_obstruction(Phi, Psi, 1))
print("pi_0 test:", pi_obstruction(Phi, Psi, 0))

# after truncation only N_1 modulo B_1 + N_1^2 survives, and z lies in N_1^2
TPhi, TPsi = truncate_morphism(Phi), truncate_morphism(Psi)
print("T(Phi) on E:", [str(p) for p in TPhi.e_images()])
print("T(Psi) on E:", [str(p) for p in TPsi.e_images()])
print("T(Phi) == T(Psi):", one_morphisms_equal(TPhi, TPsi))
