"""
2-morphisms between truncated maps
==================================

Simplicial homotopies become derivations after truncation.  This script
solves for a homotopy, truncates it, and then composes random 2-morphisms
vertically and horizontally to watch the interchange law hold.
"""

import random

from kuranishi import (SectionData, build_morphism, kuranishi_model, solve_homotopies,
                       truncate_homotopy, truncate_morphism, verify_homotopy)
from kuranishi.dspace import (check_interchange, horizontal_compose, is_zero_class,
                              random_two_morphism, verify_2morphism, vertical_compose)

K = kuranishi_model(SectionData.from_strings(["x"], ["x^2"]))
L = kuranishi_model(SectionData.from_strings(["x"], []))

# homotopies starting at the inclusion x -> x of the line into the fat point
phi = build_morphism(L, K, ["x"], [])
family = solve_homotopies(phi, degree=2)
print("homotopy family dimension:", family.dimension)
H = family.instantiate([1] * family.dimension)
print("valid homotopy:", verify_homotopy(H))
print("far end on level 0:", [str(p) for p in H.psi.maps[0].images])

eta = truncate_homotopy(H)
print("truncated 2-morphism eta(x) =", [str(p) for p in eta.reduced_images()])
print("verifies:", verify_2morphism(eta), " zero class:", is_zero_class(eta))

# random 2-morphisms on endomorphisms of the fat point
rng = random.Random(7)
f = truncate_morphism(build_morphism(K, K, ["x + x^2"], ["u1*(1 + x)^2"]))
g = truncate_morphism(build_morphism(K, K, ["-x"], ["u1"]))


def chain(start):
    while True:
        a = random_two_morphism(rng, start)
        b = a and random_two_morphism(rng, a[0])
        if a and b:
            return a[1], b[1]


eta1, theta1 = chain(f)
eta2, theta2 = chain(g)
for name, e in [("eta1", eta1), ("theta1", theta1), ("eta2", eta2), ("theta2", theta2)]:
    print(f"{name}(x) = {e.reduced_images()[0]}")
print("vertical composite theta1 o eta1:", vertical_compose(eta1, theta1).reduced_images()[0])
h = horizontal_compose(eta1, eta2)
print("horizontal composite eta2 [] eta1:", h.reduced_images()[0], " verifies:", verify_2morphism(h))
print("interchange holds:", check_interchange(eta1, theta1, eta2, theta2))
