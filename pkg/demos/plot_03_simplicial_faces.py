"""
Simplicial faces of the separable states
========================================

A set of product vectors spans a simplicial face when its span contains no
other product vector (and the projectors are independent). Four vectors in
general position split into two kinds, read off from the ranks of the
pairwise Gram blocks.
"""

import numpy as np

from sepface import certify_simplicial_face, classify_four_gp, flatten, load_example

vec = load_example("vec-ex").vectors()
cert = certify_simplicial_face(vec)
print("vec-ex:", cert.verdict, "with", cert.k, "vertices")

# z1..z5 of exam-a span the same space as all six, so z6 is one vertex too many
z = load_example("exam-a").vectors()
cert = certify_simplicial_face(z[:5])
print("exam-a z1..z5:", cert.verdict, "extra product vectors:", cert.extra_product_vectors)
print("exam-a z1..z6:", certify_simplicial_face(z).verdict)

# four GP vectors: the moment family spans a space with a whole curve of
# product vectors, while a UPB spans a space holding only its four members
for name, four in [("z_t, t = 0..3", load_example("zt-family").vectors()), ("UPB z1..z4", z[:4])]:
    c = classify_four_gp(four)
    print(f"{name}: {c.kind}, ranks {c.ranks}")

# two random product vectors in C^2 (x) C^2 always give a face (a segment)
rng = np.random.default_rng(3)
pair = [flatten([rng.normal(size=2) + 1j * rng.normal(size=2) for _ in range(2)]) for _ in range(2)]
print("random pair:", certify_simplicial_face(pair).verdict)
