"""
Product vectors inside a subspace
=================================

A generic 5-dimensional subspace of three qubits holds exactly six product
vectors. The enumerator finds them by eliminating the bilinear system, and
the grid oracle confirms the answer from the other side.
"""

import numpy as np

from sepface import complement_of, enumerate_in_subspace, load_example, oracle_grid_search, span_of
from sepface.enumeration import same_projective_set

rng = np.random.default_rng(0)

# a random 5-dimensional subspace of C^2 (x) C^2 (x) C^2, orthonormal columns
m = rng.normal(size=(8, 5)) + 1j * rng.normal(size=(8, 5))
basis, _ = np.linalg.qr(m)

res = enumerate_in_subspace(basis, (2, 2, 2))
print(res.kind, "with", res.count, "product vectors; worst residual", f"{res.residual_max:.1e}")

# each one comes back factored, one local vector per qubit
for z in res.vectors:
    print(" (x) ".join(str(np.round(v / v[0], 3)) for v in z.locals))

oracle = oracle_grid_search(basis, (2, 2, 2), grid_density=2)
print("oracle agrees:", same_projective_set(res.vectors, oracle))

# the complement of w1, w2, w3 from the exam-a example is spanned by six
# known product vectors; recover them
ex = load_example("exam-a")
found = enumerate_in_subspace(complement_of(ex.auxiliary()[:3]), (2, 2, 2))
print("exam-a recovered:", same_projective_set(found.vectors, ex.vectors()))

# four members of the moment family z_t span a space holding the whole curve
zt = load_example("zt-family").vectors()
print("moment family span:", enumerate_in_subspace(span_of(zt), (2, 2, 2)).kind)
