"""
Rank four PPT entangled edge states
===================================

Six product vectors spanning five dimensions carry one linear relation
z6 = sum a_i z_i. Mixing the first five with weights p and subtracting the
sixth, the operator stays PPT up to a critical point lambda where all four
partial transposes lose rank together. The state there is entangled with a
4-dimensional range free of product vectors.
"""

import numpy as np

from sepface import SixTuple, boundary_data, build_rho, lambda_bisection_check, load_example, verify_pptes
from sepface.errors import DegenerateGammaSpanError

six = SixTuple.from_vectors(load_example("exam-a").vectors())
data = boundary_data(six)
print("|a_i|^2:", np.round(np.abs(data.a) ** 2, 6))
print(f"S = {data.S:.12f}  lambda = {data.lambda_:.12f}  (935/854 = {935 / 854:.12f})")

# bisection along the line agrees with the closed form
print("bisection:", f"{lambda_bisection_check(six, data.p):.12f}")

rho = build_rho(six)
rep = verify_pptes(rho, six)
print("verdict:", rep.verdict)
print("ranks of rho and its three partial transposes:", rep.ranks)
print("min eigenvalues:", [f"{e:.1e}" for e in rep.min_eigs])
print("product vectors in range / kernel:", rep.range_products, "/", rep.kernel_products)

# vec-ex at random weights; its kernel always holds e1 e1 e1
vec = SixTuple.from_vectors(load_example("vec-ex").vectors())
rng = np.random.default_rng(4)
for p in rng.dirichlet(np.ones(5), size=3):
    r = verify_pptes(build_rho(vec, p), vec)
    print(f"vec-ex p={np.round(p, 3)}: {r.verdict}, kernel products {r.kernel_products}")

# the w-family: one kind of partial conjugate is independent, so no edge state
try:
    build_rho(SixTuple.from_vectors(load_example("w-family").vectors()))
except DegenerateGammaSpanError as e:
    print("w-family refused:", e)
