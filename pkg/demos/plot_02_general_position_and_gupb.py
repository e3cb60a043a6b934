"""
General position and unextendibility
====================================

Two questions about a finite set of product vectors. Are the local vectors at
each party in general position? Is there a product vector orthogonal to all
of them? The second question has two independent checks that must agree.
"""

import itertools

from sepface import (
    check_general_position,
    check_gupb_complement,
    check_gupb_partition,
    load_example,
    product_states_independent,
    product_vectors_independent,
)

z = load_example("exam-a").vectors()

# z1..z4 form an unextendible product basis and sit in general position
upb = z[:4]
print("z1..z4 GP:", check_general_position(upb).is_gp)
print("z1..z4 GUPB (partition):", check_gupb_partition(upb).is_gupb)
print("z1..z4 GUPB (complement):", check_gupb_complement(upb).is_gupb)

# all six together are not in general position; the witness is a party and a
# pair of parallel local vectors
r = check_general_position(z)
print("z1..z6 GP:", r.is_gp, "witness (party, indices):", r.witness)

# walk every four-element subset (four is the smallest a GUPB can be here)
for idx in itertools.combinations(range(6), 4):
    vs = [z[i] for i in idx]
    print(f"  {[i + 1 for i in idx]}  GP {check_general_position(vs).is_gp!s:5}  "
          f"GUPB {check_gupb_partition(vs).is_gupb}")

# vec-ex fails unextendibility; the witness is orthogonal to every vector
vec = load_example("vec-ex").vectors()
bad = check_gupb_partition(vec)
print("vec-ex GUPB:", bad.is_gupb, "partition", bad.bad_partition)
print("  witness locals:", [v.round(6).tolist() for v in bad.witness_vector.locals])

# the six vectors are dependent, yet their projectors are independent
print("vectors independent:", product_vectors_independent(z),
      " states independent:", product_states_independent(z))
