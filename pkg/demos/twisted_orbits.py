"""
Twisted orbits and the partial order between them
=================================================

With a diagram automorphism delta the action becomes
w -> delta(u) w u^-1.  Orbits are counted fibre by fibre through twisted
conjugacy classes of a smaller parabolic, and the minimal elements of
orbits give a partial order on the coset representatives.
"""

from partialconj import TwistSetting, leq_J_delta, orbit, preset, twisted_classes
from partialconj.coxeter import diagram_automorphisms
from partialconj.partial import fiber_twist, i_set

W = preset("A3")
J = {1, 3}

# The swap 1 <-> 3 is an automorphism of the Dynkin diagram restricted to J
deltas = diagram_automorphisms(W, J, J)
print("automorphisms of J:", deltas)
ts = TwistSetting(W, J, {1: 3, 3: 1})

for w in W.coset_reps(ts.J):
    I = i_set(ts, w)
    n = len(twisted_classes(W, I, fiber_twist(ts, w)))
    print(f"{str(W.reduced_word(w)):14s} I = {sorted(I)}  orbits in fibre: {n}")

# One orbit in full
rec = orbit(ts, W.from_word([2]))
print("\norbit of s2 has", len(rec.members), "elements; minimal:",
      sorted(W.reduced_word(v) for v in rec.min_elements))

# Pairs related by the order
reps = W.coset_reps(ts.J)
pairs = sum(leq_J_delta(ts, a, b) for a in reps for b in reps)
print("related pairs among", len(reps), "representatives:", pairs)
