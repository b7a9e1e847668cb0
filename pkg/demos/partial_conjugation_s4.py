"""
Partial conjugation on the symmetric group S4
=============================================

The parabolic subgroup W_J acts on all of W by w -> u w u^-1 for u in W_J.
Every element can be pushed, without ever raising length, into a normal
form w'x with w' a minimal coset representative and x in a smaller
parabolic.  This script walks through two small cases by hand.
"""

from partialconj import TwistSetting, i_set, pi_map, preset, reduce_to_min
from partialconj.partial import check_path, fiber

W = preset("A3")

# Take J = {1, 2} and the element s2 s3 s2 s1 s2.
ts = TwistSetting(W, {1, 2})
w = W.from_word([2, 3, 2, 1, 2])
target, path = reduce_to_min(ts, w)
print("start       ", W.reduced_word(w), "length", w.length)
print("path        ", path)
print("end point   ", W.reduced_word(target))
print("base point  ", W.reduced_word(pi_map(ts, w)))

# check_path replays the steps and complains if one of them raises length
assert check_path(ts, w, path) == target

# Second case: J = {1, 3}.  The base point keeps both generators in I.
ts2 = TwistSetting(W, {1, 3})
w2 = W.from_word([2, 1, 3, 2, 1])
base = pi_map(ts2, w2)
print("\nJ = {1, 3}:", W.reduced_word(base), "I =", sorted(i_set(ts2, base)))

# The fibres over the coset representatives partition W
sizes = {tuple(W.reduced_word(v)): len(fiber(ts, v)) for v in W.coset_reps(ts.J)}
print("\nfibre sizes for J = {1, 2}:", sizes)
print("total", sum(sizes.values()), "=", len(W.elements()))
