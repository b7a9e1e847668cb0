"""
Two-sided partial conjugation and counting pieces for GL_n
==========================================================
"""

from partialconj import count_glN_orbits, count_glN_pieces, preset, script_W, two_sided_decomposition

W = preset("A3")
reps = script_W(W, {1}, {3})
print(len(reps), "elements indexing the decomposition for J1 = {1}, J2 = {3}")
dec = two_sided_decomposition(W, {1}, {3})
print("covers W:", sum(len(v) for v in dec.values()) == len(W.elements()))

for n in range(1, 6):
    print(n, count_glN_pieces(n), count_glN_orbits(n))
