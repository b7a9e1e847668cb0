"""
Closure posets of G-stable pieces and compactification pieces
=============================================================

The pieces are indexed by W^J (or by pairs (J, w) for the wonderful
compactification).  Codimensions and closures are purely combinatorial,
so the posets can be drawn directly as DOT graphs.
"""

from partialconj import TwistSetting, compactification_pieces, group_pieces, preset
from partialconj.pieces import compactification_poset, group_piece_poset

S4 = preset("A3")
ts = TwistSetting(S4, {1, 2})

for rec in group_pieces(ts):
    print(rec.id, "codim", rec.codim, "orbits", rec.annotations["orbits"])

# The four pieces form a chain
print(group_piece_poset(ts).to_dot())

S3 = preset("A2")
recs = compactification_pieces(S3)
print(len(recs), "compactification pieces for S3")
P = compactification_poset(S3)
print("partial order:", P.is_partial_order())
