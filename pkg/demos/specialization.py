"""
K-stable pieces and their specialization
========================================

Minimal elements of the cosets x W are indexed by W^S-type data.  Each one
specializes to a pair (J, y) indexing a compactification piece, and the
fibre over (J, y) is a family of translations.
"""

from partialconj import k_pieces, preset, specialize
from partialconj.pieces import specialization_fiber

for rec in k_pieces(2, 3):
    J, y = specialize(rec.w)
    print(f"{rec.id:24s} -> J = {sorted(J)}, y = {preset('A1').reduced_word(y)}")

W = preset("A2")
J, y = frozenset({1}), W.identity
fib = specialization_fiber(J, y, 2)
print(f"\nfibre over J = {{1}}, y = e (translations up to 2):")
for z in fib:
    print("  ", z.to_json())
