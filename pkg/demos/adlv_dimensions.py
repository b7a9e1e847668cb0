"""
Nonemptiness and dimension for basic sigma-conjugacy classes
===========================================================

For w in the lowest two-sided cell with regular translation part and b
basic, nonemptiness is a test on eta(w) and kappa, and the dimension is
(length(w) + length(eta(w)) - defect(b)) / 2.
"""

from partialconj import AdlvQuery, NewtonDatum, adlv_report, affine_group
from partialconj.adlv import lowest_cell_member, translation_regular

G = affine_group(2)
trivial = NewtonDatum(((1, 0, 0), (1, 0, 0)))
kappa_one = NewtonDatum(((2, 0, 1),))

for w in G.elements_up_to(4, kappas=[0, 1]):
    if not (lowest_cell_member(w) and translation_regular(w)):
        continue
    b = trivial if sum(w.trans) == 0 else kappa_one
    rep = adlv_report(AdlvQuery(w, b))
    print(f"{str(w.to_json()):40s} nonempty={rep['nonempty']!s:5s} dim={rep['dim']}")
