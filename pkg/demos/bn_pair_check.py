"""
Checking the BN-pair picture in GL_n over a small field
=======================================================

Every matrix of GL_n(F_q) is labelled by its Bruhat cell.  We check the
BN-pair axioms directly and confirm that sigma-twisted conjugation by the
Levi L_J covers the group with the predicted base points.
"""

from partialconj import FiniteGroupCtx, lemma1_check, partial_conj_cover, verify_axioms

ctx = FiniteGroupCtx(3, 2)
print("GL3(F2) has", ctx.size, "elements")
print("axioms:", verify_axioms(ctx)["pass"])

for J in [set(), {1}, {2}, {1, 2}]:
    cover = partial_conj_cover(ctx, J)
    lemma = lemma1_check(ctx, J)
    print(f"J = {sorted(J)}: {cover['orbits']} orbits, cover {cover['pass']}, lemma {lemma['pass']}")

# sigma given by a cyclic permutation matrix moves the Levi of {1} to that of {2}
twisted = partial_conj_cover(ctx, {1}, (1, 2, 0))
print("twisted delta:", twisted["delta"], "cover", twisted["pass"])
