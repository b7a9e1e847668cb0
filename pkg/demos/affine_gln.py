"""
The extended affine Weyl group of GL_n
======================================

Elements are t_lambda * w with w a permutation.  Length comes from the
Iwahori-Matsumoto formula; good elements have additive length on powers.
Newton data give representatives of sigma-conjugacy classes.
"""

from partialconj import (
    ExtAffineElement,
    NewtonDatum,
    affine_group,
    eta,
    good_rep,
    is_distinguished,
    is_good,
    min_set,
)

G = affine_group(3)
s0, tau = G.simple(0), G.tau
print("s0 =", s0.to_json(), "length", s0.length)
print("tau =", tau.to_json(), "length", tau.length)

x = G.from_word([0, 1, 2, 1])
print("\nx =", x.to_json(), "length", x.length, "good:", is_good(x))
mins, paths = min_set(x)
print("minimal conjugates reached:", [m.to_json() for m in mins])
print("distinguished class:", is_distinguished(x))

# eta = eta2^-1 eta1 eta2, returned as 0-based image tuples
print("eta(x):", eta(x))

# A non-basic Newton datum: slopes 1 and 0 on blocks of size 1 and 2
d = NewtonDatum(((1, 1, 0), (2, 0, 0)))
rep = good_rep(d)
print("\ngood representative of", d.to_json(), "->", rep.to_json())

y = ExtAffineElement((1, 2, 0), (1, 0, 0))
print("powers of", y.to_json(), [(y ** k).length for k in range(1, 5)])
