"""Exact roots of unity and monomial spectra.

Every value in the engine is a reduced fraction num/den in Q/Z standing
for exp(2*pi*i*num/den); nothing here touches floating point until the
very last cross-check.
"""

import numpy as np

from submult import CyclotomicUnit, MonomialMatrix, big_cycle

w = CyclotomicUnit(1, 3)
print("w        =", w, "~", w.to_complex())
print("w * w^2  =", w * w ** 2, "(exact identity)")
print("order(w) =", w.order)

# A monomial matrix is a permutation plus one root of unity per column.
p_mat = big_cycle(3, 1)
d_mat = MonomialMatrix.diagonal([CyclotomicUnit(0, 1), w, w * w])
print("\ncycle spectrum       :", p_mat.spectrum())
print("diagonal spectrum    :", d_mat.spectrum())
print("product spectrum     :", (d_mat * p_mat).spectrum())

# Spectra come from permutation cycles: a length-l cycle with entry
# product c contributes the l exact solutions of x**l = c.
m = MonomialMatrix(4, (1, 0, 3, 2),
                   (w, CyclotomicUnit(0, 1), CyclotomicUnit(1, 4), w))
print("\ntwo swaps with twists:", m.spectrum())

# Cross-check against numpy's dense eigensolver (floats only here).
eigs = sorted(np.linalg.eigvals(np.array(m.to_dense())),
              key=lambda z: np.angle(z) % (2 * np.pi))
exact = sorted((u.to_complex() for u in m.spectrum()),
               key=lambda z: np.angle(z) % (2 * np.pi))
print("max float deviation  :",
      max(abs(a - b) for a, b in zip(eigs, exact)))
