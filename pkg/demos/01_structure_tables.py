#!/usr/bin/env python3
"""Walk through the exact structure data of osp(1|2).

Prints the super bracket table, the invariant form, the dual basis, and
the derived constants, then verifies the Jacobi and invariance
identities that pin the table down.
"""

import itertools

from superloewner import (AlgebraElement, bracket, dual_basis, form,
                          orthonormal_even_basis, standard_basis,
                          structure_constants)
from superloewner.scalars import EXACT
from superloewner.superalgebra import PARITY, SYMBOLS

print("=" * 64)
print("osp(1|2): basis E, H, F (even) and e, f (odd)")
print("=" * 64)

basis = {s: AlgebraElement.basis(s) for s in SYMBOLS}

print("\nSuper bracket table (unordered pairs):")
for i, x in enumerate(SYMBOLS):
    for y in SYMBOLS[i:]:
        print(f"  [{x},{y}] = {bracket(basis[x], basis[y])}")

print("\nInvariant form (nonzero pairings):")
for x in SYMBOLS:
    for y in SYMBOLS:
        v = form(basis[x], basis[y])
        if not v.is_zero():
            print(f"  ({x}|{y}) = {v}")

print("\nDual basis of (E, H, F, e, f):")
for s, d in zip(SYMBOLS, dual_basis(standard_basis())):
    print(f"  {s}^ = {d}")

print("\nOrthonormal even basis J1, J2, J3:")
for i, j in enumerate(orthonormal_even_basis(), start=1):
    print(f"  J{i} = {j}")

print("\nChecking the super-Jacobi identity on all 35 unordered triples...")
bad = 0
for xi, yi, zi in itertools.combinations_with_replacement(SYMBOLS, 3):
    x, y, z = basis[xi], basis[yi], basis[zi]
    px, py, pz = PARITY[xi], PARITY[yi], PARITY[zi]
    total = (bracket(x, bracket(y, z)).scale(
                EXACT.from_int(-1 if px * pz else 1))
             + bracket(y, bracket(z, x)).scale(
                EXACT.from_int(-1 if py * px else 1))
             + bracket(z, bracket(x, y)).scale(
                EXACT.from_int(-1 if pz * py else 1)))
    bad += not total.is_zero()
print(f"  violations: {bad} (expected 0)")

print("\nDerived constants at a few levels:")
for k in ("1/2", "1", "3"):
    sc = structure_constants(k)
    print(f"  k = {k:>3}:  c_k = {sc.central_charge},  "
          f"tau_default = {sc.tau_default}")
