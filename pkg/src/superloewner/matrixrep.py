"""Vectorized module backend for Monte Carlo batches.

The depth-truncated vacuum module is finite dimensional (228 states at
depth bound 4), so the per-path state assembly reduces to sparse
matrix-vector work: enumerate the canonical PBW basis once, build the
matrices of X(-j) and L_{-j} with the exact dict engine, cast them to
complex, and evaluate the exponential factors as short nilpotent series
on a (dim, paths) coefficient block.  Dual-word functionals become
precomputed rows.

Matrices are built at an exact rational level k when possible so the
only float error in an observable is the final cast.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import scipy.sparse as sp

from .affine import Module, Vector, act_mode, mode, sugawara
from .scalars import COMPLEX, EXACT, to_complex
from .superalgebra import SYMBOLS


def _basis_monomials(nrep: int) -> list:
    """Canonical monomials of depth <= nrep in the engine's sort order."""
    modes = sorted(((s, -d) for s in range(5) for d in range(1, nrep + 1)),
                   key=lambda m: (m[1], m[0]))
    out = []

    def extend(prefix, start, budget):
        out.append(tuple(prefix))
        for idx in range(start, len(modes)):
            s, n = modes[idx]
            if -n > budget:
                continue
            if prefix and prefix[-1] == (s, n) and s >= 3:
                continue  # odd mode at most once per (symbol, n) slot
            prefix.append((s, n))
            extend(prefix, idx, budget + n)
            prefix.pop()

    extend([], 0, nrep)
    return sorted(set(out), key=lambda m: (len(m), m))


class MatrixModule:
    """Sparse matrices of the mode and Virasoro operators at level k."""

    def __init__(self, k, nrep: int, exact: bool = True):
        self.nrep = nrep
        if exact:
            ring = EXACT
            kval = ring.from_rational(k if isinstance(k, (int, str, Fraction))
                                      else Fraction(k).limit_denominator(10**6))
        else:
            ring = COMPLEX
            kval = complex(k)
        self._module = Module(ring, kval, nrep)
        self.k = to_complex(kval)
        self.basis = _basis_monomials(nrep)
        self.index = {m: i for i, m in enumerate(self.basis)}
        self.dim = len(self.basis)
        self._mode_mats = {}
        self._vir_mats = {}

    def _vector_of(self, mono) -> Vector:
        return Vector(self._module, {mono: self._module.ring.one})

    def _matrix(self, apply_fn) -> sp.csr_matrix:
        rows, cols, vals = [], [], []
        for j, mono in enumerate(self.basis):
            image = apply_fn(self._vector_of(mono))
            for m2, c in image.terms.items():
                rows.append(self.index[m2])
                cols.append(j)
                vals.append(to_complex(c))
        return sp.csr_matrix((vals, (rows, cols)), shape=(self.dim, self.dim),
                             dtype=complex)

    def mode_matrix(self, symbol: str, n: int) -> sp.csr_matrix:
        key = (symbol, n)
        if key not in self._mode_mats:
            self._mode_mats[key] = self._matrix(
                lambda v: act_mode(mode(symbol, n), v, project=True))
        return self._mode_mats[key]

    def virasoro_matrix(self, n: int) -> sp.csr_matrix:
        if n not in self._vir_mats:
            self._vir_mats[n] = self._matrix(
                lambda v: sugawara(n, v, project=True))
        return self._vir_mats[n]

    def word_row(self, word) -> np.ndarray:
        """Row vector of the functional <0| word . |0> on the basis."""
        row = np.zeros(self.dim, dtype=complex)
        for j, mono in enumerate(self.basis):
            v = self._vector_of(mono)
            for m in reversed(list(word)):
                v = act_mode(m, v, project=True)
                if v.is_zero():
                    break
            row[j] = to_complex(v.floor_coeff())
        return row

    def floor_block(self, paths: int) -> np.ndarray:
        block = np.zeros((self.dim, paths), dtype=complex)
        block[self.index[()], :] = 1.0
        return block


def _weighted_apply(mats_and_coeffs, block: np.ndarray) -> np.ndarray:
    out = np.zeros_like(block)
    for mat, coeff in mats_and_coeffs:
        out += (mat @ block) * coeff[None, :]
    return out


def _exp_apply(mats_and_coeffs, block: np.ndarray, max_terms: int) -> np.ndarray:
    acc = block.copy()
    term = block
    for m in range(1, max_terms + 1):
        term = _weighted_apply(mats_and_coeffs, term) / m
        if not term.any():
            break
        acc += term
    return acc


class BatchAssembler:
    """Assemble Berezin-projected states for a whole path batch at once.

    Series coefficients arrive as arrays of shape (order, paths): entry
    [j-1, p] is the zeta^{-j} coefficient of path p.
    """

    def __init__(self, mm: MatrixModule, order: int):
        self.mm = mm
        self.order = min(order, mm.nrep)
        self.vir = [mm.virasoro_matrix(-j) for j in range(1, self.order + 1)]
        self.modes = {s: [mm.mode_matrix(s, -j)
                          for j in range(1, self.order + 1)]
                      for s in SYMBOLS}

    def _pairs(self, spec):
        out = []
        for sym, coeffs in spec:
            mats = self.modes[sym]
            for j in range(self.order):
                out.append((mats[j], coeffs[j]))
        return out

    def assemble(self, virasoro_coeffs, series: dict) -> np.ndarray:
        """virasoro_coeffs: (order, P); series: name -> (order, P) arrays."""
        paths = virasoro_coeffs.shape[1]
        block = self.mm.floor_block(paths)
        nrep = self.mm.nrep
        vir_pairs = [(self.vir[j], virasoro_coeffs[j])
                     for j in range(self.order)]
        block = _exp_apply(vir_pairs, block, nrep)
        for sym, name in (("F", "xF"), ("H", "xH"), ("E", "xE")):
            block = _exp_apply(self._pairs([(sym, series[name])]), block, nrep)
        l2 = _weighted_apply(self._pairs([("e", series["x2e"]),
                                          ("f", series["x2f"])]), block)
        l1l2 = _weighted_apply(self._pairs([("e", series["x1e"]),
                                            ("f", series["x1f"])]), l2)
        l12 = _weighted_apply(self._pairs([("E", series["x12E"]),
                                           ("H", series["x12H"]),
                                           ("F", series["x12F"])]), block)
        return block + l12 + l1l2
