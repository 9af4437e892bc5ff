"""Truncated highest-weight modules of affine osp(1|2) at level k.

Vectors are linear combinations of canonical PBW monomials

    X_{a_1}(n_1) X_{a_2}(n_2) ... |floor>,   n_1 <= n_2 <= ... ,

stored as tuples of (symbol index, mode index) sorted by (n, symbol),
i.e. deepest creation modes leftmost, with an odd symbol appearing at
most once per (symbol, n) slot (equal odd modes reduce through the
anticommutator, e.g. e(-n)e(-n) = E(-2n)).  Two floors are supported:

* vacuum: every mode with n >= 0 annihilates |0>;
* verma(lambda): a Verma-level layer over a highest weight vector with
  H(0) eigenvalue lambda, where E(0), e(0) annihilate and the lowering
  zero modes F(0), f(0) accumulate as free symbols (with f(0)^2 = -F(0)).

Mode reordering uses the affine super bracket

    [X(m), Y(n)] = [X,Y](m+n) + m (X|Y) delta_{m+n,0} K,    K = k,

with the anticommutator convention on odd pairs.  Everything is generic
over the coefficient ring (exact, complex, Grassmann-valued, Ito jets).
"""

from __future__ import annotations

from .grassmann import GrassmannScalar
from .scalars import Cyclo8, EXACT
from .superalgebra import (CriticalLevelError, PARITY, SYMBOLS,
                           bracket_symbols, form_symbols)

_PAR = tuple(PARITY[s] for s in SYMBOLS)
_SYM = {s: i for i, s in enumerate(SYMBOLS)}


class DepthOverflowError(ValueError):
    pass


def mode(symbol: str, n: int) -> tuple:
    return (_SYM[symbol], n)


def mode_name(m: tuple) -> str:
    return f"{SYMBOLS[m[0]]}({m[1]})"


def monomial_name(mono: tuple) -> str:
    return "*".join(mode_name(m) for m in mono) if mono else "|floor>"


def _depth(mono: tuple) -> int:
    return sum(-n for _, n in mono if n < 0)


class Module:
    """Level-k module over a coefficient ring with a chosen floor."""

    def __init__(self, ring, k, nrep: int, floor="vacuum", weight=None):
        self.ring = ring
        self.k = k
        self.nrep = nrep
        self.floor = floor
        self.weight = weight  # H(0) eigenvalue for the verma floor
        if floor == "verma" and weight is None:
            raise ValueError("verma floor needs a weight")
        self._cache: dict = {}
        self._two_k_plus_3_inv = None

    # -- raw mode action on a single canonical monomial -----------------
    def _floor(self, sym: int, n: int) -> dict:
        one = self.ring.one
        if n > 0:
            return {}
        if n < 0:
            return {((sym, n),): one}
        # zero modes on the floor
        if self.floor == "vacuum":
            return {}
        if sym in (0, 3):          # E(0), e(0) raise: annihilate
            return {}
        if sym == 1:               # H(0): eigenvalue
            return {(): self.weight}
        return {((sym, 0),): one}  # F(0), f(0) accumulate

    def _act(self, sym: int, n: int, mono: tuple) -> dict:
        key = (sym, n, mono)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        ring = self.ring
        if not mono:
            res = self._floor(sym, n)
            self._cache[key] = res
            return res
        h = mono[0]
        rest = mono[1:]
        hs, hn = h
        res: dict = {}
        # only creation modes and (on the verma floor) the lowering zero
        # modes F(0), f(0) may sit inside a canonical monomial
        placeable = n < 0 or (n == 0 and self.floor == "verma"
                              and sym in (2, 4))
        if placeable and ((n, sym) < (hn, hs)
                          or ((sym, n) == h and _PAR[sym] == 0)):
            res = {((sym, n),) + mono: ring.one}
        elif (sym, n) == h and _PAR[sym] == 1:
            # X(n)X(n) = (1/2)[X,X](2n) for odd X ((X|X) = 0)
            for s2, c in bracket_symbols(SYMBOLS[sym], SYMBOLS[sym]).items():
                half = ring.from_int(c) / 2
                for m2, c2 in self._act(_SYM[s2], 2 * n, rest).items():
                    _acc(res, m2, half * c2)
        else:
            # X(n) h = (-1)^{p p'} h X(n) + [X, h](n + hn) + central
            sign = -1 if _PAR[sym] and _PAR[hs] else 1
            sub = self._act(sym, n, rest)
            for m1, c1 in sub.items():
                for m2, c2 in self._act(hs, hn, m1).items():
                    v = c1 * c2
                    _acc(res, m2, v if sign > 0 else -v)
            for s2, c in bracket_symbols(SYMBOLS[sym], SYMBOLS[hs]).items():
                cc = ring.from_int(c)
                for m2, c2 in self._act(_SYM[s2], n + hn, rest).items():
                    _acc(res, m2, cc * c2)
            if n + hn == 0:
                pair = form_symbols(SYMBOLS[sym], SYMBOLS[hs])
                if pair:
                    central = ring.from_int(n * pair) * self.k
                    _acc(res, rest, central)
        res = {m: c for m, c in res.items() if not _zero(c)}
        self._cache[key] = res
        return res

    # -- derived constants ----------------------------------------------
    def sugawara_prefactor(self):
        if self._two_k_plus_3_inv is None:
            denom = self.k * self.ring.from_int(2) + self.ring.from_int(3)
            self._two_k_plus_3_inv = _invert(denom, self.ring)
        return self._two_k_plus_3_inv


def _acc(d: dict, key, val):
    cur = d.get(key)
    d[key] = val if cur is None else cur + val


def _zero(c) -> bool:
    if hasattr(c, "is_zero"):
        return c.is_zero()
    if hasattr(c, "any"):
        return not c.any()
    return c == 0


def _invert(x, ring):
    if hasattr(x, "inverse"):
        return x.inverse()
    if isinstance(x, GrassmannScalar):
        body = x.comp[0]
        inv = _invert(body, ring)
        return GrassmannScalar.body(inv)
    return 1 / x


class Vector:
    """Sparse vector in a Module: dict from canonical monomial to coeff."""

    __slots__ = ("module", "terms")

    def __init__(self, module: Module, terms: dict):
        self.module = module
        self.terms = {m: c for m, c in terms.items() if not _zero(c)}

    @staticmethod
    def floor_vector(module: Module) -> "Vector":
        return Vector(module, {(): module.ring.one})

    def __add__(self, other: "Vector") -> "Vector":
        out = dict(self.terms)
        for m, c in other.terms.items():
            _acc(out, m, c)
        return Vector(self.module, out)

    def __sub__(self, other: "Vector") -> "Vector":
        out = dict(self.terms)
        for m, c in other.terms.items():
            _acc(out, m, -c)
        return Vector(self.module, out)

    def __neg__(self) -> "Vector":
        return Vector(self.module, {m: -c for m, c in self.terms.items()})

    def scale(self, s) -> "Vector":
        return Vector(self.module, {m: c * s for m, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, mono: tuple):
        return self.terms.get(mono, self.module.ring.zero)

    def floor_coeff(self):
        return self.terms.get((), self.module.ring.zero)

    def max_depth(self) -> int:
        return max((_depth(m) for m in self.terms), default=0)

    def __eq__(self, other):
        if not isinstance(other, Vector):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{monomial_name(m)}"
                          for m, c in sorted(self.terms.items()))


def act_mode(m: tuple, v: Vector, project: bool = False) -> Vector:
    """Apply the mode X(n) to v, canonicalizing the result.

    Monomials deeper than the module bound raise DepthOverflowError, or
    are dropped when project=True (the truncation semantics used by the
    state-assembly exponentials).
    """
    module = v.module
    sym, n = m
    out: dict = {}
    for mono, c in v.terms.items():
        if n < 0 and _depth(mono) - n > module.nrep and not project:
            raise DepthOverflowError(
                f"{mode_name(m)} on depth-{_depth(mono)} monomial exceeds "
                f"N_rep={module.nrep}")
        for m2, c2 in module._act(sym, n, mono).items():
            if _depth(m2) > module.nrep:
                if project:
                    continue
                raise DepthOverflowError(
                    f"result depth {_depth(m2)} exceeds N_rep={module.nrep}")
            _acc(out, m2, c * c2)
    return Vector(module, out)


def act_word(word, v: Vector, project: bool = False) -> Vector:
    """Apply a product of modes, rightmost factor first."""
    for m in reversed(list(word)):
        v = act_mode(m, v, project=project)
        if v.is_zero():
            break
    return v


def normal_order_product(m1: tuple, m2: tuple, v: Vector,
                         project: bool = False) -> Vector:
    """Apply :X(p)Y(q): to v (reorder per the p <= q rule, then act)."""
    (s1, p), (s2, q) = m1, m2
    if p <= q:
        return act_word((m1, m2), v, project=project)
    w = act_word((m2, m1), v, project=project)
    if _PAR[s1] and _PAR[s2]:
        return -w
    return w


_SUGAWARA_TERMS = (
    # (coeff numerator, denominator, left symbol, right symbol)
    (1, 2, "H", "H"), (1, 1, "E", "F"), (1, 1, "F", "E"),
    (1, 2, "f", "e"), (-1, 2, "e", "f"),
)


def sugawara(n: int, v: Vector, project: bool = False) -> Vector:
    """Virasoro mode L_n from the osp(1|2) Sugawara construction."""
    module = v.module
    ring = module.ring
    if _zero(module.k * ring.from_int(2) + ring.from_int(3)):
        raise CriticalLevelError("Sugawara undefined at k = -3/2")
    span = module.nrep + abs(n) + 2
    acc = Vector(module, {})
    for j in range(-span, span + 1):
        for num, den, sa, sb in _SUGAWARA_TERMS:
            term = normal_order_product(mode(sa, n - j), mode(sb, j), v,
                                        project=project)
            if term.is_zero():
                continue
            acc = acc + term.scale(ring.from_int(num) / den)
    return acc.scale(module.sugawara_prefactor())


def annihilator_apply(kappa, tau, v: Vector, project: bool = False) -> Vector:
    """Apply Xi(kappa, tau) to a vector with Grassmann coefficients.

    Xi = -2 L_{-2} + (kappa/2) L_{-1}^2
         + (tau/2) [ (1/2)H(-1)^2 + E(-1)F(-1) + F(-1)E(-1)
                     + eta1 eta2 (1/2)(f(-1)e(-1) - e(-1)f(-1)) ]

    kappa, tau are coefficients in the module's (Grassmann) ring.
    """
    module = v.module
    ring = module.ring
    two = ring.from_int(2)
    out = sugawara(-2, v, project=project).scale(-two)
    l1 = sugawara(-1, v, project=project)
    out = out + sugawara(-1, l1, project=project).scale(kappa / 2)
    even = (act_word((mode("H", -1), mode("H", -1)), v, project=project)
            .scale(ring.one / 2)
            + act_word((mode("E", -1), mode("F", -1)), v, project=project)
            + act_word((mode("F", -1), mode("E", -1)), v, project=project))
    odd = (act_word((mode("f", -1), mode("e", -1)), v, project=project)
           - act_word((mode("e", -1), mode("f", -1)), v, project=project))
    eta12 = getattr(ring, "eta12", None)
    if eta12 is None:
        raise TypeError("annihilator_apply needs a Grassmann coefficient ring")
    out = out + even.scale(tau / 2) + odd.scale((tau / 2) * eta12 / 2)
    return out


def expectation(word, v: Vector):
    """<0| m_1 ... m_r |v>: act the word (rightmost first), read the floor."""
    return act_word(word, v).floor_coeff()


def conformal_weight(lam, k, ring=EXACT):
    """L_0 eigenvalue lambda(lambda+1)/(4(k+3/2)) of the weight-lambda vector."""
    if not isinstance(lam, (Cyclo8,)) and ring is EXACT:
        lam = ring.from_rational(lam)
        k = ring.from_rational(k)
    denom = (k + ring.from_rational("3/2") if ring is EXACT
             else k + ring.from_int(3) / 2) * ring.from_int(4)
    if _zero(denom):
        raise CriticalLevelError("critical level k = -3/2")
    return lam * (lam + ring.one) * _invert(denom, ring)
