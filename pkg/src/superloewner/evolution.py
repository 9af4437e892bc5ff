"""Stochastic dynamics of the flow and assembly of the represented state.

The eleven unknowns are the Loewner coordinate change rho_t (an
AutSeries) and ten tail series: the even internal coordinates
x^E, x^H, x^F, the odd-sector pairs x^{1,e}, x^{1,f}, x^{2,e}, x^{2,f}
and the quadratic-sector x^{12,E}, x^{12,H}, x^{12,F}.  Steps are plain
Euler-Maruyama with all right-hand sides evaluated at the pre-step
state.

Two odd-sector variants ship:

* "derived" (default): the system obtained by exact Campbell-Hausdorff /
  Ito matching of the factorized flow against the group SDE.  With
  u = 1/rho_t and P = Ad(Theta0)(E_{-a/2} u), Q = Ad(Theta0)(E_{a/2} u),

      dL1 = P dB,  dL2 = Q dB,
      dL12 = -(tau/2){P,Q} dt - {P,L2} dB.

  This is the system under which the Berezin-projected state is a local
  martingale (the Ito-jet generator test checks the drift exactly).
* "displayed": an alternative normalization in which every odd-sector
  diffusion is twice the conjugated root generator and the roles of the
  two odd sectors are swapped, while the drifts are scaled by two only;
  drift then differs from (1/2)(diffusion)^2, the Ito balance fails,
  and the generator test exhibits the nonzero drift.  Kept for
  sensitivity and demonstration runs.  The sub-variant flag
  `h12_literal` switches to an alternative grouping of one rho^{-1}
  factor inside the dx^{12,H} diffusion.

The even sector is common to both variants (signs as displayed; a
global per-driver Brownian sign flip is law-preserving).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .affine import Module, Vector, act_mode, mode, sugawara
from .grassmann import GrassmannScalar
from .scalars import to_complex
from .series import (AutSeries, TailSeries, series_exp, series_inv_aut,
                     series_mul)
from .superalgebra import bracket_symbols

PROCESS_NAMES = ("xE", "xH", "xF", "x1e", "x1f", "x2e", "x2f",
                 "x12E", "x12H", "x12F")
DRIVERS = ("B0", "B1", "B2", "B3", "Ba")


@dataclass(frozen=True)
class FlowState:
    rho: AutSeries
    xE: TailSeries
    xH: TailSeries
    xF: TailSeries
    x1e: TailSeries
    x1f: TailSeries
    x2e: TailSeries
    x2f: TailSeries
    x12E: TailSeries
    x12H: TailSeries
    x12F: TailSeries
    t: object = 0.0

    @property
    def order(self):
        return self.rho.order


def initial_state(order: int, ring) -> FlowState:
    z = TailSeries.zero(order, ring)
    return FlowState(rho=AutSeries.identity(order, ring),
                     xE=z, xH=z, xF=z, x1e=z, x1f=z, x2e=z, x2f=z,
                     x12E=z, x12H=z, x12F=z, t=0.0)


def sde_terms(state: FlowState, tau, ring, variant: str = "derived",
              h12_literal: bool = False) -> dict:
    """Drift and per-driver diffusion series of every internal process.

    Returns {name: {"dt": TailSeries, "B1": ..., "B2": ..., "B3": ...,
    "Ba": ...}} with absent drivers omitted.  tau is a ring scalar.
    """
    a, b, c = state.xE, state.xH, state.xF
    u = series_inv_aut(state.rho)
    u2 = series_mul(u, u)
    ep = series_exp(b)
    em = series_exp(-b)
    e2p = series_exp(b + b)
    e2m = series_exp(-b - b)
    isq = ring.one / ring.sqrt2
    i_ = ring.i
    cc = series_mul(c, c)
    ac = series_mul(a, c)

    terms: dict = {}
    # even sector (as displayed)
    e2pu = e2p * u
    terms["xE"] = {"B2": e2pu.scale(-isq), "B3": e2pu.scale(-i_ * isq)}
    cu = series_mul(c, u)
    terms["xH"] = {"dt": u2.scale(-tau / 2), "B1": u.scale(-isq),
                   "B2": cu.scale(isq), "B3": cu.scale(i_ * isq)}
    terms["xF"] = {
        "B1": cu.scale(-ring.sqrt2),
        "B2": (u + series_mul(-cc, u)).scale(-isq),
        "B3": (u + series_mul(cc, u)).scale(i_ * isq),
    }

    emu = em * u
    if variant == "derived":
        pe = series_mul(a, emu).scale(-isq)
        pf = emu.scale(isq)
        qe = (ep * u + series_mul(ac, emu)).scale(isq)
        qf = series_mul(c, emu).scale(-isq)
        terms["x1e"] = {"Ba": pe}
        terms["x1f"] = {"Ba": pf}
        terms["x2e"] = {"Ba": qe}
        terms["x2f"] = {"Ba": qf}
        terms["x12E"] = {"dt": series_mul(pe, qe).scale(-tau),
                         "Ba": series_mul(pe, state.x2e).scale(
                             ring.from_int(-2))}
        terms["x12H"] = {
            "dt": (series_mul(pe, qf) + series_mul(pf, qe)).scale(-tau / 2),
            "Ba": -(series_mul(pe, state.x2f) + series_mul(pf, state.x2e)),
        }
        terms["x12F"] = {"dt": series_mul(pf, qf).scale(tau),
                         "Ba": series_mul(pf, state.x2f).scale(
                             ring.from_int(2))}
    elif variant == "displayed":
        sq2 = ring.sqrt2
        g1 = ep * u + series_mul(ac, emu)          # (e^b + e^{-b} a c) u
        terms["x1e"] = {"Ba": g1.scale(sq2)}
        terms["x1f"] = {"Ba": series_mul(c, emu).scale(-sq2)}
        terms["x2e"] = {"Ba": series_mul(a, emu).scale(-sq2)}
        terms["x2f"] = {"Ba": emu.scale(sq2)}
        ace2m = series_mul(ac, e2m * u2)           # e^{-2b} a c u^2
        terms["x12E"] = {
            "dt": (series_mul(a, u2) + series_mul(a, ace2m)).scale(tau),
            "Ba": series_mul(state.x2e, g1).scale(-sq2),
        }
        if h12_literal:
            inner = (ep.tail + series_mul(ac, emu))  # e^b - 1 + e^{-b}ac u
            # alternative grouping: rho^{-1} only on the a c term, the
            # e^b piece enters bare
            h_diff = (series_mul(state.x2e, series_mul(c, emu))
                      - series_mul(state.x2f, inner)
                      - state.x2f).scale(sq2)
        else:
            h_diff = (series_mul(state.x2e, series_mul(c, emu))
                      - series_mul(state.x2f, g1)).scale(sq2)
        terms["x12H"] = {
            "dt": (u2 + ace2m.scale(ring.from_int(2))).scale(-tau / 2),
            "Ba": h_diff,
        }
        terms["x12F"] = {
            "dt": series_mul(c, e2m * u2).scale(-tau),
            "Ba": series_mul(state.x2f, series_mul(c, emu)).scale(-sq2),
        }
    else:
        raise ValueError(f"unknown odd-SDE variant {variant!r}")
    return terms


def loewner_step(rho: AutSeries, dt, dB0) -> AutSeries:
    """Euler step of d rho(z) = (2/rho(z)) dt - dB0."""
    u = series_inv_aut(rho)
    out = rho + u.scale(rho.ring.from_int(2) * dt)
    return out.shift(-dB0)


def _stepped(series: TailSeries, term: dict, dt, incs: dict) -> TailSeries:
    out = series
    drift = term.get("dt")
    if drift is not None:
        out = out + drift.scale(dt)
    for drv, diff in term.items():
        if drv == "dt":
            continue
        out = out + diff.scale(incs[drv])
    return out


def even_step(state: FlowState, dt, dB1, dB2, dB3, tau,
              ring=None) -> tuple:
    """One Euler-Maruyama step of (x^E, x^H, x^F); returns the new triple."""
    ring = ring or state.rho.ring
    terms = sde_terms(state, tau, ring)
    incs = {"B1": dB1, "B2": dB2, "B3": dB3}
    return tuple(_stepped(getattr(state, n), terms[n], dt, incs)
                 for n in ("xE", "xH", "xF"))


def odd_step(state: FlowState, dt, dBa, tau, ring=None,
             variant: str = "derived", h12_literal: bool = False) -> tuple:
    """One Euler-Maruyama step of the seven odd-sector processes."""
    ring = ring or state.rho.ring
    terms = sde_terms(state, tau, ring, variant=variant,
                      h12_literal=h12_literal)
    incs = {"Ba": dBa}
    names = ("x1e", "x1f", "x2e", "x2f", "x12E", "x12H", "x12F")
    return tuple(_stepped(getattr(state, n), terms[n], dt, incs)
                 for n in names)


def flow_step(state: FlowState, dt, incs: dict, tau, ring=None,
              variant: str = "derived", h12_literal: bool = False) -> FlowState:
    """Full simultaneous Euler step; incs maps driver name to increment."""
    ring = ring or state.rho.ring
    terms = sde_terms(state, tau, ring, variant=variant,
                      h12_literal=h12_literal)
    new = {n: _stepped(getattr(state, n), terms[n], dt, incs)
           for n in PROCESS_NAMES}
    rho = loewner_step(state.rho, dt, incs["B0"])
    t_inc = dt if isinstance(dt, float) else to_complex(dt).real
    return replace(state, rho=rho, t=state.t + t_inc, **new)


# -- Grassmann envelope product ------------------------------------------

class NonNilpotentInputError(ValueError):
    pass


def _grass_parity_pure(series: TailSeries) -> bool:
    for cf in series.coeffs:
        if not isinstance(cf, GrassmannScalar):
            return False
        if not (_gz(cf.comp[0]) and _gz(cf.comp[3])):
            return False
    return True


def _gz(x) -> bool:
    if hasattr(x, "is_zero"):
        return x.is_zero()
    if hasattr(x, "any"):
        return not x.any()
    return x == 0


def envelope_bracket(A: dict, B: dict) -> dict:
    """[X (x) s, Y (x) s'] = [X,Y] (x) s s' for envelope elements.

    Elements are dicts mapping a basis symbol to a TailSeries whose
    coefficients are GrassmannScalars; the Grassmann factors ride along
    inside the series coefficients, in product order.
    """
    out: dict = {}
    for sx, sa in A.items():
        for sy, sb in B.items():
            prod = series_mul(sa, sb)
            for s2, c in bracket_symbols(sx, sy).items():
                cur = out.get(s2)
                term = prod.scale(prod.ring.from_int(c))
                out[s2] = term if cur is None else cur + term
    return {s: t for s, t in out.items() if not t.is_zero()}


def cbh_product(A: dict, B: dict) -> dict:
    """Exponent of exp(A) exp(B) for single-eta odd envelope elements.

    The series terminates exactly: exp(A)exp(B) = exp(A + B + [A,B]/2)
    because both arguments are Grassmann-odd (so [A,[A,B]] and deeper
    nestings vanish).  Raises NonNilpotentInputError when an argument
    has an even Grassmann component.
    """
    for el in (A, B):
        for s, t in el.items():
            if not _grass_parity_pure(t):
                raise NonNilpotentInputError(
                    "cbh_product needs Grassmann-odd arguments")
    half_bracket = envelope_bracket(A, B)
    out: dict = {}
    for src in (A, B):
        for s, t in src.items():
            cur = out.get(s)
            out[s] = t if cur is None else cur + t
    for s, t in half_bracket.items():
        t = TailSeries([c / 2 for c in t.coeffs], t.ring)
        cur = out.get(s)
        out[s] = t if cur is None else cur + t
    return {s: t for s, t in out.items() if not t.is_zero()}


# -- Aut_+O in exponential Virasoro coordinates ---------------------------

def _exp_vector_field_on_z(v: list, order: int, ring) -> AutSeries:
    """exp(sum_j v[j-1] l_{-j}) z with l_{-j} = -z^{-j+1} d/dz, truncated."""
    cur = {1: ring.one}
    total = {1: ring.one}
    for m in range(1, order + 2):
        nxt: dict = {}
        for p, cf in cur.items():
            if p == 0:
                continue
            for j, vj in enumerate(v, start=1):
                q = p - j
                if q < -order:
                    continue
                add = vj * cf * ring.from_int(-p)
                cur_q = nxt.get(q)
                nxt[q] = add if cur_q is None else cur_q + add
        if not nxt:
            break
        cur = {p: cf * _inv_int(m, ring) for p, cf in nxt.items()}
        for p, cf in cur.items():
            tp = total.get(p)
            total[p] = cf if tp is None else tp + cf
    coeffs = [total.get(-j, ring.zero) for j in range(0, order + 1)]
    return AutSeries(coeffs, ring)


def _inv_int(m: int, ring):
    return ring.one / ring.from_int(m)


def aut_to_virasoro(rho: AutSeries) -> list:
    """Solve exp(sum_{j=1..N} v_{-j} l_{-j}) z = rho(z) order by order.

    Returns [v_{-1}, ..., v_{-N}]; the system is unitriangular because
    v_{-j} first enters at the z^{1-j} coefficient with slope -1.  The
    z^{-N} coefficient of rho corresponds to v_{-(N+1)} and only affects
    module depth N+1, so it is not matched.
    """
    n = rho.order
    ring = rho.ring
    v = [ring.zero] * n
    for j in range(1, n + 1):
        phi = _exp_vector_field_on_z(v, n, ring)
        resid = phi.coeff(1 - j) - rho.coeff(1 - j)
        v[j - 1] = v[j - 1] + resid
    return v


# -- represented state -----------------------------------------------------

def _exp_apply(op, v: Vector, max_terms: int) -> Vector:
    acc = v
    term = v
    for m in range(1, max_terms + 1):
        term = op(term).scale(_inv_int(m, v.module.ring))
        if term.is_zero():
            break
        acc = acc + term
    return acc


def _mode_sum_op(module: Module, pieces) -> callable:
    """Operator w -> sum over (symbol, TailSeries) of X(-j)-weighted action."""

    def op(w: Vector) -> Vector:
        acc = Vector(module, {})
        for sym, series in pieces:
            for j in range(1, min(series.order, module.nrep) + 1):
                cf = series.coeffs[j - 1]
                if _gz(cf):
                    continue
                acc = acc + act_mode(mode(sym, -j), w, project=True).scale(cf)
        return acc

    return op


def assemble_state_vector(state: FlowState, module: Module) -> Vector:
    """Berezin projection of Theta1 Theta0 Q(rho)|0> against 1 + eta1 eta2.

    Equals [1 + L12 + L1 L2] e^{E x^E} e^{H x^H} e^{F x^F} Q(rho) |0>
    in the depth-truncated vacuum module (module.ring coefficients; no
    Grassmann ring is needed after the projection).
    """
    nrep = module.nrep
    v = Vector.floor_vector(module)
    vs = aut_to_virasoro(state.rho)

    def q_op(w: Vector) -> Vector:
        acc = Vector(module, {})
        for j, vj in enumerate(vs, start=1):
            if j > nrep:
                break
            if _gz(vj):
                continue
            acc = acc + sugawara(-j, w, project=True).scale(vj)
        return acc

    v = _exp_apply(q_op, v, nrep)
    v = _exp_apply(_mode_sum_op(module, [("F", state.xF)]), v, nrep)
    v = _exp_apply(_mode_sum_op(module, [("H", state.xH)]), v, nrep)
    v = _exp_apply(_mode_sum_op(module, [("E", state.xE)]), v, nrep)
    l1 = _mode_sum_op(module, [("e", state.x1e), ("f", state.x1f)])
    l2 = _mode_sum_op(module, [("e", state.x2e), ("f", state.x2f)])
    l12 = _mode_sum_op(module, [("E", state.x12E), ("H", state.x12H),
                                ("F", state.x12F)])
    return v + l12(v) + l1(l2(v))
