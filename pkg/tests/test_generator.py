import random
from fractions import Fraction

from superloewner.affine import expectation, mode
from superloewner.evolution import FlowState, initial_state
from superloewner.generator import JetRing, jet_state, state_drift
from superloewner.observables import observable_current
from superloewner.scalars import EXACT, rational
from superloewner.series import AutSeries, TailSeries

R = EXACT


def _spec():
    return JetRing(R, (rational(2), rational("4/5"), rational("4/5"),
                       rational("4/5"), rational("4/5")))


def test_jet_ring_ito_rule():
    spec = _spec()
    zb = R.zero
    # x = s + beta_0: E[x^2] picks up the variance kappa
    x = spec.coordinate(rational(3), zb, (R.one, zb, zb, zb, zb))
    sq = x * x
    assert sq.val == rational(9)
    assert sq.dt == rational(2)  # kappa = 2
    assert sq.b[0] == rational(6)
    # independent drivers have zero cross variation
    y = spec.coordinate(rational(1), zb, (zb, R.one, zb, zb, zb))
    xy = x * y
    assert xy.dt == R.zero
    # drift adds linearly
    z = spec.coordinate(rational(1), rational(5), (zb,) * 5)
    assert (x * z).dt == rational(15)


def test_jet_inverse():
    spec = _spec()
    zb = R.zero
    x = spec.coordinate(rational(2), rational("1/3"),
                        (rational(1), zb, rational("1/2"), zb, zb))
    assert (x * x.inverse() - spec.one).is_zero()
    assert (x.inverse() * x - spec.one).is_zero()


def test_jet_division_by_int():
    spec = _spec()
    x = spec.coordinate(rational(3), rational(6), (R.one,) * 5)
    h = x / 3
    assert h.val == rational(1) and h.dt == rational(2)


def _rand_state(order, rng):
    def tail():
        cs = [R.zero] * order
        for idx in rng.sample(range(order), 2):
            cs[idx] = rational(Fraction(rng.randint(-2, 2),
                                        rng.randint(1, 3)))
        return TailSeries(cs, R)
    rho = AutSeries([rational(Fraction(rng.randint(-2, 2), rng.randint(1, 3)))
                     for _ in range(order + 1)], R)
    names = ("xE", "xH", "xF", "x1e", "x1f", "x2e", "x2f",
             "x12E", "x12H", "x12F")
    return FlowState(rho=rho, **{n: tail() for n in names}, t=0.0)


def _depth(mono):
    return sum(-n for _, n in mono if n < 0)


def test_initial_state_drift_is_exactly_zero():
    k, kap = rational(1), rational(2)
    tau = rational(2) / (k + rational("3/2"))
    d = state_drift(initial_state(3, R), k, kap, tau, R, 3)
    assert d.is_zero()


def test_displayed_variant_drifts_at_time_zero():
    k, kap = rational(1), rational(2)
    tau = rational(2) / (k + rational("3/2"))
    d = state_drift(initial_state(3, R), k, kap, tau, R, 3,
                    variant="displayed")
    assert not d.is_zero()
    assert any(_depth(m) <= 2 for m in d.terms)


def test_derived_variant_is_local_martingale_on_low_depth():
    # drift of the assembled state vanishes identically on every
    # depth <= 2 component and every <0|E(n) functional, at random
    # rational states and two (k, kappa) pairs
    rng = random.Random(123)
    for kq, kapq in (("1", "2"), ("1/2", "8/3")):
        k, kap = rational(kq), rational(kapq)
        tau = rational(2) / (k + rational("3/2"))
        for _ in range(2):
            s = _rand_state(3, rng)
            d = state_drift(s, k, kap, tau, R, 3)
            assert not any(_depth(m) <= 2 for m in d.terms), (kq, kapq)
            for n in (1, 2):
                assert expectation([mode("E", n)], d).is_zero(), (kq, n)


def test_wrong_tau_breaks_the_balance():
    k, kap = rational(1), rational(2)
    d = state_drift(initial_state(3, R), k, kap, rational("1/3"), R, 3)
    assert not d.is_zero()


def test_displayed_variant_drift_structure_at_time_zero():
    # the imbalance is confined to the odd-pair/H(-2) sector; values
    # frozen from the jet computation at k=1, kappa=2, tau=4/5
    k, kap = rational(1), rational(2)
    tau = rational(2) / (k + rational("3/2"))
    d = state_drift(initial_state(3, R), k, kap, tau, R, 3,
                    variant="displayed")
    from superloewner.affine import mode
    want = {
        (mode("e", -1), mode("f", -1)): rational(2),
        (mode("H", -2),): rational("-3/5"),
    }
    assert d.terms == want


def test_h12_placement_never_moves_the_drift():
    # the assembled state is linear in x^{12,H} and that coordinate's
    # diffusion rides the odd driver, which has zero covariation with
    # every coordinate the state is nonlinear in, so the rho^{-1}
    # grouping ambiguity can change pathwise variance but no mean
    k, kap = rational(1), rational(2)
    tau = rational(2) / (k + rational("3/2"))
    rng = random.Random(44)
    for _ in range(2):
        s = _rand_state(3, rng)
        d_lit = state_drift(s, k, kap, tau, R, 3, variant="displayed",
                            h12_literal=True)
        d_def = state_drift(s, k, kap, tau, R, 3, variant="displayed")
        assert d_lit == d_def


def test_current_observable_coefficients_have_zero_drift():
    # push jets through the closed-form observable as well
    rng = random.Random(9)
    k = rational(1)
    kap = rational("8/3")
    tau = rational(2) / (k + rational("3/2"))
    s = _rand_state(4, rng)
    spec, js = jet_state(s, kap, tau, R)
    o = observable_current(js, spec.constant(k), spec)
    for n in range(1, 4):
        jet = o.coeff(-n - 1)
        assert jet.dt.is_zero(), n
