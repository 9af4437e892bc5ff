import itertools
import random
from fractions import Fraction

import pytest

from superloewner.affine import (DepthOverflowError, Module, Vector, act_mode,
                                 act_word, annihilator_apply, conformal_weight,
                                 expectation, mode, normal_order_product,
                                 sugawara)
from superloewner.grassmann import GrassRing, berezin
from superloewner.scalars import EXACT, rational
from superloewner.superalgebra import (CriticalLevelError, PARITY, SYMBOLS,
                                       bracket_symbols, form_symbols)

R = EXACT


def module(k="1", nrep=4, **kw):
    return Module(R, rational(k), nrep, **kw)


def vac(mod):
    return Vector.floor_vector(mod)


def test_act_mode_examples():
    mod = module()
    k = mod.k
    v0 = vac(mod)
    assert act_mode(mode("E", 1), act_mode(mode("F", -1), v0)) == v0.scale(k)
    assert act_mode(mode("e", 1), act_mode(mode("e", -1), v0)).is_zero()
    assert act_mode(mode("f", 1), act_mode(mode("e", -1), v0)) \
        == v0.scale(rational(-2) * k)


def test_repeated_odd_mode_reduces():
    mod = module()
    v0 = vac(mod)
    ee = act_word((mode("e", -1), mode("e", -1)), v0)
    assert ee == act_mode(mode("E", -2), v0)
    ff = act_word((mode("f", -1), mode("f", -1)), v0)
    assert ff == -act_mode(mode("F", -2), v0)


def test_affine_bracket_compatibility():
    # act(X(m), act(Y(n), v)) -+ act(Y(n), act(X(m), v))
    #   = act([X,Y](m+n), v) + m (X|Y) delta_{m+n,0} k v
    mod = Module(R, rational("2/3"), 8)
    v0 = vac(mod)
    probes = [v0, act_mode(mode("H", -1), v0),
              act_word((mode("e", -1), mode("f", -1)), v0)]
    for sx, sy in itertools.product(SYMBOLS, repeat=2):
        for m, n in ((1, -1), (2, -2), (-1, -1), (0, -2), (1, 0), (-2, 1)):
            for v in probes:
                a = act_mode(mode(sx, m), act_mode(mode(sy, n), v))
                sign = -1 if PARITY[sx] and PARITY[sy] else 1
                b = act_mode(mode(sy, n), act_mode(mode(sx, m), v))
                lhs = a - b.scale(R.from_int(sign))
                rhs = Vector(mod, {})
                for s2, c in bracket_symbols(sx, sy).items():
                    rhs = rhs + act_mode(mode(s2, m + n), v).scale(
                        R.from_int(c))
                if m + n == 0:
                    rhs = rhs + v.scale(
                        R.from_int(m * form_symbols(sx, sy)) * mod.k)
                assert lhs == rhs, (sx, sy, m, n)


def test_depth_overflow():
    mod = module(nrep=2)
    v = act_word((mode("H", -1), mode("H", -1)), vac(mod))
    with pytest.raises(DepthOverflowError):
        act_mode(mode("E", -1), v)
    assert act_mode(mode("E", -1), v, project=True).is_zero()


def test_normal_order_examples():
    mod = module()
    v0 = vac(mod)
    assert normal_order_product(mode("E", 1), mode("F", -1), v0).is_zero()
    ordered = normal_order_product(mode("e", -1), mode("f", -1), v0)
    assert ordered == act_word((mode("e", -1), mode("f", -1)), v0)
    assert normal_order_product(mode("f", 1), mode("e", -1), v0).is_zero()
    # the odd-odd reordering carries the minus sign
    w = act_mode(mode("f", -2), v0)
    lhs = normal_order_product(mode("f", 1), mode("e", -1), w)
    rhs = -act_word((mode("e", -1), mode("f", 1)), w)
    assert lhs == rhs


def test_vacuum_sugawara_values():
    mod = module(k="1")
    v0 = vac(mod)
    assert sugawara(0, v0).is_zero()
    assert sugawara(-1, v0).is_zero()
    assert sugawara(1, sugawara(-1, v0)).is_zero()
    pref = (rational(2) + rational(3)).inverse()  # 1/(2k+3) at k=1
    l2 = sugawara(-2, v0)
    expected = {
        (mode("E", -1), mode("F", -1)): rational(2) * pref,
        (mode("H", -2),): rational("-1/2") * pref,
        (mode("H", -1), mode("H", -1)): rational("1/2") * pref,
        (mode("e", -1), mode("f", -1)): -pref,
    }
    assert l2.terms == expected
    l3 = sugawara(-3, v0)
    expected3 = {
        (mode("H", -2), mode("H", -1)): pref,
        (mode("E", -2), mode("F", -1)): rational(2) * pref,
        (mode("F", -2), mode("E", -1)): rational(2) * pref,
        (mode("f", -2), mode("e", -1)): pref,
        (mode("e", -2), mode("f", -1)): -pref,
    }
    assert l3.terms == expected3


def test_central_charge_coefficient():
    for kq in ("1/2", "1", "3"):
        mod = module(kq)
        k = mod.k
        got = sugawara(2, sugawara(-2, vac(mod))).floor_coeff()
        assert got == k * (rational(2) * k + rational(3)).inverse()


def _virasoro_pairs():
    return ((1, -1), (2, -2), (1, -2), (2, -1),
            (0, 1), (0, -1), (0, 2), (0, -2))


def test_virasoro_brackets_exact():
    for kq in ("1/2", "1", "3"):
        mod = module(kq)
        k = mod.k
        ck = k * (k + rational("3/2")).inverse()
        v0 = vac(mod)
        probes = [v0, act_mode(mode("H", -1), v0),
                  act_mode(mode("e", -1), v0),
                  act_word((mode("E", -1), mode("F", -1)), v0)]
        for m, n in _virasoro_pairs():
            for v in probes:
                lhs = (sugawara(m, sugawara(n, v, project=True), project=True)
                       - sugawara(n, sugawara(m, v, project=True),
                                  project=True))
                rhs = sugawara(m + n, v, project=True).scale(R.from_int(m - n))
                if m + n == 0:
                    rhs = rhs + v.scale(ck * R.from_int(m ** 3 - m) / 12)
                assert lhs == rhs, (kq, m, n)


def test_current_primary_at_weight_one():
    mod = module("1")
    v0 = vac(mod)
    probes = [v0, act_mode(mode("H", -1), v0), act_mode(mode("e", -1), v0)]
    for s in SYMBOLS:
        for m, n in ((1, -1), (2, -2), (1, -2), (0, 1), (-1, -1)):
            for v in probes:
                lhs = (sugawara(m, act_mode(mode(s, n), v, project=True),
                                project=True)
                       - act_mode(mode(s, n), sugawara(m, v, project=True),
                                  project=True))
                rhs = act_mode(mode(s, m + n), v, project=True).scale(
                    R.from_int(-n))
                assert lhs == rhs, (s, m, n)


def test_sugawara_critical_level():
    mod = module("-3/2")
    with pytest.raises(CriticalLevelError):
        sugawara(-1, vac(mod))


def _grass_module(kq, nrep=4):
    G = GrassRing(EXACT)
    from superloewner.grassmann import GrassmannScalar
    return Module(G, GrassmannScalar.body(rational(kq)), nrep), G


def test_annihilator_exact_zero_at_default_tau():
    rng = random.Random(314)
    samples = [("1/2", "2"), ("1", "8/3"), ("3", "4")]
    samples += [(str(Fraction(rng.randint(1, 12), rng.randint(1, 4))),
                 str(Fraction(rng.randint(1, 12), rng.randint(1, 4))))
                for _ in range(20)]
    for kq, kapq in samples:
        mod, G = _grass_module(kq)
        from superloewner.grassmann import GrassmannScalar
        tau = GrassmannScalar.body(
            rational(2) * (rational(kq) + rational("3/2")).inverse())
        kap = G.from_rational(kapq)
        v0 = vac(mod)
        v = v0 + v0.scale(G.eta12)
        out = annihilator_apply(kap, tau, v)
        assert all(berezin(c).is_zero() for c in out.terms.values()), \
            (kq, kapq)


def test_annihilator_tau_zero_is_minus_2_l2():
    mod, G = _grass_module("1")
    v0 = vac(mod)
    out = annihilator_apply(G.zero, G.zero, v0)
    plain = module("1")
    want = sugawara(-2, vac(plain)).scale(rational(-2))
    got = Vector(plain, {m: c.comp[0] for m, c in out.terms.items()})
    assert got == want
    assert not got.is_zero()


def test_annihilator_grassmann_sector():
    mod, G = _grass_module("1")
    out = annihilator_apply(G.one, G.one, vac(mod))
    for c in out.terms.values():
        assert c.comp[1].is_zero() and c.comp[2].is_zero()


def test_odd_driver_square_identity():
    # (eta1 A + eta2 B)^2 = eta1 eta2 (AB - BA) for odd operators A, B;
    # the eta of the outer factor multiplies from the left
    mod, G = _grass_module("1")
    v0 = vac(mod)
    probes = [v0, act_mode(mode("H", -1), v0)]
    fa, eb = mode("f", -1), mode("e", -1)

    def lscale(w, s):
        return Vector(w.module, {m: s * c for m, c in w.terms.items()})

    for v in probes:
        def op(w):
            return (lscale(act_mode(fa, w, project=True), G.eta1)
                    + lscale(act_mode(eb, w, project=True), G.eta2))
        lhs = op(op(v))
        rhs = (act_word((fa, eb), v, project=True)
               - act_word((eb, fa), v, project=True)).scale(G.eta12)
        assert lhs == rhs


def test_expectation_examples():
    mod = module("1")
    v0 = vac(mod)
    assert expectation([], v0) == R.one
    assert expectation([mode("E", 1)], act_mode(mode("F", -1), v0)) == mod.k
    assert expectation([mode("H", 2)], act_mode(mode("H", -2), v0)) \
        == rational(4) * mod.k
    assert expectation([mode("H", 2)],
                       act_word((mode("e", -1), mode("f", -1)), v0)) \
        == rational(2) * mod.k


def test_conformal_weight():
    assert conformal_weight(0, 1) == R.zero
    assert conformal_weight(1, "1/2") == rational("1/4")
    assert conformal_weight(2, "3/2") == rational("1/2")
    with pytest.raises(CriticalLevelError):
        conformal_weight(1, "-3/2")


def test_conformal_weight_matches_l0_on_verma_floor():
    rng = random.Random(2)
    for _ in range(6):
        k = Fraction(rng.randint(-4, 8), rng.randint(1, 3))
        if k == Fraction(-3, 2):
            k += 1
        lam = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
        mod = Module(R, rational(k), 3, floor="verma", weight=rational(lam))
        v = Vector.floor_vector(mod)
        l0 = sugawara(0, v)
        assert l0 == v.scale(conformal_weight(lam, k)), (k, lam)


def test_verma_floor_rules():
    mod = Module(R, rational(1), 3, floor="verma", weight=rational(5))
    v = Vector.floor_vector(mod)
    assert act_mode(mode("E", 0), v).is_zero()
    assert act_mode(mode("e", 0), v).is_zero()
    assert act_mode(mode("H", 0), v) == v.scale(rational(5))
    assert not act_mode(mode("F", 0), v).is_zero()
    # f(0)^2 = -F(0)
    ff = act_word((mode("f", 0), mode("f", 0)), v)
    assert ff == -act_mode(mode("F", 0), v)
    assert act_mode(mode("E", 2), v).is_zero()
