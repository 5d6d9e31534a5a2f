"""Acceptance criteria 1-13, one test each.

Each test records a one-line PASS/FAIL verdict with the measured values; the
lines are printed together at the end of the module.  Run directly with
``python tests/test_acceptance.py`` to print them without pytest.
"""

import math

import numpy as np
import pytest

from prahm.grid import cell_spec, residual_spec, sample_grid
from prahm.helical import HelicalModulation, apply_helical, classical_energy_density, vh_sweep
from prahm.interaction import (canonical_balance, helical_power_balance, interaction_energy,
                               random_advanced_grid, retarded_advanced_samplers)
from prahm.ladder import (LadderState, commutator_check, demote, energy_eigenvalue,
                          number_check, promote)
from prahm.modes import canonical_mode, mode_sampler
from prahm.packet import (PacketSpec, energy_additivity_check, envelope,
                          ground_demotion_dispersal, packet_params, spectrum_uncertainty,
                          synth_packet, velocities_across_M)
from prahm.residual import convergence_order, residual_te, residual_tm, sigma_time_reverse
from prahm.txline import TxLineSpec, planck_xi, simulate, trapped_energy

W = 2 * math.pi
VERDICTS: dict[int, str] = {}


def record(n: int, ok: bool, detail: str):
    VERDICTS[n] = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(VERDICTS[n])
    assert ok, VERDICTS[n]


@pytest.fixture(scope="module", autouse=True)
def summary(request):
    yield
    tr = request.config.pluginmanager.getplugin("terminalreporter")
    if tr is not None:
        tr.write_line("")
        for n in sorted(VERDICTS):
            tr.write_line(VERDICTS[n])


def _own(kind):
    return residual_te if kind == "TE" else residual_tm


def test_criterion_01_maxwell_residuals():
    worst, orders = 0.0, []
    for kind in ("TE", "TM"):
        m = canonical_mode(kind)
        s = mode_sampler(m)
        a = _own(kind)(sample_grid(s, residual_spec(m)))
        b = _own(kind)(sample_grid(s, residual_spec(m, refine=2)))
        other = residual_tm if kind == "TE" else residual_te
        # the bare mode satisfies the other equation set as well
        worst = max(worst, a.max_linf, other(sample_grid(s, residual_spec(m))).max_linf)
        orders += list(convergence_order(a, b))
    dev = max(abs(o - 2) for o in orders)
    record(1, worst <= 1e-3 and dev <= 0.3,
           f"max residual {worst:.3e} <= 1e-3; orders {min(orders):.3f}..{max(orders):.3f} (2 +- 0.3)")


def test_criterion_02_helical_theorem():
    m = canonical_mode()
    ratios = np.round(np.linspace(0.8, 1.2, 41), 10)
    ok, parts = True, []
    for mult in (0.5, 1.5, 2.5):
        res = np.array([r for _, r in vh_sweep(m, mult * m.omega, ratios)])
        at_min = ratios[int(np.argmin(res))]
        gain = res[np.isclose(ratios, 0.9)][0] / res[ratios == 1.0][0]
        ok &= abs(at_min - 1.0) <= 0.005 and gain >= 50
        parts.append(f"{mult}w: min at {at_min:.3f}, r0.9/floor {gain:.0f}")
    record(2, ok, "; ".join(parts))


def test_criterion_03_energy_invariance():
    m = canonical_mode()
    cs = cell_spec(m)
    e0 = classical_energy_density(sample_grid(mode_sampler(m), cs))
    devs = []
    for mult in (0.5, 2.5):
        s = apply_helical(mode_sampler(m), HelicalModulation(mult * m.omega, m.v_g))
        devs.append(abs(classical_energy_density(sample_grid(s, cs)) - e0) / e0)
    record(3, max(devs) <= 1e-12, f"relative change {max(devs):.2e} <= 1e-12")


def test_criterion_04_resonance_conditions():
    m = canonical_mode()
    om_err = closure = edge = 0.0
    for M in range(6):
        for phi in (0.0, math.pi / 4, math.pi / 2):
            p = packet_params(M, phi, W)
            om_err = max(om_err, abs(p.Omega - (2 * M + 1) * W / 2))
            closure = max(closure, abs(p.tau1 + p.tau2 - 2 * math.pi / W))
            spec = PacketSpec(M, phi, m)
            tau = np.linspace(-spec.tau1, spec.tau2, 401)
            fs = synth_packet(spec)(0.1, 0.13, 0.0, tau)
            mag = np.sqrt(fs.et.norm() ** 2 + fs.cbt.norm() ** 2)
            edge = max(edge, max(mag[0], mag[-1]) / mag.max())
    t0 = packet_params(0, math.pi / 2, W).discarded["tau0"]
    ok = om_err == 0.0 and closure <= 1e-15 and edge <= 1e-12 and t0 == 0.0
    record(4, ok, f"Omega error {om_err:.1e}, closure {closure:.1e}, "
                  f"edge/max {edge:.1e} <= 1e-12, degenerate tau0(M=0) = {t0}")


def test_criterion_05_energy_additivity():
    d = [energy_additivity_check(PacketSpec(M)).deviation for M in (0, 3)]
    record(5, max(d) <= 1e-8, f"deviations M=0 {d[0]:.1e}, M=3 {d[1]:.1e} <= 1e-8")


def test_criterion_06_interaction_energy():
    v = {M: interaction_energy(PacketSpec(M)).volume for M in range(4)}
    scale = abs(v[0])
    z = max(abs(interaction_energy(PacketSpec(M), "phi0").volume) for M in range(4)) / scale
    ratio = max(abs(v[M] / v[0] - (2 * M + 1)) for M in (1, 2, 3))
    x = np.array([M + 0.5 for M in v])
    y = np.array(list(v.values()))
    fit = np.linalg.norm(y - np.dot(x, y) / np.dot(x, x) * x) / np.linalg.norm(y)
    record(6, z <= 1e-12 and ratio <= 1e-6 and fit <= 1e-6,
           f"phi0 {z:.1e} <= 1e-12 x scale; ratio error {ratio:.1e}; fit residual {fit:.1e}")


def test_criterion_07_helical_power_identity():
    a, b = canonical_balance(0), canonical_balance(0, refine=2)
    order = math.log2(a.imbalance / b.imbalance)
    m = canonical_mode("TM")
    ps = PacketSpec(0, mode=m)
    ret, _ = retarded_advanced_samplers(ps)
    cs = cell_spec(m, nt=256)
    gR = sample_grid(ret, cs)
    rand = [helical_power_balance(gR, random_advanced_grid(m, ps.Omega, cs, np.random.default_rng(s)),
                                  ps.Omega).imbalance for s in range(10)]
    ok = a.imbalance <= 1e-3 and max(rand) <= 1e-3 and abs(order - 2) <= 0.3
    record(7, ok, f"mode pair {a.imbalance:.2e}, random worst {max(rand):.2e} <= 1e-3; order {order:.2f}")


def test_criterion_08_ladder_algebra():
    worst = 0.0
    for M in range(21):
        s = LadderState(M, 1.0)
        up, dn = promote(s), demote(s)
        worst = max(worst, abs(up.coeff - math.sqrt(M + 1)), abs(dn.coeff - math.sqrt(M)),
                    commutator_check(s), abs(energy_eigenvalue(s) - (M + 0.5)))
    taus = np.linspace(-1.0, 1.0, 41)
    diff = max(number_check(LadderState(M, 1.0), taus, 1e-4) for M in range(6))
    record(8, worst <= 1e-12 and diff <= 1e-6,
           f"arithmetic {worst:.1e} <= 1e-12; differential {diff:.1e} <= 1e-6")


def test_criterion_09_txline():
    s = TxLineSpec()
    tr = simulate(s)
    p0 = tr.average_power(0, 2 * s.tau0)
    late = abs(tr.average_power(2 * s.tau0, 4 * s.tau0)) / p0
    U = trapped_energy(s)
    err = abs(U / s.closed_form_energy - 1)
    xi = planck_xi(1.0)
    ok = err <= 0.005 and late <= 1e-6 and abs(xi - 0.576) <= 0.01 and abs(xi / 0.6 - 1) <= 0.1
    record(9, ok, f"U0 {U:.3f} J (rel err {err:.1e}); post-2tau0 power {late:.1e}; "
                  f"xi {xi:.4f} (0.576 +- 0.01, {abs(xi / 0.6 - 1):.1%} from 0.6)")


def test_criterion_10_velocity_independence():
    out = []
    ok = True
    for label, n1, tol in (("constant n", 0.0, 1e-3), ("dispersive", 1e-4, 5e-3)):
        m = canonical_mode(kappa_ratio=0.02, n1=n1)
        v = np.array([r.velocity for r in velocities_across_M(m, [0, 1, 2, 5], [0, 2, 4]).values()])
        spread = (v.max() - v.min()) / v.mean()
        ok &= spread <= tol
        msg = f"{label}: spread {spread:.2e} <= {tol:g}"
        if n1 == 0.0:
            vg = np.max(np.abs(v / m.v_g - 1))
            ok &= vg <= 1e-3
            msg += f", |v/v_g - 1| {vg:.2e} <= 1e-3"
        out.append(msg)
    record(10, ok, "; ".join(out))


def test_criterion_11_time_reversal():
    dev = inv = 0.0
    for kind in ("TE", "TM"):
        m = canonical_mode(kind)
        g = sample_grid(mode_sampler(m), residual_spec(m))
        rev = sigma_time_reverse(g)
        a, b = _own(kind)(g), _own(kind)(rev)
        dev = max(dev, np.max(np.abs(a.linf - b.linf)), np.max(np.abs(a.l2 - b.l2)))
        back = sigma_time_reverse(rev)
        inv = max(inv, max(np.max(np.abs(u - w)) for u, w in zip(back.components, g.components)))
    record(11, dev <= 1e-12 and inv == 0.0, f"residual change {dev:.1e} <= 1e-12; involution error {inv}")


def test_criterion_12_uncertainty():
    s1 = spectrum_uncertainty(PacketSpec(0))
    s4 = spectrum_uncertainty(PacketSpec(0, Q=4))
    change = abs(s4.product / s1.product - 1)
    shrink = s1.delta_omega / s4.delta_omega
    ok = math.pi <= s1.product <= 8 * math.pi and change <= 0.2 and abs(shrink - 4) <= 0.2
    record(12, ok, f"Q=1 product {s1.product:.4f} in [pi, 8pi]; Q=4 change {change:.1%}; "
                   f"dw shrink x{shrink:.3f}")


def test_criterion_13_ground_demotion():
    g = ground_demotion_dispersal(PacketSpec(0, math.pi / 2))
    record(13, g.rel_std <= 1e-12 and g.zeros == 0, f"rel std {g.rel_std:.1e} <= 1e-12; zeros {g.zeros}")


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
