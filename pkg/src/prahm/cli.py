"""Command-line front end.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or configuration
error, 3 I/O error.  CSV floats use Python's shortest round-trip ``repr``.
"""

from __future__ import annotations

import argparse
import copy
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .errors import BelowCutoff, PrahmError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

DEFAULTS = {
    "mode": {"kind": "TE", "n0": 1.5, "n1": 0.0, "omega_ref": None, "omega": 2 * math.pi,
             "kappa_ratio": 0.6, "profile": "separable-cosine", "bessel_order": 1,
             "amplitude": 1.0, "modal_phase": 0.0},
    "grid": {"nx": 32, "ny": 32, "nt": 64, "hx": 0.01, "hy": 0.01, "ht": 0.001, "hz": 0.001},
    "packet": {"M": [0, 1, 2, 3], "phi": math.pi / 2, "Q": 1, "map": "phi90"},
    "dispersion": {"kappa_ratio": 0.02, "n1": 1e-4, "probes": [0.0, 2.0, 4.0]},
    "txline": {"Z0": 377.0, "I": 1.0, "steps_per_transit": 512},
    "tolerances": {},
}


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    data: dict

    @classmethod
    def load(cls, path: str | None) -> RunConfig:
        data = copy.deepcopy(DEFAULTS)
        if path:
            try:
                with open(path, encoding="utf-8") as fh:
                    user = json.load(fh)
            except OSError as exc:
                raise ConfigError(f"cannot read config {path}: {exc}") from None
            except json.JSONDecodeError as exc:
                raise ConfigError(f"config is not valid JSON: {exc}") from None
            if not isinstance(user, dict):
                raise ConfigError("config must be a JSON object")
            for section, values in user.items():
                if section not in data:
                    raise ConfigError(f"unknown config section {section!r}")
                if not isinstance(values, dict):
                    raise ConfigError(f"config section {section!r} must be an object")
                if section != "tolerances":
                    for key in values:
                        if key not in data[section]:
                            raise ConfigError(f"unknown key {section}.{key}")
                data[section].update(values)
        cfg = cls(data)
        cfg.validate()
        return cfg

    def validate(self):
        m = self.data["mode"]
        if m["kind"] not in ("TE", "TM"):
            raise ConfigError("mode.kind must be TE or TM")
        if m["profile"] not in ("separable-cosine", "bessel-circular"):
            raise ConfigError("mode.profile must be separable-cosine or bessel-circular")
        if not (m["omega"] > 0 and m["kappa_ratio"] > 0):
            raise ConfigError("mode.omega and mode.kappa_ratio must be positive")
        g = self.data["grid"]
        if min(g["nx"], g["ny"], g["nt"]) < 3:
            raise ConfigError("grid sizes must be at least 3")
        if min(g["hx"], g["hy"], g["ht"], g["hz"]) <= 0:
            raise ConfigError("grid spacings must be positive")
        p = self.data["packet"]
        if int(p["Q"]) != p["Q"] or p["Q"] < 1:
            raise ConfigError("packet.Q must be a positive integer")
        if p["map"] not in ("phi0", "phi90"):
            raise ConfigError("packet.map must be phi0 or phi90")
        for kind in ("TE", "TM"):
            self.mode(kind)  # raises BelowCutoff

    def mode(self, kind: str | None = None, **over):
        from .modes import canonical_mode

        m = dict(self.data["mode"])
        m.update(over)
        return canonical_mode(kind or m["kind"], omega=m["omega"], n0=m["n0"], n1=m["n1"],
                              omega_ref=m["omega_ref"], kappa_ratio=m["kappa_ratio"],
                              profile=m["profile"], bessel_order=m["bessel_order"],
                              amplitude=m["amplitude"], modal_phase=m["modal_phase"])

    def grid_spec(self, mode, refine: int = 1):
        from .grid import GridSpec, residual_spec

        g = self.data["grid"]
        base = residual_spec(mode)
        spec = GridSpec(g["nx"], g["ny"], g["nt"], g["hx"], g["hy"], g["ht"], g["hz"],
                        x0=base.x0, y0=base.y0)
        return spec.refined(refine) if refine > 1 else spec

    def tol(self, name: str, default: float) -> float:
        return float(self.data["tolerances"].get(name, default))


# ----------------------------------------------------------------- checks


@dataclass
class Check:
    name: str
    value: float
    tolerance: float
    relation: str = "<="

    @property
    def ok(self) -> bool:
        v, t = self.value, self.tolerance
        if isinstance(v, float) and math.isnan(v):
            return False
        if self.relation == "<=":
            return v <= t
        if self.relation == ">=":
            return v >= t
        if self.relation == "==":
            return v == t
        raise ValueError(self.relation)


def suite_maxwell(cfg: RunConfig) -> list[Check]:
    from .grid import sample_grid
    from .modes import mode_sampler, profile_helmholtz_residual
    from .residual import (convergence_order, residual_lightcone, residual_te, residual_tm,
                           sigma_time_reverse)

    out = []
    tol = cfg.tol("maxwell.residual", 1e-3)
    for kind in ("TE", "TM"):
        m = cfg.mode(kind)
        s = mode_sampler(m)
        g1 = sample_grid(s, cfg.grid_spec(m))
        g2 = sample_grid(s, cfg.grid_spec(m, refine=2))
        own = residual_te if kind == "TE" else residual_tm
        other = residual_tm if kind == "TE" else residual_te
        r1, r2 = own(g1), own(g2)
        for name, v in zip(r1.names, r1.linf):
            out.append(Check(f"{kind}.{name}", float(v), tol))
        for name, v in zip(*(lambda r: (r.names, r.linf))(other(g1))):
            out.append(Check(f"{kind}.{name}", float(v), tol))
        for name, o in zip(r1.names, convergence_order(r1, r2)):
            out.append(Check(f"{kind}.{name}.order_error", abs(float(o) - 2.0),
                             cfg.tol("maxwell.order", 0.3)))
        lc = residual_lightcone(g1, kind)
        out.append(Check(f"{kind}.lightcone_max", lc.max_linf, tol))
        rev = sigma_time_reverse(g1)
        rr = own(rev)
        out.append(Check(f"{kind}.time_reverse_l2_change", float(np.max(np.abs(rr.l2 - r1.l2))),
                         cfg.tol("maxwell.reverse", 1e-12)))
        back = sigma_time_reverse(rev)
        out.append(Check(f"{kind}.time_reverse_involution",
                         float(max(np.max(np.abs(a - b)) for a, b in zip(back.components, g1.components))),
                         1e-15))
        if hasattr(m.profile, "cell"):
            out.append(Check(f"{kind}.profile_helmholtz_h1e-3",
                             profile_helmholtz_residual(m.profile, 1e-3), 1e-5))
    return out


def suite_helical(cfg: RunConfig) -> list[Check]:
    from .grid import cell_spec, sample_grid
    from .helical import (HelicalModulation, apply_helical, classical_energy_density, vh_sweep)
    from .modes import mode_sampler

    out = []
    m = cfg.mode()
    gs = cfg.grid_spec(m)
    ratios = np.round(np.linspace(0.8, 1.2, 41), 10)
    for mult in (0.5, 1.5, 2.5):
        sw = vh_sweep(m, mult * m.omega, ratios, grid_spec=gs)
        res = np.array([r for _, r in sw])
        imin = int(np.argmin(res))
        out.append(Check(f"vh_sweep.Omega={mult}w.argmin_ratio_error",
                         abs(float(ratios[imin]) - 1.0), 0.005))
        floor = res[ratios == 1.0][0]
        out.append(Check(f"vh_sweep.Omega={mult}w.floor", float(floor), cfg.tol("helical.floor", 1e-3)))
        r09 = res[np.isclose(ratios, 0.9)][0]
        out.append(Check(f"vh_sweep.Omega={mult}w.ratio0.9_over_floor", float(r09 / floor), 50.0, ">="))
    neg = vh_sweep(m, 0.5 * m.omega, [1.0], helicity=-1, grid_spec=gs)[0][1]
    out.append(Check("helicity_minus.floor", neg, cfg.tol("helical.floor", 1e-3)))
    if hasattr(m.profile, "cell"):
        cs = cell_spec(m)
        e0 = classical_energy_density(sample_grid(mode_sampler(m), cs))
        for mult in (0.5, 2.5):
            s = apply_helical(mode_sampler(m), HelicalModulation(mult * m.omega, m.v_g))
            e1 = classical_energy_density(sample_grid(s, cs))
            out.append(Check(f"energy_invariance.Omega={mult}w", abs(e1 - e0) / e0, 1e-12))
    return out


def suite_packet(cfg: RunConfig) -> list[Check]:
    from .modes import canonical_mode
    from .packet import (PacketSpec, energy_additivity_check, envelope, ground_demotion_dispersal,
                         packet_params, spectrum_uncertainty, synth_packet, velocities_across_M)

    out = []
    m = cfg.mode()
    w = m.omega
    worst_bound = worst_closure = worst_omega = 0.0
    for M in range(6):
        for phi in (0.0, math.pi / 4, math.pi / 2):
            p = packet_params(M, phi, w, 1)
            worst_omega = max(worst_omega, abs(p.Omega - (2 * M + 1) * w / 2))
            worst_closure = max(worst_closure, abs(p.tau1 + p.tau2 - 2 * math.pi / w))
            spec = PacketSpec(M, phi, m)
            ps = synth_packet(spec)
            x0, y0 = _ref_point(m)
            taus = np.linspace(-spec.tau1, spec.tau2, 401)
            fs = ps(x0, y0, 0.0, taus)
            mag = np.sqrt(fs.et.norm() ** 2 + fs.cbt.norm() ** 2)
            worst_bound = max(worst_bound, float(max(mag[0], mag[-1]) / mag.max()))
            _, e = envelope(spec, np.array([-spec.tau1, spec.tau2]))
            worst_bound = max(worst_bound, float(np.max(np.abs(e))))
    out.append(Check("resonance.Omega_error", worst_omega, 0.0, "=="))
    out.append(Check("resonance.window_closure_error", worst_closure, 1e-15))
    out.append(Check("resonance.boundary_over_max", worst_bound, 1e-12))
    out.append(Check("degenerate.tau0_at_M0", packet_params(0, math.pi / 2, w).discarded["tau0"], 0.0, "=="))
    for M in (0, 3):
        out.append(Check(f"additivity.M={M}", energy_additivity_check(PacketSpec(M, mode=m)).deviation, 1e-8))
    s1 = spectrum_uncertainty(PacketSpec(0, mode=m))
    s4 = spectrum_uncertainty(PacketSpec(0, mode=m, Q=4))
    out.append(Check("spectrum.Q1.product_over_pi_low", s1.product / math.pi, 1.0, ">="))
    out.append(Check("spectrum.Q1.product_over_pi_high", s1.product / math.pi, 8.0, "<="))
    out.append(Check("spectrum.Q4.product_change", abs(s4.product / s1.product - 1), 0.2))
    out.append(Check("spectrum.Q4.dw_ratio_error", abs(s1.delta_omega / s4.delta_omega - 4) / 4, 0.05))
    d = cfg.data["dispersion"]
    for label, n1, tol in (("constant_n", 0.0, 1e-3), ("dispersive", d["n1"], 5e-3)):
        md = canonical_mode(omega=w, n0=m.refr.n0, n1=n1, kappa_ratio=d["kappa_ratio"])
        vs = velocities_across_M(md, [0, 1, 2, 5], d["probes"])
        v = np.array([r.velocity for r in vs.values()])
        out.append(Check(f"velocity.{label}.spread", float((v.max() - v.min()) / v.mean()), tol))
        if n1 == 0.0:
            out.append(Check(f"velocity.{label}.vs_vg", float(np.max(np.abs(v / md.v_g - 1))), tol))
    g = ground_demotion_dispersal(PacketSpec(0, math.pi / 2, m))
    out.append(Check("demotion.rel_std", g.rel_std, 1e-12))
    out.append(Check("demotion.zeros", float(g.zeros), 0.0, "=="))
    return out


def suite_interaction(cfg: RunConfig) -> list[Check]:
    from .grid import cell_spec, sample_grid
    from .interaction import (canonical_balance, complex_poynting_balance, interaction_energy,
                              random_advanced_grid, retarded_advanced_samplers,
                              helical_power_balance)
    from .modes import mode_sampler
    from .packet import PacketSpec

    out = []
    m = cfg.mode()
    vals = {M: interaction_energy(PacketSpec(M, mode=m)).volume for M in range(4)}
    for M in (1, 2, 3):
        out.append(Check(f"interaction.ratio_error.M={M}", abs(vals[M] / vals[0] - (2 * M + 1)), 1e-6))
    x = np.array([M + 0.5 for M in vals])
    y = np.array(list(vals.values()))
    slope = float(np.dot(x, y) / np.dot(x, x))
    out.append(Check("interaction.linear_fit_residual",
                     float(np.linalg.norm(y - slope * x) / np.linalg.norm(y)), 1e-6))
    z = max(abs(interaction_energy(PacketSpec(M, mode=m), "phi0").volume) for M in range(4))
    out.append(Check("interaction.phi0_over_scale", z / abs(vals[0]), 1e-12))

    r1, r2 = canonical_balance(0), canonical_balance(0, refine=2)
    out.append(Check("balance.mode_pair", r1.imbalance, 1e-3))
    out.append(Check("balance.mode_pair.order_error", abs(math.log2(r1.imbalance / r2.imbalance) - 2), 0.3))
    mt = cfg.mode("TM")
    ps = PacketSpec(0, mode=mt)
    ret, _ = retarded_advanced_samplers(ps)
    cs = cell_spec(mt, nt=256)
    gR = sample_grid(ret, cs)
    worst = max(helical_power_balance(gR, random_advanced_grid(mt, ps.Omega, cs,
                                                               np.random.default_rng(s)),
                                      ps.Omega).imbalance for s in range(10))
    out.append(Check("balance.random_pairs_worst", worst, 1e-3))
    for kind in ("TE", "TM"):
        mk = cfg.mode(kind)
        pr = complex_poynting_balance(sample_grid(mode_sampler(mk), cell_spec(mk, nt=8)))
        out.append(Check(f"poynting.{kind}.imbalance", pr.imbalance, 1e-3))
        out.append(Check(f"poynting.{kind}.electric_magnetic", pr.energy_mismatch, 1e-3))
    return out


def suite_ladder(cfg: RunConfig) -> list[Check]:
    from .ladder import (LadderState, commutator_check, demote, energy_eigenvalue,
                         number_check, promote)

    out = []
    worst = 0.0
    for M in range(21):
        s = LadderState(M, 1.0)
        up, down = promote(s), demote(s)
        worst = max(worst, abs(up.coeff - math.sqrt(M + 1)), abs(up.M - (M + 1)))
        if M > 0:
            worst = max(worst, abs(down.coeff - math.sqrt(M)), abs(down.M - (M - 1)))
        else:
            worst = max(worst, abs(down.coeff))
        worst = max(worst, commutator_check(s), abs(energy_eigenvalue(s) - (M + 0.5)))
    out.append(Check("ladder.arithmetic_M0_20", worst, 1e-12))
    taus = np.linspace(-1.0, 1.0, 41)
    nd = max(number_check(LadderState(M, 1.0), taus) for M in range(6))
    out.append(Check("ladder.number_differential", nd, 1e-6))
    out.append(Check("ladder.commutator_zero_state", commutator_check(LadderState(0, 0.0)), 1e-12))
    return out


def suite_txline(cfg: RunConfig) -> list[Check]:
    from .txline import TxLineSpec, planck_xi, simulate, trapped_energy

    t = cfg.data["txline"]
    s = TxLineSpec(t["Z0"], cfg.data["mode"]["omega"], t["I"], t["steps_per_transit"])
    tr = simulate(s)
    p0 = tr.average_power(0, 2 * s.tau0)
    out = [Check("txline.initial_power_rel_error", abs(p0 / (0.5 * s.I**2 * s.Z0) - 1), 0.005),
           Check("txline.post_round_trip_power", abs(tr.average_power(2 * s.tau0, 4 * s.tau0)) / p0, 1e-6),
           Check("txline.trapped_energy_rel_error",
                 abs(trapped_energy(s) / s.closed_form_energy - 1), cfg.tol("txline.energy", 0.005)),
           Check("txline.bookkeeping", tr.bookkeeping_error(), 1e-6)]
    xi = planck_xi(1.0)
    out.append(Check("txline.xi_zeta1_error", abs(xi - 0.576), 0.01))
    out.append(Check("txline.xi_vs_0.6", abs(xi / 0.6 - 1), 0.1))
    return out


SUITES = {"maxwell": suite_maxwell, "helical": suite_helical, "packet": suite_packet,
          "interaction": suite_interaction, "ladder": suite_ladder, "txline": suite_txline}


def _ref_point(mode):
    if hasattr(mode.profile, "cell"):
        a, b = mode.profile.cell
        return 0.3 * a, 0.35 * b
    return 0.6 / mode.kappa, 0.6 / mode.kappa


# ------------------------------------------------------------------ output


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _emit(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _parse_ints(text: str) -> list[int]:
    try:
        vals = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"--M expects a comma-separated list of integers, got {text!r}") from None
    if not vals or min(vals) < 0:
        raise ConfigError("--M values must be non-negative integers")
    return vals


# ---------------------------------------------------------------- commands


def cmd_verify(args, cfg: RunConfig) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    checks = []
    for name in names:
        checks += [(name, c) for c in SUITES[name](cfg)]
    lines = [f"{'suite':12s} {'check':48s} {'measured':>14s} {'rel':>3s} {'tolerance':>10s} result"]
    for suite, c in checks:
        lines.append(f"{suite:12s} {c.name:48s} {c.value:14.6g} {c.relation:>3s} "
                     f"{c.tolerance:10.3g} {'PASS' if c.ok else 'FAIL'}")
    n_fail = sum(not c.ok for _, c in checks)
    lines.append(f"{len(checks) - n_fail}/{len(checks)} checks passed")
    print("\n".join(lines))
    if args.out:
        _emit(_csv_text(["suite", "check", "measured", "relation", "tolerance", "pass"],
                        [(s, c.name, c.value, c.relation, c.tolerance, c.ok) for s, c in checks]),
              args.out)
    return EXIT_OK if n_fail == 0 else EXIT_FAIL


def cmd_synth(args, cfg: RunConfig) -> int:
    from .packet import PacketSpec, envelope, synth_packet

    M = _parse_ints(args.M)[0] if args.M else cfg.data["packet"]["M"][0]
    spec = PacketSpec(M, _phi(args, cfg), cfg.mode(), _Q(args, cfg))
    ps = synth_packet(spec, args.map or cfg.data["packet"]["map"])
    x0, y0 = _ref_point(spec.mode)
    taus = np.linspace(-spec.tau1, spec.tau2, args.samples)
    fs = ps(x0, y0, 0.0, taus)
    _, env = envelope(spec, taus)
    comps = [fs.et.x, fs.et.y, fs.cbt.x, fs.cbt.y, fs.ez, fs.cbz]
    names = ["et_x", "et_y", "cbt_x", "cbt_y", "ez", "cbz"]
    header = ["tau", "envelope"] + [f"{p}_{n}" for n in names for p in ("re", "im")]
    rows = []
    for i, tau in enumerate(taus):
        row = [float(tau), float(env[i])]
        for c in comps:
            v = complex(np.broadcast_to(c, taus.shape)[i])
            row += [v.real, v.imag]
        rows.append(row)
    _emit(_csv_text(header, rows), args.out)
    return EXIT_OK


def cmd_sweep_vh(args, cfg: RunConfig) -> int:
    from .helical import vh_sweep

    if not (0 < args.from_ < args.to) or args.steps < 2:
        raise ConfigError("need 0 < --from < --to and --steps >= 2")
    m = cfg.mode()
    ratios = np.round(np.linspace(args.from_, args.to, args.steps), 12)
    rows = vh_sweep(m, args.omega_factor * m.omega, ratios, grid_spec=cfg.grid_spec(m))
    _emit(_csv_text(["ratio", "residual"], rows), args.out)
    return EXIT_OK


def cmd_dispersion(args, cfg: RunConfig) -> int:
    from .modes import canonical_mode
    from .packet import velocities_across_M

    Ms = _parse_ints(args.M) if args.M else [0, 1, 2, 5]
    d = cfg.data["dispersion"]
    base = cfg.data["mode"]
    md = canonical_mode(omega=base["omega"], n0=base["n0"],
                        n1=d["n1"] if args.dispersive else 0.0,
                        kappa_ratio=args.kappa_ratio or d["kappa_ratio"])
    res = velocities_across_M(md, Ms, d["probes"], phi=_phi(args, cfg), Q=_Q(args, cfg))
    _emit(_csv_text(["M", "velocity", "distortion"],
                    [(M, r.velocity, r.distortion) for M, r in res.items()]), args.out)
    return EXIT_OK


def cmd_txline(args, cfg: RunConfig) -> int:
    from .txline import TxLineSpec, planck_xi, simulate

    t = cfg.data["txline"]
    s = TxLineSpec(t["Z0"], cfg.data["mode"]["omega"], t["I"], t["steps_per_transit"],
                   source=args.source)
    tr = simulate(s, args.periods * s.tau0)
    _emit(_csv_text(["t", "power", "energy"], zip(tr.t + s.dt, tr.power, tr.stored)), args.out)
    print(f"zeta={args.zeta!r} xi={planck_xi(args.zeta, s.omega, s.Z0) * args.zeta**2!r}",
          file=sys.stderr)
    return EXIT_OK


def cmd_spectrum(args, cfg: RunConfig) -> int:
    from .packet import PacketSpec, spectrum_uncertainty

    Ms = _parse_ints(args.M) if args.M else [0]
    Q = _Q(args, cfg)
    rows = []
    for M in Ms:
        r = spectrum_uncertainty(PacketSpec(M, _phi(args, cfg), cfg.mode(), Q), args.convention)
        rows.append((M, Q, r.delta_omega, r.delta_t, r.product))
    _emit(_csv_text(["M", "Q", "dw", "dt", "product"], rows), args.out)
    return EXIT_OK


def cmd_interaction(args, cfg: RunConfig) -> int:
    from .packet import PacketSpec
    from .interaction import interaction_energy

    Ms = _parse_ints(args.M) if args.M else cfg.data["packet"]["M"]
    amap = args.map or cfg.data["packet"]["map"]
    rows = []
    for M in Ms:
        r = interaction_energy(PacketSpec(M, _phi(args, cfg), cfg.mode(), _Q(args, cfg)), amap)
        rows.append((M, r.volume, r.constant))
    _emit(_csv_text(["M", "value", "constant"], rows), args.out)
    return EXIT_OK


def cmd_ladder(args, cfg: RunConfig) -> int:
    from .ladder import (LadderState, commutator_check, demote, energy_eigenvalue,
                         number_check, promote)

    Ms = _parse_ints(args.M) if args.M else list(range(6))
    taus = np.linspace(-1.0, 1.0, 41)
    rows = []
    for M in Ms:
        s = LadderState(M, 1.0, cfg.data["mode"]["omega"])
        rows.append((M, promote(s).coeff, demote(s).coeff, energy_eigenvalue(s),
                     number_check(s, taus), commutator_check(s)))
    _emit(_csv_text(["M", "promote_coeff", "demote_coeff", "energy", "number_deviation",
                     "commutator_deviation"], rows), args.out)
    return EXIT_OK


def _phi(args, cfg) -> float:
    return cfg.data["packet"]["phi"] if getattr(args, "phi", None) is None else args.phi


def _Q(args, cfg) -> int:
    q = cfg.data["packet"]["Q"] if getattr(args, "Q", None) is None else args.Q
    if q < 1:
        raise ConfigError("--Q must be a positive integer")
    return int(q)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="prahm", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, out=True):
        sp.add_argument("--config", help="JSON run configuration")
        if out:
            sp.add_argument("--out", help="output path ('-' or omitted: stdout)")

    def packet_flags(sp):
        sp.add_argument("--M", help="comma-separated excitation numbers")
        sp.add_argument("--phi", type=float, help="inter-wave angle in radians")
        sp.add_argument("--Q", type=int, help="whole periods trapped")

    v = sub.add_parser("verify", help="run verification suites")
    common(v)
    v.add_argument("--suite", default="all", choices=["all", *SUITES])
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("synth", help="packet field along tau at the reference point")
    common(s)
    packet_flags(s)
    s.add_argument("--map", choices=["phi0", "phi90"])
    s.add_argument("--samples", type=int, default=201)
    s.set_defaults(func=cmd_synth)

    w = sub.add_parser("sweep-vh", help="curl residual against v_h / v_g")
    common(w)
    w.add_argument("--from", dest="from_", type=float, default=0.8)
    w.add_argument("--to", type=float, default=1.2)
    w.add_argument("--steps", type=int, default=41)
    w.add_argument("--omega-factor", type=float, default=0.5, help="Omega in units of omega")
    w.set_defaults(func=cmd_sweep_vh)

    d = sub.add_parser("dispersion", help="envelope velocity per M")
    common(d)
    packet_flags(d)
    d.add_argument("--kappa-ratio", type=float)
    d.add_argument("--dispersive", action="store_true", help="use the configured n1")
    d.set_defaults(func=cmd_dispersion)

    t = sub.add_parser("txline", help="shorted-line energy trace")
    common(t)
    t.add_argument("--zeta", type=float, default=1.0)
    t.add_argument("--source", choices=["matched", "ideal"], default="matched")
    t.add_argument("--periods", type=float, default=4.0, help="duration in units of tau0")
    t.set_defaults(func=cmd_txline)

    sp = sub.add_parser("spectrum", help="spectral and temporal widths")
    common(sp)
    packet_flags(sp)
    sp.add_argument("--convention", choices=["full", "rms"], default="full")
    sp.set_defaults(func=cmd_spectrum)

    i = sub.add_parser("interaction", help="interaction energy per M")
    common(i)
    packet_flags(i)
    i.add_argument("--map", choices=["phi0", "phi90"])
    i.set_defaults(func=cmd_interaction)

    lp = sub.add_parser("ladder", help="ladder operator table")
    common(lp)
    lp.add_argument("--M", help="comma-separated levels")
    lp.set_defaults(func=cmd_ladder)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "out", None) == "":
        print("error: empty output path", file=sys.stderr)
        return EXIT_USAGE
    try:
        cfg = RunConfig.load(args.config)
        return args.func(args, cfg)
    except (ConfigError, BelowCutoff, PrahmError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
