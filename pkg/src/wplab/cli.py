"""Command-line front end.

``wplab <solve|wigner-grid|energy-profile|poles|report|verify>`` drives the
full pipeline for one configured system: spectral eigensolve, Wigner field
sampling, average-energy profiles, pole location, and the pole-negativity
co-location report.  Every command owns its output directory for the length
of the run (lock file) and writes the effective configuration next to its
artifacts.

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 numerical failure.  ``WPLAB_THREADS`` caps internal sampling parallelism.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

import numpy as np

from .config import ConfigError, RunConfig, apply_overrides, load_config
from .energy import (DenominatorNearZero, average_energy_p, average_energy_x,
                     find_poles, harmonic_avg_energy_p, harmonic_avg_energy_x,
                     pole_negativity_report, sample_energy_profile,
                     wigner_energy_integral)
from .model import (EigensolverError, OscillatorFrame, PolynomialPotential,
                    SpectralBasis, build_hamiltonian, density_matrix,
                    solve_eigenstates, state_wavefunction)
from .moments import (GTable, MomentRangeError, default_gtable, moment_I_direct,
                      moment_I_laguerre, moment_J)
from .oracle import (QuadratureError, QuadratureSpec, quad_gaussian_moment,
                     quad_moment_I, quad_moment_J)
from .output import (LockHeldError, directory_lock, svg_heatmap, svg_profile,
                     svg_report, svg_wavefunctions, write_csv, write_json)
from .specfun import hermite_sq_zero, laguerre
from .wigner import (PhasePoint, WignerField, default_negativity_tol,
                     negativity_intervals, wigner_grid, wigner_slice,
                     wigner_value)

COMMANDS = ("solve", "wigner-grid", "energy-profile", "poles", "report", "verify")


# argument handling ---------------------------------------------------------


def _parse_states(text: str) -> tuple[int, ...]:
    if text.strip() == "":
        return ()
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"--states: expected comma-separated integers, got {text!r}") from exc


def _parse_floats(text: str, flag: str) -> tuple[float, ...]:
    try:
        return tuple(float(tok) for tok in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"{flag}: expected comma-separated numbers, got {text!r}") from exc


def _parse_formats(text: str) -> tuple[str, ...]:
    return tuple(tok.strip() for tok in text.split(",") if tok.strip())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wplab",
        description="Wigner functions, conditional moments, and average-energy "
                    "profiles for 1-D oscillators with polynomial potentials.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("solve", "eigenvalues, basis coefficients, and probability densities"),
        ("wigner-grid", "phase-space Wigner field, heatmap, and axis negativity"),
        ("energy-profile", "average energy along each axis with pole markers"),
        ("poles", "energy-denominator pole positions per state and axis"),
        ("report", "pole vs negativity-interval co-location report"),
        ("verify", "cross-check suites (closed forms vs quadrature oracles)"),
    ):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--config", metavar="FILE", default=None,
                        help="JSON configuration file (flags override fields)")
        sp.add_argument("--states", metavar="LIST", default=None,
                        help="comma-separated state indices (empty string for none)")
        sp.add_argument("--out", metavar="DIR", default=None, help="output directory")
        sp.add_argument("--format", metavar="LIST", default=None,
                        help="comma-separated subset of csv,json,svg")
        sp.add_argument("--frame", metavar="M,OMEGA,HBAR", default=None,
                        help="oscillator frame parameters")
        sp.add_argument("--potential", metavar="A0,A1,...", default=None,
                        help="potential coefficients, low order first")
        if name == "verify":
            sp.add_argument("--perturb-g", metavar="EPS", type=float, default=0.0,
                            help="inject an additive fault into the G-coefficient table")
            sp.add_argument("--max-nk", metavar="N", type=int, default=10,
                            help="largest basis index exercised by the suites")
    return parser


def effective_config(args: argparse.Namespace) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    frame = None
    if args.frame is not None:
        frame = _parse_floats(args.frame, "--frame")
        if len(frame) != 3:
            raise ConfigError("--frame: expected exactly three numbers m,omega,hbar")
    return apply_overrides(
        cfg,
        states=_parse_states(args.states) if args.states is not None else None,
        out_dir=args.out,
        formats=_parse_formats(args.format) if args.format is not None else None,
        frame=frame,
        potential=_parse_floats(args.potential, "--potential") if args.potential is not None else None,
    )


def _thread_count() -> int:
    raw = os.environ.get("WPLAB_THREADS", "")
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError as exc:
        raise ConfigError(f"WPLAB_THREADS must be an integer, got {raw!r}") from exc
    if n < 1:
        raise ConfigError("WPLAB_THREADS must be >= 1")
    return n


# shared pipeline pieces ----------------------------------------------------


def _solve(cfg: RunConfig):
    frame = OscillatorFrame(mass=cfg.mass, omega=cfg.omega, hbar=cfg.hbar)
    potential = PolynomialPotential(cfg.potential)
    if not cfg.states:
        return frame, potential, []
    basis = SpectralBasis(size=cfg.basis_size, frame=frame)
    states = solve_eigenstates(build_hamiltonian(basis, potential),
                               count=max(cfg.states) + 1)
    return frame, potential, [states[s] for s in cfg.states]


def _grid_field(frame, rho, xs, ps, threads: int) -> WignerField:
    if threads <= 1 or len(xs) < 2 * threads:
        return wigner_grid(frame, rho, xs, ps)
    blocks = np.array_split(np.arange(len(xs)), threads)
    values = np.empty((len(xs), len(ps)))
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [(idx, pool.submit(wigner_grid, frame, rho, xs[idx], ps))
                   for idx in blocks]
        for idx, fut in futures:
            values[idx] = fut.result().values
    return WignerField(xs=np.asarray(xs, dtype=float),
                       ps=np.asarray(ps, dtype=float), values=values)


def _interval_dict(iv) -> dict:
    return {"lo": iv.lo, "hi": iv.hi, "min_value": iv.min_value}


def _frame_dict(cfg: RunConfig) -> dict:
    return {"mass": cfg.mass, "omega": cfg.omega, "hbar": cfg.hbar}


def _window(cfg: RunConfig, axis: str) -> tuple[float, float]:
    return cfg.x_window if axis == "x" else cfg.p_window


# commands ------------------------------------------------------------------


def cmd_solve(cfg: RunConfig, out: Path) -> int:
    frame, potential, states = _solve(cfg)
    want = set(cfg.formats)
    xs = np.linspace(cfg.grid_x_window[0], cfg.grid_x_window[1], cfg.axis_samples)
    if "csv" in want:
        write_csv(out / "eigenvalues.csv", ["state", "energy"],
                  [(s, st.energy) for s, st in zip(cfg.states, states)])
        write_csv(out / "coefficients.csv", ["state", "k", "coeff"],
                  [(s, k, c) for s, st in zip(cfg.states, states)
                   for k, c in enumerate(st.coeffs)])
        for s, st in zip(cfg.states, states):
            psi = state_wavefunction(frame, st, xs)
            write_csv(out / f"state_{s}_wavefunction.csv",
                      ["x", "psi", "prob_density"],
                      zip(xs, psi, psi * psi))
    if "json" in want:
        write_json(out / "solve.json", {
            "basis_size": cfg.basis_size,
            "frame": _frame_dict(cfg),
            "potential": list(cfg.potential),
            "states": [{"index": s, "energy": st.energy}
                       for s, st in zip(cfg.states, states)],
        })
    if "svg" in want and states:
        curves = []
        for s, st in zip(cfg.states, states):
            psi = state_wavefunction(frame, st, xs)
            curves.append((f"s={s}", psi * psi))
        svg_wavefunctions(out / "wavefunctions.svg", xs, curves, potential(xs),
                          [st.energy for st in states],
                          "probability densities over the potential")
    for s, st in zip(cfg.states, states):
        print(f"s={s}  E={st.energy:.12g}")
    return 0


def cmd_wigner_grid(cfg: RunConfig, out: Path) -> int:
    frame, potential, states = _solve(cfg)
    threads = _thread_count()
    want = set(cfg.formats)
    xs = np.linspace(cfg.grid_x_window[0], cfg.grid_x_window[1], cfg.grid_x_size)
    ps = np.linspace(cfg.grid_p_window[0], cfg.grid_p_window[1], cfg.grid_p_size)
    tol = cfg.negativity_tol if cfg.negativity_tol is not None else default_negativity_tol(frame)
    for s, st in zip(cfg.states, states):
        rho = density_matrix(st)
        field = _grid_field(frame, rho, xs, ps, threads)
        if "csv" in want:
            write_csv(out / f"state_{s}_wigner.csv", ["x", "p", "W"],
                      ((x, p, field.values[i, j])
                       for i, x in enumerate(xs) for j, p in enumerate(ps)))
        if "svg" in want:
            svg_heatmap(out / f"state_{s}_wigner.svg", xs, ps, field.values,
                        f"W_{s}(x, p)")
        if "json" in want:
            slices = {}
            for axis in ("x", "p"):
                lo, hi = _window(cfg, axis)
                coords = np.linspace(lo, hi, cfg.axis_samples)
                wvals = wigner_slice(frame, rho, axis, coords)
                ivs = negativity_intervals(axis, coords, wvals, tol)
                slices[axis] = {
                    "window": [lo, hi],
                    "samples": cfg.axis_samples,
                    "min_slice_value": float(wvals.min()),
                    "intervals": [_interval_dict(iv) for iv in ivs],
                }
            write_json(out / f"state_{s}_negativity.json", {
                "state": s,
                "tolerance": tol,
                "axes": slices,
                "grid": {
                    "integral": field.integral(),
                    "min_value": field.min_value(),
                    "negative_cells": field.negative_cell_count(tol),
                },
            })
        print(f"s={s}  integral={field.integral():.9f}  min={field.min_value():.6g}  "
              f"negative_cells={field.negative_cell_count(tol)}")
    return 0


def cmd_energy_profile(cfg: RunConfig, out: Path) -> int:
    frame, potential, states = _solve(cfg)
    want = set(cfg.formats)
    for s, st in zip(cfg.states, states):
        rho = density_matrix(st)
        for axis in ("x", "p"):
            window = _window(cfg, axis)
            prof = sample_energy_profile(frame, rho, potential, axis, window,
                                         samples=cfg.axis_samples, state_index=s,
                                         denom_rel_tol=cfg.denom_rel_tol)
            if any(prof.diagnostics["edge_density_low"]):
                print(f"warning: s={s} axis={axis}: marginal density is already "
                      f"near zero at the window edge; widen the window if poles "
                      f"may lie outside", file=sys.stderr)
            if "csv" in want:
                write_csv(out / f"state_{s}_energy_{axis}.csv",
                          ["coord", "energy", "denominator", "is_gap"],
                          zip(prof.coords, prof.values, prof.denominators,
                              prof.is_gap))
            if "json" in want:
                write_json(out / f"state_{s}_energy_{axis}.json", {
                    "axis": axis,
                    "state": s,
                    "window": list(window),
                    "samples": cfg.axis_samples,
                    "poles": list(prof.poles),
                    "gap_count": int(prof.is_gap.sum()),
                    "diagnostics": prof.diagnostics,
                })
            if "svg" in want:
                if axis == "x":
                    reference = potential(prof.coords)
                else:
                    reference = prof.coords**2 / (2.0 * cfg.mass)
                svg_profile(out / f"state_{s}_energy_{axis}.svg", prof.coords,
                            prof.values, reference, prof.poles, axis,
                            f"<E>_{{{s},{axis}}}")
            print(f"s={s}  axis={axis}  poles={[f'{t:+.6f}' for t in prof.poles]}  "
                  f"gaps={int(prof.is_gap.sum())}")
    return 0


def cmd_poles(cfg: RunConfig, out: Path) -> int:
    frame, potential, states = _solve(cfg)
    want = set(cfg.formats)
    records = []
    for s, st in zip(cfg.states, states):
        rho = density_matrix(st)
        for axis in ("x", "p"):
            prof = sample_energy_profile(frame, rho, potential, axis,
                                         _window(cfg, axis), samples=cfg.axis_samples,
                                         state_index=s, denom_rel_tol=cfg.denom_rel_tol)
            records.append({"state": s, "axis": axis, "positions": list(prof.poles)})
            print(f"s={s}  axis={axis}  poles={[f'{t:+.6f}' for t in prof.poles]}")
    if "csv" in want:
        write_csv(out / "poles.csv", ["state", "axis", "position"],
                  [(r["state"], r["axis"], t) for r in records for t in r["positions"]])
    if "json" in want:
        write_json(out / "poles.json", {"poles": records})
    return 0


def cmd_report(cfg: RunConfig, out: Path) -> int:
    frame, potential, states = _solve(cfg)
    want = set(cfg.formats)
    all_bijections = True
    for s, st in zip(cfg.states, states):
        rho = density_matrix(st)
        axes_json = {}
        axes_svg = []
        for axis in ("x", "p"):
            window = _window(cfg, axis)
            rep = pole_negativity_report(frame, rho, potential, axis, window,
                                         samples=cfg.axis_samples,
                                         tol=cfg.negativity_tol, state_index=s,
                                         denom_rel_tol=cfg.denom_rel_tol)
            coords = np.linspace(window[0], window[1], cfg.axis_samples)
            wvals = wigner_slice(frame, rho, axis, coords)
            axes_json[axis] = {
                "window": list(window),
                "samples": cfg.axis_samples,
                "poles": list(rep.poles),
                "intervals": [_interval_dict(iv) for iv in rep.intervals],
                "faint_intervals": [_interval_dict(iv) for iv in rep.faint_intervals],
                "pairs": [{"pole": pole, "interval": hit} for pole, hit in rep.pairs],
                "unmatched_intervals": list(rep.unmatched_intervals),
                "bijection": rep.bijection,
                "slice_min": float(wvals.min()),
            }
            axes_svg.append((axis, coords, wvals, rep.intervals,
                             rep.faint_intervals, rep.poles))
            all_bijections = all_bijections and rep.bijection
            print(f"s={s}  axis={axis}  poles={len(rep.poles)}  "
                  f"intervals={len(rep.intervals)}  bijection={rep.bijection}")
        write_json(out / f"state_{s}_report.json", {"state": s, "axes": axes_json})
        if "svg" in want:
            svg_report(out / f"state_{s}_report.svg", axes_svg,
                       f"state s={s}: Wigner slices, negativity, poles")
    write_json(out / "report.json", {
        "frame": _frame_dict(cfg),
        "potential": list(cfg.potential),
        "states": list(cfg.states),
        "energies": [st.energy for st in states],
        "all_bijections": all_bijections,
    })
    return 0


# verify suites -------------------------------------------------------------


def _suite_theorem_equivalence(frame, gtable, max_nk):
    xs = np.linspace(-3.0, 3.0, 7)
    worst, where = 0.0, "-"
    for n in range(max_nk + 1):
        for k in range(max_nk + 1):
            for ell in range(3):
                for x in xs:
                    a = moment_I_direct(frame, n, k, ell, float(x))
                    b = moment_I_laguerre(frame, n, k, ell, float(x), table=gtable)
                    dev = abs(a - b) / max(1.0, abs(a))
                    if dev > worst:
                        worst, where = dev, f"n={n} k={k} ell={ell} x={x:.2f}"
    return worst <= 1e-9, f"worst rel dev {worst:.3e} at {where}"


def _suite_gtable(gtable, max_nk):
    bound = min(max(max_nk, 2), 8)
    worst, where = 0.0, "-"
    for lam in range(bound + 1):
        for beta in range(bound + 1):
            # independent route: expand the Laguerre factor into monomials and
            # integrate each against the half-line Gaussian by quadrature
            terms = [(-2.0) ** i * math.comb(lam, i) / math.factorial(i)
                     * quad_gaussian_moment(beta + i) for i in range(lam + 1)]
            ref = math.fsum(terms)
            dev = abs(gtable.value(lam, beta) - ref) / max(1.0, abs(ref))
            if dev > worst:
                worst, where = dev, f"lambda={lam} beta={beta}"
    ok = worst <= 1e-10
    # first two columns against their closed forms, bit-for-bit
    for lam in range(bound + 1):
        base = Fraction((-1) ** lam * int(hermite_sq_zero(lam)),
                        2 ** (lam + 1) * math.factorial(lam))
        col1 = Fraction(2 * lam + 1, 2) * base
        if lam > 0:
            col1 -= lam * Fraction((-1) ** (lam - 1) * int(hermite_sq_zero(lam - 1)),
                                   2 ** lam * math.factorial(lam - 1))
        for beta, frac in ((0, base), (1, col1)):
            expect = float(frac) * math.sqrt(math.pi)
            if gtable.value(lam, beta) != expect:
                return False, (f"closed-form mismatch at lambda={lam} beta={beta}: "
                               f"{gtable.value(lam, beta):.17g} != {expect:.17g}")
    return ok, f"worst quadrature dev {worst:.3e} at {where}"


def _suite_closed_vs_quadrature(frame, max_nk):
    spec = QuadratureSpec()
    hi = max(2, min(max_nk, 10))
    pairs = sorted({(0, 0), (1, 0), (2, 2), (3, 1), (hi, hi // 2), (hi, hi)})
    xs = (-1.3, 0.4, 1.9)
    worst, where = 0.0, "-"
    for n, k in pairs:
        for ell in (0, 2):
            for x in xs:
                a = moment_I_direct(frame, n, k, ell, x)
                b = quad_moment_I(frame, n, k, ell, x, spec)
                dev = abs(a - b) / max(abs(b), 1e-12 / 1e-8)
                if dev > worst:
                    worst, where = dev, f"I n={n} k={k} ell={ell} x={x}"
        for r in (0, 3):
            for p in xs:
                a = moment_J(frame, n, k, r, p)
                b = quad_moment_J(frame, n, k, r, p, spec)
                dev = abs(a - b) / max(abs(b), 1e-12 / 1e-8)
                if dev > worst:
                    worst, where = dev, f"J n={n} k={k} r={r} p={p}"
    return worst <= 1e-8, f"worst rel dev {worst:.3e} at {where}"


def _suite_harmonic_reference(frame):
    potential = PolynomialPotential.harmonic(frame)
    basis = SpectralBasis(size=16, frame=frame)
    states = solve_eigenstates(build_hamiltonian(basis, potential), count=7)
    scale = frame.hbar * frame.omega
    for s, st in enumerate(states):
        if abs(st.energy - scale * (s + 0.5)) > 1e-10 * scale:
            return False, f"eigenvalue s={s}: {st.energy:.12g}"
    # diagonal Wigner closed form
    worst = 0.0
    bound = 1.0 / (math.pi * frame.hbar)
    pts = [(0.3, -0.2), (1.1, 0.7), (-0.6, 1.4), (2.0, -1.5)]
    for s in range(5):
        rho = density_matrix(states[s])
        for x, p in pts:
            point = PhasePoint(x / frame.kappa, p * frame.pscale)
            eps = point.eps(frame)
            closed = (-1.0) ** s * bound * math.exp(-2.0 * eps) * laguerre(s, 0, 4.0 * eps)
            worst = max(worst, abs(wigner_value(frame, rho, point) - closed))
    if worst > 1e-12 * bound:
        return False, f"Wigner closed-form dev {worst:.3e}"
    # closed-form energy profiles
    wdev = 0.0
    for s in range(4):
        rho = density_matrix(states[s])
        for t in (-1.7, -0.5, 0.35, 1.2, 2.4):
            x = t / frame.kappa
            p = t * frame.pscale
            try:
                a = average_energy_x(frame, rho, potential, x)
                wdev = max(wdev, abs(a - harmonic_avg_energy_x(frame, s, x)))
            except DenominatorNearZero:
                pass
            try:
                a = average_energy_p(frame, rho, potential, p)
                wdev = max(wdev, abs(a - harmonic_avg_energy_p(frame, s, p)))
            except DenominatorNearZero:
                pass
    if wdev > 1e-8 * scale:
        return False, f"profile closed-form dev {wdev:.3e}"
    # pole counts
    for s in range(5):
        rho = density_matrix(states[s])
        for axis, width in (("x", 7.0 / frame.kappa), ("p", 7.0 * frame.pscale)):
            found = find_poles(frame, rho, potential, axis, (-width, width))
            if len(found) != s:
                return False, f"pole count s={s} axis={axis}: {len(found)}"
    return True, f"profiles within {wdev:.3e}, pole counts exact for s <= 4"


def _suite_energy_identity(frame):
    worst, where = 0.0, "-"
    harm = PolynomialPotential.harmonic(frame)
    basis = SpectralBasis(size=24, frame=frame)
    hstates = solve_eigenstates(build_hamiltonian(basis, harm), count=3)
    sx = 1.0 / frame.kappa
    sp = frame.pscale
    for s in (0, 2):
        rho = density_matrix(hstates[s])
        got = wigner_energy_integral(frame, rho, harm,
                                     x_window=(-8.0 * sx, 8.0 * sx),
                                     p_window=(-8.0 * sp, 8.0 * sp),
                                     nx=801, np_=801)
        dev = abs(got - hstates[s].energy) / max(1.0, abs(hstates[s].energy))
        if dev > worst:
            worst, where = dev, f"harmonic s={s}"
    cubic = PolynomialPotential((0.0, 0.0, 2.0, -0.2))
    if abs(frame.mass - 1.0) < 1e-12 and abs(frame.omega - 1.0) < 1e-12 \
            and abs(frame.hbar - 1.0) < 1e-12:
        cstates = solve_eigenstates(
            build_hamiltonian(SpectralBasis(size=40, frame=frame), cubic), count=2)
        for s in (0, 1):
            got = wigner_energy_integral(frame, density_matrix(cstates[s]), cubic)
            dev = abs(got - cstates[s].energy) / max(1.0, abs(cstates[s].energy))
            if dev > worst:
                worst, where = dev, f"cubic s={s}"
    return worst <= 1e-6, f"worst rel dev {worst:.3e} at {where}"


def cmd_verify(cfg: RunConfig, out: Path, perturb_g: float, max_nk: int) -> int:
    if max_nk < 2:
        raise ConfigError("--max-nk must be >= 2")
    frame = OscillatorFrame(mass=cfg.mass, omega=cfg.omega, hbar=cfg.hbar)
    gtable = GTable(perturb=perturb_g) if perturb_g else default_gtable()
    suites = (
        ("gtable", lambda: _suite_gtable(gtable, max_nk)),
        ("theorem-equivalence", lambda: _suite_theorem_equivalence(frame, gtable, max_nk)),
        ("closed-vs-quadrature", lambda: _suite_closed_vs_quadrature(frame, max_nk)),
        ("harmonic-reference", lambda: _suite_harmonic_reference(frame)),
        ("energy-identity", lambda: _suite_energy_identity(frame)),
    )
    results = []
    for name, run in suites:
        ok, detail = run()
        results.append({"suite": name, "passed": ok, "detail": detail})
        print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    verdict = all(r["passed"] for r in results)
    write_json(out / "verify.json", {
        "passed": verdict,
        "perturb_g": perturb_g,
        "max_nk": max_nk,
        "suites": results,
    })
    print(f"verify: {'all suites passed' if verdict else 'FAILURES present'}")
    return 0 if verdict else 1


# entry point ---------------------------------------------------------------


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        cfg = effective_config(args)
        _thread_count()  # validate the environment override up front
        with directory_lock(cfg.out_dir) as out:
            write_json(out / "config.json", cfg.to_dict())
            if args.command == "solve":
                return cmd_solve(cfg, out)
            if args.command == "wigner-grid":
                return cmd_wigner_grid(cfg, out)
            if args.command == "energy-profile":
                return cmd_energy_profile(cfg, out)
            if args.command == "poles":
                return cmd_poles(cfg, out)
            if args.command == "report":
                return cmd_report(cfg, out)
            if args.command == "verify":
                return cmd_verify(cfg, out, args.perturb_g, args.max_nk)
            raise ConfigError(f"unknown command {args.command!r}")
    except (ConfigError, LockHeldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (EigensolverError, QuadratureError, DenominatorNearZero,
            MomentRangeError, np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
