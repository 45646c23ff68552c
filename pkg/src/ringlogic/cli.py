"""Command-line entry point: ``ringlogic <command> [flags]``.

Exit codes: 0 success, 1 validation failure, 2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import config as cfgmod
from . import costmodel, export, spectral, sweep, transient
from .cascade import ArrayConfig, CascadeError, Channel, Mode, decode_stream, encode_stream, run_array
from .device import FUNCTIONS, DeviceError, Gate, resolve_function

COMMANDS = ("spectra", "truth-table", "transient", "sweep", "fwhm-sweep", "calibrate", "cost", "cascade", "show-config")


class ValidationFailure(RuntimeError):
    pass


def _function_name(gate: str, port: str | None) -> str:
    gate = gate.upper()
    if port is None:
        resolve_function(gate)
        return gate
    base, _ = resolve_function(gate)
    return next(n for n, (g, p) in FUNCTIONS.items() if g is base and p == port)


def _out(args, cfg) -> Path:
    return Path(args.out or cfg.output_dir)


def cmd_show_config(args, cfg):
    sys.stdout.write(cfg.dumps())


def cmd_truth_table(args, cfg):
    gates = list(Gate) if args.gate.upper() == "ALL" else [resolve_function(args.gate)[0]]
    params = cfg.ring_params()
    out = _out(args, cfg)
    failed = False
    for gate in gates:
        program = cfg.program(gate)
        report = spectral.verify_logic(params, program, cfg.tuner(), cfg.shifter())
        print(f"{gate.value} (drop) / {gate.complement_name} (through): "
              f"heater {program.heater_power:.4f} mW, detuning {program.programmed_detuning:g} nm")
        print("  x w   drop    bit  through  bit")
        for x, w in spectral.PAIRS:
            d = report["drop"]["levels"][(x, w)]
            t = report["through"]["levels"][(x, w)]
            bit = gate.truth(x, w)
            print(f"  {x} {w}  {d:.4f}   {bit}   {t:.4f}   {1 - bit}")
        for port in spectral.PORTS:
            r = report[port]
            print(f"  {port}: separation {r['dc_oma']:.4f} -> {'PASS' if r['pass'] else 'FAIL'}")
            failed |= not r["pass"]
        if not failed:
            table = spectral.dc_truth_table(params, program, cfg.tuner(), cfg.shifter())
            export.export(table, "csv", out / f"truth_table_{gate.value}.csv")
            export.export(table, "json", out / f"truth_table_{gate.value}.json")
    if failed:
        raise ValidationFailure("logic levels overlap on at least one port")


def cmd_spectra(args, cfg):
    gate, _ = resolve_function(args.gate)
    params, program = cfg.ring_params(), cfg.program(gate)
    out = _out(args, cfg)
    manifest = {"function": gate.value, "input_wavelength_nm": cfg.wavelength, "files": {}}
    for x, w in spectral.PAIRS:
        s = spectral.spectrum(params, program, x, w, n_points=args.points, tuner=cfg.tuner(), shifter=cfg.shifter())
        path = export.export(s, "csv", out / f"spectrum_{gate.value}_{x}{w}.csv")
        if args.svg:
            export.export(s, "svg", path.with_suffix(".svg"))
        manifest["files"][f"{x}{w}"] = {"csv": path.name, "peak_nm": s.peak_wavelength}
    export.export(manifest, "json", out / f"spectra_{gate.value}.json")
    print(f"wrote {len(spectral.PAIRS)} spectra to {out}")


def cmd_transient(args, cfg):
    name = _function_name(args.gate, args.port)
    gate, port = resolve_function(name)
    rate = args.bit_rate or cfg.bit_rate
    power = cfg.input_power if args.power is None else args.power
    spb = cfg.samples_per_bit
    bx = transient.prbs(cfg.prbs_order, cfg.seed_x, args.bits or cfg.n_bits)
    bw = transient.prbs(cfg.prbs_order, cfg.seed_w, args.bits or cfg.n_bits)
    shifter = cfg.shifter()
    dx = transient.nrz_drive(bx, rate, shifter.drive_amplitude, spb)
    dw = transient.nrz_drive(bw, rate, shifter.drive_amplitude, spb)
    program = cfg.program(gate)
    outs = transient.simulate_transient(cfg.ring_params(), program, shifter, dx, dw, power, tuner=cfg.tuner())
    out = _out(args, cfg)
    out.mkdir(parents=True, exist_ok=True)
    (out / f"transient_{name}.csv").write_text(export.waveform_csv((dx, dw), outs))
    summary = {}
    for p in spectral.PORTS:
        m = transient.measure_oma(outs[p], transient.expected_output(gate, p, bx, bw), spb, cfg.skip_bits)
        summary[p] = {"function": name if p == port else _function_name(gate.value, p),
                      "oma_mw": m.oma_mw, "oma_dbm": m.oma_dbm if m.is_open else None,
                      "ones_min_mw": m.ones_min, "zeros_max_mw": m.zeros_max,
                      "sampled_bits": m.sampled_bit_count}
    summary["bit_rate_gbps"], summary["input_power_dbm"] = rate, power
    export.export(summary, "json", out / f"transient_{name}_oma.json")
    m = summary[port]
    print(f"{name}: OMA {m['oma_mw']:.4f} mW ({m['oma_dbm'] if m['oma_dbm'] is not None else '-inf'} dBm) "
          f"at {rate:g} Gb/s, {power:g} dBm")
    if m["oma_mw"] <= 0:
        raise ValidationFailure("eye closed")


def cmd_sweep(args, cfg):
    names = list(FUNCTIONS) if args.gate.upper() == "ALL" else [_function_name(args.gate, args.port)]
    out = _out(args, cfg)
    for name in names:
        grid = sweep.sweep_grid(name, params=cfg.ring_params(), shifter=cfg.shifter(), workers=args.workers)
        export.export(grid, "csv", out / f"sweep_{name}.csv")
        export.export(grid, "pgm", out / f"sweep_{name}.pgm")
        print(f"{name} ({grid.port}): {grid.cells.shape[0]}x{grid.cells.shape[1]} grid, "
              f"max {grid.cells.max()} Gb/s, monotonicity violations {grid.monotonicity_violations()}")


def cmd_fwhm_sweep(args, cfg):
    fwhms = [float(v) for v in args.fwhm.split(",")] if args.fwhm else list(sweep.FWHM_LIST)
    res = sweep.fwhm_sweep(fwhm_list=fwhms, input_power=args.power, soma=args.soma,
                           shifter=cfg.shifter(), peak_drop=cfg.peak_drop)
    names = list(FUNCTIONS)
    rows = [[f, *(res[(n, f)] for n in names)] for f in fwhms]
    text = export.csv_text(["fwhm_nm", *names], rows)
    out = _out(args, cfg)
    out.mkdir(parents=True, exist_ok=True)
    (out / "fwhm_sweep.csv").write_text(text)
    sys.stdout.write(text)


def cmd_calibrate(args, cfg):
    path = Path(args.config) if args.config else Path("ringlogic.cfg")
    shifter = sweep.calibrate_tau(params=cfg.ring_params(), base=cfg.shifter())
    new = cfg.replace(rise_tau=shifter.rise_tau, fall_tau=shifter.fall_tau)
    bak = cfgmod.save(new, path)
    maxima = sweep.saturated_maxima(shifter, cfg.ring_params())
    print(f"carrier tau = {shifter.rise_tau:g} ps -> {path}" + (f" (backup {bak})" if bak else ""))
    for name, rate in maxima.items():
        print(f"  {name:<5} {rate:3d} Gb/s (reported {sweep.REPORTED_MAXIMA[name]})")


def cmd_cost(args, cfg):
    if args.mode == "fixture":
        rows = costmodel.table2_rows()
    else:
        budget = costmodel.GateBudget(args.area, args.static_power, args.laser_power)
        c = costmodel.estimate_circuit_cost(args.gate_count, budget, args.bit_rate or 40.0)
        rows = [{"label": c.label, "area_mm2": c.area, "energy_nj": c.energy_per_bit,
                 "latency_ns": c.latency, "ael": costmodel.ael_product(c)}]
    text = export._render(rows, args.format)
    if args.out:
        export.export(rows, args.format, Path(args.out) / f"cost_{args.mode}.{args.format}")
    sys.stdout.write(text)


_EXACT = {
    ("AND", "unary"): min,
    ("OR", "unary"): max,
    ("XOR", "unary"): lambda a, b: abs(a - b),
    ("AND", "bernoulli"): lambda a, b: a * b,
    ("OR", "bernoulli"): lambda a, b: a + b - a * b,
    ("XOR", "bernoulli"): lambda a, b: a + b - 2 * a * b,
}


def cmd_cascade(args, cfg):
    desc = json.loads(Path(args.array).read_text())
    n_bits = int(desc.get("n_bits", 1000))
    seed = int(desc.get("seed", cfg.seed))
    chans, inputs, meta = [], [], []
    for i, ch in enumerate(desc["channels"]):
        gate = Gate(ch["function"].upper())
        lam = float(ch["wavelength"])
        enc = ch.get("encoding", "unary")
        a, b = float(ch["a"]), float(ch["b"])
        chans.append(Channel(lam, cfg.replace(wavelength=lam).program(gate)))
        x = encode_stream(a, n_bits, enc, seed + 2 * i)
        w = encode_stream(b, n_bits, enc, seed + 2 * i + 1)
        inputs.append((x, w))
        qa, qb = (decode_stream(x), decode_stream(w)) if enc == "unary" else (a, b)
        meta.append((i, lam, gate.value, enc, a, b, _EXACT[(gate.value, enc)](qa, qb)))
    array = ArrayConfig(tuple(chans), Mode(desc.get("mode", "MIMD")), float(desc.get("fwhm", cfg.fwhm)))
    outs = run_array(array, inputs, desc.get("fidelity", "ideal"), shifter=cfg.shifter(),
                     bit_rate=float(desc.get("bit_rate", cfg.bit_rate)), input_power=cfg.input_power)
    rows = []
    for (i, lam, fn, enc, a, b, exact), o in zip(meta, outs):
        r = decode_stream(o)
        rows.append([i, lam, fn, enc, a, b, r, exact, abs(r - exact)])
    text = export.csv_text(["channel", "wavelength_nm", "function", "encoding", "a", "b", "result", "exact", "abs_error"], rows)
    out = _out(args, cfg)
    out.mkdir(parents=True, exist_ok=True)
    (out / "cascade.csv").write_text(text)
    sys.stdout.write(text)


HANDLERS = {
    "spectra": cmd_spectra,
    "truth-table": cmd_truth_table,
    "transient": cmd_transient,
    "sweep": cmd_sweep,
    "fwhm-sweep": cmd_fwhm_sweep,
    "calibrate": cmd_calibrate,
    "cost": cmd_cost,
    "cascade": cmd_cascade,
    "show-config": cmd_show_config,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ringlogic", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value configuration file")
    common.add_argument("--out", help="output directory (default: config output_dir)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectra", parents=[common], help="drop/through spectra per operand pair")
    p.add_argument("--gate", default="AND")
    p.add_argument("--points", type=int, default=2001)
    p.add_argument("--svg", action="store_true", help="also write SVG plots")

    p = sub.add_parser("truth-table", parents=[common], help="DC logic levels and separations")
    p.add_argument("--gate", default="ALL")

    p = sub.add_parser("transient", parents=[common], help="PRBS/NRZ time-domain run and OMA")
    p.add_argument("--gate", default="AND")
    p.add_argument("--port", choices=spectral.PORTS)
    p.add_argument("--bit-rate", type=float)
    p.add_argument("--power", type=float, help="input power, dBm")
    p.add_argument("--bits", type=int)

    p = sub.add_parser("sweep", parents=[common], help="max bit-rate over power x SOMA")
    p.add_argument("--gate", default="ALL")
    p.add_argument("--port", choices=spectral.PORTS)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("fwhm-sweep", parents=[common], help="max bit-rate versus FWHM")
    p.add_argument("--fwhm", help="comma-separated FWHM list, nm")
    p.add_argument("--power", type=float, default=0.0)
    p.add_argument("--soma", type=float, default=-5.0)

    sub.add_parser("calibrate", parents=[common], help="fit carrier tau to the 42 Gb/s anchor")

    p = sub.add_parser("cost", parents=[common], help="area/energy/latency comparison")
    p.add_argument("--mode", choices=("fixture", "estimate"), default="fixture")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--gate-count", type=int, default=1)
    p.add_argument("--area", type=float, default=0.011, help="mm^2 per gate")
    p.add_argument("--static-power", type=float, default=3.56, help="mW per gate")
    p.add_argument("--laser-power", type=float, default=1276.44, help="mW per gate")
    p.add_argument("--bit-rate", type=float, default=40.0)

    p = sub.add_parser("cascade", parents=[common], help="DWDM array of programmed gates")
    p.add_argument("--array", required=True, help="JSON array description")

    sub.add_parser("show-config", parents=[common], help="print the effective configuration")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = cfgmod.load(args.config) if args.command != "calibrate" or (
            args.config and Path(args.config).exists()) else cfgmod.RunConfig()
    except (cfgmod.ConfigError, OSError) as exc:
        print(f"ringlogic: config error: {exc}", file=sys.stderr)
        return 2
    try:
        HANDLERS[args.command](args, cfg)
    except (ValidationFailure, spectral.ProgramInvalid, sweep.CalibrationError, CascadeError) as exc:
        print(f"ringlogic: {exc}", file=sys.stderr)
        return 1
    except (DeviceError, KeyError, ValueError, OSError) as exc:
        print(f"ringlogic: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
