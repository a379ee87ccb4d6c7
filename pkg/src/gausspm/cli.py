"""Command-line interface: evaluate quantities, run (q, r) grid sweeps, self-test.

Exit codes: 0 success, 2 argument/parse error (argparse default), 3 domain
error (e.g. annihilating subtraction), 1 self-test failure.  Sweep output is
deterministic for a given seed; Monte Carlo substreams are derived from
(seed, grid index) so the worker count never changes the numbers.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import classify, negativity, qcs, states
from .phase_space import InvalidStateError, ModeVector
from .photon_ops import AnnihilatingSubtractionError, make_photon_tuned

QUANTITIES = ("qcs", "gain", "negativity", "classify", "qng")

#: integer encoding of a classification used in numeric sweep output
CLASSIFY_CODES = {
    "classical": 0,
    "weakly-nonclassical": 1,
    "strongly-nonclassical": 2,
    "wigner-negative": 3,
}


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _parse_c(text: str, modes: int) -> ModeVector:
    parts = [float(p) for p in text.split(",")]
    if len(parts) != 2 * modes:
        raise ValueError(f"--c needs {2 * modes} comma-separated numbers (re,im per mode)")
    c = np.array(parts[0::2]) + 1j * np.array(parts[1::2])
    nrm = np.linalg.norm(c)
    if nrm == 0:
        raise ValueError("--c must be nonzero")
    return ModeVector(c / nrm)


def _default_c(modes: int) -> ModeVector:
    c = np.zeros(modes, dtype=complex)
    c[0] = 1.0
    return ModeVector(c)


def _classification_label(report: classify.ClassificationReport) -> str:
    if report.wigner_negative:
        return "wigner-negative"
    if report.classical:
        return "classical"
    if report.strongly_nonclassical:
        return "strongly-nonclassical"
    return "weakly-nonclassical"


def _record(desc: dict, quantity: str, value, method: str, error: float) -> dict:
    return {"state": desc, "quantity": quantity, "value": value, "method": method,
            "error_estimate": error}


def _eval_record(args) -> dict:
    modes = args.modes
    sign = {"add": +1, "subtract": -1, "none": 0}[args.op]
    desc = {"family": args.state, "modes": modes, "op": args.op}

    if args.state == "evenodd":
        if args.parity is None:
            raise ValueError("--state evenodd requires --parity even|odd")
        alpha = complex(args.alpha if args.alpha is not None else 0.0)
        desc.update(alpha=repr(alpha), parity=args.parity)
        family = states.TwoModeCoherentPlus(alpha, args.parity)
        if args.quantity == "qcs":
            return _record(desc, "qcs", states.even_odd_scalars(family).qcs_squared,
                           "pure-state-total-noise", 0.0)
        if args.quantity == "negativity":
            rep = negativity.negative_volume_even_odd(abs(alpha), args.parity)
            return _record(desc, "negativity", rep.volume, rep.method, rep.error_estimate)
        if args.quantity == "gain":
            gain = qcs.relative_gain(states.even_odd_state(family))
            return _record(desc, "gain", gain, "moment-engine", 0.0)
        if args.quantity == "classify":
            rep = classify.classify_added(states.even_odd_state(family))
            return _record(desc, "classify", _classification_label(rep),
                           "lemma-classification", 0.0)
        raise ValueError(f"quantity {args.quantity!r} is not defined for even/odd states")

    if args.state == "coherent":
        alpha = complex(args.alpha if args.alpha is not None else 0.0)
        desc.update(alpha=repr(alpha))
        mother = states.make_coherent([alpha] * modes)
    else:
        if args.q is None or args.r is None:
            raise ValueError("--state sqth requires --q and --r")
        desc.update(q=args.q, r=args.r)
        mother = states.make_sqth(args.q, args.r)
        if modes == 2:
            mother = states.make_two_mode_sqth(args.q, args.r)

    c = _parse_c(args.c, modes) if args.c else _default_c(modes)
    tuned = make_photon_tuned(mother, sign, c) if sign else None

    if args.quantity == "qcs":
        rep = qcs.qcs_photon_tuned(tuned) if tuned else qcs.qcs_gaussian(mother)
        return _record(desc, "qcs", rep.qcs_squared, rep.method, 0.0)
    if args.quantity == "gain":
        if tuned is None:
            raise ValueError("--quantity gain requires --op add or subtract")
        return _record(desc, "gain", qcs.relative_gain(tuned), "moment-engine", 0.0)
    if args.quantity == "negativity":
        if tuned is None:
            return _record(desc, "negativity", 0.0, "gaussian-positive", 0.0)
        if modes == 1:
            rep = negativity.negative_volume_single_mode(tuned)
        elif args.state == "sqth" and sign > 0:
            rep = negativity.negative_volume_two_mode_sqthp(args.q, args.r, c, seed=args.seed)
        else:
            raise ValueError("two-mode negativity is implemented for --state sqth --op add")
        return _record(desc, "negativity", rep.volume, rep.method, rep.error_estimate)
    if args.quantity == "classify":
        if tuned is None:
            rep = classify.classify_gaussian(mother)
        elif sign > 0:
            rep = classify.classify_added(tuned)
        else:
            rep = classify.classify_subtracted(tuned)
        return _record(desc, "classify", _classification_label(rep),
                       "lemma-classification", 0.0)
    if args.quantity == "qng":
        if tuned is None or modes != 1:
            raise ValueError("--quantity qng requires a single-mode photon-tuned state")
        rep = negativity.qng_witness(tuned)
        return _record(desc, "qng", rep.verdict, "wigner-origin-witness", 0.0)
    raise ValueError(f"unknown quantity {args.quantity!r}")


def _sweep_point(spec: dict, index: int) -> tuple[float, str, float]:
    """Value, method, error at one grid point; domain errors become NaN rows."""
    q = spec["q_values"][index // len(spec["r_values"])]
    r = spec["r_values"][index % len(spec["r_values"])]
    sign = +1 if spec["sign"] == "add" else -1
    quantity = spec["quantity"]
    try:
        if quantity == "qcs":
            rep = qcs.qcs_photon_tuned(states.make_sqth_tuned(q, r, sign))
            return rep.qcs_squared, rep.method, 0.0
        if quantity == "gain":
            return qcs.relative_gain(states.make_sqth_tuned(q, r, sign)), "moment-engine", 0.0
        if quantity == "negativity":
            if spec["modes"] == 2:
                rep = negativity.negative_volume_two_mode_sqthp(
                    q, r, [1.0, 0.0], seed=(spec["seed"], index)
                )
            else:
                rep = negativity.negative_volume_single_mode(states.make_sqth_tuned(q, r, sign))
            return rep.volume, rep.method, rep.error_estimate
        if quantity == "classify":
            tuned = states.make_sqth_tuned(q, r, sign)
            rep = classify.classify_added(tuned) if sign > 0 else classify.classify_subtracted(tuned)
            return float(CLASSIFY_CODES[_classification_label(rep)]), "lemma-classification", 0.0
        if quantity == "qng":
            rep = negativity.qng_witness(states.make_sqth_tuned(q, r, sign))
            return float(rep.certified), "wigner-origin-witness", 0.0
        raise ValueError(f"unknown quantity {quantity!r}")
    except (AnnihilatingSubtractionError, InvalidStateError, negativity.ConvergenceError,
            ValueError) as exc:
        return float("nan"), f"error:{type(exc).__name__}", float("nan")


def _parse_range(text: str) -> tuple[float, float, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError("ranges are min,max,steps")
    lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    if steps < 2:
        raise ValueError("steps must be >= 2")
    if hi < lo:
        raise ValueError("range max must be >= min")
    return lo, hi, steps


def cmd_sweep(args) -> int:
    qlo, qhi, qn = _parse_range(args.q_range)
    rlo, rhi, rn = _parse_range(args.r_range)
    spec = {
        "quantity": args.quantity,
        "sign": args.sign,
        "modes": args.modes,
        "seed": args.seed,
        "q_values": [float(v) for v in np.linspace(qlo, qhi, qn)],
        "r_values": [float(v) for v in np.linspace(rlo, rhi, rn)],
    }
    npoints = qn * rn
    jobs = args.jobs or os.cpu_count() or 1
    if jobs > 1 and npoints > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_point, [spec] * npoints, range(npoints),
                                    chunksize=max(1, npoints // (4 * jobs))))
    else:
        results = [_sweep_point(spec, i) for i in range(npoints)]

    lines = []
    if args.format == "csv":
        lines.append("q,r,value,method,error_estimate")
    for i, (value, method, err) in enumerate(results):
        q = spec["q_values"][i // rn]
        r = spec["r_values"][i % rn]
        if args.format == "csv":
            lines.append(f"{_fmt(q)},{_fmt(r)},{_fmt(value)},{method},{_fmt(err)}")
        else:
            lines.append(json.dumps(
                {"q": float(_fmt(q)), "r": float(_fmt(r)), "value": float(_fmt(value)),
                 "method": method, "error_estimate": float(_fmt(err))},
                separators=(",", ":"), allow_nan=True))
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _load_params(path: str) -> list[str]:
    """Flat key=value file -> CLI tokens (explicit flags still win)."""
    tokens = []
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            tokens.extend([f"--{key.strip().replace('_', '-')}", value.strip()])
    return tokens


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gausspm",
        description="Photon-added/subtracted Gaussian states: QCS, Wigner negativity, "
                    "classification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate one quantity for one state")
    ev.add_argument("--state", choices=("sqth", "coherent", "evenodd"), default="sqth")
    ev.add_argument("--q", type=float, help="thermal parameter in [0, 1)")
    ev.add_argument("--r", type=float, help="squeezing parameter >= 0")
    ev.add_argument("--alpha", type=complex, help="coherent amplitude (python complex syntax)")
    ev.add_argument("--parity", choices=("even", "odd"), help="even/odd family selector")
    ev.add_argument("--modes", type=int, choices=(1, 2), default=1)
    ev.add_argument("--op", choices=("add", "subtract", "none"), default="none")
    ev.add_argument("--c", help="mode vector as re,im pairs, normalized automatically")
    ev.add_argument("--quantity", choices=QUANTITIES, required=True)
    ev.add_argument("--seed", type=int, default=0, help="Monte Carlo seed")
    ev.add_argument("--params", help="flat key=value file providing default flags")

    sw = sub.add_parser("sweep", help="evaluate a quantity on a (q, r) grid for SqTh+-")
    sw.add_argument("--quantity", choices=QUANTITIES, required=True)
    sw.add_argument("--sign", "--op", dest="sign", choices=("add", "subtract"), required=True)
    sw.add_argument("--q-range", required=True, help="min,max,steps (steps >= 2)")
    sw.add_argument("--r-range", required=True, help="min,max,steps (steps >= 2)")
    sw.add_argument("--modes", type=int, choices=(1, 2), default=1)
    sw.add_argument("--out", help="output path (stdout when omitted)")
    sw.add_argument("--format", choices=("csv", "json"), default="csv")
    sw.add_argument("--seed", type=int, default=0, help="Monte Carlo seed")
    sw.add_argument("--jobs", type=int, default=None, help="workers (default: all cores)")
    sw.add_argument("--params", help="flat key=value file providing default flags")

    sub.add_parser("selftest", help="run the acceptance checks")
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if "--params" in argv:
        at = argv.index("--params")
        try:
            file_tokens = _load_params(argv[at + 1])
        except OSError as exc:
            print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
            return 2
        argv = argv[:1] + file_tokens + argv[1:]
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "selftest":
            from .selftest import run_selftest

            return run_selftest()
        if args.command == "eval":
            record = _eval_record(args)
            for key in ("value", "error_estimate"):
                if isinstance(record.get(key), float):
                    record[key] = float(_fmt(record[key]))
            print(json.dumps(record, separators=(",", ":"), allow_nan=True))
            return 0
        return cmd_sweep(args)
    except (AnnihilatingSubtractionError, InvalidStateError, negativity.ConvergenceError,
            ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
