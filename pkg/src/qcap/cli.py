"""qcap command-line front end.

Exit codes: 0 success, 2 usage/parse error, 3 dimension-cap exceeded,
4 parameter-validity violation, 5 study verdict failure.

All randomness flows from --seed (default 0, never wall-clock entropy),
so every command is reproducible by default.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys

import numpy as np

from . import bounds as bnd
from . import experiments, parser, protocol
from .bounds import BoundParams, BoundValidityError
from .optimize import OptimizerConfig, maximize_coherent_information
from .parser import ChannelSpecError
from .qmat import DimensionCapError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_VALIDITY = 4
EXIT_VERDICT = 5


def _round12(obj):
    """Round floats to 12 significant digits for stable printed output."""
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round12(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _round12(obj.tolist())
    if isinstance(obj, complex):
        return [_round12(obj.real), _round12(obj.imag)]
    if dataclasses.is_dataclass(obj):
        return _round12(dataclasses.asdict(obj))
    return obj


def _emit(payload, out_path: str | None):
    text = json.dumps(_round12(payload), indent=2, sort_keys=True)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _optimizer_config(args) -> OptimizerConfig:
    return OptimizerConfig(
        restarts=args.restarts,
        max_iters=args.max_iters,
        tol=args.tol,
        seed=args.seed,
        rank=args.rank,
    )


def cmd_q1(args) -> int:
    spec = parser.parse_channel_spec(args.spec)
    ch = parser.build(spec)
    res = maximize_coherent_information(ch, _optimizer_config(args))
    payload = {
        "spec": parser.spec_to_text(spec),
        "value_bits": res.value,
        "converged": res.converged,
        "iterations_used": res.iterations_used,
        "restarts_summary": res.restarts_summary,
        "seed": args.seed,
    }
    if args.show_argmax:
        payload["argmax"] = res.argmax
    _emit(payload, args.out)
    return EXIT_OK


def _bound_params(args) -> BoundParams:
    return BoundParams(n=args.n, p=args.p, alpha=args.alpha)


def cmd_bounds(args) -> int:
    params = _bound_params(args)
    if args.subaction == "figure1":
        csv = bnd.figure1_csv(params, args.kmax or params.n)
    elif args.subaction == "figure2":
        csv = bnd.figure2_csv(params)
    elif args.subaction == "table":
        table = bnd.lemma_b1(params, args.k)
        _emit({"params": dataclasses.asdict(params), "table": table}, args.out)
        return EXIT_OK
    else:
        return _bounds_check(args, params)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(csv)
    else:
        sys.stdout.write(csv)
    return EXIT_OK


def _bounds_check(args, params: BoundParams) -> int:
    theorem = args.theorem
    if theorem == "thm1":
        ok = all(
            bnd.theorem1_gap(params.n, params.alpha, k) > 0 for k in range(1, params.n + 1)
        )
        print(f"thm1 gap positive on k=1..{params.n}: {'PASS' if ok else 'FAIL'}")
    elif theorem == "thm2":
        ok = True
        for k in range(1, params.n + 1):
            f, fc = bnd.theorem2_gaps(params, k)
            if (k >= 2 and f <= 0) or fc <= 0:
                ok = False
        print(f"thm2 f, fc positive on their ranges: {'PASS' if ok else 'FAIL'}")
    elif theorem == "eq24":
        k = bnd.eq24_min_k(params)
        ok = k is not None
        print(f"min_k = {k if ok else 'none'} {'PASS' if ok else 'FAIL'}")
    elif theorem == "thm3":
        k = bnd.theorem3_max_k(params)
        ok = k is not None
        print(f"max_k = {k if ok else 'none'} {'PASS' if ok else 'FAIL'}")
    else:
        print(f"unknown theorem {theorem!r}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK if ok else EXIT_VERDICT


def cmd_protocol(args) -> int:
    if args.eq7:
        report = protocol.evaluate_eq7(
            d=args.d,
            p=args.p,
            unitary_mode=args.unitaries,
            samples=args.samples,
            seed=args.seed,
            variant=args.variant,
        )
        _emit(report, args.out)
        return EXIT_OK
    pairs = protocol.unitary_pairs(args.d, args.unitaries, args.samples, args.seed)
    pairs = pairs[: args.samples]
    fids = [
        protocol.run_rocket_protocol(args.d, u, v, args.variant).fidelity for u, v in pairs
    ]
    _emit(
        {
            "d": args.d,
            "variant": args.variant,
            "mode": args.unitaries,
            "samples": len(fids),
            "min_fidelity": min(fids),
            "mean_fidelity": sum(fids) / len(fids),
            "seed": args.seed,
        },
        args.out,
    )
    return EXIT_OK


def cmd_study(args) -> int:
    fn = experiments.STUDIES.get(args.name)
    if fn is None:
        print(f"unknown study {args.name!r}", file=sys.stderr)
        return EXIT_USAGE
    cfg = OptimizerConfig(seed=args.seed, restarts=args.restarts, max_iters=args.max_iters)
    if args.name == "direct-sum":
        report = fn(seed=args.seed, cfg=cfg)
    elif args.name == "platypus":
        d_list = [int(x) for x in args.dlist.split(",")] if args.dlist else None
        report = fn(d_list=d_list, cfg=cfg)
    else:
        report = fn(d=args.d, cfg=cfg)
    text = json.dumps(_round12(dataclasses.asdict(report)), indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK if report.all_passed() else EXIT_VERDICT


def build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qcap", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    q1 = sub.add_parser("q1", help="maximize coherent information over inputs")
    q1.add_argument("--spec", required=True, help="channel-spec expression")
    q1.add_argument("--seed", type=int, default=0)
    q1.add_argument("--restarts", type=int, default=20)
    q1.add_argument("--max-iters", type=int, default=2000)
    q1.add_argument("--tol", type=float, default=1e-7)
    q1.add_argument("--rank", type=int, default=None)
    q1.add_argument("--show-argmax", action="store_true")
    q1.add_argument("--out", default=None)
    q1.set_defaults(fn=cmd_q1)

    b = sub.add_parser("bounds", help="closed-form bound tables and figures")
    b.add_argument("subaction", choices=["figure1", "figure2", "table", "check"])
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--p", type=float, required=True)
    b.add_argument("--alpha", type=int, required=True)
    b.add_argument("--k", type=int, default=1)
    b.add_argument("--kmax", type=int, default=None)
    b.add_argument("--theorem", default=None, help="thm1|thm2|eq24|thm3 (for check)")
    b.add_argument("--out", default=None)
    b.set_defaults(fn=cmd_bounds)

    pr = sub.add_parser("protocol", help="rocket protocol simulation / rate experiment")
    pr.add_argument("--d", type=int, default=2)
    pr.add_argument("--p", type=float, default=0.5)
    pr.add_argument("--variant", choices=["direct", "complement"], default="direct")
    pr.add_argument("--unitaries", choices=["clifford", "haar"], default="clifford")
    pr.add_argument("--samples", type=int, default=50)
    pr.add_argument("--seed", type=int, default=0)
    pr.add_argument("--eq7", action="store_true", help="run the rate experiment")
    pr.add_argument("--out", default=None)
    pr.set_defaults(fn=cmd_protocol)

    st = sub.add_parser("study", help="scripted end-to-end studies")
    st.add_argument("name", help="direct-sum | platypus | additive-complement")
    st.add_argument("--seed", type=int, default=0)
    st.add_argument("--restarts", type=int, default=6)
    st.add_argument("--max-iters", type=int, default=600)
    st.add_argument("--dlist", default=None)
    st.add_argument("--d", type=int, default=3)
    st.add_argument("--out", default=None)
    st.set_defaults(fn=cmd_study)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_arg_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except ChannelSpecError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DimensionCapError as exc:
        print(f"dimension cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except BoundValidityError as exc:
        print(f"parameter validity violation: {exc}", file=sys.stderr)
        return EXIT_VALIDITY


if __name__ == "__main__":
    sys.exit(main())
