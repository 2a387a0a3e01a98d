"""Unified command line entry point.

Subcommands mirror the library modules: partition, hl, sixv, tboson, moments,
rsk, verify.  All randomness derives from one master seed (--seed, or the
HLSIXV_SEED environment variable) split per command through
numpy.random.SeedSequence([master, crc32(command-tag)]); identical
(config, seed) pairs therefore produce byte-identical JSON up to the
explicitly timing-valued fields (runtime).  --config FILE.json overrides any
flag by destination name.  Exit codes: 0 success, 1 a verification check
failed, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import zlib

import numpy as np

from . import hl_process as hl
from . import moments as mo
from . import partitions as pt
from . import rsk
from . import six_vertex as sv
from . import tboson as tb
from . import verify as vf
from .distributions import key_to_str


def _floats(s: str) -> tuple:
    return tuple(float(x) for x in s.split(",") if x != "")


def _ints(s: str) -> tuple:
    return tuple(int(x) for x in s.split(",") if x != "")


def _points(s: str) -> list:
    return [tuple(int(v) for v in p.split(",")) for p in s.split(";") if p]


def split_seed(master: int, tag: str) -> int:
    """Documented seed-splitting scheme: child stream per command tag."""
    ss = np.random.SeedSequence([int(master), zlib.crc32(tag.encode())])
    return int(ss.generate_state(1)[0])


def _emit(payload, args) -> None:
    if getattr(args, "format", "json") == "csv":
        rows = payload if isinstance(payload, list) else [payload]
        lines = []
        if rows and isinstance(rows[0], dict):
            cols = list(rows[0])
            lines.append(",".join(cols))
            for r in rows:
                lines.append(",".join(str(r[c]) for c in cols))
        else:
            lines = [",".join(str(v) for v in r) for r in rows]
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    out = getattr(args, "output", None)
    if out:
        with open(out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _dist_json(dist) -> dict:
    return dist.to_json_dict()


def _default_signs(args) -> tuple:
    if getattr(args, "S", None):
        return pt.parse_signs(args.S)
    return tuple([1] * args.M + [-1] * args.N)


# ---------------------------------------------------------------------------
# handlers


def _cmd_partition(args):
    if args.action == "conjugate":
        lam = pt.as_partition(_ints(args.parts))
        return 0, {"parts": list(lam), "conjugate": list(pt.conjugate(lam))}
    if args.action == "from-string":
        signs = pt.parse_signs(args.signs)
        p, m = pt.sign_counts(signs)
        return 0, {"signs": pt.signs_to_str(signs), "partition": list(pt.partition_from_string(signs, p, m))}
    lam = pt.as_partition(_ints(args.parts))
    return 0, {
        "partition": list(lam),
        "signs": pt.signs_to_str(pt.string_from_partition(lam, args.p, args.m)),
    }


def _hl_spec(args) -> hl.HLProcessSpec:
    a, b = _floats(args.a), _floats(args.b)
    S = getattr(args, "S", None)
    signs = pt.parse_signs(S) if S else tuple([1] * len(a) + [-1] * len(b))
    return hl.HLProcessSpec(t=args.t, a=a, b=b, S=signs)


def _cmd_hl(args):
    spec = _hl_spec(args)
    cap = args.row_cap or hl.minimal_row_cap(spec)
    if args.action == "pi":
        return 0, {"pi": hl.normalization_pi(spec)}
    if args.action == "exact":
        dist = hl.exact_sequence_distribution(spec, cap)
        rows = sorted(
            (json.dumps([list(p) for p in seq]), v) for seq, v in dist.items()
        )
        return 0, {
            "outcomes": [{"key": k, "prob": v} for k, v in rows],
            "mass_deficit": dist.mass_deficit,
            "row_cap": cap,
        }
    if args.action == "support":
        out = _dist_json(hl.exact_support_distribution(spec, cap))
        out["row_cap"] = cap
        return 0, out
    sampler = hl.SequenceSampler(spec, cap, split_seed(args.seed, "hl.sample"))
    rows = [
        {"sample": i, "sequence": json.dumps([list(p) for p in sampler.sample()])}
        for i in range(args.samples)
    ]
    return 0, rows


def _sv_params(args) -> tuple:
    a, b = _floats(args.a), _floats(args.b)
    if getattr(args, "native", False):
        params = sv.SixVertexParams.from_native(args.t, a, b)
        meta = {"converted_from_native": {"Q": args.t, "xi": list(a), "u": list(b)}}
    else:
        params = sv.SixVertexParams(t=args.t, a=a, b=b)
        meta = {}
    return params, meta


def _cmd_sixv(args):
    if args.action == "halfcont":
        rates = _floats(args.rates)
        taus = _floats(args.query)
        if not rates or not taus:
            raise ValueError("halfcont requires --rates and --query")
        if args.samples > 1:
            ens = sv.half_continuous_height_ensemble(
                args.t, rates, taus, args.samples, split_seed(args.seed, "sixv.halfcont")
            )
            return 0, {"query_times": list(taus), "heights": ens.tolist()}
        h = sv.sample_half_continuous(
            args.t, rates, args.tmax, taus, split_seed(args.seed, "sixv.halfcont")
        )
        return 0, {"query_times": list(taus), "heights": h.tolist()}
    if not args.a or not args.b:
        raise ValueError(f"sixv {args.action} requires --a and --b")
    params, meta = _sv_params(args)
    M, N = len(params.a), len(params.b)
    if args.M is not None and args.M != M:
        raise ValueError(f"--M {args.M} disagrees with {M} column parameters")
    if args.N is not None and args.N != N:
        raise ValueError(f"--N {args.N} disagrees with {N} row parameters")
    domain = sv.JaggedDomain(M, N, _default_signs(argparse.Namespace(S=getattr(args, "S", None), M=M, N=N)))
    if args.action == "exact":
        out = _dist_json(sv.exact_outgoing_distribution(params, domain))
        out.update(meta)
        return 0, out
    if args.action == "heights":
        points = _points(args.points)
        out = _dist_json(sv.exact_joint_height_distribution(params, domain, points))
        out.update(meta)
        return 0, out
    # sample
    rng = np.random.default_rng(split_seed(args.seed, "sixv.sample"))
    cut = domain.cut_points()[1 : M + N]
    rows = []
    for i in range(args.samples):
        state = sv.sample_state(params, domain, rng)
        T, nu = sv.outgoing_partition(state)
        heights = [sv.height(state, x + 1, y) for x, y in cut]
        bits = tuple(state.vert[k] for k in sorted(state.vert)) + tuple(
            state.horiz[k] for k in sorted(state.horiz)
        )
        rows.append(
            {
                "sample": i,
                "state_hash": zlib.crc32(bytes(bits)),
                "nu": json.dumps(list(nu)),
                "heights": json.dumps(heights),
            }
        )
    return 0, rows


def _cmd_tboson(args):
    if args.action == "yb":
        worst = tb.yang_baxter_max_residual(args.trials, split_seed(args.seed, "tboson.yb"))
        return 0, {"trials": args.trials, "max_residual": worst}
    if args.action == "exchange":
        rng = np.random.default_rng(split_seed(args.seed, "tboson.exchange"))
        whichs = [args.which] if args.which else ["CA", "CB", "DA", "DB"]
        worst = 0.0
        for _ in range(args.draws):
            a, b, t = (float(v) for v in rng.uniform(0.1, 0.9, size=3))
            for w in whichs:
                worst = max(worst, tb.verify_exchange_relation(w, args.L, args.cap, a, b, t))
        return 0, {"relations": whichs, "draws": args.draws, "max_residual": worst}
    val = tb.row_operator_element(
        args.kind, args.spectral, _ints(args.lam), _ints(args.mu), args.L, args.t
    )
    return 0, {"value": val}


def _cmd_moments(args):
    ms = _ints(args.m)
    k = len(ms)
    if args.k is not None and args.k != k:
        raise ValueError(f"--k {args.k} disagrees with {k} entries in --m")
    a, b = _floats(args.a), _floats(args.b)
    if args.action == "hl":
        return 0, mo.hl_moment(k, ms, args.N, args.t, a, b, tol=args.tol, full=True)
    if args.action == "sixv":
        params = sv.SixVertexParams(t=args.t, a=a, b=b)
        return 0, mo.sixv_moment(k, ms, args.N, params, tol=args.tol, full=True)
    lhs, rhs, diff = mo.moment_match_check(k, ms, args.N, args.t, a, b, tol=args.tol)
    return 0, {"hl_side": lhs, "sixv_side": rhs, "abs_diff": diff}


def _cmd_rsk(args):
    rates = _floats(args.rates)
    seedv = split_seed(args.seed, f"rsk.{args.action}")
    if args.action == "run":
        snaps = _floats(args.snapshots) if args.snapshots else (args.tmax,)
        n_max = args.levels or len(rates)
        if args.format == "csv":
            events: list = []
            rsk.run_rsk(rates, args.t, args.tmax, seedv, snaps, n_max=n_max,
                        events=events)
            return 0, [
                {"time": e[0], "level": e[1], "row": e[2], "new_value": e[3]}
                for e in events
            ]
        traj = rsk.run_rsk(rates, args.t, args.tmax, seedv, snaps, n_max=n_max)
        return 0, [
            {"tau": tau, "levels": [list(l) for l in arr.levels]} for tau, arr in traj
        ]
    if args.action == "pushtasep":
        events, state = rsk.run_pushtasep(rates, args.t, args.tmax, seedv)
        rows = [
            {"time": e[0], "clock_site": e[1], "src": e[2], "dst": e[3]}
            for e in events
        ]
        if args.format == "csv":
            return 0, rows
        return 0, {
            "events": rows,
            "occupied": [i + 1 for i, o in enumerate(state.occupied) if o],
        }
    sets = rsk.run_sets(rates, args.t, args.tmax, seedv)
    return 0, {
        "complements": [sorted(c) for c in sets.complements],
        "first_columns": list(rsk.array_from_sets(sets).first_columns()),
    }


def _cmd_verify(args):
    seed = args.seed
    if args.action == "all":
        reports = vf.run_all(level=args.level, seed=split_seed(seed, "verify.all"))
    elif args.action == "support":
        reports = [
            vf.check_support_match(
                len(_floats(args.a)), len(_floats(args.b)), args.S, args.t,
                _floats(args.a), _floats(args.b),
            )
        ]
    elif args.action == "height":
        reports = [
            vf.check_height_match(
                len(_floats(args.a)), len(_floats(args.b)), args.S, args.t,
                _floats(args.a), _floats(args.b),
            )
        ]
    elif args.action == "moments":
        ms = _ints(args.m)
        reports = [
            vf.check_moment_match(len(ms), ms, args.N, args.t, _floats(args.a), _floats(args.b))
        ]
    elif args.action == "rsk":
        reports = [
            vf.check_rsk_field(
                _floats(args.rates), args.t, _floats(args.taus), args.samples,
                split_seed(seed, "verify.rsk"),
            )
        ]
    else:
        reports = [
            vf.check_plancherel_marginal(
                _floats(args.rates), args.t, args.tau, args.level_n, args.K,
                args.samples, split_seed(seed, "verify.plancherel"),
            )
        ]
    sys.stderr.write(vf.summarize(reports) + "\n")
    code = 0 if all(r.passed for r in reports) else 1
    return code, [r.to_json_dict() for r in reports]


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hlsixv", description=__doc__)
    p.add_argument("--config", help="JSON file whose entries override flags")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed=True, fmt=True):
        sp.add_argument("--output", help="write payload here instead of stdout")
        if fmt:
            sp.add_argument("--format", choices=["json", "csv"], default="json")
        if seed:
            sp.add_argument(
                "--seed", type=int,
                default=int(os.environ.get("HLSIXV_SEED", "0")),
            )

    sp = sub.add_parser("partition")
    sp.add_argument("action", choices=["conjugate", "from-string", "to-string"])
    sp.add_argument("--parts", default="")
    sp.add_argument("--signs", default="")
    sp.add_argument("--p", type=int, default=0)
    sp.add_argument("--m", type=int, default=0)
    common(sp, seed=False)
    sp.set_defaults(func=_cmd_partition)

    sp = sub.add_parser("hl")
    sp.add_argument("action", choices=["pi", "exact", "support", "sample"])
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--S", default=None)
    sp.add_argument("--row-cap", dest="row_cap", type=int, default=None)
    sp.add_argument("--samples", type=int, default=1)
    common(sp)
    sp.set_defaults(func=_cmd_hl)

    sp = sub.add_parser("sixv")
    sp.add_argument(
        "action", choices=["exact", "sample", "heights", "halfcont"]
    )
    sp.add_argument("--M", type=int, default=None)
    sp.add_argument("--N", type=int, default=None)
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--a", default="")
    sp.add_argument("--b", default="")
    sp.add_argument("--S", default=None)
    sp.add_argument("--native", action="store_true",
                    help="interpret --t/--a/--b as native (Q, xi, u)")
    sp.add_argument("--points", default="")
    sp.add_argument("--rates", default="")
    sp.add_argument("--tmax", type=float, default=None)
    sp.add_argument("--query", default="")
    sp.add_argument("--samples", type=int, default=1)
    common(sp)
    sp.set_defaults(func=_cmd_sixv)

    sp = sub.add_parser("tboson")
    sp.add_argument("action", choices=["yb", "exchange", "rowelem"])
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--draws", type=int, default=100)
    sp.add_argument("--which", choices=["CA", "CB", "DA", "DB"], default=None)
    sp.add_argument("--L", type=int, default=3)
    sp.add_argument("--cap", type=int, default=3)
    sp.add_argument("--kind", choices=["A", "B", "Cbar", "Dbar"], default="A")
    sp.add_argument("--spectral", type=float, default=0.5)
    sp.add_argument("--lam", default="")
    sp.add_argument("--mu", default="")
    sp.add_argument("--t", type=float, default=0.5)
    common(sp)
    sp.set_defaults(func=_cmd_tboson)

    sp = sub.add_parser("moments")
    sp.add_argument("action", choices=["hl", "sixv", "match"])
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--m", required=True, help="m_1,m_2,... non-increasing")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--tol", type=float, default=1e-9)
    common(sp, seed=False)
    sp.set_defaults(func=_cmd_moments)

    sp = sub.add_parser("rsk")
    sp.add_argument("action", choices=["run", "pushtasep", "sets"])
    sp.add_argument("--rates", required=True)
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--tmax", type=float, required=True)
    sp.add_argument("--levels", type=int, default=None)
    sp.add_argument("--snapshots", default="")
    common(sp)
    sp.set_defaults(func=_cmd_rsk)

    sp = sub.add_parser("verify")
    sp.add_argument(
        "action", choices=["all", "support", "height", "moments", "rsk", "plancherel"]
    )
    sp.add_argument("--level", default="desk")
    sp.add_argument("--t", type=float, default=0.5)
    sp.add_argument("--a", default="0.4")
    sp.add_argument("--b", default="0.4")
    sp.add_argument("--S", default="+-")
    sp.add_argument("--m", default="1")
    sp.add_argument("--N", type=int, default=1)
    sp.add_argument("--rates", default="1.0,0.8")
    sp.add_argument("--taus", default="0.7,1.4")
    sp.add_argument("--tau", type=float, default=0.6)
    sp.add_argument("--level-n", dest="level_n", type=int, default=2)
    sp.add_argument("--K", type=int, default=64)
    sp.add_argument("--samples", type=int, default=20000)
    common(sp)
    sp.set_defaults(func=_cmd_verify)

    return p


def parse_and_dispatch(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if args.config:
        try:
            with open(args.config) as f:
                overrides = json.load(f)
        except (OSError, json.JSONDecodeError) as exc:
            sys.stderr.write(f"config error: {exc}\n")
            return 2
        for key, val in overrides.items():
            setattr(args, key, val)
    try:
        code, payload = args.func(args)
    except (ValueError, mo.ContourError, hl.TruncationError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    _emit(payload, args)
    return code


def main(argv=None) -> int:
    return parse_and_dispatch(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
