"""Command-line front end: ``quantumhorn <command> ...``.

Every command prints exact rationals, the library version and, where there is
one, the canonical problem string.  Exit codes: 0 ok, 2 malformed input,
3 dimension mismatch, 4 number is not 1 under ``--require-one``, 5 the LP
region is empty.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from quantumhorn import __version__
from quantumhorn.cache import ENV_VAR, CoefficientCache, set_active_cache
from quantumhorn.gw import (
    DimensionMismatch,
    f_of_N,
    fusion_oracle,
    generalized_gw,
    gw_dual,
    reduce_to_trivial,
    scaled_problem,
)
from quantumhorn.moduli import (
    WeightSystem,
    check_semistable,
    flag_dim,
    jump_set,
    minimal_extension,
    moduli_report,
    normalize_data,
    rigidity_parabolic_weight,
    rigidity_weights,
    spread,
    weights_moduli_dim,
    witten_weights,
)
from quantumhorn.polytope import (
    EmptyRegion,
    IneqRecord,
    classify,
    collapse_orbits,
    enumerate_inequalities,
    lp_classify,
    membership,
    nori_instance,
    random_point,
    witness_weights,
)
from quantumhorn.schubert import (
    GwProblem,
    SchubertIndex,
    degree_from_cycles,
    delta,
    format_index,
    format_point,
    format_rational,
    parse_index,
    parse_point,
    scale_situation,
    shift_S,
)

EXIT_MALFORMED = 2
EXIT_DIMENSION = 3
EXIT_NOT_ONE = 4
EXIT_EMPTY = 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


# --------------------------------------------------------------------------
# argument helpers

def _indices(args) -> tuple[SchubertIndex, ...]:
    try:
        elems = [parse_index(c) for c in args.cycles]
        if not elems:
            raise ValueError("no cycles given")
        return tuple(SchubertIndex(args.n, e) for e in elems)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_MALFORMED) from exc


def _problem(args) -> GwProblem:
    idx = _indices(args)
    r = idx[0].r
    if args.r is not None and args.r != r:
        raise CliError(f"--r {args.r} disagrees with cycles of size {r}", EXIT_MALFORMED)
    if any(I.r != r for I in idx):
        raise CliError("all cycles must have the same size", EXIT_MALFORMED)
    d = args.d
    if d is None:
        d = degree_from_cycles(idx, args.D)
        if d is None:
            raise CliError("no non-negative degree gives expected dimension 0", EXIT_DIMENSION)
    P = GwProblem(args.n, r, d, args.D, idx)
    if P.expected_dim != 0:
        raise CliError(f"{P.canonical()} has expected dimension {P.expected_dim}, need 0", EXIT_DIMENSION)
    return P


def _add_problem_args(p: argparse.ArgumentParser):
    p.add_argument("--n", type=int, required=True, help="ambient rank")
    p.add_argument("--r", type=int, help="subspace rank (checked against the cycles)")
    p.add_argument("--d", type=int, help="degree; derived from the cycles when omitted")
    p.add_argument("--D", type=int, default=0, help="degree parameter of the ambient bundle")
    p.add_argument("--cycles", nargs="+", required=True, metavar="{i1,...,ir}")


def _points(texts) -> tuple[tuple[Fraction, ...], ...]:
    try:
        return tuple(parse_point(t) for t in texts)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_MALFORMED) from exc


def _frac_list(v):
    return [format_rational(x) for x in v]


# --------------------------------------------------------------------------
# commands

def cmd_gw(args):
    P = _problem(args)
    out = {"problem": P.canonical(), "value": generalized_gw(P)}
    if args.check:
        Q = reduce_to_trivial(P)
        out["fusion"] = fusion_oracle(Q) if Q.d >= 0 else 0
        out["agree"] = out["fusion"] == out["value"]
    return out


def cmd_dual(args):
    P = _problem(args)
    Q = gw_dual(P)
    return {"problem": P.canonical(), "dual": Q.canonical(),
            "value": generalized_gw(P), "dual_value": generalized_gw(Q)}


def cmd_scale(args):
    P = _problem(args)
    Q = scale_situation(P, args.N)
    return {"problem": P.canonical(), "N": args.N, "scaled": Q.canonical(), "value": generalized_gw(Q)}


def cmd_fofn(args):
    P = _problem(args)
    values = {str(N): f_of_N(P, N) for N in range(1, args.N + 1)}
    return {"problem": P.canonical(), "scaled": {str(N): scaled_problem(P, N).canonical() for N in range(1, args.N + 1)},
            "f": values}


def cmd_delta(args):
    idx = _indices(args)
    return {"indices": [format_index(I.elements) for I in idx],
            "delta": [format_point(delta(I)) for I in idx]}


def cmd_shift(args):
    pts = _points(args.point)
    return {"input": [format_point(p) for p in pts],
            "times": args.times,
            "shifted": [format_point(shift_S(p, args.times)) for p in pts]}


def cmd_weights(args):
    idx = _indices(args)
    w = witten_weights(idx)
    out = {"indices": [format_index(I.elements) for I in idx], "witten": [_frac_list(p) for p in w]}
    if args.extend:
        out["extension"] = [_frac_list(p) for p in minimal_extension(w, idx)]
    return out


def cmd_dims(args):
    idx = _indices(args)
    w = witten_weights(idx)
    r = idx[0].r
    jumps = [jump_set(p) for p in w]
    out = {
        "indices": [format_index(I.elements) for I in idx],
        "jumps": [list(j) for j in jumps],
        "flag_dims": [flag_dim(j, r) for j in jumps],
    }
    normal = not any(len(p) > 1 and spread(p) == 1 for p in w)
    if not normal:
        _, w = normalize_data(0, w)
        out["normalised_weights"] = [_frac_list(p) for p in w]
    out["moduli_dim"] = weights_moduli_dim(w)
    out["rigidity_weights"] = [_frac_list(rigidity_weights(jump_set(p), r)) for p in w]
    out["rigidity_parabolic_weight"] = format_rational(rigidity_parabolic_weight(w))
    return out


def cmd_polyrigid(args):
    P = _problem(args)
    value = generalized_gw(P)
    if value != 1 and args.require_one:
        raise CliError(f"{P.canonical()} has intersection number {value}, not 1", EXIT_NOT_ONE)
    return moduli_report(P, args.M)


def cmd_semistable(args):
    pts = _points(args.weights)
    try:
        W = WeightSystem(len(pts[0]), args.D, pts)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_MALFORMED) from exc
    out = {"weights": W.to_json(), "D": args.D}
    out.update(check_semistable(W).to_json())
    return out


def _classify_one(rec: IneqRecord) -> IneqRecord:
    return classify([rec])[0]


def _system(args) -> list[IneqRecord]:
    try:
        recs = enumerate_inequalities(args.n, args.s)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_MALFORMED) from exc
    return recs


def cmd_inequalities(args):
    recs = _system(args)
    if args.classify:
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                recs = list(pool.map(_classify_one, recs, chunksize=8))
        else:
            recs = classify(recs)
    if args.lp:
        try:
            recs = lp_classify(recs)
        except EmptyRegion as exc:
            raise CliError(str(exc), EXIT_EMPTY) from exc
    if args.orbits:
        recs = collapse_orbits(recs)
    out = {"n": args.n, "s": args.s, "records": [r.to_json() for r in recs]}
    if args.classify and args.lp:
        out["agree"] = all(r.polyrigid == r.lp_irredundant for r in recs)
    out["_matrix"] = recs
    return out


def cmd_member(args):
    recs = _system(args)
    if args.polyrigid_only:
        recs = [r for r in classify(recs) if r.polyrigid]
    if args.random:
        rng = random.Random(args.seed)
        rows = []
        for _ in range(args.random):
            A = random_point(args.n, args.s, rng)
            m = membership(A, recs)
            rows.append({"point": [format_point(a) for a in A], "member": m.member,
                         "violated": [recs[i].key() for i in m.violated]})
        return {"n": args.n, "s": args.s, "seed": args.seed, "results": rows}
    pts = _points(args.point or [])
    if len(pts) != args.s:
        raise CliError(f"need {args.s} points, got {len(pts)}", EXIT_MALFORMED)
    try:
        m = membership(pts, recs)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_MALFORMED) from exc
    out = {"n": args.n, "s": args.s, "point": [format_point(a) for a in pts]}
    out.update(m.to_json())
    out["violated"] = [recs[i].key() for i in m.violated]
    out["tight"] = [recs[i].key() for i in m.tight]
    return out


def cmd_witness(args):
    P = _problem(args)
    if P.D != 0:
        raise CliError("witnesses are computed for D = 0", EXIT_MALFORMED)
    value = generalized_gw(P)
    if value != 1:
        raise CliError(f"{P.canonical()} has intersection number {value}, not 1", EXIT_NOT_ONE)
    rec = IneqRecord(P.r, P.d, P.indices, 1)
    try:
        w = witness_weights(rec)
    except EmptyRegion as exc:
        raise CliError(str(exc), EXIT_EMPTY) from exc
    except ValueError as exc:
        raise CliError(str(exc), EXIT_MALFORMED) from exc
    out = {"problem": P.canonical()}
    out.update(w.to_json())
    rep = check_semistable(w.weights())
    out["violated_at_point"] = [Q.canonical() for Q, _ in rep.violated]
    return out


def cmd_nori(args):
    try:
        rec = nori_instance(args.dims, args.W)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_MALFORMED) from exc
    out = {"problem": rec.problem.canonical()}
    out.update(rec.to_json())
    return out


def cmd_cache(args):
    path = args.path or args.cache or os.environ.get(ENV_VAR)
    if not path:
        raise CliError(f"give a path or set {ENV_VAR}", EXIT_MALFORMED)
    cache = CoefficientCache(path)
    out = {"path": str(path), "entries": len(cache),
           "quarantined": str(cache.quarantined) if cache.quarantined else None}
    if args.action == "clear":
        cache.clear()
        out["entries"] = 0
    if args.action in ("clear", "save"):
        cache.save()
    return out


COMMANDS = {
    "gw": cmd_gw, "dual": cmd_dual, "scale": cmd_scale, "fofn": cmd_fofn, "delta": cmd_delta,
    "shift": cmd_shift, "weights": cmd_weights, "dims": cmd_dims, "polyrigid": cmd_polyrigid,
    "semistable": cmd_semistable, "inequalities": cmd_inequalities, "member": cmd_member,
    "witness": cmd_witness, "nori": cmd_nori, "cache": cmd_cache,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quantumhorn", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text", "csv"), default="json")
    common.add_argument("--cache", help=f"cache file (default: ${ENV_VAR})")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1, help="worker processes for enumeration")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("gw", "dual", "scale", "fofn", "polyrigid", "witness"):
        p = sub.add_parser(name, parents=[common])
        _add_problem_args(p)
        if name == "gw":
            p.add_argument("--check", action="store_true", help="also run the fusion oracle")
        if name in ("scale", "fofn"):
            p.add_argument("--N", type=int, default=2 if name == "scale" else 3)
        if name == "polyrigid":
            p.add_argument("--M", type=int, help="largest N tested (default r+1)")
            p.add_argument("--require-one", action="store_true")

    for name in ("delta", "weights", "dims"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--cycles", nargs="+", required=True)
        if name == "weights":
            p.add_argument("--extend", action="store_true", help="also print the minimal extension")

    p = sub.add_parser("shift", parents=[common])
    p.add_argument("--point", nargs="+", required=True, metavar="[a1,...,ar]")
    p.add_argument("--times", type=int, default=1)

    p = sub.add_parser("semistable", parents=[common])
    p.add_argument("--weights", nargs="+", required=True, metavar="[t1,...,tn]")
    p.add_argument("--D", type=int, default=0)

    for name in ("inequalities", "member"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--s", type=int, required=True)
        if name == "inequalities":
            p.add_argument("--classify", action="store_true")
            p.add_argument("--lp", action="store_true")
            p.add_argument("--orbits", action="store_true", help="one record per permutation orbit")
        else:
            p.add_argument("--point", nargs="+")
            p.add_argument("--random", type=int, default=0, help="test this many seeded random points")
            p.add_argument("--polyrigid-only", action="store_true")

    p = sub.add_parser("nori", parents=[common])
    p.add_argument("--dims", type=int, nargs="+", required=True)
    p.add_argument("--W", type=int, required=True)

    p = sub.add_parser("cache", parents=[common])
    p.add_argument("action", choices=("info", "save", "clear"))
    p.add_argument("path", nargs="?")
    return parser


# --------------------------------------------------------------------------
# output

def _text(value, indent=0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_flat(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, dict) or (isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v)):
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_flat(v)}")
    else:
        lines.append(pad + _flat(value))
    return lines


def _flat(v) -> str:
    if isinstance(v, list):
        return " ".join(_flat(x) for x in v)
    if isinstance(v, dict):
        return json.dumps(v)
    if isinstance(v, bool) or v is None:
        return json.dumps(v)
    return str(v)


def _csv(out) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    recs = out.get("_matrix")
    if recs is not None:
        n, s = out["n"], out["s"]
        header = ["r", "d", "indices"] + [f"a{l + 1}_{j + 1}" for l in range(s) for j in range(n)] + ["bound"]
        header += ["polyrigid", "lp_irredundant"]
        w.writerow(header)
        for rec in recs:
            w.writerow([rec.r, rec.d, " ".join(format_index(I.elements) for I in rec.indices)]
                       + rec.coefficients() + [rec.d, _flat(rec.polyrigid), _flat(rec.lp_irredundant)])
        return buf.getvalue()
    flat = {k: _flat(v) for k, v in out.items()}
    w.writerow(list(flat))
    w.writerow(list(flat.values()))
    return buf.getvalue()


def render(out: dict, fmt: str) -> str:
    if fmt == "csv":
        return _csv(out)
    out = {k: v for k, v in out.items() if not k.startswith("_")}
    if fmt == "text":
        return "\n".join(_text(out)) + "\n"
    return json.dumps(out, indent=2) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    cache = None
    if args.command != "cache":
        path = args.cache or os.environ.get(ENV_VAR)
        cache = CoefficientCache(path) if path else None
        set_active_cache(cache)
    try:
        result = COMMANDS[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except DimensionMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    finally:
        if cache is not None and cache.dirty:
            cache.save()
        set_active_cache(None)
    out = {"version": __version__, "command": args.command}
    out.update(result)
    sys.stdout.write(render(out, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
