"""Batch front door.

Every subcommand is a thin wrapper over the library with deterministic
output: identical inputs give byte-identical output, randomized probes
draw from an explicit seed that is echoed in the report, and worker
parallelism never changes ordering.

Exit codes: 0 when all requested checks pass, 1 when a check fails,
2 on usage errors or malformed input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import cohomology as co
from . import fields as fl
from . import gauge as gg
from . import multiforms as mf
from . import quotient_algebra as qa
from . import tensor_core as tc
from .diagrams import Diagram, schur_dim
from .errors import ShapeError


def _parse_ints(text):
    return tuple(int(x) for x in text.split(",") if x != "")


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_field(path):
    try:
        return fl.PolyTensorField.from_json(_read_text(path))
    except FileNotFoundError:
        raise UsageError(f"{path}: no such file")
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path}: malformed field document: {exc}")


def _load_tensor(path):
    try:
        return tc.Tensor.from_json(_read_text(path))
    except FileNotFoundError:
        raise UsageError(f"{path}: no such file")
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path}: malformed tensor document: {exc}")


class UsageError(Exception):
    pass


def _emit(text):
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")


# -- subcommand handlers ----------------------------------------------------

def _cmd_dim(args):
    _emit(str(schur_dim(Diagram(_parse_ints(args.shape)), args.D)))
    return 0


def _cmd_project(args):
    T = _load_tensor(args.input)
    Y = Diagram(_parse_ints(args.shape))
    _emit(tc.young_project(Y, T).to_json())
    return 0


def _cmd_diff(args):
    F = _load_field(args.input)
    for _ in range(args.power):
        F = fl.n_diff(F)
    _emit(F.to_json())
    return 0


def _cmd_delta(args):
    F = _load_field(args.input)
    _emit(fl.delta(F).to_json())
    return 0


def _cmd_dual(args):
    F = _load_field(args.input)
    _emit(fl.dual_star_field(F).to_json())
    return 0


def _cmd_cohomology(args):
    p_values = [args.p] if args.p is not None else None
    k_values = [args.k] if args.k is not None else None
    table = co.compute_table(args.N, args.D, args.qmax,
                             p_values=p_values, k_values=k_values, jobs=args.jobs)
    if args.format == "json":
        _emit(table.to_json())
    else:
        _emit(table.to_csv())
    return 0


def _cmd_poincare(args):
    rep = co.poincare_suite(args.N, args.D, args.nmax, args.qmax, jobs=args.jobs)
    if args.format == "json":
        _emit(rep.to_json())
    else:
        _emit(str(rep))
    return 0 if rep.ok else 1


def _cmd_hexagon(args):
    rep = co.hexagon_check(args.N, args.D, args.k, args.l, args.qmax)
    if args.format == "json":
        _emit(rep.to_json())
    else:
        _emit(str(rep))
    return 0 if rep.ok else 1


def _cmd_theorem2(args):
    K = _parse_ints(args.K)
    reports = []
    if args.multidegree is not None:
        mds = [_parse_ints(args.multidegree)]
    else:
        mds = mf._all_multidegrees(args.N, args.D)
    ok = True
    for md in mds:
        rep = mf.theorem2_check(args.N, args.D, K, args.m, md, args.qcap)
        ok = ok and rep.ok
        reports.append(rep)
    if args.format == "json":
        _emit(json.dumps([json.loads(r.to_json()) for r in reports]))
    else:
        for r in reports:
            _emit(str(r))
    return 0 if ok else 1


def _cmd_green(args):
    rng = random.Random(args.seed)
    F = fl.random_field(args.N, args.D, args.p, args.q, rng)
    c = mf.green_factor(F)
    doc = {"N": args.N, "D": args.D, "p": args.p, "q": args.q,
           "seed": args.seed, "constant": str(c)}
    _emit(json.dumps(doc))
    return 0


def _cmd_spin2(args):
    rng = random.Random(args.seed)
    results = {"D": args.D, "seed": args.seed}
    X = fl.random_field(3, args.D, 1, args.qmax + 2, rng)
    h = gg.spin2_d1(X)
    results["curvature_of_pure_gauge_vanishes"] = gg.spin2_d2(h).is_zero
    ok = results["curvature_of_pure_gauge_vanishes"]
    chain_ok = True
    for hb in fl.block_basis(3, args.D, 2, args.qmax + 2):
        if not gg.spin2_d3(gg.spin2_d2(hb)).is_zero:
            chain_ok = False
    results["cyclic_identity_of_curvatures_vanishes"] = chain_ok
    ok = ok and chain_ok
    c1, c2, c3 = gg.spin2_constants(args.D, min(args.qmax + 2, 3))
    results["constants"] = {"d1_vs_d": str(c1), "d2_vs_d2": str(c2),
                            "d3_vs_d": str(c3) if c3 is not None else None}
    if args.input:
        X = _load_field(args.input)
        h = gg.spin2_d1(X)
        R = gg.spin2_d2(h)
        results["chain"] = [json.loads(h.to_json()), json.loads(R.to_json())]
    _emit(json.dumps(results))
    return 0 if ok else 1


def _cmd_spins(args):
    rng = random.Random(args.seed)
    S = args.S
    phi = fl.random_field(S + 1, args.D, S, args.q, rng)
    curv = gg.spin_s_curvature(S, phi)
    bianchi = fl.n_diff(curv).is_zero
    chi = fl.random_field(S + 1, args.D, S - 1, args.q, rng)
    gauge_inv = gg.spin_s_curvature(S, fl.n_diff(chi)).is_zero
    doc = {"S": S, "D": args.D, "q": args.q, "seed": args.seed,
           "bianchi": bianchi, "gauge_invariance": gauge_inv}
    _emit(json.dumps(doc))
    return 0 if bianchi and gauge_inv else 1


def _cmd_stress_potential(args):
    T = _load_field(args.input)
    R = gg.stress_potential(T)
    _emit(R.to_json())
    return 0


def _cmd_algebra(args):
    rng = random.Random(args.seed)
    rep = qa.relation_checks(args.N, args.D, args.cap, rng=rng)
    if args.format == "json":
        _emit(rep.to_json())
    else:
        _emit(str(rep))
    return 0 if rep.ok else 1


def _cmd_verify_all(args):
    rng = random.Random(args.seed)
    lines = []
    ok = True

    def run(label, passed):
        nonlocal ok
        lines.append(f"{'PASS' if passed else 'FAIL'}  {label}")
        ok = ok and passed

    small = args.small
    Ns = (2, 3) if small else (2, 3, 4)
    D = 2
    qmax = 2 if small else 3

    from .diagrams import conjugate, partitions

    run("conjugation involution",
        all(conjugate(conjugate(Y)) == Y for n in range(0, 9) for Y in partitions(n)))

    dn_ok = True
    for N in Ns:
        for p in range(0, (N - 1) * D + 1):
            for q in range(0, qmax + 1):
                F = fl.random_field(N, D, p, q, rng)
                if not fl.d_power(F, N).is_zero:
                    dn_ok = False
    run("vanishing N-th power of the differential", dn_ok)

    pc_ok = True
    for N in Ns:
        rep = co.poincare_suite(N, D, 1 if small else 2, qmax, jobs=args.jobs)
        pc_ok = pc_ok and rep.ok
    run("vanishing at filled degrees", pc_ok)

    g_ok = True
    for N in Ns:
        for p in range(0, (N - 1) * D):
            F = fl.random_field(N, D, p, 2, rng)
            try:
                mf.green_factor(F)
            except Exception:
                g_ok = False
    run("slot realization of the differential", g_ok)

    t2 = mf.theorem2_check(3, D, (1, 2), 1, (1, 1), qmax)
    run("splitting of simultaneous cocycles", t2.ok)

    run("duality constants",
        bool(fl.star_relation_constants(3, D, q_values=(1,) if small else (1, 2))))

    # the degree cap stays below the top degree of the complex here; the
    # ideal-vs-kernel comparison at the top degree is a documented finding
    # reported by the dedicated `algebra` subcommand
    alg = qa.relation_checks(3, D, 3, rng=rng)
    run("algebra relations", alg.ok)

    _emit("\n".join(lines))
    _emit(f"seed: {args.seed}")
    _emit("RESULT: " + ("PASS" if ok else "FAIL"))
    return 0 if ok else 1


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ncomplex",
        description="Exact checks for complexes of mixed-symmetry tensor fields.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(handler=fn)
        return p

    p = add("dim", _cmd_dim, help="dimension of a symmetry type")
    p.add_argument("--shape", required=True, help="row lengths, e.g. 2,1")
    p.add_argument("--D", type=int, required=True)

    p = add("project", _cmd_project, help="apply a Young symmetrizer to a tensor")
    p.add_argument("--shape", required=True)
    p.add_argument("--input", default="-", help="tensor JSON file or - for stdin")

    p = add("diff", _cmd_diff, help="apply the differential to a field")
    p.add_argument("--input", default="-")
    p.add_argument("--power", type=int, default=1)

    p = add("delta", _cmd_delta, help="apply the codifferential to a field")
    p.add_argument("--input", default="-")

    p = add("dual", _cmd_dual, help="epsilon-dualize a field")
    p.add_argument("--input", default="-")

    p = add("cohomology", _cmd_cohomology, help="exact cohomology dimensions")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--p", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--qmax", type=int, default=3)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--jobs", type=int, default=1)

    p = add("poincare", _cmd_poincare, help="vanishing at filled degrees")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--nmax", type=int, default=2)
    p.add_argument("--qmax", type=int, default=3)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--jobs", type=int, default=1)

    p = add("hexagon", _cmd_hexagon, help="four-term exact sequences")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--qmax", type=int, default=3)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = add("theorem2", _cmd_theorem2, help="multiform splitting checks")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--K", required=True, help="slot subset, e.g. 1,2")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--multidegree", help="slot degrees, e.g. 1,1; all when omitted")
    p.add_argument("--qcap", type=int, default=3)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = add("green", _cmd_green, help="slot-realization constant of one block")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)

    p = add("spin2", _cmd_spin2, help="rank-2 gauge chain with verdicts")
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--qmax", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--input", help="optional covector field JSON to chain")

    p = add("spinS", _cmd_spins, help="higher-rank curvature checks")
    p.add_argument("--S", type=int, required=True)
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)

    p = add("stress-potential", _cmd_stress_potential,
            help="potential of a conserved symmetric two-tensor")
    p.add_argument("--input", default="-")

    p = add("algebra", _cmd_algebra, help="word-action relation report")
    p.add_argument("--N", type=int, default=3)
    p.add_argument("--D", type=int, default=2)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = add("verify-all", _cmd_verify_all, help="aggregate property suite")
    p.add_argument("--small", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)

    return ap


def run(argv) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ShapeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))
