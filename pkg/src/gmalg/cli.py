"""Command-line surface.

Exit codes: 0 all checks pass; 1 a genuine mathematical finding (e.g. a
non-proper map outside the sufficient hypotheses); 2 a guaranteed check
failed (implementation bug or corrupted input); 3 malformed or rejected
input.  Output bytes are stable for fixed inputs and seed.
"""

import argparse
import os
import random
import sys

from . import derivations, jsonio, maps, oracle
from .errors import (
    GmalgError,
    HypothesesNotMet,
    InputError,
    TheoremViolation,
)
from .families import (
    InflatedSpec,
    block_triangular_gma,
    full_matrix_gma,
    inflated_algebra,
    triangular_gma,
)
from .algebra import Algebra
from .morita import build_gma, validate_context
from .rings import parse_ring_flag

EXIT_OK = 0
EXIT_FINDING = 1
EXIT_VIOLATION = 2
EXIT_INPUT = 3


def _workers():
    try:
        return max(1, int(os.environ.get("GMALG_WORKERS", "1")))
    except ValueError:
        return 1


def _emit(doc, path=None):
    text = jsonio.dumps(doc)
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_validate(args):
    ctx = jsonio.context_from_json(jsonio.load_file(args.context))
    bad = validate_context(ctx)
    doc = {
        "command": "validate",
        "clean": not bad,
        "violations": [
            {"axiom": v.axiom, "witness": list(v.witness) if isinstance(v.witness, tuple) else v.witness}
            for v in bad
        ],
    }
    _emit(doc, args.emit)
    return EXIT_OK if not bad else EXIT_INPUT


def cmd_build(args):
    ctx = jsonio.context_from_json(jsonio.load_file(args.context))
    G = build_gma(ctx)
    _emit(jsonio.algebra_to_json(G.algebra), args.emit)
    return EXIT_OK


def _load_gma(path):
    ctx = jsonio.context_from_json(jsonio.load_file(path))
    return build_gma(ctx)


def cmd_classify(args):
    G = _load_gma(args.context)
    theta = jsonio.map_from_json(jsonio.load_file(args.map), G.ring)
    k = args.k
    doc = {"command": "classify", "k": k}
    exit_code = EXIT_OK

    kc, witness = maps.is_k_commuting(G, theta, k)
    doc["k_commuting"] = kc
    if args.oracle:
        bkc, bwit = oracle.brute_k_commuting(G, theta, k, args.budget)
        if bkc != kc:
            raise TheoremViolation("oracle disagrees on the commuting test")
        doc["oracle_k_commuting"] = bkc
    if not kc:
        doc["counterexample"] = list(witness)
        _emit(doc, args.emit)
        return EXIT_FINDING

    rep = maps.verify_structure_conditions(G, theta, k)
    doc["structure_conditions"] = rep.to_json()
    if not rep.all_pass:
        raise TheoremViolation(
            "structure conditions failed for a commuting map", rep.failures()
        )

    cert = maps.properness_certificate(G, theta)
    doc["proper"] = cert is not None
    if cert is not None:
        doc["multiplier"] = list(cert.multiplier)
        doc["offset"] = cert.offset.to_json()
    if args.oracle:
        bok, _ = oracle.brute_properness(G, theta, args.budget)
        if bok != (cert is not None):
            raise TheoremViolation("oracle disagrees on properness")
        doc["oracle_proper"] = bok

    if args.mode == "proper":
        hyp = maps.check_properness_hypotheses(G, k)
        doc["hypotheses"] = {
            "cond1": hyp.cond1,
            "cond2": hyp.cond2,
            "cond3": hyp.cond3,
        }
        if hyp.cond1 and hyp.cond2 and hyp.cond3:
            pf = maps.construct_proper_form(G, theta, k)
            steps = maps.verify_proper_form_steps(G, theta, k)
            doc["proper_form"] = {
                "center_shift": list(pf.center_shift),
                "steps": steps.to_json(),
            }
            if not steps.all_pass:
                raise TheoremViolation("step invariants failed", steps.failures())
        else:
            exit_code = EXIT_FINDING

    if cert is None:
        exit_code = EXIT_FINDING
    _emit(doc, args.emit)
    return exit_code


def _sweep_one(G, mode, k, hyp, theta):
    if mode == "structure":
        rep = maps.verify_structure_conditions(G, theta, k)
        return rep.all_pass, rep.failures()
    if mode == "steps":
        rep = maps.verify_proper_form_steps(G, theta, k, hypotheses=hyp)
        return rep.all_pass, rep.failures()
    # proper: construct the split, then confirm exact reassembly
    pf = maps.construct_proper_form(G, theta, k, hypotheses=hyp)
    alg = G.algebra
    for j in range(G.dim):
        ej = alg.basis_vector(j)
        lhs = theta.apply(ej)
        rhs = alg.add(alg.mul(ej, pf.center_shift), pf.residual_map.column(j))
        if lhs != rhs:
            return False, {"basis_index": j}
    return True, None


def _sweep_maps(space, seed, samples):
    out = list(space.basis())
    rng = random.Random(seed)
    for _ in range(samples):
        out.append(space.random_member(rng))
    return out


def cmd_sweep(args):
    G = _load_gma(args.context)
    k = args.k
    doc = {"command": "sweep", "mode": args.mode, "k": k, "seed": args.seed}
    findings = []

    if args.mode == "derivations":
        ok = derivations.verify_commuting_derivations_vanish(G, k)
        doc["vanishing"] = ok
        _emit(doc, args.emit)
        return EXIT_OK

    space = maps.commuting_space(G, k)
    doc["space_generators"] = len(space.space.gens)
    thetas = _sweep_maps(space, args.seed, args.samples)
    doc["maps_checked"] = len(thetas)

    hyp = None
    if args.mode in ("proper", "steps"):
        hyp = maps.check_properness_hypotheses(G, k)
        doc["hypotheses"] = {
            "cond1": hyp.cond1,
            "cond2": hyp.cond2,
            "cond3": hyp.cond3,
        }
        if not (hyp.cond1 and hyp.cond2 and hyp.cond3):
            doc["finding"] = "sufficient hypotheses not satisfied"
            _emit(doc, args.emit)
            return EXIT_FINDING

    workers = _workers()
    if workers > 1 and len(thetas) > 1:
        import concurrent.futures
        import functools

        fn = functools.partial(_sweep_one, G, args.mode, k, hyp)
        with concurrent.futures.ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(fn, thetas))
    else:
        results = [_sweep_one(G, args.mode, k, hyp, t) for t in thetas]
    for idx, (ok, wit) in enumerate(results):
        if not ok:
            findings.append({"map_index": idx, "witness": wit})
    doc["failures"] = findings
    doc["all_pass"] = not findings
    _emit(doc, args.emit)
    if findings:
        raise TheoremViolation("sweep found failing guaranteed checks", findings)
    return EXIT_OK


def _parse_gamma(text, ring, n):
    """'1,0;0,2' -> n x n scalar matrix (as 1-dim base-algebra vectors)."""
    rows = [r for r in text.strip().split(";") if r]
    if len(rows) != n:
        raise InputError(f"twist matrix needs {n} rows, got {len(rows)}")
    out = []
    for r in rows:
        cells = r.split(",")
        if len(cells) != n:
            raise InputError(f"twist matrix needs {n} columns per row")
        out.append([(ring.coerce(int(c)),) for c in cells])
    return out


def cmd_family(args):
    ring = parse_ring_flag(args.ring)
    if args.kind == "full":
        G = full_matrix_gma(ring, args.n, args.split)
        _emit(jsonio.context_to_json(G.ctx), args.emit)
        return EXIT_OK
    if args.kind == "triangular":
        G = triangular_gma(ring, args.n, args.split, args.variant)
        _emit(jsonio.context_to_json(G.ctx), args.emit)
        return EXIT_OK
    if args.kind == "block":
        if not args.dims:
            raise InputError("--dims is required for block families")
        dvec = tuple(int(d) for d in args.dims.split(","))
        G = block_triangular_gma(ring, dvec, args.split)
        _emit(jsonio.context_to_json(G.ctx), args.emit)
        return EXIT_OK
    if args.kind == "inflated":
        if not args.gamma:
            raise InputError("--gamma is required for inflated families")
        base = Algebra(ring, ["1"], [[(ring.one,)]], (ring.one,))
        gamma = _parse_gamma(args.gamma, ring, args.n)
        inf = inflated_algebra(InflatedSpec(base, args.n, gamma))
        doc = {
            "has_identity": inf.has_identity,
            "algebra": jsonio.algebra_to_json(inf.algebra),
        }
        if inf.has_identity:
            doc["identity"] = jsonio._vec_json(ring, inf.identity)
            doc["sigma"] = inf.sigma.to_json()
        _emit(doc, args.emit)
        return EXIT_OK
    raise InputError(f"unknown family kind {args.kind!r}")


def build_parser():
    p = argparse.ArgumentParser(
        prog="gmalg",
        description="Exact verification toolkit for 2x2 generalized matrix algebras",
    )
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check a context document against the axioms")
    v.add_argument("context")
    v.add_argument("--emit")
    v.set_defaults(func=cmd_validate)

    b = sub.add_parser("build", help="assemble the block algebra from a context")
    b.add_argument("context")
    b.add_argument("--emit")
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("classify", help="analyze one linear map on a context")
    c.add_argument("context")
    c.add_argument("map")
    c.add_argument("--k", type=int, default=1)
    c.add_argument("--oracle", action="store_true")
    c.add_argument("--mode", choices=["basic", "proper"], default="basic")
    c.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)
    c.add_argument("--emit")
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("sweep", help="verify a whole solution space")
    s.add_argument("context")
    s.add_argument("--k", type=int, default=1)
    s.add_argument(
        "--mode",
        choices=["structure", "proper", "derivations", "steps"],
        default="structure",
    )
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--samples", type=int, default=20)
    s.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)
    s.add_argument("--emit")
    s.set_defaults(func=cmd_sweep)

    f = sub.add_parser("family", help="emit a standard example as JSON")
    f.add_argument("--kind", choices=["full", "triangular", "block", "inflated"], required=True)
    f.add_argument("--ring", required=True)
    f.add_argument("--n", type=int, default=2)
    f.add_argument("--split", type=int, default=1)
    f.add_argument("--dims")
    f.add_argument("--gamma")
    f.add_argument("--variant", choices=["upper", "lower"], default="upper")
    f.add_argument("--emit")
    f.set_defaults(func=cmd_family)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TheoremViolation as exc:
        print(f"theorem violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except HypothesesNotMet as exc:
        print(f"finding: {exc}", file=sys.stderr)
        return EXIT_FINDING
    except InputError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GmalgError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
