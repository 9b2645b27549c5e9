"""Command-line front end.

    sflows count     --complex PATH --q INT [--method brute|ie|tutte|all]
    sflows enumerate --complex PATH --q INT
    sflows verify    --complex PATH --q INT --flow 1,4,1,1
    sflows poly      --complex PATH
    sflows tutte     --complex PATH
    sflows fit       --complex PATH [--max-period INT] [--max-degree INT]
    sflows homology  --complex PATH [--q INT]
    sflows classify  --complex PATH
    sflows matrix    --complex PATH [--dump-matrix] [--cone-vertex V]

JSON goes to stdout.  Domain errors exit 1 with an error object on stderr;
usage errors exit 2.  ``--complex`` also accepts the name of a shipped
fixture (e.g. ``bipyramid``).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from .boundary import boundary_matrix, cone_ordering
from .complex import SimplicialComplex, face_label, load_complex, relabel_to_max
from .errors import FlowError, MethodDisagreement
from .fixtures import fixture_names, load_fixture
from .flows import (
    DEFAULT_WORK_LIMIT,
    brute_force_count,
    flow_polynomial,
    inclusion_exclusion_count,
    kernel_profile,
    verify_flow,
)
from .homology import betti_top, classify_manifold, flow_formula, top_homology_mod_q, top_homology_Z
from .linalg import dimension_bound, is_prime
from .matroid import DEFAULT_GROUND_LIMIT, column_matroid, tutte
from .quasipoly import coprime_agreement, default_sample_range, fit, format_fraction, is_minimal

COMMANDS = ("count", "enumerate", "verify", "poly", "tutte", "fit", "homology", "classify", "matrix")
METHOD_NAMES = {"brute": "brute", "ie": "incl-excl", "tutte": "tutte"}


class UsageError(Exception):
    pass


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--complex", required=True, metavar="PATH", help="facet-list file or fixture name")
    common.add_argument("--q", type=int, help="modulus")
    common.add_argument("--method", choices=["brute", "ie", "tutte", "all"])
    common.add_argument("--max-period", type=int, default=6)
    common.add_argument("--max-degree", type=int)
    common.add_argument("--q-max", type=int, help="largest modulus sampled by fit")
    common.add_argument("--dump-matrix", action="store_true")
    common.add_argument("--cone-vertex", type=int, help="matrix: cone block ordering around this vertex")
    common.add_argument("--flow", help="verify: comma-separated residues in facet order")
    common.add_argument("--threads", type=int)
    common.add_argument("--output", choices=["json", "table"], default="json")
    common.add_argument("--no-timing", action="store_true")
    common.add_argument("--work-limit", type=int)
    common.add_argument("--ground-limit", type=int, default=DEFAULT_GROUND_LIMIT, help="Tutte ground-set cap")

    parser = argparse.ArgumentParser(prog="sflows", description="Nowhere-zero flows on simplicial complexes")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _load(spec: str) -> SimplicialComplex:
    path = Path(spec)
    if path.exists():
        return load_complex(path)
    name = path.stem if path.suffix == ".sc" else spec
    if name in fixture_names():
        return load_fixture(name)
    raise FileNotFoundError(f"no such file or fixture: {spec}")


def _facet_labels(c: SimplicialComplex) -> list[str]:
    return [face_label(f) for f in c.facets]


def _need_q(args) -> int:
    if args.q is None:
        raise UsageError(f"{args.command} requires --q")
    if args.q < 2:
        raise UsageError("--q must be at least 2")
    return args.q


def cmd_count(args, c: SimplicialComplex, limits: dict) -> dict:
    q = _need_q(args)
    method = args.method or "ie"
    out: dict = {"complex": args.complex, "q": q, "method": method}
    if method != "all":
        if method == "brute":
            res = brute_force_count(c, q, work_limit=limits["work"], threads=limits["threads"])
        elif method == "ie":
            res = inclusion_exclusion_count(c, q, work_limit=limits["work"])
        else:
            p = flow_polynomial(c, limits["ground"])
            out["certified"] = is_prime(q) and q > p.threshold
            out["count"] = p(q)
            return out
        out["count"] = res.count
        return out

    counts = {}
    skipped = {}
    counts["brute"] = brute_force_count(c, q, work_limit=limits["work"], threads=limits["threads"]).count
    counts["incl-excl"] = inclusion_exclusion_count(c, q, work_limit=limits["work"]).count
    p = flow_polynomial(c, limits["ground"])
    if is_prime(q) and q > p.threshold:
        counts["tutte"] = p(q)
    else:
        skipped["tutte"] = f"q={q} is not a prime above the safe threshold {p.threshold}"
    out["counts"] = counts
    if skipped:
        out["skipped"] = skipped
    if len(set(counts.values())) != 1:
        raise MethodDisagreement(f"methods disagree at q={q}: {counts}")
    out["count"] = counts["brute"]
    return out


def cmd_enumerate(args, c, limits) -> list[str]:
    q = _need_q(args)
    res = brute_force_count(c, q, enumerate_flows=True, work_limit=limits["work"])
    return [",".join(map(str, v)) for v in res.flows]


def cmd_verify(args, c, limits) -> dict:
    q = _need_q(args)
    if not args.flow:
        raise UsageError("verify requires --flow")
    try:
        values = [int(x) for x in args.flow.split(",")]
    except ValueError:
        raise UsageError(f"--flow must be comma-separated integers, got {args.flow!r}") from None
    rep = verify_flow(c, q, values)
    return {
        "complex": args.complex,
        "q": q,
        "facets": _facet_labels(c),
        "flow": values,
        "ok": rep.ok,
        "bad_ridges": [face_label(r) for r in rep.bad_ridges],
        "zero_facets": [face_label(f) for f in rep.zero_facets],
    }


def cmd_poly(args, c, limits) -> dict:
    p = flow_polynomial(c, limits["ground"])
    return {
        "complex": args.complex,
        "coefficients": list(p.coefficients),
        "polynomial": p.to_string(),
        "degree": p.degree,
        "betti_top": betti_top(c),
        "threshold": p.threshold,
        "threshold_exact": p.threshold_exact,
        "dimension_bound": dimension_bound(c.dimension),
    }


def cmd_tutte(args, c, limits) -> dict:
    bm = boundary_matrix(c)
    t = tutte(column_matroid(bm.matrix, bm.cols), limits["ground"])
    return {
        "complex": args.complex,
        "tutte": [{"x_deg": i, "y_deg": j, "coefficient": a} for i, j, a in t.to_records()],
        "polynomial": t.to_string(),
    }


def cmd_fit(args, c, limits) -> dict:
    beta = betti_top(c)
    max_degree = args.max_degree if args.max_degree is not None else beta + 1
    qs = default_sample_range(args.max_period, max_degree)
    if args.q_max is not None:
        qs = range(2, args.q_max + 1)
    profile = kernel_profile(c, limits["work"])
    samples = [(q, profile.count(q)) for q in qs]
    res = fit(samples, args.max_period, max_degree)
    qp = res.quasipolynomial
    out = {
        "complex": args.complex,
        "period": qp.period,
        "constituents": [[format_fraction(a) for a in p] or [0] for p in qp.constituents],
        "samples_used": res.samples_used,
        "verified_points": res.verified_points,
        "minimal": is_minimal(qp, samples, max_degree),
    }
    if len(c.facets) <= limits["ground"]:
        p = flow_polynomial(c, limits["ground"])
        rep = coprime_agreement(qp, p, [q for q, _ in samples])
        out["coprime_agreement"] = {"ok": rep.ok, "checked": len(rep.checked), "mismatches": [q for q, _, _ in rep.mismatches]}
    return out


def cmd_homology(args, c, limits) -> dict:
    rank, torsion = top_homology_Z(c)
    out = {"complex": args.complex, "dimension": c.dimension, "betti_top": rank, "H_top_Z": {"rank": rank, "torsion": torsion}}
    if args.q is not None:
        cyc = top_homology_mod_q(c, _need_q(args))
        out["H_top_mod_q"] = {"q": cyc.q, "cycles": cyc.count, "dimension": cyc.dimension}
    return out


def cmd_classify(args, c, limits) -> dict:
    mc = classify_manifold(c)
    out = {"complex": args.complex, **mc.as_dict(), "proposition_flow_formula": flow_formula(mc)}
    out["note"] = "closed connected pseudomanifold; link conditions of a genuine manifold are not checked"
    return out


def cmd_matrix(args, c, limits):
    if args.cone_vertex is not None:
        relabelled, mapping = relabel_to_max(c, args.cone_vertex)
        bm, desc = cone_ordering(relabelled, mapping[args.cone_vertex])
        extra = {
            "vertex": args.cone_vertex,
            "relabel": {str(k): v for k, v in mapping.items() if k != v},
            "blocks": {
                name: [getattr(desc, name).start, getattr(desc, name).stop]
                for name in ("with_v", "in_link", "rest", "star", "away")
            },
        }
    else:
        bm, extra = boundary_matrix(c), {}
    if args.dump_matrix:
        return bm.dump()
    return {
        "complex": args.complex,
        "rows": [face_label(r) for r in bm.rows],
        "cols": [face_label(f) for f in bm.cols],
        "entries": [list(r) for r in bm.entries],
        **extra,
    }


HANDLERS = {
    "count": cmd_count,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
    "poly": cmd_poly,
    "tutte": cmd_tutte,
    "fit": cmd_fit,
    "homology": cmd_homology,
    "classify": cmd_classify,
    "matrix": cmd_matrix,
}


def _render_table(payload: dict) -> str:
    width = max(len(k) for k in payload) if payload else 0
    lines = []
    for k, v in payload.items():
        text = v if isinstance(v, str) else json.dumps(v)
        lines.append(f"{k.ljust(width)}  {text}")
    return "\n".join(lines) + "\n"


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        limits = {
            "work": args.work_limit if args.work_limit is not None else _env_int("SFLOWS_WORK_LIMIT", DEFAULT_WORK_LIMIT),
            "threads": args.threads if args.threads is not None else _env_int("SFLOWS_THREADS", 1),
            "ground": args.ground_limit,
        }
        start = time.perf_counter()
        c = _load(args.complex)
        result = HANDLERS[args.command](args, c, limits)
    except UsageError as exc:
        print(f"sflows: error: {exc}", file=stderr)
        return 2
    except FlowError as exc:
        print(json.dumps(exc.to_dict()), file=stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(json.dumps({"error": "IO_ERROR" if isinstance(exc, OSError) else "VALUE_ERROR", "message": str(exc)}), file=stderr)
        return 1

    if isinstance(result, list):
        stdout.write("".join(line + "\n" for line in result))
    elif isinstance(result, str):
        stdout.write(result)
    else:
        if not args.no_timing:
            result["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
        if args.output == "table":
            stdout.write(_render_table(result))
        else:
            stdout.write(json.dumps(result) + "\n")
    return 0


def main() -> None:
    sys.exit(run())
