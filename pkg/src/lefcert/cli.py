"""Command-line front end: run a task file, emit a deterministic JSON report.

Exit status is 0 exactly when every verdict-bearing task holds and no
task errored, so the tool doubles as an oracle in shell pipelines.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import certify, discriminant, polymatroid
from .generate import GeneratorSpec, generate_psd
from .linalg import HermitianMatrix
from .serialize import (
    certificate_to_json,
    matrix_from_json,
    matrix_to_json,
    rank_function_from_json,
    rank_function_to_json,
    rat_to_str,
)

SCHEMA_VERSION = 1


class TaskError(ValueError):
    pass


def _matrices(ctx, names):
    missing = [name for name in names if name not in ctx["matrices"]]
    if missing:
        raise TaskError(f"undefined matrix name(s): {', '.join(missing)}")
    return [ctx["matrices"][name] for name in names]


def _task_nd(ctx, task):
    (mat,) = _matrices(ctx, [task["matrix"]])
    if not mat.is_psd():
        raise TaskError("nd is defined here for PSD matrices only")
    return {"nd": mat.rank()}


def _task_psd_check(ctx, task):
    (mat,) = _matrices(ctx, [task["matrix"]])
    return {"psd": mat.is_psd()}


def _task_mixed_disc(ctx, task):
    mats = _matrices(ctx, task["matrices"])
    return {"value": rat_to_str(discriminant.mixed_discriminant(mats))}


def _task_intersection(ctx, task):
    mats = _matrices(ctx, task["matrices"])
    return {"value": rat_to_str(discriminant.intersection_number(mats))}


def _instance(ctx, task, need_eta=False):
    forms = _matrices(ctx, task["forms"])
    eta = None
    if "eta" in task:
        (eta,) = _matrices(ctx, [task["eta"]])
    if need_eta and eta is None:
        raise TaskError("task requires an eta matrix")
    return certify.HLInstance(ctx["n"], int(task["p"]), int(task["q"]),
                              tuple(forms), eta=eta)


def _task_hl_certify(ctx, task):
    inst = _instance(ctx, task)
    cert = certify.criterion_hl(inst)
    direct = certify.direct_hl(inst)
    if cert.verdict != direct.verdict:
        raise TaskError("criterion and direct verdicts disagree (internal error)")
    out = certificate_to_json(cert)
    if direct.kernel_witness is not None:
        out.update(certificate_to_json(direct))
        out.update({"failing_subset": sorted(cert.failing_subset)})
        if cert.rank_deficit is not None:
            out["rank_deficit"] = cert.rank_deficit
    return out


def _task_hr_certify(ctx, task):
    inst = _instance(ctx, task, need_eta=True)
    cert, space = certify.hr_certify(inst)
    out = certificate_to_json(cert)
    out["primitive_dimension"] = len(space.basis)
    return out


def _task_signature(ctx, task):
    forms = _matrices(ctx, task.get("forms", []))
    sig = certify.lorentzian_signature(forms, n=ctx["n"])
    return {"signature": list(sig)}


def _task_lefschetz(ctx, task):
    inst = _instance(ctx, task, need_eta=True)
    _, _, dims = certify.lefschetz_decomposition(inst)
    return {"dims": list(dims)}


def _task_polymatroid_axioms(ctx, task):
    if "table" in task:
        rank = rank_function_from_json(task["table"])
    else:
        mats = _matrices(ctx, task["matrices"])
        rank = polymatroid.rank_from_matrices(mats, offset=int(task.get("offset", 0)))
    report = polymatroid.check_axioms(rank)
    return {
        "submodular": report.submodular,
        "monotone": report.monotone,
        "normalized": report.normalized,
        "loopless": report.loopless,
        "is_matroid": report.is_matroid,
        "table": rank_function_to_json(rank),
    }


def _task_enumerate_support(ctx, task):
    rank = rank_function_from_json(task["table"])
    points = polymatroid.multidegree_support(rank, int(task["dim"]))
    return {"points": sorted(list(p) for p in points)}


def _task_hl_support(ctx, task):
    mats = _matrices(ctx, task["matrices"])
    points = polymatroid.hl_support(mats, ctx["n"])
    return {"points": sorted(list(p) for p in points)}


def _task_generate_psd(ctx, task):
    seed = task.get("seed", ctx["seed"])
    if seed is None:
        raise TaskError("generate-psd needs a seed (task field or --seed)")
    spec = GeneratorSpec(
        seed=int(seed),
        n=ctx["n"],
        rank_profile=tuple(task["rank_profile"]),
        entry_bound=int(task.get("entry_bound", 2)),
    )
    mats = generate_psd(spec)
    names = task.get("names", [f"gen{i}" for i in range(len(mats))])
    if len(names) != len(mats):
        raise TaskError("names length does not match rank_profile length")
    for name, mat in zip(names, mats):
        ctx["matrices"][name] = mat
    return {"generated": [{"name": nm, "matrix": matrix_to_json(m)}
                          for nm, m in zip(names, mats)]}


_TASKS = {
    "nd": _task_nd,
    "psd-check": _task_psd_check,
    "mixed-disc": _task_mixed_disc,
    "intersection": _task_intersection,
    "hl-certify": _task_hl_certify,
    "hr-certify": _task_hr_certify,
    "signature": _task_signature,
    "lefschetz": _task_lefschetz,
    "polymatroid-axioms": _task_polymatroid_axioms,
    "enumerate-support": _task_enumerate_support,
    "hl-support": _task_hl_support,
    "generate-psd": _task_generate_psd,
}


def run_instance(doc, seed=None):
    """Execute the task list; returns (report_dict, all_ok)."""
    if doc.get("schema", 1) != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {doc.get('schema')}")
    n = int(doc["n"]) if "n" in doc else None
    matrices = {}
    for name, obj in doc.get("matrices", {}).items():
        mat = matrix_from_json(obj)
        if n is not None and mat.n != n:
            raise ValueError(f"matrix {name!r} is not {n}x{n}")
        matrices[name] = mat
    ctx = {"n": n, "matrices": matrices, "seed": seed}
    results = {}
    ok = True
    for idx, task in enumerate(doc.get("tasks", [])):
        kind = task.get("kind")
        handler = _TASKS.get(kind)
        if handler is None:
            results[str(idx)] = {"error": f"unknown task kind {kind!r}"}
            ok = False
            continue
        try:
            result = handler(ctx, task)
        except (TaskError, ValueError, KeyError, certify.PreconditionError) as exc:
            results[str(idx)] = {"error": str(exc)}
            ok = False
            continue
        results[str(idx)] = result
        if result.get("verdict") == "fails":
            ok = False
        if result.get("psd") is False:
            ok = False
    return {"schema": SCHEMA_VERSION, "results": results}, ok


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="lefcert",
        description="Exact Lefschetz/Hodge-Riemann certification for Hermitian form families",
    )
    parser.add_argument("--input", required=True, help="instance file (UTF-8 JSON)")
    parser.add_argument("--output", default="-", help="report path, or - for stdout")
    parser.add_argument("--seed", type=int, default=None,
                        help="default seed for generate-psd tasks")
    parser.add_argument("--pretty", action="store_true", help="indent the JSON report")
    args = parser.parse_args(argv)

    try:
        with open(args.input, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        print(f"parse error in {args.input}: line {exc.lineno}, column {exc.colno}: {exc.msg}",
              file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"cannot read {args.input}: {exc}", file=sys.stderr)
        return 2

    try:
        report, ok = run_instance(doc, seed=args.seed)
    except ValueError as exc:
        print(f"invalid instance file: {exc}", file=sys.stderr)
        return 2

    if args.pretty:
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    else:
        text = json.dumps(report, separators=(",", ":"), sort_keys=True) + "\n"
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
