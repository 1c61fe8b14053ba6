"""Batch front-end: analyze code files, emit family instances, verify circuits.

Exit codes: 0 success, 2 parse error, 3 budget-degraded results present,
4 oracle inconsistency (a computed hierarchy level above a certified bound,
which would indicate a bug).

Reports are deterministic byte-for-byte for fixed inputs and --seed; every
number is an exact rational rendered as "p/q".  Wall-clock timings go into
the JSON only with --timings.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction

import numpy as np

from . import __version__
from .bounds import (
    asymptotic_level_bound,
    cleaning_level_bound,
    multiblock_level_bound,
    permuting_level_bound,
    shallow_level_bound,
    toffoli_excluded,
    transversal_level_bound,
)
from .codes import (
    CircuitShape,
    StabilizerCode,
    dumps_code_file,
    load_code_file,
)
from .errors import (
    BudgetExceededError,
    CodeFileError,
    DisjointnessError,
    OracleSizeError,
)
from .families import FAMILY_BUILDERS, FamilyInstance, verify_declared
from .metrics import (
    DEFAULT_BUDGET,
    DEFAULT_C_MAX,
    MetricsReport,
    compute_metrics,
    frac_str,
    loads_witness_file,
)
from .partition import Partition, parse_partition_text

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DEGRADED = 3
EXIT_ORACLE = 4


def _generator_hash(code: StabilizerCode) -> str:
    payload = "\n".join(code.generator_strings).encode()
    return hashlib.sha256(payload).hexdigest()[:16]


def _bounds_for(
    report: MetricsReport,
    code: StabilizerCode,
    partition: Partition,
    args,
) -> list:
    d_min_lo = report.d_min.lo
    d_max_hi = report.d_max.hi
    delta_lo = max(report.delta.lo, Fraction(1))
    results = [
        transversal_level_bound(d_min_lo, d_max_hi, delta_lo),
        cleaning_level_bound(d_min_lo, d_max_hi),
    ]
    if args.multiblock is not None:
        results.append(
            multiblock_level_bound(
                d_min_lo, d_max_hi, delta_lo,
                args.multiblock, partition.num_parts, code.coset_size,
            )
        )
    if args.shallow is not None:
        q, h = args.shallow
        results.append(
            shallow_level_bound(d_min_lo, d_max_hi, delta_lo, CircuitShape(q, h))
        )
    if args.permuting:
        results.append(
            permuting_level_bound(
                d_min_lo, d_max_hi, delta_lo,
                1, partition.num_parts, code.coset_size,
            )
        )
    return results


def _oracle_check(code: StabilizerCode, partition: Partition, bound, seed: int):
    """Sample codespace-preserving transversal circuits and compare levels."""
    from . import oracle

    rng = np.random.default_rng(seed)
    layer_names = ["I", "H", "S", "T"]
    sampled = []
    for name in layer_names:
        gate = oracle._NAMED_GATES[name]
        circ = oracle.DenseCircuit.transversal_layer(partition, code.m, gate)
        if oracle.logical_action(code, circ) is not oracle.NOT_LOGICAL:
            sampled.append((f"{name}-layer", circ))
    labels = [cls.label for cls in code.logical_labels()]
    for _ in range(20):
        label = labels[rng.integers(len(labels))]
        from .codes import LogicalClass

        ops = list(code.enumerate_class(LogicalClass(label)))
        op = ops[rng.integers(len(ops))]
        circ = oracle.DenseCircuit.from_pauli(op, partition)
        sampled.append(("pauli-rep", circ))
    worst = None
    for name, circ in sampled:
        level = oracle.hierarchy_level(code, circ)
        if level is None:
            continue
        if bound.level is not None and level > bound.level:
            return {"consistent": False, "violation": name, "level": level,
                    "bound": bound.level, "samples": len(sampled)}
        worst = max(worst or 0, level)
    return {"consistent": True, "samples": len(sampled), "max_level": worst,
            "bound": bound.level}


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    print("\n".join(text_lines))
    if args.json:
        blob = json.dumps(payload, indent=2, sort_keys=True)
        if args.json == "-":
            print(blob)
        else:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(blob + "\n")


def _report_payload(code, partition, report, bound_list, oracle_result, args, timings):
    payload = {
        "schema": 1,
        "tool": {"name": "disjointness", "version": __version__},
        "code": {
            "n": code.n,
            "k": code.k,
            "m": code.m,
            "generator_hash": _generator_hash(code),
        },
        "partition": {
            "num_parts": partition.num_parts,
            "part_sizes": [len(p) for p in partition.parts],
        },
        "metrics": report.to_json_dict(include_witnesses=args.witness_output),
        "bounds": [b.to_json_dict() for b in bound_list],
        "toffoli_excluded": bool(toffoli_excluded(int(report.d_min.lo))),
        "oracle": oracle_result,
        "timings": timings if args.timings else None,
    }
    return payload


def _summary_lines(code, partition, report, bound_list, oracle_result) -> list[str]:
    lines = [
        f"code [[{code.n},{code.k}]] over Z_{code.m}, "
        f"{partition.num_parts} parts, generator hash {_generator_hash(code)}",
        f"d_min = {_iv_str(report.d_min)}   d_max = {_iv_str(report.d_max)}",
        f"disjointness = {_iv_str(report.delta)}"
        + (f" (achieved at c = {report.achieving_c})" if report.achieving_c else ""),
    ]
    for b in bound_list:
        lvl = "none" if b.level is None else str(b.level)
        lines.append(f"level bound [{b.theorem}]: M = {lvl}")
    verdict = toffoli_excluded(int(report.d_min.lo))
    lines.append(f"transversal Toffoli excluded: {verdict.excluded}")
    if oracle_result is not None:
        lines.append(
            "oracle: consistent" if oracle_result["consistent"]
            else "oracle: INCONSISTENT (bound violated)"
        )
    if report.degraded:
        lines.append("note: some values are budget-degraded (witness/declared backed)")
    return lines


def _iv_str(iv) -> str:
    if iv.exact:
        return f"{frac_str(iv.lo)} [{iv.method}]"
    return f"[{frac_str(iv.lo)}, {frac_str(iv.hi)}] [{iv.method}]"


def _cmd_analyze(args) -> int:
    t0 = time.monotonic()
    try:
        code, partition = load_code_file(args.code_file)
    except CodeFileError as exc:
        print(f"parse error in {args.code_file}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if args.partition:
        try:
            with open(args.partition, "r", encoding="utf-8") as fh:
                text = fh.read()
            body = "\n".join(
                ln.split("#", 1)[0] for ln in text.splitlines()
            ).strip()
            if body.startswith("partition"):
                body = body.split(None, 1)[1]
            partition = parse_partition_text(body, code.n)
        except (OSError, CodeFileError) as exc:
            print(f"parse error in {args.partition}: {exc}", file=sys.stderr)
            return EXIT_PARSE
    if partition is None:
        partition = Partition.single_qudit(code.n)
    witnesses = []
    if args.witness:
        try:
            with open(args.witness, "r", encoding="utf-8") as fh:
                witnesses = loads_witness_file(fh.read(), code, partition)
        except (OSError, DisjointnessError) as exc:
            print(f"witness error: {exc}", file=sys.stderr)
            return EXIT_PARSE
    return _analyze_common(args, code, partition, witnesses=witnesses, declared=None,
                           t0=t0)


def _analyze_common(args, code, partition, witnesses, declared, t0) -> int:
    timings = {}
    t = time.monotonic()
    report = compute_metrics(
        code, partition,
        budget=args.budget, c_max=args.c_max,
        declared=declared, witnesses=witnesses,
    )
    timings["metrics_s"] = round(time.monotonic() - t, 3)
    bound_list = _bounds_for(report, code, partition, args)
    if args.multiblock is not None and args.permuting:
        bound_list.append(
            permuting_level_bound(
                report.d_min.lo, report.d_max.hi, max(report.delta.lo, Fraction(1)),
                args.multiblock, partition.num_parts, code.coset_size,
            )
        )
    oracle_result = None
    if args.verify_oracle:
        try:
            t = time.monotonic()
            oracle_result = _oracle_check(code, partition, bound_list[0], args.seed)
            timings["oracle_s"] = round(time.monotonic() - t, 3)
        except OracleSizeError as exc:
            oracle_result = {"consistent": True, "skipped": str(exc)}
    timings["total_s"] = round(time.monotonic() - t0, 3)
    payload = _report_payload(code, partition, report, bound_list, oracle_result,
                              args, timings)
    _emit(args, payload, _summary_lines(code, partition, report, bound_list, oracle_result))
    if oracle_result is not None and not oracle_result.get("consistent", True):
        return EXIT_ORACLE
    if report.degraded:
        return EXIT_DEGRADED
    return EXIT_OK


def _build_family(args) -> FamilyInstance:
    name = args.name
    if name not in FAMILY_BUILDERS:
        raise ValueError(
            f"unknown family {name!r}; choose from {sorted(FAMILY_BUILDERS)}"
        )
    builder = FAMILY_BUILDERS[name]
    if name == "reed-muller":
        if args.D is None:
            raise ValueError("reed-muller needs --D")
        return builder(args.D)
    if name == "surface":
        if args.l is None:
            raise ValueError("surface needs --l")
        return builder(args.l)
    if name == "bacon-shor":
        if args.l is None:
            raise ValueError("bacon-shor needs --l (and optionally --a)")
        a = Fraction(args.a) if args.a else Fraction(1)
        return builder(args.l, a)
    if name == "c105":
        return builder(args.partition or "columns")
    return builder()


def _cmd_family(args) -> int:
    t0 = time.monotonic()
    try:
        instance = _build_family(args)
    except (ValueError, DisjointnessError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if args.verify_declared:
        summary = verify_declared(instance, budget=args.budget)
        print(f"declared-value verification: {summary}")
    text = dumps_code_file(instance.code, instance.partition)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.output}")
    elif not args.analyze:
        print(text, end="")
    if args.analyze:
        declared = instance.declared
        return _analyze_common(
            args, instance.code, instance.partition,
            witnesses=(), declared=declared, t0=t0,
        )
    return EXIT_OK


def _cmd_verify(args) -> int:
    from . import oracle

    try:
        code, partition = load_code_file(args.code_file)
    except CodeFileError as exc:
        print(f"parse error in {args.code_file}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if partition is None:
        partition = Partition.single_qudit(code.n)
    try:
        with open(args.circuit_file, "r", encoding="utf-8") as fh:
            circ = oracle.loads_circuit_file(fh.read(), partition, code.m)
    except (OSError, CodeFileError) as exc:
        print(f"parse error in {args.circuit_file}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        action = oracle.logical_action(code, circ)
    except OracleSizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if action is oracle.NOT_LOGICAL:
        print("verdict: not-logical (the circuit does not preserve the codespace)")
        return EXIT_OK
    level = oracle.hierarchy_level(code, circ)
    report = compute_metrics(code, partition, budget=args.budget, c_max=args.c_max)
    bound = transversal_level_bound(
        report.d_min.lo, report.d_max.hi, max(report.delta.lo, Fraction(1))
    )
    lines = [
        "verdict: logical",
        "logical action (rows = codespace basis):",
        np.array_str(np.round(action, 6)),
        f"hierarchy level: {level if level is not None else '> cap'}",
        f"transversal bound: M = {bound.level}",
    ]
    consistent = (
        level is None or bound.level is None
        or not circ.shape.is_transversal
        or level <= bound.level
    )
    lines.append("bound consistency: " + ("ok" if consistent else "VIOLATED"))
    print("\n".join(lines))
    return EXIT_OK if consistent else EXIT_ORACLE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="disjointness",
        description="Distance/disjointness metrics and logical-gate level bounds "
        "for qudit stabilizer codes.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                       help="coset enumeration budget (elements)")
        p.add_argument("--c-max", type=int, default=DEFAULT_C_MAX, dest="c_max",
                       help="largest c in the disjointness sweep")
        p.add_argument("--json", help="write the JSON report here ('-' for stdout)")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for oracle sampling")
        p.add_argument("--timings", action="store_true",
                       help="include wall times in the JSON report")
        p.add_argument("--witness-output", action="store_true",
                       help="include witness sets in the JSON report")
        p.add_argument("--multiblock", type=int, metavar="R",
                       help="also evaluate the R-codeblock bound")
        p.add_argument("--shallow", type=int, nargs=2, metavar=("Q", "H"),
                       help="also evaluate the q-local depth-h bound")
        p.add_argument("--permuting", action="store_true",
                       help="also evaluate the permuting-transversal bound")
        p.add_argument("--verify-oracle", action="store_true",
                       help="cross-check bounds against sampled dense circuits")

    pa = sub.add_parser("analyze", help="analyze a code file")
    pa.add_argument("code_file")
    pa.add_argument("--partition", help="partition file overriding the code file's")
    pa.add_argument("--witness", help="witness file with declared c-disjoint sets")
    common(pa)
    pa.set_defaults(func=_cmd_analyze)

    pf = sub.add_parser("family", help="emit and optionally analyze a family instance")
    pf.add_argument("name", choices=sorted(FAMILY_BUILDERS))
    pf.add_argument("--D", type=int, help="reed-muller parameter")
    pf.add_argument("--l", type=int, help="lattice size for surface/bacon-shor")
    pf.add_argument("--a", help="aspect exponent for bacon-shor (rational, e.g. 3/2)")
    pf.add_argument("--partition", choices=["columns", "rows"],
                    help="partition choice for c105")
    pf.add_argument("--analyze", action="store_true", help="run the full analysis")
    pf.add_argument("--verify-declared", action="store_true", dest="verify_declared",
                    help="re-verify declared values before reporting")
    pf.add_argument("-o", "--output", help="write the code file here")
    common(pf)
    pf.set_defaults(func=_cmd_family)

    pv = sub.add_parser("verify", help="oracle verdict for a circuit on a code")
    pv.add_argument("code_file")
    pv.add_argument("circuit_file")
    pv.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    pv.add_argument("--c-max", type=int, default=DEFAULT_C_MAX, dest="c_max")
    pv.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_DEGRADED
    except DisjointnessError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
