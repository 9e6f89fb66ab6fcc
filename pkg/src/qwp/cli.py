"""``qwp`` command-line front end.

Subcommands::

    qwp validate {predicate,density,channel} PATH [--mode] [--tol]
    qwp wp CHANNEL PREDICATE --out PATH [--mode] [--tol]
    qwp check-commute CHANNEL M N [--out PATH] [--mode] [--tol]
    qwp example {ex1,ex2,prop7,prop8} [--n N] --out DIR

Exit codes: 0 ok / commutes, 1 I/O or parse error, 2 validation failure,
3 dimension mismatch or invalid ``--n``, 4 does not commute, 5 the four
commutativity procedures disagree (should never happen).

Summaries go to stdout, diagnostics to stderr, JSON only to ``--out`` paths.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import channels, commutativity, predicates, sysenv
from .errors import VALIDATION_ERRORS, DimensionMismatch, InvalidDimension, QWPError
from .examples import INSTANCES
from .linalg import DEFAULT_TOL

EXIT_OK = 0
EXIT_IO = 1
EXIT_INVALID = 2
EXIT_DIMENSION = 3
EXIT_NOT_COMMUTING = 4
EXIT_DISAGREE = 5


class FormatError(ValueError):
    """A file parsed as JSON but does not follow the expected schema."""


# --- serialization ---------------------------------------------------------


def _reject_constant(name):
    raise FormatError(f"non-finite number {name} in input")


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _complex(item) -> complex:
    if not (isinstance(item, list) and len(item) == 2):
        raise FormatError(f"expected [re, im] pair, got {item!r}")
    re, im = item
    if isinstance(re, bool) or isinstance(im, bool) or not all(
        isinstance(v, (int, float)) for v in (re, im)
    ):
        raise FormatError(f"expected numbers in [re, im] pair, got {item!r}")
    if not (math.isfinite(re) and math.isfinite(im)):
        raise FormatError("non-finite entry")
    return complex(re, im)


def entries_to_list(A: np.ndarray) -> list[list[float]]:
    return [_pair(z) for z in np.asarray(A).reshape(-1)]


def entries_to_matrix(entries, dim: int) -> np.ndarray:
    if not isinstance(entries, list) or len(entries) != dim * dim:
        raise FormatError(f"expected {dim * dim} entries")
    return np.array([_complex(e) for e in entries], dtype=np.complex128).reshape(dim, dim)


def _dim(doc, key="dim") -> int:
    if not isinstance(doc, dict):
        raise FormatError("expected a JSON object")
    d = doc.get(key)
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise FormatError(f"{key!r} must be a positive integer")
    return d


def matrix_to_doc(A: np.ndarray) -> dict:
    A = np.asarray(A)
    return {"dim": int(A.shape[0]), "entries": entries_to_list(A)}


def doc_to_matrix(doc) -> np.ndarray:
    dim = _dim(doc)
    return entries_to_matrix(doc.get("entries"), dim)


def channel_to_doc(channel: channels.KrausChannel) -> dict:
    return {"dim": channel.dim, "kraus": [entries_to_list(E) for E in channel.operators]}


def model_to_doc(model: sysenv.SystemEnvironmentModel) -> dict:
    return {
        "dim": model.sys_dim,
        "sysenv": {
            "sys_dim": model.sys_dim,
            "env_dim": model.env_dim,
            "U": entries_to_list(model.U),
            "P": entries_to_list(model.P),
            "e0": [_pair(z) for z in model.e0],
        },
    }


def doc_to_channel(doc, tol: float = DEFAULT_TOL):
    """Parse a channel document; returns a KrausChannel or SystemEnvironmentModel."""
    if not isinstance(doc, dict):
        raise FormatError("channel file must hold a JSON object")
    has_kraus, has_se = "kraus" in doc, "sysenv" in doc
    if has_kraus == has_se:
        raise FormatError('channel file needs exactly one of "kraus" or "sysenv"')
    if has_kraus:
        dim = _dim(doc)
        ops = doc["kraus"]
        if not isinstance(ops, list):
            raise FormatError('"kraus" must be a list')
        return channels.validate_channel([entries_to_matrix(e, dim) for e in ops], tol)
    se = doc["sysenv"]
    s, k = _dim(se, "sys_dim"), _dim(se, "env_dim")
    if "dim" in doc and _dim(doc) != s:
        raise DimensionMismatch('"dim" disagrees with "sys_dim"')
    e0 = se.get("e0")
    if not isinstance(e0, list) or len(e0) != k:
        raise FormatError(f'"e0" must hold {k} entries')
    return sysenv.make_model(
        entries_to_matrix(se.get("U"), s * k),
        entries_to_matrix(se.get("P"), s * k),
        [_complex(z) for z in e0],
        s,
        k,
        tol,
    )


def witness_to_doc(w: commutativity.SimDiagWitness | None):
    if w is None:
        return None
    return {
        "unitary": matrix_to_doc(w.unitary),
        "lambda": [float(x) for x in w.lam],
        "mu": [float(x) for x in w.mu],
    }


def report_to_doc(report: commutativity.CommutativityReport) -> dict:
    return {
        "verdicts": report.verdicts,
        "commutator_norm": report.commutator_norm,
        "trace_gap": report.trace_gap,
        "witness": witness_to_doc(report.witness),
        "agree": report.agree,
        "commutes": report.commutes,
        "tol": report.tol,
        "failure": report.failure,
    }


def read_json(path) -> object:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh, parse_constant=_reject_constant)


def write_json(path, doc) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    # float repr is the shortest string that round-trips, at most 17 digits
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, allow_nan=False)
        fh.write("\n")


# --- commands --------------------------------------------------------------


def _wp(program, M: predicates.QuantumPredicate, tol: float) -> predicates.QuantumPredicate:
    if isinstance(program, sysenv.SystemEnvironmentModel):
        return sysenv.se_wp(program, M, tol)
    return channels.wp(program, M, tol)


def _load_predicate(path, mode, tol):
    return predicates.validate_predicate(doc_to_matrix(read_json(path)), mode, tol)


def cmd_validate(args) -> int:
    doc = read_json(args.path)
    if args.kind == "channel":
        program = doc_to_channel(doc, args.tol)
        what = "system-environment model" if isinstance(program, sysenv.SystemEnvironmentModel) else (
            f"Kraus channel with {len(program)} operator(s)"
        )
    elif args.kind == "density":
        predicates.validate_density(doc_to_matrix(doc), args.tol)
        what = "density"
    else:
        predicates.validate_predicate(doc_to_matrix(doc), args.mode, args.tol)
        what = f"{args.mode} predicate"
    print(f"valid: {what}")
    return EXIT_OK


def cmd_wp(args) -> int:
    program = doc_to_channel(read_json(args.channel), args.tol)
    M = _load_predicate(args.predicate, args.mode, args.tol)
    result = _wp(program, M, args.tol)
    write_json(args.out, matrix_to_doc(result.matrix))
    print(f"wp written to {args.out}")
    return EXIT_OK


def cmd_check_commute(args) -> int:
    program = doc_to_channel(read_json(args.channel), args.tol)
    M = _load_predicate(args.M, args.mode, args.tol)
    N = _load_predicate(args.N, args.mode, args.tol)
    if M.dim != N.dim:
        raise DimensionMismatch("M and N have different dimensions")
    A, B = _wp(program, M, args.tol), _wp(program, N, args.tol)
    report = commutativity.check_all(A.matrix, B.matrix, args.tol)
    if args.out:
        write_json(args.out, report_to_doc(report))
    verdicts = " ".join(f"{k}={'yes' if v else 'no'}" for k, v in report.verdicts.items())
    if not report.agree:
        print(f"DISAGREE {verdicts}")
        return EXIT_DISAGREE
    print(f"{'commute' if report.commutes else 'do-not-commute'} "
          f"commutator_norm={report.commutator_norm:.3e} {verdicts}")
    return EXIT_OK if report.commutes else EXIT_NOT_COMMUTING


def cmd_example(args) -> int:
    if args.n < 2:
        raise InvalidDimension("--n must be at least 2")
    inst = INSTANCES[args.name](args.n)
    out = Path(args.out)
    write_json(out / "M.json", matrix_to_doc(inst.M.matrix))
    write_json(out / "N.json", matrix_to_doc(inst.N.matrix))
    write_json(out / "channel.json", channel_to_doc(inst.channel))
    write_json(out / "expected.json", {
        "name": inst.name,
        "dim": inst.dim,
        "N_mode": inst.N.mode,
        "expected_inputs_commute": inst.expected_inputs_commute,
        "expected_wps_commute": inst.expected_wps_commute,
    })
    print(f"{inst.name}: wrote M.json N.json channel.json expected.json to {out}")
    return EXIT_OK


# --- entry point -----------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors count as parse errors; exit 2 is reserved for validation
        self.print_usage(sys.stderr)
        self.exit(EXIT_IO, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qwp", description="Quantum weakest preconditions and their commutativity.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, mode_default="strict"):
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        p.add_argument("--mode", choices=predicates.MODES, default=mode_default)

    p = sub.add_parser("validate", help="check a predicate, density or channel file")
    p.add_argument("kind", choices=["predicate", "density", "channel"])
    p.add_argument("path")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("wp", help="compute a weakest precondition")
    p.add_argument("channel")
    p.add_argument("predicate")
    p.add_argument("--out", required=True)
    common(p)
    p.set_defaults(func=cmd_wp)

    p = sub.add_parser("check-commute", help="do wp(E)(M) and wp(E)(N) commute?")
    p.add_argument("channel")
    p.add_argument("M")
    p.add_argument("N")
    p.add_argument("--out")
    # the commutativity theory only needs Hermitian inputs
    common(p, mode_default="observable")
    p.set_defaults(func=cmd_check_commute)

    p = sub.add_parser("example", help="write one of the built-in instances")
    p.add_argument("name", choices=sorted(INSTANCES))
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_example)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DimensionMismatch, InvalidDimension) as exc:
        print(f"{exc.reason}: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except VALIDATION_ERRORS as exc:
        print(f"invalid: {exc.reason}")
        print(str(exc), file=sys.stderr)
        return EXIT_INVALID
    except (OSError, json.JSONDecodeError, FormatError, ValueError, QWPError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
