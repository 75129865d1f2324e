"""Command-line front end: subcommands map 1:1 onto library operations.

Output is a JSON document on stdout (CSV for table-shaped results with
--format csv).  Every document embeds the tool version, coefficient field,
seed and certification flags, and identical invocations are byte-identical.
Exit codes: 0 success, 1 mathematical validation failure, 2 input or parse
error.
"""

from __future__ import annotations

import io
import json
import os
import sys

import click

from . import __version__
from .equivalence import (
    check_acyclic_tensor,
    check_full_faithfulness,
    check_round_trip,
    cok,
    ext_certificate,
    stabilize,
)
from .exceptional import (
    check_collection,
    check_exceptional,
    dual_collection,
    q_algebra,
    trichotomy_report,
)
from .fields import FieldError
from .freemod import GradingError, validate_matrix
from .groebner import GroebnerError, LiftError, minimal_resolution
from .mf import MFError, mf_hom, mf_hom_table, mf_validate
from .modules import (
    ModuleError,
    dsing_hom,
    ext_against_A,
    gorenstein_parameter,
    hilbert_function,
    stable_hom,
    truncate_tail,
)
from .problem import Problem, ProblemError, ProblemValidationError, load_problem
from .rings import ParseError

EXIT_OK = 0
EXIT_MATH = 1
EXIT_INPUT = 2

_INPUT_ERRORS = (
    ProblemError,
    ParseError,
    FieldError,
    GradingError,
    ModuleError,
    MFError,
    GroebnerError,
    LiftError,
    ValueError,
)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("GMF_THREADS", "1")))
    except ValueError:
        return 1


def _envelope(command: str, problem: Problem | None, seed: int | None, result) -> dict:
    doc = {
        "tool": "gmf",
        "version": __version__,
        "command": command,
        "field": problem.field_label() if problem else None,
        "seed": seed,
        "threads": _threads(),
        "result": result,
    }
    return doc


def _print_json(doc: dict):
    click.echo(json.dumps(doc, sort_keys=True, separators=(",", ": "), indent=1))


def _print_csv(header, rows):
    out = io.StringIO()
    out.write(",".join(str(h) for h in header) + "\n")
    for row in rows:
        out.write(",".join(str(c) for c in row) + "\n")
    click.echo(out.getvalue(), nl=False)


def _parse_window(text: str, what: str = "window") -> tuple:
    try:
        lo, _, hi = text.partition(":")
        lo, hi = int(lo), int(hi)
    except ValueError as exc:
        raise ProblemError(f"bad {what} {text!r}, expected lo:hi") from exc
    if hi < lo:
        raise ProblemError(f"empty {what} {text!r}")
    return lo, hi


def _matrix_rows(matrix) -> list:
    return [[str(p) for p in row] for row in matrix.entries]


def _module_json(m) -> dict:
    return {
        "gen_degrees": list(m.gen_degrees),
        "relations": _matrix_rows(m.relations),
        "relation_degrees": list(m.relations.source.gen_degrees),
        "over": "A" if m.over_a else "B",
    }


def _mf_json(x) -> dict:
    return {
        "gen_degrees_1": list(x.module1.gen_degrees),
        "gen_degrees_0": list(x.module0.gen_degrees),
        "p1": _matrix_rows(x.p1),
        "p0": _matrix_rows(x.p0),
    }


def _morphism_json(mor) -> dict:
    return {"f1": _matrix_rows(mor.f1), "f0": _matrix_rows(mor.f0)}


def _object_as_mf(problem: Problem, name: str):
    if name in problem.mfs:
        return problem.mf(name)
    if name in problem.modules:
        return stabilize(problem.module(name)).mf
    raise ProblemError(f"unknown object {name!r}")


class _Run:
    """Wraps a subcommand body with uniform error handling and output."""

    def __init__(self, command: str, fmt: str, seed: int | None = None):
        self.command = command
        self.fmt = fmt
        self.seed = seed

    def finish(self, problem, result, exit_code=EXIT_OK, csv_table=None):
        if self.fmt == "csv":
            if csv_table is None:
                _fail_input(f"command {self.command!r} has no CSV table form")
            _print_csv(*csv_table)
        else:
            _print_json(_envelope(self.command, problem, self.seed, result))
        sys.exit(exit_code)


def _fail_input(message: str):
    _print_json(
        {
            "tool": "gmf",
            "version": __version__,
            "command": None,
            "field": None,
            "seed": None,
            "threads": _threads(),
            "error": message,
        }
    )
    sys.exit(EXIT_INPUT)


def _guarded(fn):
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ProblemValidationError as exc:
            _print_json(
                {
                    "tool": "gmf",
                    "version": __version__,
                    "command": None,
                    "field": None,
                    "seed": None,
                    "threads": _threads(),
                    "error": str(exc),
                    "reports": exc.reports,
                }
            )
            sys.exit(EXIT_MATH)
        except _INPUT_ERRORS as exc:
            _fail_input(str(exc))

    wrapper.__name__ = fn.__name__
    return wrapper


_format_option = click.option(
    "--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True
)
_seed_option = click.option("--seed", type=int, default=1, show_default=True)


@click.group()
@click.version_option(version=__version__, prog_name="gmf")
def main():
    """Exact computations with graded matrix factorizations."""


@main.command()
@click.argument("problem_file")
@click.option("--name", default=None, help="Validate a single named object.")
@_format_option
@_guarded
def validate(problem_file, name, fmt):
    """Check every matrix and factorization in the file."""
    problem = load_problem(problem_file, strict=False)
    run = _Run("validate", fmt)
    reports = {"modules": {}, "mfs": {}}
    ok = True
    for mname, module in problem.modules.items():
        if name and mname != name:
            continue
        rep = validate_matrix(module.relations)
        reports["modules"][mname] = rep
        ok = ok and rep["valid"]
    for fname, x in problem.mfs.items():
        if name and fname != name:
            continue
        rep = mf_validate(x)
        reports["mfs"][fname] = rep
        ok = ok and rep["valid"]
    if name and name not in problem.mfs and name not in problem.modules:
        raise ProblemError(f"unknown object {name!r}")
    reports["valid"] = ok
    run.finish(problem, reports, EXIT_OK if ok else EXIT_MATH)


@main.command("cok")
@click.argument("problem_file")
@click.option("--mf", "mf_name", required=True)
@click.option("--window", default="0:12", show_default=True)
@_format_option
@_guarded
def cok_cmd(problem_file, mf_name, window, fmt):
    """Cokernel module of a factorization."""
    problem = load_problem(problem_file)
    run = _Run("cok", fmt)
    lo, hi = _parse_window(window)
    result = cok(problem.mf(mf_name))
    doc = {
        "module": _module_json(result.module),
        "certificate": result.certificate,
        "hilbert": hilbert_function(result.module, lo, hi),
        "window": [lo, hi],
    }
    run.finish(problem, doc)


@main.command("stabilize")
@click.argument("problem_file")
@click.option("--module", "module_name", required=True)
@_format_option
@_guarded
def stabilize_cmd(problem_file, module_name, fmt):
    """Matrix factorization of a module via syzygy stabilization."""
    problem = load_problem(problem_file)
    run = _Run("stabilize", fmt)
    res = stabilize(problem.module(module_name))
    doc = {
        "mf": _mf_json(res.mf),
        "depth": res.depth,
        "contractibles_removed": res.contractibles_removed,
        "valid": mf_validate(res.mf)["valid"],
    }
    run.finish(problem, doc)


@main.command("hom")
@click.argument("problem_file")
@click.option("--source", required=True)
@click.option("--target", required=True)
@click.option("--shift", type=int, default=0, show_default=True)
@click.option("--twist", type=int, default=0, show_default=True)
@click.option("--basis/--no-basis", default=True, show_default=True)
@_format_option
@_guarded
def hom_cmd(problem_file, source, target, shift, twist, basis, fmt):
    """Morphism space between factorizations modulo homotopy."""
    problem = load_problem(problem_file)
    run = _Run("hom", fmt)
    x = _object_as_mf(problem, source)
    y = _object_as_mf(problem, target)
    space = mf_hom(x, y, shift, twist, want_basis=basis)
    doc = {"dimension": space.dimension, "shift": shift, "twist": twist}
    if basis:
        doc["basis"] = [_morphism_json(b) for b in space.basis]
    run.finish(problem, doc)


@main.command("hom-table")
@click.argument("problem_file")
@click.option("--source", required=True)
@click.option("--target", required=True)
@click.option("--shifts", default="-6:6", show_default=True)
@click.option("--certify/--no-certify", default=True, show_default=True)
@_format_option
@_guarded
def hom_table_cmd(problem_file, source, target, shifts, certify, fmt):
    """dim Hom(X, Y[p]) over a shift window, optionally certified beyond."""
    problem = load_problem(problem_file)
    run = _Run("hom-table", fmt)
    lo, hi = _parse_window(shifts, "shift window")
    x = _object_as_mf(problem, source)
    y = _object_as_mf(problem, target)
    table = mf_hom_table(x, y, range(lo, hi + 1), certify=certify)
    doc = {
        "dims": {str(p): v for p, v in sorted(table["dims"].items())},
        "beyond_window": {str(p): v for p, v in sorted(table["extra"].items())},
        "certified": table["certified"],
        "shifts": [lo, hi],
    }
    rows = [(p, v) for p, v in sorted(table["dims"].items())]
    run.finish(problem, doc, csv_table=(("shift", "dimension"), rows))


@main.command("stable-hom")
@click.argument("problem_file")
@click.option("--source", required=True)
@click.option("--target", required=True)
@_format_option
@_guarded
def stable_hom_cmd(problem_file, source, target, fmt):
    """Module Hom modulo maps factoring through a free cover."""
    problem = load_problem(problem_file)
    run = _Run("stable-hom", fmt)
    space = stable_hom(problem.module(source), problem.module(target))
    doc = {
        "dimension": space.dimension,
        "flags": space.flags,
        "basis": [_matrix_rows(b.matrix) for b in space.basis],
    }
    run.finish(problem, doc)


@main.command("dsing-hom")
@click.argument("problem_file")
@click.option("--source", required=True)
@click.option("--target", required=True)
@click.option("--shift", type=int, default=0, show_default=True)
@_format_option
@_guarded
def dsing_hom_cmd(problem_file, source, target, shift, fmt):
    """Singularity-category Hom of modules at a shift."""
    problem = load_problem(problem_file)
    run = _Run("dsing-hom", fmt)
    space = dsing_hom(problem.module(source), problem.module(target), shift)
    doc = {"dimension": space.dimension, "shift": shift, "flags": space.flags}
    run.finish(problem, doc)


@main.command("resolve")
@click.argument("problem_file")
@click.option("--module", "module_name", required=True)
@click.option("--steps", type=int, required=True)
@_format_option
@_guarded
def resolve_cmd(problem_file, module_name, steps, fmt):
    """Minimal free resolution differentials."""
    problem = load_problem(problem_file)
    run = _Run("resolve", fmt)
    m = problem.module(module_name)
    res = minimal_resolution(m.relations, steps, potential=m.potential)
    doc = {
        "length": len(res),
        "differentials": [
            {
                "matrix": _matrix_rows(d),
                "source_degrees": list(d.source.gen_degrees),
                "target_degrees": list(d.target.gen_degrees),
            }
            for d in res
        ],
    }
    run.finish(problem, doc)


@main.command("hilbert")
@click.argument("problem_file")
@click.option("--module", "module_name", required=True)
@click.option("--window", default="0:20", show_default=True)
@_format_option
@_guarded
def hilbert_cmd(problem_file, module_name, window, fmt):
    """Hilbert function over a degree window."""
    problem = load_problem(problem_file)
    run = _Run("hilbert", fmt)
    lo, hi = _parse_window(window)
    values = hilbert_function(problem.module(module_name), lo, hi)
    doc = {"window": [lo, hi], "values": values}
    rows = [(lo + i, v) for i, v in enumerate(values)]
    run.finish(problem, doc, csv_table=(("degree", "dimension"), rows))


@main.command("ext")
@click.argument("problem_file")
@click.option("--module", "module_name", required=True)
@click.option("--imax", type=int, default=4, show_default=True)
@click.option("--window", default="0:20", show_default=True)
@_format_option
@_guarded
def ext_cmd(problem_file, module_name, imax, window, fmt):
    """Graded Ext table of a module against A."""
    problem = load_problem(problem_file)
    run = _Run("ext", fmt)
    lo, hi = _parse_window(window)
    table = ext_against_A(problem.module(module_name), imax, lo, hi)
    doc = {
        "window": [lo, hi],
        "i_max": imax,
        "table": {str(i): {str(e): v for e, v in row.items() if v} for i, row in table.items()},
        "vanishes_above_zero": all(
            v == 0 for i, row in table.items() if i >= 1 for v in row.values()
        ),
    }
    rows = [
        (i, e, v) for i, row in sorted(table.items()) for e, v in sorted(row.items()) if v
    ]
    run.finish(problem, doc, csv_table=(("i", "degree", "dimension"), rows))


@main.command("truncate")
@click.argument("problem_file")
@click.option("--module", "module_name", required=True)
@click.option("--at", "at_degree", type=int, required=True)
@_format_option
@_guarded
def truncate_cmd(problem_file, module_name, at_degree, fmt):
    """Tail submodule in degrees >= the cut."""
    problem = load_problem(problem_file)
    run = _Run("truncate", fmt)
    tail = truncate_tail(problem.module(module_name), at_degree)
    run.finish(problem, {"module": _module_json(tail), "at": at_degree})


@main.command("exceptional")
@click.argument("problem_file")
@click.option("--object", "object_name", required=True)
@click.option("--shifts", default="-6:6", show_default=True)
@_format_option
@_guarded
def exceptional_cmd(problem_file, object_name, shifts, fmt):
    """Exceptionality verdict for one object."""
    problem = load_problem(problem_file)
    run = _Run("exceptional", fmt)
    lo, hi = _parse_window(shifts, "shift window")
    rep = check_exceptional(_object_as_mf(problem, object_name), range(lo, hi + 1), label=object_name)
    run.finish(problem, rep.as_dict(), EXIT_OK if rep.exceptional else EXIT_MATH)


@main.command("collection")
@click.argument("problem_file")
@click.option("--objects", required=True, help="Comma-separated object names.")
@click.option("--shifts", default="-6:6", show_default=True)
@click.option("--strong/--no-strong", default=False, show_default=True)
@_format_option
@_guarded
def collection_cmd(problem_file, objects, shifts, strong, fmt):
    """Exceptional-collection check for a sequence of objects."""
    problem = load_problem(problem_file)
    run = _Run("collection", fmt)
    lo, hi = _parse_window(shifts, "shift window")
    names = [n.strip() for n in objects.split(",") if n.strip()]
    mfs = [_object_as_mf(problem, n) for n in names]
    rep = check_collection(mfs, range(lo, hi + 1), strong=strong, labels=names)
    ok = rep.is_exceptional_collection and (not strong or bool(rep.strong))
    run.finish(problem, rep.as_dict(), EXIT_OK if ok else EXIT_MATH)


@main.command("q-algebra")
@click.argument("problem_file")
@click.option("--objects", default=None, help="Comma-separated object names.")
@click.option("--dual", is_flag=True, help="Use the dual collection of the quotient.")
@click.option("--cutoff", type=int, default=None, help="Truncation cut for --dual.")
@_format_option
@_guarded
def q_algebra_cmd(problem_file, objects, dual, cutoff, fmt):
    """Hom-dimension matrix and composition tables of a collection."""
    problem = load_problem(problem_file)
    run = _Run("q-algebra", fmt)
    if dual:
        if problem.potential is None:
            raise ProblemError("--dual needs a potential")
        dc = dual_collection(problem.ring, problem.potential, cutoff=cutoff)
        summary = q_algebra(dc["objects"])
        doc = summary.as_dict()
        doc["parameter"] = dc["parameter"]
        doc["cutoff"] = dc["cutoff"]
    elif objects:
        names = [n.strip() for n in objects.split(",") if n.strip()]
        summary = q_algebra([_object_as_mf(problem, n) for n in names], labels=names)
        doc = summary.as_dict()
    else:
        raise ProblemError("give --objects or --dual")
    run.finish(problem, doc)


@main.command("gorenstein")
@click.argument("problem_file")
@_format_option
@_guarded
def gorenstein_cmd(problem_file, fmt):
    """The parameter sum(weights) - deg W (or sum(weights) without W)."""
    problem = load_problem(problem_file)
    run = _Run("gorenstein", fmt)
    a = gorenstein_parameter(problem.ring, problem.potential)
    run.finish(problem, {"gorenstein_parameter": a})


@main.command("trichotomy")
@click.argument("problem_file")
@click.option("--verify/--no-verify", default=False, show_default=True)
@click.option("--shifts", default="-6:6", show_default=True)
@_format_option
@_guarded
def trichotomy_cmd(problem_file, verify, shifts, fmt):
    """Fano / Calabi-Yau / general-type classification of the pair."""
    problem = load_problem(problem_file)
    run = _Run("trichotomy", fmt)
    if problem.potential is None:
        raise ProblemError("trichotomy needs a potential")
    lo, hi = _parse_window(shifts, "shift window")
    rep = trichotomy_report(
        problem.ring, problem.potential, verify=verify, shifts=range(lo, hi + 1)
    )
    run.finish(problem, rep)


@main.command("fullfaith")
@click.argument("problem_file")
@click.option("--source", required=True)
@click.option("--target", required=True)
@click.option("--shifts", default="-4:4", show_default=True)
@_format_option
@_guarded
def fullfaith_cmd(problem_file, source, target, shifts, fmt):
    """Hom-dimension agreement across the cokernel bridge."""
    problem = load_problem(problem_file)
    run = _Run("fullfaith", fmt)
    lo, hi = _parse_window(shifts, "shift window")
    rep = check_full_faithfulness(
        _object_as_mf(problem, source), _object_as_mf(problem, target), range(lo, hi + 1)
    )
    rows = [(r["shift"], r["mf_dim"], r["stable_dim"], r["equal"]) for r in rep["rows"]]
    run.finish(
        problem,
        rep,
        EXIT_OK if rep["match"] else EXIT_MATH,
        csv_table=(("shift", "mf_dim", "stable_dim", "equal"), rows),
    )


@main.command("roundtrip")
@click.argument("problem_file")
@click.option("--object", "object_name", required=True)
@_seed_option
@_format_option
@_guarded
def roundtrip_cmd(problem_file, object_name, seed, fmt):
    """stabilize(cok(X)) against X up to contractible summands."""
    problem = load_problem(problem_file)
    run = _Run("roundtrip", fmt, seed=seed)
    rep = check_round_trip(_object_as_mf(problem, object_name), seed=seed)
    doc = {
        "isomorphic": rep["isomorphic"] is True,
        "detail": {
            k: v
            for k, v in rep.items()
            if k in ("contractibles_removed", "depth", "trials", "hom_dims", "end_dims", "cok_hilbert")
        },
    }
    run.finish(problem, doc, EXIT_OK if rep["isomorphic"] is True else EXIT_MATH)


@main.command("acyclic")
@click.argument("problem_file")
@click.option("--mf", "mf_name", required=True)
@click.option("--window", default="0:20", show_default=True)
@_format_option
@_guarded
def acyclic_cmd(problem_file, mf_name, window, fmt):
    """Degreewise exactness of the induced periodic complex over A."""
    problem = load_problem(problem_file)
    run = _Run("acyclic", fmt)
    lo, hi = _parse_window(window)
    rep = check_acyclic_tensor(problem.mf(mf_name), lo, hi)
    run.finish(problem, rep, EXIT_OK if rep["exact"] else EXIT_MATH)


@main.command("ext-certificate")
@click.argument("problem_file")
@click.option("--mf", "mf_name", required=True)
@click.option("--imax", type=int, default=4, show_default=True)
@_format_option
@_guarded
def ext_certificate_cmd(problem_file, mf_name, imax, fmt):
    """Ext vanishing certificate for a factorization cokernel."""
    problem = load_problem(problem_file)
    run = _Run("ext-certificate", fmt)
    rep = ext_certificate(problem.mf(mf_name), i_max=imax)
    rep["window"] = list(rep["window"])
    run.finish(problem, rep, EXIT_OK if rep["vanishes"] else EXIT_MATH)


if __name__ == "__main__":
    main()
