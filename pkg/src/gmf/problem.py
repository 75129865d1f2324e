"""Declarative problem files: a ring, a potential, named modules and
named matrix factorizations, everything as JSON with expression strings.

Rationals are written "a/b", prime-field scalars as integers; matrices are
row-major arrays of expression strings with rows indexed by generators.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Optional

from .fields import GF, QQ, Field
from .freemod import FreeModule, GradedMatrix, GradingError
from .mf import MatrixFactorization, mf_validate
from .modules import ModuleError, ModulePresentation
from .rings import GradedRing, ParseError, Polynomial, parse_polynomial


class ProblemError(ValueError):
    """Malformed problem file: missing keys, bad expressions, unknown names."""


class ProblemValidationError(ValueError):
    """Structurally sound input that fails a mathematical validity check."""

    def __init__(self, message: str, reports: dict):
        super().__init__(message)
        self.reports = reports


@dataclass
class Problem:
    ring: GradedRing
    potential: Optional[Polynomial]
    modules: dict
    mfs: dict
    validation: dict = dc_field(default_factory=dict)

    def module(self, name: str) -> ModulePresentation:
        if name not in self.modules:
            raise ProblemError(f"unknown module {name!r}")
        return self.modules[name]

    def mf(self, name: str) -> MatrixFactorization:
        if name not in self.mfs:
            raise ProblemError(f"unknown matrix factorization {name!r}")
        return self.mfs[name]

    def field_label(self) -> str:
        return "QQ" if self.ring.field.p is None else f"GF({self.ring.field.p})"


def _parse_field(spec) -> Field:
    if spec in ("QQ", "Q", "rationals"):
        return QQ
    if isinstance(spec, dict) and "prime" in spec:
        return GF(int(spec["prime"]))
    raise ProblemError(f"field must be 'QQ' or {{'prime': p}}, got {spec!r}")


def _parse_matrix(rows, source_degs, target_degs, degree, ring) -> GradedMatrix:
    source = FreeModule(ring, source_degs)
    target = FreeModule(ring, target_degs)
    if len(rows) != target.rank or any(len(r) != source.rank for r in rows):
        raise ProblemError(
            f"matrix must be {target.rank} rows x {source.rank} cols"
        )
    entries = [[parse_polynomial(cell, ring) for cell in row] for row in rows]
    return GradedMatrix(source, target, degree, entries)


def load_problem(path: str, strict: bool = True) -> Problem:
    """Parse and validate a problem file.

    With ``strict`` the first mathematical validity failure raises
    ProblemValidationError; otherwise all reports are collected on the
    returned Problem for the validate subcommand to print.
    """
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ProblemError(f"cannot read problem file: {exc}") from exc
    try:
        ring_spec = data["ring"]
        ring = GradedRing(
            ring_spec["variables"], ring_spec["weights"], _parse_field(ring_spec.get("field", "QQ"))
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ProblemError(f"bad ring description: {exc}") from exc
    potential = None
    if data.get("potential"):
        try:
            potential = parse_polynomial(data["potential"], ring)
        except ParseError as exc:
            raise ProblemError(f"bad potential: {exc}") from exc
        if potential.is_zero or not potential.is_homogeneous or potential.degree <= 0:
            raise ProblemError("potential must be nonzero homogeneous of positive degree")
    validation: dict = {"modules": {}, "mfs": {}}
    modules = {}
    for name, spec in (data.get("modules") or {}).items():
        try:
            gen_degrees = [int(g) for g in spec["gen_degrees"]]
            rel_rows = spec.get("relations", [])
            ncols = len(rel_rows[0]) if rel_rows else 0
            entries = [[parse_polynomial(c, ring) for c in row] for row in rel_rows]
            col_degs = _column_degrees(entries, gen_degrees, ncols, name)
            rel = GradedMatrix(
                FreeModule(ring, col_degs), FreeModule(ring, gen_degrees), 0, entries
            ) if ncols else None
            over = spec.get("over", "A" if potential is not None else "B")
            pot = potential if over == "A" else None
            if over == "A" and potential is None:
                raise ProblemError(f"module {name!r} is over A but no potential is set")
            modules[name] = ModulePresentation(ring, gen_degrees, rel, pot)
            validation["modules"][name] = {"valid": True}
        except (ParseError, GradingError, ModuleError, KeyError, ValueError) as exc:
            raise ProblemError(f"bad module {name!r}: {exc}") from exc
    mfs = {}
    for name, spec in (data.get("mfs") or {}).items():
        if potential is None:
            raise ProblemError("matrix factorizations need a potential")
        try:
            degs1 = [int(g) for g in spec["gen_degrees_1"]]
            degs0 = [int(g) for g in spec["gen_degrees_0"]]
            p1 = _parse_matrix(spec["p1"], degs1, degs0, 0, ring)
            p0 = _parse_matrix(spec["p0"], degs0, degs1, potential.degree, ring)
        except (ParseError, GradingError, KeyError, ValueError) as exc:
            raise ProblemError(f"bad matrix factorization {name!r}: {exc}") from exc
        candidate = MatrixFactorization(potential, p1, p0, check=False)
        report = mf_validate(candidate)
        validation["mfs"][name] = report
        if strict and not report["valid"]:
            raise ProblemValidationError(
                f"matrix factorization {name!r} fails validation", {name: report}
            )
        mfs[name] = candidate
    return Problem(ring, potential, modules, mfs, validation)


def _column_degrees(entries, gen_degrees, ncols, name):
    col_degs = []
    for j in range(ncols):
        degs = set()
        for i, g in enumerate(gen_degrees):
            p = entries[i][j]
            if not p.is_zero:
                if not p.is_homogeneous:
                    raise ProblemError(
                        f"module {name!r}: relation column {j} has an inhomogeneous entry"
                    )
                degs.add(p.degree + g)
        if len(degs) > 1:
            raise ProblemError(
                f"module {name!r}: relation column {j} mixes degrees {sorted(degs)}"
            )
        col_degs.append(degs.pop() if degs else 0)
    return col_degs
