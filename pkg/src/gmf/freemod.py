"""Graded free modules and homogeneous matrices between them.

A free module is determined by its generator degrees: generator j of
``FreeModule(ring, (g_1..g_r))`` sits in degree g_j.  Twisting by q lowers
every generator degree by q (so that the twist convention M(q)_i = M_{q+i}
holds on graded pieces).  A ``GradedMatrix`` of degree d from S to T forces
entry (i, j) to be homogeneous of degree g^S_j - g^T_i + d; that bookkeeping
is the invariant every higher layer leans on, so it is checked at
construction unless explicitly deferred to a report.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .rings import GradedRing, Polynomial


class GradingError(ValueError):
    pass


class FreeModule:
    __slots__ = ("ring", "gen_degrees")

    def __init__(self, ring: GradedRing, gen_degrees: Iterable[int]):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "gen_degrees", tuple(int(g) for g in gen_degrees))

    def __setattr__(self, name, value):
        raise AttributeError("FreeModule objects are immutable")

    @property
    def rank(self) -> int:
        return len(self.gen_degrees)

    def twist(self, q: int) -> "FreeModule":
        return FreeModule(self.ring, tuple(g - q for g in self.gen_degrees))

    def dual(self) -> "FreeModule":
        return FreeModule(self.ring, tuple(-g for g in self.gen_degrees))

    def __eq__(self, other):
        return (
            isinstance(other, FreeModule)
            and self.ring == other.ring
            and self.gen_degrees == other.gen_degrees
        )

    def __hash__(self):
        return hash((self.ring, self.gen_degrees))

    def __repr__(self):
        return f"Free{list(self.gen_degrees)}"


class GradedMatrix:
    """Homogeneous matrix of a fixed degree between graded free modules."""

    __slots__ = ("ring", "source", "target", "degree", "entries")

    def __init__(
        self,
        source: FreeModule,
        target: FreeModule,
        degree: int,
        entries: Sequence[Sequence[Polynomial]],
        check: bool = True,
    ):
        if source.ring != target.ring:
            raise GradingError("source and target over different rings")
        ring = source.ring
        rows = tuple(tuple(row) for row in entries)
        if len(rows) != target.rank or any(len(r) != source.rank for r in rows):
            raise GradingError(
                f"entry grid must be {target.rank} x {source.rank}, "
                f"got {len(rows)} x {len(rows[0]) if rows else 0}"
            )
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "degree", int(degree))
        object.__setattr__(self, "entries", rows)
        if check:
            bad = self.violations()
            if bad:
                i, j, want, got = bad[0]
                raise GradingError(
                    f"entry ({i},{j}) must be homogeneous of degree {want}, "
                    f"got degree {got}"
                )

    def __setattr__(self, name, value):
        raise AttributeError("GradedMatrix objects are immutable")

    # --- degree bookkeeping -------------------------------------------------

    def forced_degree(self, i: int, j: int) -> int:
        return self.source.gen_degrees[j] - self.target.gen_degrees[i] + self.degree

    def violations(self) -> list:
        """All (i, j, forced, actual) slots whose entry breaks homogeneity."""
        out = []
        for i, row in enumerate(self.entries):
            for j, p in enumerate(row):
                if p.is_zero:
                    continue
                want = self.forced_degree(i, j)
                if not p.is_homogeneous or p.degree != want:
                    out.append((i, j, want, p.degree))
        return out

    # --- constructors ---------------------------------------------------------

    @staticmethod
    def zero(source: FreeModule, target: FreeModule, degree: int = 0) -> "GradedMatrix":
        z = source.ring.zero()
        rows = [[z] * source.rank for _ in range(target.rank)]
        return GradedMatrix(source, target, degree, rows, check=False)

    @staticmethod
    def identity(module: FreeModule) -> "GradedMatrix":
        one, zero = module.ring.one(), module.ring.zero()
        rows = [
            [one if i == j else zero for j in range(module.rank)]
            for i in range(module.rank)
        ]
        return GradedMatrix(module, module, 0, rows, check=False)

    @staticmethod
    def scalar(module: FreeModule, poly: Polynomial) -> "GradedMatrix":
        """poly * Id as a degree-deg(poly) endomorphism."""
        if not poly.is_homogeneous or poly.is_zero:
            raise GradingError("scalar matrix needs a nonzero homogeneous polynomial")
        zero = module.ring.zero()
        rows = [
            [poly if i == j else zero for j in range(module.rank)]
            for i in range(module.rank)
        ]
        return GradedMatrix(module, module, poly.degree, rows)

    @staticmethod
    def from_columns(
        source: FreeModule, target: FreeModule, degree: int, columns, check: bool = True
    ) -> "GradedMatrix":
        rows = [
            [columns[j][i] for j in range(source.rank)] for i in range(target.rank)
        ]
        return GradedMatrix(source, target, degree, rows, check=check)

    # --- algebra ---------------------------------------------------------------

    def compose(self, other: "GradedMatrix") -> "GradedMatrix":
        """self after other; degrees add, interfaces must match."""
        if other.target != self.source:
            raise GradingError(
                f"interface mismatch: composing {self.source!r} after {other.target!r}"
            )
        zero = self.ring.zero()
        rows = []
        for i in range(self.target.rank):
            row = []
            for j in range(other.source.rank):
                acc = zero
                for k in range(self.source.rank):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if not a.is_zero and not b.is_zero:
                        acc = acc + a * b
                row.append(acc)
            rows.append(row)
        return GradedMatrix(
            other.source, self.target, self.degree + other.degree, rows
        )

    def __add__(self, other: "GradedMatrix") -> "GradedMatrix":
        if (self.source, self.target, self.degree) != (
            other.source,
            other.target,
            other.degree,
        ):
            raise GradingError("matrix sum needs identical interfaces and degree")
        rows = [
            [a + b for a, b in zip(r1, r2)]
            for r1, r2 in zip(self.entries, other.entries)
        ]
        return GradedMatrix(self.source, self.target, self.degree, rows, check=False)

    def __sub__(self, other: "GradedMatrix") -> "GradedMatrix":
        return self + (-other)

    def __neg__(self) -> "GradedMatrix":
        rows = [[-p for p in row] for row in self.entries]
        return GradedMatrix(self.source, self.target, self.degree, rows, check=False)

    def scale(self, c) -> "GradedMatrix":
        rows = [[p.scale(c) for p in row] for row in self.entries]
        return GradedMatrix(self.source, self.target, self.degree, rows, check=False)

    def twist(self, q: int) -> "GradedMatrix":
        """Twist source and target by q; entries and degree are unchanged."""
        return GradedMatrix(
            self.source.twist(q), self.target.twist(q), self.degree, self.entries,
            check=False,
        )

    def retarget(self, source: FreeModule, target: FreeModule, degree: int) -> "GradedMatrix":
        """Same entries reinterpreted against new interfaces (revalidated)."""
        return GradedMatrix(source, target, degree, self.entries)

    def transpose_dual(self) -> "GradedMatrix":
        """The dual map Hom(target, B) -> Hom(source, B); same degree."""
        rows = [
            [self.entries[i][j] for i in range(self.target.rank)]
            for j in range(self.source.rank)
        ]
        return GradedMatrix(self.target.dual(), self.source.dual(), self.degree, rows)

    @property
    def is_zero(self) -> bool:
        return all(p.is_zero for row in self.entries for p in row)

    def column(self, j: int) -> list:
        return [self.entries[i][j] for i in range(self.target.rank)]

    def columns(self) -> list:
        return [self.column(j) for j in range(self.source.rank)]

    def __eq__(self, other):
        return (
            isinstance(other, GradedMatrix)
            and self.source == other.source
            and self.target == other.target
            and self.degree == other.degree
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.source, self.target, self.degree, self.entries))

    def __repr__(self):
        body = "; ".join(
            ", ".join(str(p) for p in row) for row in self.entries
        )
        return f"[{body}] : {self.source!r} -> {self.target!r} (deg {self.degree})"


def block_matrix(blocks, source: FreeModule, target: FreeModule, degree: int) -> GradedMatrix:
    """Assemble a matrix from a 2-D grid of GradedMatrix blocks."""
    rows: list = []
    for block_row in blocks:
        height = block_row[0].target.rank
        grid_rows: list = [[] for _ in range(height)]
        for blk in block_row:
            if blk.target.rank != height:
                raise GradingError("ragged block row")
            for i in range(height):
                grid_rows[i].extend(blk.entries[i])
        rows.extend(grid_rows)
    if len(rows) != target.rank or any(len(r) != source.rank for r in rows):
        raise GradingError("block grid does not match the stated interfaces")
    return GradedMatrix(source, target, degree, rows)


def validate_matrix(m: GradedMatrix) -> dict:
    """Report-valued homogeneity check: every entry against its forced degree."""
    bad = m.violations()
    return {
        "valid": not bad,
        "violations": [
            {"row": i, "col": j, "forced_degree": want, "actual_degree": got}
            for (i, j, want, got) in bad
        ],
    }


def matrix_compose(f: GradedMatrix, g: GradedMatrix) -> GradedMatrix:
    """f after g with interface and degree bookkeeping re-verified."""
    return f.compose(g)
