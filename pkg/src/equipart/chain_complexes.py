"""Bounded chain complexes of free Z[G]-modules with named generators.

Matrices use the column convention: the boundary taking degree k to degree
k-1 has one column per degree-k generator and one row per degree-(k-1)
generator.  Modules are left modules, so for column-convention matrices the
matrix of a composite ``second after first`` has entries

    sum_j first[j][i] * second[l][j]

with the group-ring product taken in exactly that order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .group_algebra import (
    GroupRingElement,
    GroupTable,
    build_cyclic,
    build_d8,
    ring_element,
)


class UnsupportedDimension(ValueError):
    """Sphere-product fragment requested below the supported range."""


class NonCommutingPartialMap(ValueError):
    """A partial chain map fails the boundary commutation identity."""


@dataclass(frozen=True)
class LambdaMatrix:
    """A rows x cols matrix over the integral group ring of ``group``."""

    group: GroupTable
    rows: int
    cols: int
    entries: tuple[tuple[GroupRingElement, ...], ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(self.entries) != self.rows:
            raise ValueError("row count does not match entries")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("column count does not match entries")
            for x in row:
                if x.group != self.group:
                    raise ValueError("entry over a different group")

    @classmethod
    def from_rows(cls, group: GroupTable,
                  rows: Sequence[Sequence[GroupRingElement]],
                  cols: int | None = None) -> "LambdaMatrix":
        entries = tuple(tuple(row) for row in rows)
        ncols = len(entries[0]) if entries else (0 if cols is None else cols)
        return cls(group, len(entries), ncols, entries)

    @classmethod
    def zeros(cls, group: GroupTable, rows: int, cols: int) -> "LambdaMatrix":
        z = GroupRingElement.zero(group)
        return cls(group, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, group: GroupTable, n: int) -> "LambdaMatrix":
        z = GroupRingElement.zero(group)
        one = GroupRingElement.one(group)
        return cls(group, n, n,
                   tuple(tuple(one if i == j else z for j in range(n))
                         for i in range(n)))

    def entry(self, i: int, j: int) -> GroupRingElement:
        return self.entries[i][j]

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.entries for x in row)


def matrix_of_composite(first: LambdaMatrix, second: LambdaMatrix) -> LambdaMatrix:
    """Matrix of ``second after first`` for column-convention maps.

    ``first`` sends module A to module B, ``second`` sends B to C; the result
    sends A to C.  Coefficients of the element being mapped stay on the left,
    hence the product order first-entry times second-entry.
    """
    if first.group != second.group:
        raise ValueError("matrices over different groups")
    if second.cols != first.rows:
        raise ValueError(
            f"shape mismatch: composite needs {second.cols} = {first.rows}")
    z = GroupRingElement.zero(first.group)
    out = []
    for l in range(second.rows):
        row = []
        for i in range(first.cols):
            acc = z
            for j in range(first.rows):
                a = first.entries[j][i]
                b = second.entries[l][j]
                if a.coeffs and b.coeffs:
                    acc = acc + a * b
            row.append(acc)
        out.append(tuple(row))
    return LambdaMatrix(first.group, second.rows, first.cols, tuple(out))


@dataclass(frozen=True)
class ChainFragment:
    """A bounded fragment of a chain complex of free Z[G]-modules.

    ``degrees`` are consecutive and descending; ``generators[i]`` are the
    labels of the free basis in degree ``degrees[i]``; ``boundaries[i]`` is
    the matrix of the boundary from degree ``degrees[i]`` to degree
    ``degrees[i] - 1``.  ``stabilizers`` is optional metadata mapping a
    generator label to the element words of its geometric stabilizer.
    """

    group: GroupTable
    degrees: tuple[int, ...]
    generators: tuple[tuple[str, ...], ...]
    boundaries: tuple[LambdaMatrix, ...]
    stabilizers: Mapping[str, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.degrees:
            raise ValueError("fragment needs at least one degree")
        for a, b in zip(self.degrees, self.degrees[1:]):
            if b != a - 1:
                raise ValueError("degrees must be consecutive and descending")
        if len(self.generators) != len(self.degrees):
            raise ValueError("generator lists do not match degrees")
        if len(self.boundaries) != len(self.degrees) - 1:
            raise ValueError("boundary count must be len(degrees) - 1")
        for i, mat in enumerate(self.boundaries):
            if mat.group != self.group:
                raise ValueError("boundary over a different group")
            if mat.cols != len(self.generators[i]) or mat.rows != len(self.generators[i + 1]):
                raise ValueError(
                    f"boundary {i} has shape {mat.rows}x{mat.cols}, expected "
                    f"{len(self.generators[i + 1])}x{len(self.generators[i])}")
        object.__setattr__(self, "stabilizers",
                           {k: tuple(v) for k, v in dict(self.stabilizers).items()})

    def degree_index(self, degree: int) -> int:
        try:
            return self.degrees.index(degree)
        except ValueError:
            raise ValueError(f"degree {degree} not in fragment") from None

    def generator_count(self, degree: int) -> int:
        return len(self.generators[self.degree_index(degree)])

    def boundary_from(self, degree: int) -> LambdaMatrix:
        """The boundary matrix out of the given degree."""
        i = self.degree_index(degree)
        if i == len(self.degrees) - 1:
            raise ValueError(f"fragment has no boundary out of degree {degree}")
        return self.boundaries[i]


@dataclass(frozen=True)
class ComplexCheck:
    """Outcome of verify_complex; on failure points at the first bad entry."""

    ok: bool
    degree: int | None = None
    row: int | None = None
    col: int | None = None
    entry: GroupRingElement | None = None


def verify_complex(fragment: ChainFragment) -> ComplexCheck:
    """Check that every composable pair of boundaries multiplies to zero.

    Returns a certificate naming the first nonzero entry of a composite,
    with ``degree`` the source degree of the failing composite.  A fragment
    with fewer than two boundaries verifies vacuously.
    """
    for i in range(len(fragment.boundaries) - 1):
        comp = matrix_of_composite(fragment.boundaries[i], fragment.boundaries[i + 1])
        for r in range(comp.rows):
            for c in range(comp.cols):
                if not comp.entries[r][c].is_zero():
                    return ComplexCheck(False, fragment.degrees[i], r, c,
                                        comp.entries[r][c])
    return ComplexCheck(True)


def build_sphere_product_fragment(n: int) -> ChainFragment:
    """Top fragment of the equivariant cell structure on a product of two
    n-spheres with the dihedral symmetry of ordered hyperplane pairs.

    Degrees 2n, 2n-1, 2n-2 with free bases x | x0, x1 | z0, t0, t1.  The
    boundary coefficients depend only on the parity of n; the sign data
    comes from the orientation behaviour of the three basic involutions.
    """
    if n < 8:
        raise UnsupportedDimension(f"fragment is defined for n >= 8, got {n}")
    d8 = build_d8()
    s = 1 if n % 2 == 0 else -1
    lam = lambda terms: ring_element(d8, terms)

    # d(x) = (1 + s*beta) x0 + (1 - s*gamma) x1
    b = LambdaMatrix.from_rows(d8, [
        [lam({"e": 1, "beta": s})],
        [lam({"e": 1, "gamma": -s})],
    ])
    # d(x0) = (1 + s*alpha - s*gamma - alpha*gamma) z0 + (1 - s*beta) t0
    # d(x1) = -(1 + s*beta - beta*gamma - s*alpha*beta*gamma) z0 + (1 + s*gamma) t1
    zero = GroupRingElement.zero(d8)
    a = LambdaMatrix.from_rows(d8, [
        [lam({"e": 1, "alpha": s, "gamma": -s, "alpha*gamma": -1}),
         lam({"e": -1, "beta": -s, "beta*gamma": 1, "alpha*beta*gamma": s})],
        [lam({"e": 1, "beta": -s}), zero],
        [zero, lam({"e": 1, "gamma": s})],
    ])
    return ChainFragment(
        group=d8,
        degrees=(2 * n, 2 * n - 1, 2 * n - 2),
        generators=(("x",), ("x0", "x1"), ("z0", "t0", "t1")),
        boundaries=(b, a),
        stabilizers={"x0": ("e", "beta"), "x1": ("e", "gamma")},
    )


def build_z2_example_complexes() -> tuple[ChainFragment, ChainFragment]:
    """The pair of augmented complexes over Z[Z/2] of the worked torsion
    example: source boundaries 1-w, 2(1+w), 1-w and a target that is zero
    above degree 1 with boundary 1-w into degree 0."""
    z2 = build_cyclic(2)
    one_minus = ring_element(z2, {"e": 1, "omega": -1})
    two_plus = ring_element(z2, {"e": 2, "omega": 2})

    source = ChainFragment(
        group=z2,
        degrees=(3, 2, 1, 0),
        generators=(("c3",), ("c2",), ("c1",), ("c0",)),
        boundaries=(
            LambdaMatrix.from_rows(z2, [[one_minus]]),
            LambdaMatrix.from_rows(z2, [[two_plus]]),
            LambdaMatrix.from_rows(z2, [[one_minus]]),
        ),
    )
    target = ChainFragment(
        group=z2,
        degrees=(3, 2, 1, 0),
        generators=((), (), ("d1",), ("d0",)),
        boundaries=(
            LambdaMatrix.zeros(z2, 0, 0),
            LambdaMatrix.zeros(z2, 1, 0),
            LambdaMatrix.from_rows(z2, [[one_minus]]),
        ),
    )
    return source, target


@dataclass(frozen=True)
class PartialChainMap:
    """Per-degree matrices f_k of a chain map provided up to some degree.

    ``degrees`` are ascending and consecutive; ``maps[i]`` sends the source
    module in degree ``degrees[i]`` to the target module in the same degree.
    Commutation with the boundaries is checked for every degree where both
    sides are defined; failure raises NonCommutingPartialMap.
    """

    source: ChainFragment
    target: ChainFragment
    degrees: tuple[int, ...]
    maps: tuple[LambdaMatrix, ...]

    def __post_init__(self) -> None:
        if self.source.group != self.target.group:
            raise ValueError("source and target over different groups")
        if not self.degrees:
            raise ValueError("partial map needs at least one degree")
        for a, b in zip(self.degrees, self.degrees[1:]):
            if b != a + 1:
                raise ValueError("degrees must be consecutive and ascending")
        if len(self.maps) != len(self.degrees):
            raise ValueError("map count does not match degrees")
        for k, f in zip(self.degrees, self.maps):
            if f.cols != self.source.generator_count(k):
                raise ValueError(f"f_{k} has {f.cols} columns")
            if f.rows != self.target.generator_count(k):
                raise ValueError(f"f_{k} has {f.rows} rows")
        self.verify_commutation()

    def map_at(self, degree: int) -> LambdaMatrix:
        try:
            return self.maps[self.degrees.index(degree)]
        except ValueError:
            raise ValueError(f"no map provided in degree {degree}") from None

    def top_degree(self) -> int:
        return self.degrees[-1]

    def verify_commutation(self) -> None:
        for pos, k in enumerate(self.degrees):
            if pos == 0:
                continue
            try:
                d_src = self.source.boundary_from(k)
                d_tgt = self.target.boundary_from(k)
            except ValueError:
                continue
            lhs = matrix_of_composite(self.maps[pos], d_tgt)
            rhs = matrix_of_composite(d_src, self.maps[pos - 1])
            if lhs != rhs:
                raise NonCommutingPartialMap(
                    f"boundary commutation fails in degree {k}")


# --- JSON serialization -----------------------------------------------------

def _matrix_to_json(mat: LambdaMatrix) -> dict:
    return {
        "rows": mat.rows,
        "cols": mat.cols,
        "entries": [[x.words() for x in row] for row in mat.entries],
    }


def fragment_to_json(fragment: ChainFragment) -> dict:
    """Plain-dict form of a fragment; round-trips through fragment_from_json."""
    return {
        "schema": 1,
        "group": {
            "order": fragment.group.order,
            "mul": [list(row) for row in fragment.group.mul],
            "generators": [[name, idx] for name, idx
                           in fragment.group.generator_names.items()],
        },
        "degrees": list(fragment.degrees),
        "generators": [list(gens) for gens in fragment.generators],
        "stabilizers": {k: list(v) for k, v in fragment.stabilizers.items()},
        "boundaries": [_matrix_to_json(mat) for mat in fragment.boundaries],
    }


def fragment_to_json_str(fragment: ChainFragment) -> str:
    return json.dumps(fragment_to_json(fragment), indent=2)


def fragment_from_json(data: dict | str) -> ChainFragment:
    if isinstance(data, str):
        data = json.loads(data)
    group = GroupTable(data["group"]["mul"], dict(data["group"]["generators"]))
    boundaries = []
    for mat in data["boundaries"]:
        rows = [[GroupRingElement.from_words(group, cell) for cell in row]
                for row in mat["entries"]]
        boundaries.append(LambdaMatrix(
            group, mat["rows"], mat["cols"],
            tuple(tuple(row) for row in rows)))
    return ChainFragment(
        group=group,
        degrees=tuple(data["degrees"]),
        generators=tuple(tuple(g) for g in data["generators"]),
        boundaries=tuple(boundaries),
        stabilizers={k: tuple(v) for k, v in data.get("stabilizers", {}).items()},
    )
