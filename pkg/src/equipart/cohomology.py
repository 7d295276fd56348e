"""Character-twisted cochain complexes over Z and their cohomology.

The pipeline: apply a sign character entrywise to the group-ring boundary
matrices (transposing, since Hom(-, Z) reverses arrows), then present
kernel/image quotients through exact Smith normal form.  Everything is
arbitrary-precision and deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .chain_complexes import ChainFragment
from .group_algebra import Character, augment


class DegreeOutOfRange(ValueError):
    """Cohomology requested at a degree without both coboundaries."""


class NotACocycle(ValueError):
    """Vector has a nonzero outgoing coboundary."""


def _as_exact(x) -> int | Fraction:
    if isinstance(x, int):
        return x
    f = Fraction(x)
    return int(f) if f.denominator == 1 else f


@dataclass(frozen=True)
class IntMatrix:
    """An exact rows x cols matrix.

    Entries are arbitrary-precision integers; exact rationals are also
    accepted (Sylvester matrices of rational polynomials land here) and are
    normalized to int whenever integral.
    """

    rows: int
    cols: int
    entries: tuple[tuple[int | Fraction, ...], ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(self.entries) != self.rows:
            raise ValueError("row count does not match entries")
        if any(len(row) != self.cols for row in self.entries):
            raise ValueError("column count does not match entries")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "IntMatrix":
        entries = tuple(tuple(_as_exact(x) for x in row) for row in rows)
        ncols = len(entries[0]) if entries else (0 if cols is None else cols)
        return cls(len(entries), ncols, entries)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n))
                               for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def is_integral(self) -> bool:
        return all(isinstance(x, int) for row in self.entries for x in row)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(tuple(self.entries[i][j] for i in range(self.rows))
                               for j in range(self.cols)))

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} * "
                             f"{other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                row.append(_as_exact(sum(self.entries[i][k] * other.entries[k][j]
                                         for k in range(self.cols))))
            out.append(tuple(row))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def mul_vector(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.cols:
            raise ValueError(f"vector length {len(vec)}, expected {self.cols}")
        return tuple(sum(self.entries[i][k] * vec[k] for k in range(self.cols))
                     for i in range(self.rows))

    def column(self, j: int) -> tuple[int | Fraction, ...]:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def diagonal(self) -> tuple[int | Fraction, ...]:
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))


def _row_add(a, dst, src, factor):
    arow, srow = a[dst], a[src]
    for j in range(len(arow)):
        arow[j] += factor * srow[j]


def _col_add(a, dst, src, factor):
    for row in a:
        row[dst] += factor * row[src]


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Exact Smith normal form: returns (U, D, V) with U*m*V = D.

    U and V are unimodular; D is diagonal with nonnegative entries forming a
    divisibility chain d1 | d2 | ...  Pivots are chosen by minimal absolute
    value to limit intermediate growth.  The input must be integral.
    """
    if not m.is_integral():
        raise ValueError("Smith normal form requires integer entries")
    r, c = m.rows, m.cols
    a = [list(row) for row in m.entries]
    u = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    v = [[1 if i == j else 0 for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    def settle(t):
        # Clear row and column t against the pivot a[t][t]; swaps pull any
        # nonzero remainder (strictly smaller than the pivot) into the pivot
        # slot, so this terminates.
        while True:
            if a[t][t] < 0:
                negate_row(t)
            p = a[t][t]
            moved = False
            for i in range(t + 1, r):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        _row_add(a, i, t, -q)
                        _row_add(u, i, t, -q)
                    if a[i][t]:
                        swap_rows(i, t)
                        moved = True
                        break
            if moved:
                continue
            for j in range(t + 1, c):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        _col_add(a, j, t, -q)
                        _col_add(v, j, t, -q)
                    if a[t][j]:
                        swap_cols(j, t)
                        moved = True
                        break
            if not moved:
                return

    rank = 0
    for t in range(min(r, c)):
        pivot = None
        for i in range(t, r):
            for j in range(t, c):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(pivot[0], t)
        swap_cols(pivot[1], t)
        settle(t)
        rank = t + 1

    # Enforce the divisibility chain among the nonzero diagonal entries.
    changed = True
    while changed:
        changed = False
        for i in range(rank - 1):
            if a[i + 1][i + 1] % a[i][i]:
                _col_add(a, i, i + 1, 1)
                _col_add(v, i, i + 1, 1)
                settle(i)
                changed = True
    for i in range(rank):
        if a[i][i] < 0:
            negate_row(i)

    return (IntMatrix.from_rows(u, cols=r),
            IntMatrix.from_rows(a, cols=c),
            IntMatrix.from_rows(v, cols=c))


def invariant_factors(m: IntMatrix) -> tuple[int, ...]:
    """Nonzero diagonal of the Smith form, divisibility-ordered."""
    _, d, _ = smith_normal_form(m)
    return tuple(x for x in d.diagonal() if x)


def unimodular_inverse(m: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular integer matrix."""
    if m.rows != m.cols:
        raise ValueError("inverse needs a square matrix")
    n = m.rows
    work = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
            for i, row in enumerate(m.entries)]
    for col in range(n):
        piv = next((i for i in range(col, n) if work[i][col]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        work[col], work[piv] = work[piv], work[col]
        p = work[col][col]
        work[col] = [x / p for x in work[col]]
        for i in range(n):
            if i != col and work[i][col]:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[col])]
    inv = [row[n:] for row in work]
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return IntMatrix.from_rows([[int(x) for x in row] for row in inv])


def twisted_cochain(fragment: ChainFragment, chi: Character) -> list[IntMatrix]:
    """Coboundary matrices of Hom(C, Z twisted by chi).

    Entry i is the transposed entrywise augmentation of boundary i, i.e. the
    coboundary raising cochains from degree ``degrees[i+1]`` to degree
    ``degrees[i]``.
    """
    if chi.group != fragment.group:
        raise ValueError("character over a different group")
    out = []
    for mat in fragment.boundaries:
        aug = [[augment(mat.entries[i][j], chi) for j in range(mat.cols)]
               for i in range(mat.rows)]
        out.append(IntMatrix.from_rows(aug, cols=mat.cols).transpose())
    return out


@dataclass(frozen=True)
class AbelianGroupPresentation:
    """Invariant-factor presentation of a cohomology group.

    ``basis_map`` has one column per presentation generator (torsion
    generators first, then free generators), each column an integer cocycle
    in the ambient lattice.  The private fields carry the change-of-basis
    data needed to reduce arbitrary cocycles to canonical coordinates.
    """

    free_rank: int
    invariant_factors: tuple[int, ...]
    basis_map: IntMatrix
    _out: IntMatrix
    _v1_inv: IntMatrix
    _rank_out: int
    _u2: IntMatrix
    _torsion_rows: tuple[int, ...]
    _free_rows: tuple[int, ...]
    _flips: tuple[int, ...]

    def __post_init__(self) -> None:
        for d1, d2 in zip(self.invariant_factors, self.invariant_factors[1:]):
            if d2 % d1:
                raise ValueError("invariant factors must form a divisibility chain")
        if any(d < 2 for d in self.invariant_factors):
            raise ValueError("invariant factors must be at least 2")

    @property
    def order(self) -> int | None:
        """Group order, or None when the free rank is positive."""
        if self.free_rank:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def generator_cocycles(self) -> list[tuple[int, ...]]:
        return [tuple(self.basis_map.column(j))
                for j in range(self.basis_map.cols)]


@dataclass(frozen=True)
class CohomologyClass:
    """Coordinates of a class: residues per invariant factor, then free."""

    parent: AbelianGroupPresentation
    coordinates: tuple[int, ...]

    def __post_init__(self) -> None:
        expect = len(self.parent.invariant_factors) + self.parent.free_rank
        if len(self.coordinates) != expect:
            raise ValueError(f"expected {expect} coordinates")
        for x, d in zip(self.coordinates, self.parent.invariant_factors):
            if not 0 <= x < d:
                raise ValueError("torsion coordinate out of canonical range")

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coordinates)

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        if self.parent is not other.parent and self.parent != other.parent:
            raise ValueError("classes from different presentations")
        factors = self.parent.invariant_factors
        coords = []
        for i, (x, y) in enumerate(zip(self.coordinates, other.coordinates)):
            s = x + y
            coords.append(s % factors[i] if i < len(factors) else s)
        return CohomologyClass(self.parent, tuple(coords))


def cohomology_at(fragment: ChainFragment, chi: Character,
                  degree: int) -> AbelianGroupPresentation:
    """Cohomology of the chi-twisted cochain complex at a middle degree.

    The degree must have both an incoming and an outgoing coboundary inside
    the fragment.  Generators are canonicalized so that the first nonzero
    entry of each generator cocycle is positive.
    """
    try:
        idx = fragment.degrees.index(degree)
    except ValueError:
        raise DegreeOutOfRange(f"degree {degree} not in fragment") from None
    if idx == 0 or idx == len(fragment.degrees) - 1:
        raise DegreeOutOfRange(f"degree {degree} lacks a coboundary on one side")

    cochain = twisted_cochain(fragment, chi)
    out_m = cochain[idx - 1]   # Hom(C_degree) -> Hom(C_{degree+1})
    in_m = cochain[idx]        # Hom(C_{degree-1}) -> Hom(C_degree)
    if not (out_m * in_m).is_zero():
        raise ValueError("coboundaries do not compose to zero")

    u1, d1, v1 = smith_normal_form(out_m)
    rank_out = sum(1 for x in d1.diagonal() if x)
    dim = out_m.cols
    n_ker = dim - rank_out
    v1_inv = unimodular_inverse(v1)

    kernel_cols = [v1.column(j) for j in range(rank_out, dim)]

    # Coordinates of the incoming image in the kernel basis.
    coords = v1_inv * in_m
    for i in range(rank_out):
        if any(coords.entries[i][j] != 0 for j in range(coords.cols)):
            raise ValueError("incoming image is not contained in the kernel")
    y = IntMatrix.from_rows([coords.entries[i] for i in range(rank_out, dim)],
                            cols=coords.cols)

    u2, d2, _ = smith_normal_form(y)
    diag = list(d2.diagonal()) + [0] * (n_ker - min(y.rows, y.cols))
    rank_y = sum(1 for x in diag if x)
    u2_inv = unimodular_inverse(u2)

    torsion_rows = tuple(i for i in range(rank_y) if diag[i] != 1)
    free_rows = tuple(range(rank_y, n_ker))
    factors = tuple(diag[i] for i in torsion_rows)

    # Generator cocycles in the ambient lattice: kernel basis times U2^(-1).
    gens = []
    flips = []
    for row in torsion_rows + free_rows:
        vec = [sum(kernel_cols[t][amb] * u2_inv.entries[t][row]
                   for t in range(n_ker))
               for amb in range(dim)]
        lead = next((x for x in vec if x), 0)
        flip = -1 if lead < 0 else 1
        flips.append(flip)
        gens.append([flip * x for x in vec])
    basis = IntMatrix.from_rows(
        [[gens[g][amb] for g in range(len(gens))] for amb in range(dim)],
        cols=len(gens))

    return AbelianGroupPresentation(
        free_rank=len(free_rows),
        invariant_factors=factors,
        basis_map=basis,
        _out=out_m,
        _v1_inv=v1_inv,
        _rank_out=rank_out,
        _u2=u2,
        _torsion_rows=torsion_rows,
        _free_rows=free_rows,
        _flips=tuple(flips),
    )


def reduce_class(presentation: AbelianGroupPresentation,
                 cocycle: Sequence[int]) -> CohomologyClass:
    """Express an integer cocycle in the canonical coordinates.

    Raises NotACocycle when the vector has nonzero outgoing coboundary.
    Additive: reduce(a) + reduce(b) equals reduce(a + b).
    """
    vec = [int(x) for x in cocycle]
    if len(vec) != presentation._out.cols:
        raise ValueError(f"cocycle length {len(vec)}, expected "
                         f"{presentation._out.cols}")
    if any(presentation._out.mul_vector(vec)):
        raise NotACocycle("vector is not in the kernel of the outgoing coboundary")

    full = presentation._v1_inv.mul_vector(vec)
    kercoords = list(full[presentation._rank_out:])
    prim = presentation._u2.mul_vector(kercoords)

    coords = []
    for pos, row in enumerate(presentation._torsion_rows):
        d = presentation.invariant_factors[pos]
        coords.append((presentation._flips[pos] * prim[row]) % d)
    n_t = len(presentation._torsion_rows)
    for pos, row in enumerate(presentation._free_rows):
        coords.append(presentation._flips[n_t + pos] * prim[row])
    return CohomologyClass(presentation, tuple(coords))
