"""Finite groups as multiplication tables, integral group rings, sign characters.

This is the scalar layer for the chain-complex and obstruction machinery:
everything downstream works over Lambda = Z[G] for a finite group G given by
an explicit Cayley table.  All arithmetic uses Python's arbitrary-precision
integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence


class InconsistentCharacter(ValueError):
    """Generator signs contradict the group relations."""


class CayleyTableError(ValueError):
    """Malformed Cayley-table text; the message carries line/column info."""


class GroupTable:
    """A finite group given by an explicit multiplication table.

    Elements are the indices ``0..order-1`` and ``mul[a][b]`` is the index of
    the product ``a*b``.  Construction validates the group axioms
    (associativity, two-sided identity, inverses) and that the named
    generators actually generate.  Instances are immutable.
    """

    __slots__ = ("order", "mul", "identity", "generator_names", "element_words",
                 "_word_index", "_inverses")

    def __init__(self, mul: Sequence[Sequence[int]],
                 generator_names: Mapping[str, int]) -> None:
        table = tuple(tuple(int(x) for x in row) for row in mul)
        n = len(table)
        if n == 0:
            raise ValueError("empty multiplication table")
        for i, row in enumerate(table):
            if len(row) != n:
                raise ValueError(f"mul row {i} has length {len(row)}, expected {n}")
            for x in row:
                if not 0 <= x < n:
                    raise ValueError(f"mul entry {x} out of range 0..{n - 1}")
        self.order = n
        self.mul = table

        identity = None
        for e in range(n):
            if all(table[e][x] == x and table[x][e] == x for x in range(n)):
                identity = e
                break
        if identity is None:
            raise ValueError("table has no two-sided identity")
        self.identity = identity

        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if table[table[a][b]][c] != table[a][table[b][c]]:
                        raise ValueError(
                            f"multiplication is not associative at ({a},{b},{c})")

        inverses = []
        for a in range(n):
            inv = next((b for b in range(n) if table[a][b] == identity), None)
            if inv is None or table[inv][a] != identity:
                raise ValueError(f"element {a} has no two-sided inverse")
            inverses.append(inv)
        self._inverses = tuple(inverses)

        gens = {}
        for name, idx in generator_names.items():
            name = str(name)
            idx = int(idx)
            if not 0 <= idx < n:
                raise ValueError(f"generator {name!r} index {idx} out of range")
            if name in gens or name == "e":
                raise ValueError(f"bad or duplicate generator name {name!r}")
            gens[name] = idx
        self.generator_names = gens

        self.element_words = self._assign_words()
        self._word_index = {w: i for i, w in enumerate(self.element_words)}

    def _assign_words(self) -> tuple[str, ...]:
        # Shortest product-of-generators normal form, breadth first in the
        # declared generator order.  Doubles as the generation check.
        words: list[str | None] = [None] * self.order
        words[self.identity] = "e"
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for name, g in self.generator_names.items():
                    y = self.mul[x][g]
                    if words[y] is None:
                        words[y] = name if words[x] == "e" else f"{words[x]}*{name}"
                        nxt.append(y)
            frontier = nxt
        if any(w is None for w in words):
            missing = [i for i, w in enumerate(words) if w is None]
            raise ValueError(f"named generators do not generate; unreached: {missing}")
        return tuple(words)  # type: ignore[arg-type]

    def product(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def inverse(self, a: int) -> int:
        return self._inverses[a]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul[x][a]
            k += 1
        return k

    def elements(self) -> range:
        return range(self.order)

    def word(self, a: int) -> str:
        return self.element_words[a]

    def index_of_word(self, word: str) -> int:
        try:
            return self._word_index[word]
        except KeyError:
            raise ValueError(f"unknown element word {word!r}") from None

    def generator(self, name: str) -> int:
        try:
            return self.generator_names[name]
        except KeyError:
            raise ValueError(f"unknown generator {name!r}") from None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupTable):
            return NotImplemented
        return (self.mul == other.mul
                and self.generator_names == other.generator_names)

    def __hash__(self) -> int:
        return hash((self.mul, tuple(self.generator_names.items())))

    def __repr__(self) -> str:
        gens = ",".join(self.generator_names)
        return f"GroupTable(order={self.order}, generators={gens})"


# The dihedral group of order 8, realized by signed coordinate moves on a
# square: alpha flips x, beta flips y, gamma swaps the axes.  Elements are
# enumerated in the fixed normal-form order
#   e, a, b, a*b, g, a*g, b*g, a*b*g
# which pins the coefficient layout of every matrix built downstream.
_D8_MOVES = (
    (False, 1, 1), (False, -1, 1), (False, 1, -1), (False, -1, -1),
    (True, 1, 1), (True, -1, 1), (True, 1, -1), (True, -1, -1),
)


def _move_apply(g, v):
    swap, sx, sy = g
    x, y = v
    return (sx * (y if swap else x), sy * (x if swap else y))


def build_d8() -> GroupTable:
    """The dihedral group of order 8 with generators alpha, beta, gamma.

    The generators are the three distinguished involutions of the square
    (reflect x, reflect y, swap axes); they satisfy alpha*gamma = gamma*beta
    and beta*gamma = gamma*alpha.
    """
    index = {m: i for i, m in enumerate(_D8_MOVES)}
    probes = ((1, 2), (3, 5))

    def compose(g, h):
        image = tuple(_move_apply(g, _move_apply(h, v)) for v in probes)
        for cand in _D8_MOVES:
            if tuple(_move_apply(cand, v) for v in probes) == image:
                return index[cand]
        raise AssertionError("composition left the group")

    mul = [[compose(g, h) for h in _D8_MOVES] for g in _D8_MOVES]
    return GroupTable(mul, {"alpha": 1, "beta": 2, "gamma": 4})


def build_cyclic(n: int, generator_name: str = "omega") -> GroupTable:
    """Cyclic group of order n, written multiplicatively."""
    if n < 1:
        raise ValueError(f"cyclic group order must be positive, got {n}")
    mul = [[(i + j) % n for j in range(n)] for i in range(n)]
    return GroupTable(mul, {generator_name: 1 % n})


class GroupRingElement:
    """A formal integer combination of group elements.

    Coefficients are stored sparsely by element index; zero coefficients are
    never kept, so equality of maps is equality of elements.  Supports +, -,
    negation, scalar multiplication, and the convolution product.
    """

    __slots__ = ("group", "coeffs")

    def __init__(self, group: GroupTable, coeffs: Mapping[int, int] | None = None) -> None:
        self.group = group
        clean = {}
        for idx, c in (coeffs or {}).items():
            idx = int(idx)
            c = int(c)
            if not 0 <= idx < group.order:
                raise ValueError(f"element index {idx} out of range")
            if c:
                clean[idx] = c
        self.coeffs = clean

    @classmethod
    def from_words(cls, group: GroupTable, words: Mapping[str, int]) -> "GroupRingElement":
        return cls(group, {group.index_of_word(w): c for w, c in words.items()})

    @classmethod
    def zero(cls, group: GroupTable) -> "GroupRingElement":
        return cls(group, {})

    @classmethod
    def one(cls, group: GroupTable) -> "GroupRingElement":
        return cls(group, {group.identity: 1})

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check_group(self, other: "GroupRingElement") -> None:
        if self.group != other.group:
            raise ValueError("group ring elements live over different groups")

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        self._check_group(other)
        out = dict(self.coeffs)
        for idx, c in other.coeffs.items():
            out[idx] = out.get(idx, 0) + c
        return GroupRingElement(self.group, out)

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement(self.group, {i: -c for i, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement(self.group,
                                    {i: c * other for i, c in self.coeffs.items()})
        if isinstance(other, GroupRingElement):
            self._check_group(other)
            mul = self.group.mul
            out: dict[int, int] = {}
            for i, ci in self.coeffs.items():
                row = mul[i]
                for j, cj in other.coeffs.items():
                    k = row[j]
                    out[k] = out.get(k, 0) + ci * cj
            return GroupRingElement(self.group, out)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.group == other.group and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.group, tuple(sorted(self.coeffs.items()))))

    def words(self) -> dict[str, int]:
        """Coefficients keyed by element word, in element order."""
        return {self.group.word(i): self.coeffs[i] for i in sorted(self.coeffs)}

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in sorted(self.coeffs):
            c = self.coeffs[i]
            w = self.group.word(i)
            if w == "e":
                term = str(abs(c))
            elif abs(c) == 1:
                term = w
            else:
                term = f"{abs(c)}*{w}"
            parts.append(("- " if c < 0 else "+ ") + term)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"<GroupRingElement {self}>"


def ring_element(group: GroupTable, terms: Mapping[str | int, int]) -> GroupRingElement:
    """Build a group-ring element from word or index keys."""
    coeffs: dict[int, int] = {}
    for key, c in terms.items():
        idx = group.index_of_word(key) if isinstance(key, str) else int(key)
        coeffs[idx] = coeffs.get(idx, 0) + int(c)
    return GroupRingElement(group, coeffs)


def ring_mul(a: GroupRingElement, b: GroupRingElement, group: GroupTable) -> GroupRingElement:
    """Convolution product in Z[G]."""
    if a.group != group or b.group != group:
        raise ValueError("operands do not live over the given group")
    return a * b


@dataclass(frozen=True)
class Character:
    """A multiplicative sign function G -> {+1, -1}."""

    group: GroupTable
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.group.order:
            raise InconsistentCharacter("character length does not match group order")
        if any(v not in (1, -1) for v in self.values):
            raise InconsistentCharacter("character values must be +1 or -1")
        mul = self.group.mul
        for a in self.group.elements():
            for b in self.group.elements():
                if self.values[mul[a][b]] != self.values[a] * self.values[b]:
                    raise InconsistentCharacter(
                        f"not multiplicative at ({a},{b})")

    def __call__(self, idx: int) -> int:
        return self.values[idx]

    def sign_of_word(self, word: str) -> int:
        return self.values[self.group.index_of_word(word)]


def trivial_character(group: GroupTable) -> Character:
    return Character(group, (1,) * group.order)


def character_from_generator_signs(group: GroupTable,
                                   signs: Mapping[str, int]) -> Character:
    """Extend signs on the named generators to a full character.

    Raises InconsistentCharacter when the relations of the group force a
    contradiction (for the dihedral group this happens exactly when alpha
    and beta receive different signs).
    """
    for name in group.generator_names:
        if name not in signs:
            raise InconsistentCharacter(f"missing sign for generator {name!r}")
    for name, s in signs.items():
        if name not in group.generator_names:
            raise InconsistentCharacter(f"unknown generator {name!r}")
        if s not in (1, -1):
            raise InconsistentCharacter(f"sign for {name!r} must be +1 or -1")

    values: list[int | None] = [None] * group.order
    values[group.identity] = 1
    frontier = [group.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for name, g in group.generator_names.items():
                y = group.mul[x][g]
                v = values[x] * signs[name]  # type: ignore[operator]
                if values[y] is None:
                    values[y] = v
                    nxt.append(y)
                elif values[y] != v:
                    raise InconsistentCharacter(
                        f"relations force conflicting signs on element {y}")
        frontier = nxt
    # Character.__post_init__ re-checks full multiplicativity.
    return Character(group, tuple(values))  # type: ignore[arg-type]


def augment(a: GroupRingElement, chi: Character) -> int:
    """The twisted augmentation Z[G] -> Z, sum of coeff(g) * chi(g)."""
    if a.group != chi.group:
        raise ValueError("element and character live over different groups")
    return sum(c * chi.values[i] for i, c in a.coeffs.items())


def group_from_cayley_text(text: str) -> GroupTable:
    """Parse the Cayley-table text format.

    Format: a line ``order n``, then n lines of n whitespace-separated
    0-based element indices, then a line ``generators name=index ...``.
    Blank lines are ignored.  Malformed input raises CayleyTableError with
    line (and column, where sensible) positions.
    """
    lines = [(i + 1, line.strip()) for i, line in enumerate(text.splitlines())]
    lines = [(no, line) for no, line in lines if line]
    if not lines:
        raise CayleyTableError("line 1: empty input, expected 'order N'")

    pos = 0
    no, header = lines[pos]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "order":
        raise CayleyTableError(f"line {no}: expected 'order N', got {header!r}")
    try:
        n = int(parts[1])
    except ValueError:
        raise CayleyTableError(f"line {no}: order {parts[1]!r} is not an integer") from None
    if n < 1:
        raise CayleyTableError(f"line {no}: order must be positive, got {n}")
    pos += 1

    table = []
    for r in range(n):
        if pos >= len(lines):
            raise CayleyTableError(f"line {lines[-1][0]}: expected {n} table rows, found {r}")
        no, line = lines[pos]
        items = line.split()
        if len(items) != n:
            raise CayleyTableError(
                f"line {no}: expected {n} entries, found {len(items)}")
        row = []
        for col, item in enumerate(items, start=1):
            try:
                v = int(item)
            except ValueError:
                raise CayleyTableError(
                    f"line {no}, column {col}: entry {item!r} is not an integer") from None
            if not 0 <= v < n:
                raise CayleyTableError(
                    f"line {no}, column {col}: entry {v} out of range 0..{n - 1}")
            row.append(v)
        table.append(row)
        pos += 1

    if pos >= len(lines):
        raise CayleyTableError(f"line {lines[-1][0]}: missing 'generators' line")
    no, gen_line = lines[pos]
    items = gen_line.split()
    if not items or items[0] != "generators" or len(items) < 2:
        raise CayleyTableError(
            f"line {no}: expected 'generators name=index ...', got {gen_line!r}")
    gens: dict[str, int] = {}
    for item in items[1:]:
        name, sep, idx_text = item.partition("=")
        if not sep or not name:
            raise CayleyTableError(f"line {no}: bad generator entry {item!r}")
        try:
            idx = int(idx_text)
        except ValueError:
            raise CayleyTableError(
                f"line {no}: generator index {idx_text!r} is not an integer") from None
        if not 0 <= idx < n:
            raise CayleyTableError(
                f"line {no}: generator {name!r} index {idx} out of range 0..{n - 1}")
        if name in gens:
            raise CayleyTableError(f"line {no}: duplicate generator name {name!r}")
        gens[name] = idx
    if pos + 1 < len(lines):
        raise CayleyTableError(f"line {lines[pos + 1][0]}: unexpected trailing content")

    try:
        return GroupTable(table, gens)
    except ValueError as exc:
        raise CayleyTableError(f"table is not a generated group: {exc}") from exc


def load_cayley_table(path: str | Path) -> GroupTable:
    return group_from_cayley_text(Path(path).read_text(encoding="utf-8"))
