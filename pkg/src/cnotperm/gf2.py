"""CNOT-only circuits as invertible linear maps over GF(2).

A CNOT with control ``c`` and target ``t`` maps a basis bit-vector ``x`` by
``x[t] ^= x[c]``; as a matrix acting on column vectors that is ``I + E[t, c]``.
Circuits are read left to right, so the first gate acts first and the matrix
of ``g1 g2 ... gk`` is ``Gk @ ... @ G1``.

Matrices are bit-packed row-major: entry ``(i, j)`` (0-based) lives at bit
``i * n + j`` of an integer code, bit 0 least significant. Wire indices are
1-based everywhere a user sees them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import CircuitParseError, InvalidInputError

__all__ = [
    "LETTER_GATES",
    "CnotGate",
    "Circuit",
    "Gf2Matrix",
    "PermSpec",
    "gate_matrix",
    "apply_gate_left",
    "circuit_matrix",
    "perm_matrix",
    "apply_circuit_to_state",
    "cycle_decompose",
    "is_reducible",
    "parse_circuit",
    "format_circuit",
    "parse_perm",
    "parse_bits",
    "gl_order",
]

# Three-wire letter names, listed in their canonical A < B < ... < F order.
LETTER_GATES: dict[str, tuple[int, int]] = {
    "A": (1, 2),
    "B": (2, 1),
    "C": (1, 3),
    "D": (3, 1),
    "E": (2, 3),
    "F": (3, 2),
}
_GATE_LETTERS = {pair: letter for letter, pair in LETTER_GATES.items()}
_LETTER_RANK = {pair: rank for rank, pair in enumerate(LETTER_GATES.values())}


def gl_order(n: int) -> int:
    """Number of invertible n x n matrices over GF(2)."""
    order = 1
    for i in range(n):
        order *= (1 << n) - (1 << i)
    return order


@dataclass(frozen=True, order=True)
class CnotGate:
    control: int
    target: int

    def __post_init__(self):
        if self.control == self.target:
            raise InvalidInputError(f"control and target coincide: {self.control}")
        if self.control < 1 or self.target < 1:
            raise InvalidInputError(f"wire indices are 1-based: {self.control}>{self.target}")

    def validate(self, n: int) -> None:
        if self.control > n or self.target > n:
            raise InvalidInputError(f"gate {self} exceeds {n} wires")

    @property
    def letter(self) -> str | None:
        return _GATE_LETTERS.get((self.control, self.target))

    def __str__(self) -> str:
        return f"{self.control}>{self.target}"


def _sort_key(gate: CnotGate, n: int) -> tuple[int, int]:
    # n=3 orders gates by letter; other sizes are control-major.
    if n == 3:
        return (_LETTER_RANK[(gate.control, gate.target)], 0)
    return (gate.control, gate.target)


@dataclass(frozen=True)
class Circuit:
    n: int
    gates: tuple[CnotGate, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInputError(f"wire count must be positive, got {self.n}")
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            g.validate(self.n)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Sequence[int]]) -> "Circuit":
        return cls(n, tuple(CnotGate(int(c), int(t)) for c, t in pairs))

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __add__(self, other: "Circuit") -> "Circuit":
        if other.n != self.n:
            raise InvalidInputError("cannot concatenate circuits on different wire counts")
        return Circuit(self.n, self.gates + other.gates)

    def pairs(self) -> list[list[int]]:
        return [[g.control, g.target] for g in self.gates]

    def sort_key(self) -> tuple:
        return tuple(_sort_key(g, self.n) for g in self.gates)

    def __str__(self) -> str:
        return format_circuit(self)


class Gf2Matrix:
    """Square 0/1 matrix stored as a packed integer code."""

    __slots__ = ("n", "code")

    def __init__(self, n: int, code: int):
        if n < 1:
            raise InvalidInputError(f"dimension must be positive, got {n}")
        if code < 0 or code >> (n * n):
            raise InvalidInputError(f"code {code} does not fit a {n}x{n} matrix")
        self.n = n
        self.code = code

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls(n, sum(1 << (i * n + i) for i in range(n)))

    @classmethod
    def from_rows(cls, rows: Sequence[int], n: int | None = None) -> "Gf2Matrix":
        """Build from per-row bitmasks (bit j of a row = column j)."""
        n = len(rows) if n is None else n
        if len(rows) != n:
            raise InvalidInputError(f"expected {n} rows, got {len(rows)}")
        mask = (1 << n) - 1
        code = 0
        for i, row in enumerate(rows):
            if row & ~mask:
                raise InvalidInputError(f"row {i} has bits beyond column {n}")
            code |= row << (i * n)
        return cls(n, code)

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> "Gf2Matrix":
        n = len(entries)
        rows = []
        for r in entries:
            if len(r) != n:
                raise InvalidInputError("matrix is not square")
            rows.append(sum((int(v) & 1) << j for j, v in enumerate(r)))
        return cls.from_rows(rows, n)

    @property
    def rows(self) -> list[int]:
        mask = (1 << self.n) - 1
        return [(self.code >> (i * self.n)) & mask for i in range(self.n)]

    def to_lists(self) -> list[list[int]]:
        return [[(row >> j) & 1 for j in range(self.n)] for row in self.rows]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.code >> (i * self.n + j)) & 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, Gf2Matrix):
            return NotImplemented
        return self.n == other.n and self.code == other.code

    def __hash__(self) -> int:
        return hash((self.n, self.code))

    def __repr__(self) -> str:
        return f"Gf2Matrix(n={self.n}, rows={self.to_lists()})"

    def __matmul__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if other.n != self.n:
            raise InvalidInputError("dimension mismatch")
        b_rows = other.rows
        out = []
        for row in self.rows:
            acc = 0
            j = 0
            while row:
                if row & 1:
                    acc ^= b_rows[j]
                row >>= 1
                j += 1
            out.append(acc)
        return Gf2Matrix.from_rows(out, self.n)

    def apply(self, bits: Sequence[int]) -> tuple[int, ...]:
        """Multiply by a column bit-vector."""
        if len(bits) != self.n:
            raise InvalidInputError(f"vector length {len(bits)} != {self.n}")
        x = sum((b & 1) << j for j, b in enumerate(bits))
        return tuple(bin(row & x).count("1") & 1 for row in self.rows)

    def _eliminate(self) -> tuple[int, list[int]]:
        """Gauss-Jordan; returns (rank, rows of the inverse if full rank)."""
        n = self.n
        aug = [row | (1 << (n + i)) for i, row in enumerate(self.rows)]
        rank = 0
        for col in range(n):
            pivot = next((r for r in range(rank, n) if aug[r] >> col & 1), None)
            if pivot is None:
                continue
            aug[rank], aug[pivot] = aug[pivot], aug[rank]
            for r in range(n):
                if r != rank and aug[r] >> col & 1:
                    aug[r] ^= aug[rank]
            rank += 1
        return rank, [row >> n for row in aug]

    def rank(self) -> int:
        return self._eliminate()[0]

    def is_invertible(self) -> bool:
        return self.rank() == self.n

    def inverse(self) -> "Gf2Matrix":
        rank, inv = self._eliminate()
        if rank != self.n:
            raise InvalidInputError("matrix is singular over GF(2)")
        return Gf2Matrix.from_rows(inv, self.n)

    def is_permutation(self) -> bool:
        rows = self.rows
        return all(bin(r).count("1") == 1 for r in rows) and len(set(rows)) == self.n


@dataclass(frozen=True)
class PermSpec:
    """One-line wire permutation: output wire i carries input wire images[i-1]."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise InvalidInputError(f"not a permutation of 1..{len(images)}: {list(images)}")

    @classmethod
    def identity(cls, n: int) -> "PermSpec":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def full_cycle(cls, n: int) -> "PermSpec":
        """The shift sending |a1,...,an> to |a2,...,an,a1>."""
        return cls(tuple(range(2, n + 1)) + (1,))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def inverse(self) -> "PermSpec":
        inv = [0] * self.n
        for i, s in enumerate(self.images, start=1):
            inv[s - 1] = i
        return PermSpec(tuple(inv))

    def __str__(self) -> str:
        if self.n <= 9:
            return "".join(map(str, self.images))
        return ",".join(map(str, self.images))


def parse_perm(text: str | PermSpec) -> PermSpec:
    """Accept ``"2341"`` (n <= 9) or ``"2,3,4,1"``."""
    if isinstance(text, PermSpec):
        return text
    text = text.strip()
    try:
        if "," in text:
            return PermSpec(tuple(int(tok) for tok in text.split(",")))
        if text.isdigit():
            return PermSpec(tuple(int(ch) for ch in text))
    except ValueError as exc:
        raise InvalidInputError(f"bad permutation {text!r}: {exc}") from None
    raise InvalidInputError(f"bad permutation {text!r}")


def parse_bits(text: str | Sequence[int], n: int | None = None) -> tuple[int, ...]:
    if isinstance(text, str):
        bits = tuple(int(ch) for ch in text.replace(",", "").replace(" ", "") if ch in "01")
        if len(bits) != len(text.replace(",", "").replace(" ", "")):
            raise InvalidInputError(f"bit string may contain only 0 and 1: {text!r}")
    else:
        bits = tuple(int(b) for b in text)
        if any(b not in (0, 1) for b in bits):
            raise InvalidInputError(f"bits must be 0 or 1: {list(text)}")
    if n is not None and len(bits) != n:
        raise InvalidInputError(f"expected {n} bits, got {len(bits)}")
    return bits


_TOKEN = re.compile(r"\S+")
_PAIR = re.compile(r"^(\d+)>(\d+)$")
EMPTY_MARKER = "—"


def parse_circuit(text: str, n: int) -> Circuit:
    """Parse ``"1>2 2>3"`` tokens, or a letter string such as ``"AEFDCB"`` when n == 3."""
    stripped = text.strip()
    if stripped in ("", EMPTY_MARKER, "-"):
        return Circuit(n)
    if n == 3 and re.fullmatch(r"[A-Fa-f\s]+", stripped):
        gates = []
        for ch in stripped:
            if not ch.isspace():
                gates.append(CnotGate(*LETTER_GATES[ch.upper()]))
        return Circuit(3, tuple(gates))
    gates = []
    for m in _TOKEN.finditer(text):
        col = m.start() + 1
        tok = _PAIR.match(m.group())
        if tok is None:
            raise CircuitParseError(f"expected 'control>target', got {m.group()!r}", col)
        c, t = int(tok.group(1)), int(tok.group(2))
        if c == t or not (1 <= c <= n and 1 <= t <= n):
            raise CircuitParseError(f"gate {m.group()!r} invalid on {n} wires", col)
        gates.append(CnotGate(c, t))
    return Circuit(n, tuple(gates))


def format_circuit(circuit: Circuit) -> str:
    if not circuit.gates:
        return EMPTY_MARKER
    if circuit.n == 3:
        return "".join(g.letter for g in circuit.gates)
    return " ".join(str(g) for g in circuit.gates)


def gate_matrix(g: CnotGate, n: int) -> Gf2Matrix:
    g.validate(n)
    ident = Gf2Matrix.identity(n)
    return Gf2Matrix(n, ident.code | 1 << ((g.target - 1) * n + g.control - 1))


def apply_code_left(code: int, n: int, control: int, target: int) -> int:
    """Row op on a packed code with 0-based wires: row[target] ^= row[control]."""
    row = (code >> (control * n)) & ((1 << n) - 1)
    return code ^ (row << (target * n))


def apply_gate_left(m: Gf2Matrix, g: CnotGate) -> Gf2Matrix:
    """Return ``gate_matrix(g) @ m``."""
    g.validate(m.n)
    return Gf2Matrix(m.n, apply_code_left(m.code, m.n, g.control - 1, g.target - 1))


def circuit_matrix(c: Circuit) -> Gf2Matrix:
    code = Gf2Matrix.identity(c.n).code
    for g in c.gates:
        code = apply_code_left(code, c.n, g.control - 1, g.target - 1)
    return Gf2Matrix(c.n, code)


def perm_matrix(p: PermSpec | str) -> Gf2Matrix:
    p = parse_perm(p)
    return Gf2Matrix.from_rows([1 << (s - 1) for s in p.images], p.n)


def matrix_to_perm(m: Gf2Matrix) -> PermSpec | None:
    if not m.is_permutation():
        return None
    return PermSpec(tuple(row.bit_length() for row in m.rows))


def apply_circuit_to_state(c: Circuit, x: Sequence[int]) -> tuple[int, ...]:
    state = list(parse_bits(x, c.n))
    for g in c.gates:
        state[g.target - 1] ^= state[g.control - 1]
    return tuple(state)


def cycle_decompose(p: PermSpec | str) -> list[tuple[int, ...]]:
    """Disjoint cycles of ``i -> images[i]``, fixed points included.

    Each cycle starts at its smallest element; cycles are sorted by that element.
    """
    p = parse_perm(p)
    seen = set()
    cycles = []
    for start in range(1, p.n + 1):
        if start in seen:
            continue
        cycle = []
        i = start
        while i not in seen:
            seen.add(i)
            cycle.append(i)
            i = p(i)
        cycles.append(tuple(cycle))
    return cycles


def is_reducible(p: PermSpec | str) -> bool:
    p = parse_perm(p)
    return p.n >= 2 and len(cycle_decompose(p)) > 1
