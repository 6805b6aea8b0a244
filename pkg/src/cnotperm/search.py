"""Exact minimal CNOT counts by breadth-first search over GL(n, 2).

The distance table stores, for every packed matrix code, the length of the
shortest CNOT word reaching it from the identity. Because every CNOT is an
involution the Cayley graph is undirected, so the table also gives the
distance from any element back to the identity.
"""

from __future__ import annotations

import itertools
import struct
from dataclasses import dataclass
from os import PathLike
from pathlib import Path
from typing import BinaryIO, Iterator

import numpy as np

from . import _kernels
from .errors import (
    BudgetExceededError,
    InvalidInputError,
    TableCorruptError,
    TableFormatError,
    TableIntegrityError,
    TableSizeMismatchError,
    TableVersionError,
    UnrealizableError,
    UnsupportedSizeError,
)
from .gf2 import (
    Circuit,
    CnotGate,
    Gf2Matrix,
    PermSpec,
    apply_code_left,
    cycle_decompose,
    gl_order,
    parse_perm,
    perm_matrix,
)

SENTINEL = _kernels.SENTINEL
MAX_TABLE_N = 5
DEFAULT_BUDGET = 10**9

MAGIC = b"CPDT"
VERSION = 1
_HEADER = struct.Struct("<4sBBQ")


@dataclass(frozen=True, eq=False)
class DistanceTable:
    n: int
    dist: np.ndarray

    def __post_init__(self):
        if self.dist.dtype != np.uint8 or self.dist.shape != (1 << (self.n * self.n),):
            raise InvalidInputError(f"distance array has wrong shape/dtype for n={self.n}")
        self.dist.flags.writeable = False

    def __getitem__(self, m: Gf2Matrix) -> int:
        return int(self.dist[m.code])

    @property
    def element_count(self) -> int:
        return int(np.count_nonzero(self.dist != SENTINEL))

    @property
    def max_distance(self) -> int:
        return int(self.dist[self.dist != SENTINEL].max())

    def histogram(self) -> dict[int, int]:
        counts = np.bincount(self.dist[self.dist != SENTINEL])
        return {d: int(c) for d, c in enumerate(counts) if c}


def _check_size(n: int) -> None:
    if not 2 <= n <= MAX_TABLE_N:
        raise UnsupportedSizeError(
            f"exact tables cover 2 <= n <= {MAX_TABLE_N}; n={n} is out of range"
        )


def build_distance_table(n: int, backend: str | None = None) -> DistanceTable:
    _check_size(n)
    return DistanceTable(n, _kernels.bfs_distances(n, backend))


def check_table_integrity(table: DistanceTable, backend: str | None = None) -> list[str]:
    """Return a list of violated invariants; empty means the table is a true BFS table.

    The checks (single zero at the identity, element count, |delta| <= 1 across
    every edge, a descending neighbor for every positive entry) pin the
    distance function uniquely, so any altered byte is caught.
    """
    problems = []
    n, dist = table.n, table.dist
    ident = _kernels.identity_code(n)
    if dist[ident] != 0:
        problems.append(f"identity entry is {dist[ident]}, expected 0")
    zeros = int(np.count_nonzero(dist == 0))
    if zeros != 1:
        problems.append(f"{zeros} entries have distance 0, expected 1")
    count = table.element_count
    if count != gl_order(n):
        problems.append(f"{count} reachable entries, expected |GL({n},2)| = {gl_order(n)}")
    bad_edges, bad_descent, first = _kernels.check_distances(n, dist, backend)
    if bad_edges:
        problems.append(f"{bad_edges} entries have an edge with |delta| > 1 (first code {first})")
    if bad_descent:
        problems.append(f"{bad_descent} entries lack a neighbor one step closer (first code {first})")
    return problems


def _as_matrix(target: Gf2Matrix | PermSpec | str, n: int | None = None) -> Gf2Matrix:
    if isinstance(target, Gf2Matrix):
        m = target
    else:
        m = perm_matrix(parse_perm(target))
    if n is not None and m.n != n:
        raise InvalidInputError(f"target has {m.n} wires, table has {n}")
    return m


def _checked_distance(target, table: DistanceTable) -> tuple[Gf2Matrix, int]:
    m = _as_matrix(target, table.n)
    d = int(table.dist[m.code])
    if d == SENTINEL:
        raise UnrealizableError(f"target is singular over GF(2): {m.to_lists()}")
    return m, d


def min_cnot_count(target: Gf2Matrix | PermSpec | str, table: DistanceTable) -> int:
    return _checked_distance(target, table)[1]


def _all_gates(n: int) -> list[CnotGate]:
    return [CnotGate(c, t) for c in range(1, n + 1) for t in range(1, n + 1) if c != t]


def extract_one_minimal_circuit(target, table: DistanceTable) -> Circuit:
    """Walk down the distance gradient, taking the smallest (control, target) gate each step.

    The walk runs on the inverse of the target: if ``Gk...G1 @ T^-1 = I`` then
    ``g1...gk`` realizes ``T``, and left multiplication keeps it a row-op walk.
    """
    m, d = _checked_distance(target, table)
    n, dist = table.n, table.dist
    code = m.inverse().code
    gates = []
    for _ in range(d):
        here = dist[code]
        for g in _all_gates(n):
            nxt = apply_code_left(code, n, g.control - 1, g.target - 1)
            if dist[nxt] == here - 1:
                gates.append(g)
                code = nxt
                break
    return Circuit(n, tuple(gates))


def iter_minimal_circuits(target, table: DistanceTable) -> Iterator[Circuit]:
    """Depth-first geodesic enumeration; yields circuits in control-major order."""
    m, d = _checked_distance(target, table)
    n, dist = table.n, table.dist
    moves = [(g, g.control - 1, g.target - 1) for g in _all_gates(n)]
    prefix: list[CnotGate] = []

    def walk(code: int, remaining: int):
        if remaining == 0:
            yield Circuit(n, tuple(prefix))
            return
        for g, c, t in moves:
            nxt = apply_code_left(code, n, c, t)
            if dist[nxt] == remaining - 1:
                prefix.append(g)
                yield from walk(nxt, remaining - 1)
                prefix.pop()

    yield from walk(m.inverse().code, d)


def enumerate_minimal_circuits(target, table: DistanceTable, limit: int | None = None) -> list[Circuit]:
    """All minimal circuits for ``target``, sorted by gate order (letter order when n == 3)."""
    found = list(itertools.islice(iter_minimal_circuits(target, table), limit))
    return sorted(found, key=Circuit.sort_key)


# ------------------------------------------------------- brute-force oracle
#
# Deliberately independent of the packed codes and the table: matrices are
# dense uint8 arrays multiplied with numpy and reduced mod 2.


def _dense_target(target, n: int) -> np.ndarray:
    if isinstance(target, Gf2Matrix):
        if target.n != n:
            raise InvalidInputError(f"target has {target.n} wires, expected {n}")
        return np.array(target.to_lists(), dtype=np.uint8)
    p = parse_perm(target)
    if p.n != n:
        raise InvalidInputError(f"permutation has {p.n} elements, expected {n}")
    out = np.zeros((n, n), dtype=np.uint8)
    for i, s in enumerate(p.images):
        out[i, s - 1] = 1
    return out


def _dense_gates(n: int) -> tuple[list[tuple[int, int]], np.ndarray]:
    pairs = [(c, t) for c in range(1, n + 1) for t in range(1, n + 1) if c != t]
    mats = np.zeros((len(pairs), n, n), dtype=np.uint8)
    for k, (c, t) in enumerate(pairs):
        mats[k] = np.eye(n, dtype=np.uint8)
        mats[k, t - 1, c - 1] = 1
    return pairs, mats


def _brute_force(target, n: int, length: int, budget: int, collect: bool):
    if length < 0:
        raise InvalidInputError("length must be non-negative")
    pairs, gates = _dense_gates(n)
    m = len(pairs)
    total = m**length
    if total > budget:
        raise BudgetExceededError(f"{m}^{length} = {total} sequences exceeds budget {budget}")
    want = _dense_target(target, n)

    # Tail products for the last `tail_len` gates, indexed lexicographically.
    tail_len = 0
    while tail_len < length and m ** (tail_len + 1) <= 1 << 18:
        tail_len += 1
    tails = np.eye(n, dtype=np.uint8)[None]
    for _ in range(tail_len):
        # appending a gate on the right of the sequence multiplies on the left
        tails = (gates[None, :] @ tails[:, None]) % 2
        tails = tails.reshape(-1, n, n).astype(np.uint8)

    count = 0
    hits = []
    for head in itertools.product(range(m), repeat=length - tail_len):
        head_mat = np.eye(n, dtype=np.uint8)
        for k in head:
            head_mat = (gates[k] @ head_mat) % 2
        full = (tails @ head_mat) % 2
        match = np.flatnonzero(np.all(full == want, axis=(1, 2)))
        count += match.size
        if collect:
            for idx in match:
                seq = list(head)
                digits = []
                for _ in range(tail_len):
                    idx, r = divmod(int(idx), m)
                    digits.append(r)
                seq.extend(reversed(digits))
                hits.append(Circuit.from_pairs(n, (pairs[k] for k in seq)))
    return count, hits


def brute_force_count_sequences(target, n: int, length: int, budget: int = DEFAULT_BUDGET) -> int:
    """Count all length-``length`` CNOT sequences whose product equals ``target``."""
    return _brute_force(target, n, length, budget, collect=False)[0]


def brute_force_sequences(target, n: int, length: int, budget: int = DEFAULT_BUDGET) -> list[Circuit]:
    return _brute_force(target, n, length, budget, collect=True)[1]


# ------------------------------------------------------------------ bounds


def lower_bound_rows(target: Gf2Matrix | PermSpec | str) -> int:
    """Rows that differ from the identity; each CNOT rewrites one row, so this never overshoots."""
    m = _as_matrix(target)
    return sum(1 for i, row in enumerate(m.rows) if row != 1 << i)


def upper_bound_cycles(p: PermSpec | str) -> int:
    """Three CNOTs per transposition, summed over cycles: 3(len - 1) each."""
    return sum(3 * (len(cycle) - 1) for cycle in cycle_decompose(p))


# ------------------------------------------------------------- persistence


def save_table(table: DistanceTable, destination: str | PathLike | BinaryIO) -> None:
    payload = table.dist.tobytes()
    header = _HEADER.pack(MAGIC, VERSION, table.n, len(payload))
    if hasattr(destination, "write"):
        destination.write(header + payload)
        return
    path = Path(destination)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(header + payload)
    tmp.replace(path)


def load_table(source: str | PathLike | BinaryIO, expected_n: int | None = None) -> DistanceTable:
    if hasattr(source, "read"):
        raw = source.read()
    else:
        raw = Path(source).read_bytes()
    if len(raw) < len(MAGIC) or raw[: len(MAGIC)] != MAGIC:
        raise TableFormatError("missing CPDT magic bytes")
    if len(raw) < _HEADER.size:
        raise TableCorruptError(f"header truncated: {len(raw)} bytes")
    _, version, n, length = _HEADER.unpack_from(raw)
    if version != VERSION:
        raise TableVersionError(f"unsupported table version {version}, expected {VERSION}")
    if expected_n is not None and n != expected_n:
        raise TableSizeMismatchError(f"file holds n={n}, expected n={expected_n}")
    if not 1 <= n <= MAX_TABLE_N or length != 1 << (n * n):
        raise TableCorruptError(f"payload length {length} inconsistent with n={n}")
    payload = raw[_HEADER.size :]
    if len(payload) != length:
        raise TableCorruptError(f"payload has {len(payload)} bytes, header says {length}")
    dist = np.frombuffer(payload, dtype=np.uint8).copy()
    return DistanceTable(n, dist)


def table_path(cache_dir: str | PathLike, n: int) -> Path:
    return Path(cache_dir) / f"cpdt-n{n}.bin"


def load_verified_table(path: str | PathLike, n: int) -> DistanceTable:
    """Load a cached table and refuse it unless every distance invariant holds."""
    table = load_table(path, expected_n=n)
    problems = check_table_integrity(table)
    if problems:
        raise TableIntegrityError(f"{path}: " + "; ".join(problems))
    return table
