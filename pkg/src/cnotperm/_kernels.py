"""Hot loops over packed GF(2) matrix codes.

Every kernel has a numba implementation and a pure-numpy one with identical
results. The numba path is used when numba imports and the environment
variable ``CNOTPERM_NUMBA`` is not set to ``0``/``false``/``off``/``no``.
Callers may force a path with ``backend="numba"`` or ``backend="numpy"``.
"""

from __future__ import annotations

import os

import numpy as np

SENTINEL = 255

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

_DISABLED = os.environ.get("CNOTPERM_NUMBA", "1").strip().lower() in ("0", "false", "off", "no")
DEFAULT_BACKEND = "numba" if HAVE_NUMBA and not _DISABLED else "numpy"


def resolve_backend(backend: str | None) -> str:
    if backend is None:
        return DEFAULT_BACKEND
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not importable")
    return backend


def gate_arrays(n: int) -> tuple[np.ndarray, np.ndarray]:
    """0-based (controls, targets) of all n(n-1) CNOTs, control-major order."""
    pairs = [(c, t) for c in range(n) for t in range(n) if c != t]
    controls = np.array([c for c, _ in pairs], dtype=np.int64)
    targets = np.array([t for _, t in pairs], dtype=np.int64)
    return controls, targets


def identity_code(n: int) -> int:
    return sum(1 << (i * n + i) for i in range(n))


# ---------------------------------------------------------------- numpy path


def _bfs_numpy(n, controls, targets, dist):
    mask = np.int64((1 << n) - 1)
    frontier = np.array([identity_code(n)], dtype=np.int64)
    d = 0
    while frontier.size:
        d += 1
        for c, t in zip(controls, targets):
            rows = (frontier >> np.int64(c * n)) & mask
            nb = frontier ^ (rows << np.int64(t * n))
            nb = nb[dist[nb] == SENTINEL]
            dist[nb] = d
        frontier = np.flatnonzero(dist == d).astype(np.int64)
    return dist


def _check_numpy(n, controls, targets, dist):
    """Return (bad_edges, bad_descent, first_bad_code) over valid entries."""
    mask = np.int64((1 << n) - 1)
    codes = np.flatnonzero(dist != SENTINEL).astype(np.int64)
    here = dist[codes].astype(np.int64)
    bad_edges = np.zeros(codes.size, dtype=bool)
    has_descent = here == 0
    for c, t in zip(controls, targets):
        rows = (codes >> np.int64(c * n)) & mask
        nb = dist[codes ^ (rows << np.int64(t * n))].astype(np.int64)
        bad_edges |= (nb == SENTINEL) | (np.abs(nb - here) > 1)
        has_descent |= nb == here - 1
    bad = bad_edges | ~has_descent
    first = int(codes[np.argmax(bad)]) if bad.any() else -1
    return int(bad_edges.sum()), int((~has_descent).sum()), first


def _multiply_numpy(a, b, n):
    mask = np.int64((1 << n) - 1)
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    a, b = np.broadcast_arrays(a, b)
    b_rows = [(b >> np.int64(j * n)) & mask for j in range(n)]
    out = np.zeros(a.shape, dtype=np.int64)
    for i in range(n):
        acc = np.zeros(a.shape, dtype=np.int64)
        for j in range(n):
            bit = (a >> np.int64(i * n + j)) & 1
            acc ^= bit * b_rows[j]
        out |= acc << np.int64(i * n)
    return out


def _invert_numpy(codes, n):
    codes = np.asarray(codes, dtype=np.int64)
    mask = np.int64((1 << n) - 1)
    count = codes.size
    flat = codes.reshape(-1)
    aug = np.stack(
        [((flat >> np.int64(i * n)) & mask) | np.int64(1 << (n + i)) for i in range(n)], axis=1
    )
    ok = np.ones(count, dtype=bool)
    idx = np.arange(count)
    for col in range(n):
        bits = (aug[:, col:] >> np.int64(col)) & 1
        ok &= bits.any(axis=1)
        piv = col + np.argmax(bits, axis=1)
        pivot_rows = aug[idx, piv].copy()
        aug[idx, piv] = aug[:, col]
        aug[:, col] = pivot_rows
        hit = (aug >> np.int64(col)) & 1
        hit[:, col] = 0
        aug ^= hit * pivot_rows[:, None]
    inv = np.zeros(count, dtype=np.int64)
    for i in range(n):
        inv |= (aug[:, i] >> np.int64(n)) << np.int64(i * n)
    inv[~ok] = -1
    return inv.reshape(codes.shape)


# ---------------------------------------------------------------- numba path

if HAVE_NUMBA:

    @numba.njit(cache=True)
    def _bfs_numba(n, controls, targets, dist, queue):
        mask = (1 << n) - 1
        start = 0
        for i in range(n):
            start |= 1 << (i * n + i)
        dist[start] = 0
        queue[0] = start
        head = 0
        tail = 1
        ngates = controls.shape[0]
        while head < tail:
            code = queue[head]
            head += 1
            d = dist[code] + 1
            for g in range(ngates):
                row = (code >> (controls[g] * n)) & mask
                nb = code ^ (row << (targets[g] * n))
                if dist[nb] == 255:
                    dist[nb] = d
                    queue[tail] = nb
                    tail += 1
        return tail

    @numba.njit(cache=True)
    def _check_numba(n, controls, targets, dist):
        mask = (1 << n) - 1
        bad_edges = 0
        bad_descent = 0
        first = -1
        ngates = controls.shape[0]
        for code in range(dist.shape[0]):
            here = np.int64(dist[code])
            if here == 255:
                continue
            descent = here == 0
            edge_fail = False
            for g in range(ngates):
                row = (code >> (controls[g] * n)) & mask
                other = np.int64(dist[code ^ (row << (targets[g] * n))])
                if other == 255 or abs(other - here) > 1:
                    edge_fail = True
                if other == here - 1:
                    descent = True
            if edge_fail:
                bad_edges += 1
            if not descent:
                bad_descent += 1
            if (edge_fail or not descent) and first < 0:
                first = code
        return bad_edges, bad_descent, first

    @numba.njit(cache=True)
    def _multiply_numba(a, b, n, out):
        mask = (1 << n) - 1
        rows = np.empty(n, dtype=np.int64)
        for k in range(a.shape[0]):
            x = a[k]
            y = b[k]
            for j in range(n):
                rows[j] = (y >> (j * n)) & mask
            res = 0
            for i in range(n):
                acc = 0
                for j in range(n):
                    acc ^= -((x >> (i * n + j)) & 1) & rows[j]
                res |= acc << (i * n)
            out[k] = res

    @numba.njit(cache=True)
    def _invert_numba(codes, n, out):
        mask = (1 << n) - 1
        aug = np.empty(n, dtype=np.int64)
        for k in range(codes.shape[0]):
            code = codes[k]
            for i in range(n):
                aug[i] = ((code >> (i * n)) & mask) | (1 << (n + i))
            ok = True
            for col in range(n):
                piv = -1
                for r in range(col, n):
                    if (aug[r] >> col) & 1:
                        piv = r
                        break
                if piv < 0:
                    ok = False
                    break
                tmp = aug[piv]
                aug[piv] = aug[col]
                aug[col] = tmp
                for r in range(n):
                    if r != col and (aug[r] >> col) & 1:
                        aug[r] ^= aug[col]
            if not ok:
                out[k] = -1
                continue
            res = 0
            for i in range(n):
                res |= (aug[i] >> n) << (i * n)
            out[k] = res


# ---------------------------------------------------------------- dispatch


def bfs_distances(n: int, backend: str | None = None) -> np.ndarray:
    """Dense uint8 distance array of length 2**(n*n); 255 marks singular codes."""
    backend = resolve_backend(backend)
    controls, targets = gate_arrays(n)
    dist = np.full(1 << (n * n), SENTINEL, dtype=np.uint8)
    if backend == "numba":
        order = 1
        for i in range(n):
            order *= (1 << n) - (1 << i)
        queue = np.empty(order, dtype=np.int32 if n * n < 31 else np.int64)
        _bfs_numba(n, controls, targets, dist, queue)
        return dist
    dist[identity_code(n)] = 0
    return _bfs_numpy(n, controls, targets, dist)


def check_distances(n: int, dist: np.ndarray, backend: str | None = None) -> tuple[int, int, int]:
    """Count entries breaking |dist(a) - dist(b)| <= 1 on edges or lacking a descending neighbor."""
    backend = resolve_backend(backend)
    controls, targets = gate_arrays(n)
    if backend == "numba":
        return tuple(int(v) for v in _check_numba(n, controls, targets, dist))
    return _check_numpy(n, controls, targets, dist)


def multiply_codes(a, b, n: int, backend: str | None = None) -> np.ndarray:
    """Elementwise GF(2) matrix product ``a @ b`` on packed codes."""
    backend = resolve_backend(backend)
    if backend == "numpy":
        return _multiply_numpy(a, b, n)
    a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
    shape = a.shape
    a = np.ascontiguousarray(a).reshape(-1)
    b = np.ascontiguousarray(b).reshape(-1)
    out = np.empty(a.size, dtype=np.int64)
    _multiply_numba(a, b, n, out)
    return out.reshape(shape)


def invert_codes(codes, n: int, backend: str | None = None) -> np.ndarray:
    """Elementwise GF(2) inverse on packed codes; -1 where singular."""
    backend = resolve_backend(backend)
    if backend == "numpy":
        return _invert_numpy(codes, n)
    codes = np.asarray(codes, dtype=np.int64)
    flat = np.ascontiguousarray(codes).reshape(-1)
    out = np.empty(flat.size, dtype=np.int64)
    _invert_numba(flat, n, out)
    return out.reshape(codes.shape)


def apply_gate_codes(codes, n: int, control: int, target: int) -> np.ndarray:
    """Row op ``row[target] ^= row[control]`` (0-based wires) on packed codes."""
    codes = np.asarray(codes, dtype=np.int64)
    rows = (codes >> np.int64(control * n)) & np.int64((1 << n) - 1)
    return codes ^ (rows << np.int64(target * n))
