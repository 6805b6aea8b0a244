"""Wire relabelings, rotation orbits of circuits, and the n=3 reference table."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ClassClosureError, InvalidInputError
from .gf2 import (
    Circuit,
    CnotGate,
    Gf2Matrix,
    PermSpec,
    circuit_matrix,
    format_circuit,
    parse_circuit,
    parse_perm,
    perm_matrix,
)

# The 30 reference circuits realizing "231" on three wires, one per class.
TABLE1 = (
    "ABAEFE", "ABAFEF", "ABEFCE", "ABEFEC", "ABFAEF",
    "ABFEFC", "ACBAFE", "ACBFAE", "AEBFCE", "AEBFEC",
    "AEDFCB", "AEFDCB", "AEFEDC", "AFEDFC", "AFEFDC",
    "BABEFE", "BABFEF", "BAEBFE", "BAEFED", "BAFEDF",
    "BAFEFD", "BDABEF", "BDAEBF", "BEFCED", "BEFECD",
    "BFAEDF", "BFAEFD", "BFCEDA", "BFECDA", "BFEFCD",
)  # fmt: skip


@dataclass(frozen=True)
class WireRelabeling:
    """Bijection on wires: wire ``i`` is renamed ``sigma[i-1]``."""

    sigma: tuple[int, ...]

    def __post_init__(self):
        sigma = tuple(int(v) for v in self.sigma)
        object.__setattr__(self, "sigma", sigma)
        if sorted(sigma) != list(range(1, len(sigma) + 1)):
            raise InvalidInputError(f"not a bijection on 1..{len(sigma)}: {list(sigma)}")

    @classmethod
    def rotation(cls, n: int, steps: int = 1) -> "WireRelabeling":
        """Move the bottom wire to the top ``steps`` times: i -> i + steps (mod n)."""
        return cls(tuple((i + steps) % n + 1 for i in range(n)))

    @classmethod
    def swap(cls, n: int, a: int, b: int) -> "WireRelabeling":
        sigma = list(range(1, n + 1))
        sigma[a - 1], sigma[b - 1] = b, a
        return cls(tuple(sigma))

    @property
    def n(self) -> int:
        return len(self.sigma)

    def __call__(self, i: int) -> int:
        return self.sigma[i - 1]

    def inverse(self) -> "WireRelabeling":
        inv = [0] * self.n
        for i, s in enumerate(self.sigma, start=1):
            inv[s - 1] = i
        return WireRelabeling(tuple(inv))

    def matrix(self) -> Gf2Matrix:
        """The GF(2) map moving wire i's content to wire sigma(i)."""
        return perm_matrix(PermSpec(self.inverse().sigma))


@dataclass(frozen=True)
class EquivalenceClass:
    representative: Circuit
    members: tuple[Circuit, ...] = field(default=())

    @property
    def size(self) -> int:
        return len(self.members)

    def to_dict(self) -> dict:
        return {
            "representative": format_circuit(self.representative),
            "members": [format_circuit(c) for c in self.members],
            "size": self.size,
        }


def relabel_circuit(c: Circuit, r: WireRelabeling) -> Circuit:
    if r.n != c.n:
        raise InvalidInputError(f"relabeling on {r.n} wires applied to {c.n}-wire circuit")
    return Circuit(c.n, tuple(CnotGate(r(g.control), r(g.target)) for g in c.gates))


def conjugate_perm(p: PermSpec | str, r: WireRelabeling) -> PermSpec:
    """One-line form of ``sigma . p . sigma^-1``."""
    p = parse_perm(p)
    if r.n != p.n:
        raise InvalidInputError(f"relabeling on {r.n} wires applied to {p.n}-element permutation")
    inv = r.inverse()
    return PermSpec(tuple(r(p(inv(i))) for i in range(1, p.n + 1)))


def _make_class(members: Iterable[Circuit]) -> EquivalenceClass:
    ordered = tuple(sorted(set(members), key=Circuit.sort_key))
    return EquivalenceClass(ordered[0], ordered)


def orbit_under_rotation(c: Circuit) -> EquivalenceClass:
    return _make_class(relabel_circuit(c, WireRelabeling.rotation(c.n, k)) for k in range(c.n))


def _full_orbit(c: Circuit) -> EquivalenceClass:
    return _make_class(
        relabel_circuit(c, WireRelabeling(sigma))
        for sigma in itertools.permutations(range(1, c.n + 1))
    )


def group_into_classes(circuits: Sequence[Circuit], full_symmetric: bool = False) -> list[EquivalenceClass]:
    """Partition circuits into rotation orbits, sorted by representative.

    With ``full_symmetric`` the orbits come from every wire relabeling and are
    intersected with the input instead of requiring closure; that mode is for
    exploration, since most targets are not invariant under all relabelings.
    """
    if not circuits:
        return []
    n = circuits[0].n
    if any(c.n != n for c in circuits):
        raise InvalidInputError("circuits have different wire counts")
    pool = set(circuits)
    classes = []
    seen: set[Circuit] = set()
    for c in sorted(pool, key=Circuit.sort_key):
        if c in seen:
            continue
        if full_symmetric:
            orbit = _make_class(m for m in _full_orbit(c).members if m in pool)
        else:
            orbit = orbit_under_rotation(c)
            missing = [m for m in orbit.members if m not in pool]
            if missing:
                raise ClassClosureError(
                    f"input not closed under rotation: {format_circuit(missing[0])} "
                    f"(rotation of {format_circuit(c)}) is missing"
                )
        seen.update(orbit.members)
        classes.append(orbit)
    return sorted(classes, key=lambda k: k.representative.sort_key())


@dataclass
class Table1Report:
    non_realizing: list[str]
    duplicate_classes: list[tuple[str, str]]
    uncovered: list[str]
    classes_hit: int
    class_count: int

    @property
    def full_match(self) -> bool:
        return (
            not self.non_realizing
            and not self.duplicate_classes
            and not self.uncovered
            and self.classes_hit == self.class_count
        )

    def to_dict(self) -> dict:
        return {
            "full_match": self.full_match,
            "classes_hit": self.classes_hit,
            "class_count": self.class_count,
            "non_realizing": self.non_realizing,
            "duplicate_classes": [list(p) for p in self.duplicate_classes],
            "uncovered": self.uncovered,
        }


def verify_table1(classes: Sequence[EquivalenceClass], strings: Sequence[str] = TABLE1) -> Table1Report:
    """Match reference strings against computed classes by orbit membership."""
    want = perm_matrix("231")
    owner: dict[Circuit, int] = {}
    for k, cls in enumerate(classes):
        for m in cls.members:
            owner[m] = k
    non_realizing, duplicates = [], []
    hit: dict[int, str] = {}
    for s in strings:
        try:
            c = parse_circuit(s, 3)
        except InvalidInputError:
            non_realizing.append(s)
            continue
        if circuit_matrix(c) != want:
            non_realizing.append(s)
            continue
        k = owner.get(c)
        if k is None:
            # realizes the target but is absent from the computed classes
            duplicates.append((s, "<not enumerated>"))
            continue
        if k in hit:
            duplicates.append((s, hit[k]))
        else:
            hit[k] = s
    uncovered = [format_circuit(classes[k].representative) for k in range(len(classes)) if k not in hit]
    return Table1Report(non_realizing, duplicates, uncovered, len(hit), len(classes))


def first_gate_families(classes: Sequence[EquivalenceClass]) -> dict[str, int]:
    """Count n=3 class representatives by first-gate family {A,D,E} vs {B,C,F}."""
    families = {"ADE": 0, "BCF": 0}
    for cls in classes:
        rep = cls.representative
        if rep.n != 3 or not rep.gates:
            continue
        families["ADE" if rep.gates[0].letter in "ADE" else "BCF"] += 1
    return families
