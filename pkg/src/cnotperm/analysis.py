"""Hamming-weight traces of circuits and the consolidated claim checks."""

from __future__ import annotations

import itertools
import json
from dataclasses import asdict, dataclass, field
from os import PathLike
from pathlib import Path
from typing import Callable, Sequence

from .gf2 import (
    Circuit,
    PermSpec,
    circuit_matrix,
    format_circuit,
    is_reducible,
    parse_bits,
    parse_circuit,
    parse_perm,
    perm_matrix,
)
from .search import (
    DEFAULT_BUDGET,
    DistanceTable,
    brute_force_count_sequences,
    brute_force_sequences,
    build_distance_table,
    enumerate_minimal_circuits,
    load_verified_table,
    min_cnot_count,
    table_path,
)
from .symmetry import (
    WireRelabeling,
    conjugate_perm,
    first_gate_families,
    group_into_classes,
    orbit_under_rotation,
    verify_table1,
)


@dataclass(frozen=True)
class PhiTrace:
    input: tuple[int, ...]
    weights: tuple[int, ...]

    def steps(self) -> list[int]:
        return [b - a for a, b in zip(self.weights, self.weights[1:])]


def phi_trace(c: Circuit, bits: Sequence[int] | str) -> PhiTrace:
    """Hamming weight of the state after each prefix of ``c`` (prefix 0 is the input)."""
    x = parse_bits(bits, c.n)
    state = list(x)
    weights = [sum(state)]
    for g in c.gates:
        state[g.target - 1] ^= state[g.control - 1]
        weights.append(sum(state))
    return PhiTrace(x, tuple(weights))


@dataclass
class PhiViolation:
    circuit: str
    weights: list[int]
    step_bound: bool
    in_range: bool
    penultimate: bool


@dataclass
class PhiReport:
    checked: int
    violations: list[PhiViolation] = field(default_factory=list)

    @property
    def step_bound_holds(self) -> bool:
        return all(v.step_bound for v in self.violations)

    @property
    def range_holds(self) -> bool:
        return all(v.in_range for v in self.violations)

    @property
    def penultimate_holds(self) -> bool:
        return all(v.penultimate for v in self.violations)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_phi_properties(circuits: Sequence[Circuit], bits: Sequence[int] | str | None = None) -> PhiReport:
    """Check unit steps, the [0, n] range, and weight n-1 just before the last gate.

    Only circuits failing at least one check are listed in the report.
    """
    report = PhiReport(checked=len(circuits))
    for c in circuits:
        x = parse_bits(bits, c.n) if bits is not None else (1,) * c.n
        tr = phi_trace(c, x)
        step_ok = all(abs(s) <= 1 for s in tr.steps())
        range_ok = all(0 <= w <= c.n for w in tr.weights)
        pen_ok = len(tr.weights) >= 2 and tr.weights[-2] == c.n - 1
        if not (step_ok and range_ok and pen_ok):
            report.violations.append(
                PhiViolation(format_circuit(c), list(tr.weights), step_ok, range_ok, pen_ok)
            )
    return report


@dataclass
class ImpossibilityReport:
    target: str
    counts: list[int]

    @property
    def smallest_length(self) -> int | None:
        return next((L for L, k in enumerate(self.counts) if k), None)


def impossibility_report(target: PermSpec | str, max_len: int, budget: int = DEFAULT_BUDGET) -> ImpossibilityReport:
    """Exhaustive count of realizations at every length 0..max_len."""
    p = parse_perm(target)
    counts = [brute_force_count_sequences(p, p.n, L, budget) for L in range(max_len + 1)]
    return ImpossibilityReport(str(p), counts)


# ------------------------------------------------------------ claim suite


@dataclass
class Claim:
    id: str
    description: str
    expected: str
    computed: str
    status: str  # pass | fail | skipped


@dataclass
class SuiteReport:
    claims: list[Claim] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.claims)

    def to_json(self) -> str:
        return json.dumps({"ok": self.ok, "claims": [asdict(c) for c in self.claims]}, indent=2)

    def to_text(self) -> str:
        lines = []
        for c in self.claims:
            lines.append(
                f"[{c.status.upper():7}] {c.id}: {c.description} "
                f"(expected {c.expected}; computed {c.computed})"
            )
        passed = sum(c.status == "pass" for c in self.claims)
        failed = sum(c.status == "fail" for c in self.claims)
        skipped = sum(c.status == "skipped" for c in self.claims)
        lines.append(f"{passed} passed, {failed} failed, {skipped} skipped")
        return "\n".join(lines)


def _tables(sizes, cache_dir, backend) -> dict[int, DistanceTable]:
    # Cached tables are integrity-checked before any claim runs.
    tables = {}
    for n in sizes:
        path = table_path(cache_dir, n) if cache_dir is not None else None
        if path is not None and path.exists():
            tables[n] = load_verified_table(path, n)
        else:
            tables[n] = build_distance_table(n, backend)
    return tables


def paper_verification_suite(
    skip_n5: bool = False,
    cache_dir: str | PathLike | None = None,
    backend: str | None = None,
    budget: int = DEFAULT_BUDGET,
    progress: Callable[[str], None] | None = None,
) -> SuiteReport:
    sizes = [2, 3, 4] if skip_n5 else [2, 3, 4, 5]
    tables = _tables(sizes, Path(cache_dir) if cache_dir is not None else None, backend)
    report = SuiteReport()

    def claim(cid, description, expected, computed):
        status = "pass" if expected == computed else "fail"
        report.claims.append(Claim(cid, description, str(expected), str(computed), status))
        if progress:
            progress(cid)

    def skipped(cid, description, expected):
        report.claims.append(Claim(cid, description, str(expected), "-", "skipped"))

    t2, t3, t4 = tables[2], tables[3], tables[4]

    swaps = enumerate_minimal_circuits("21", t2)
    claim("swap-cost", "SWAP needs exactly three CNOTs, two minimal circuits", (3, 2),
          (min_cnot_count("21", t2), len(swaps)))

    counts = [brute_force_count_sequences("231", 3, L, budget) for L in range(6)]
    claim("three-wire-necessity", "no CNOT sequence of length <= 5 realizes 231",
          [0] * 6, counts)

    enumerated = enumerate_minimal_circuits("231", t3)
    brute = brute_force_sequences("231", 3, 6, budget)
    claim("three-wire-census", "enumerated and brute-force length-6 realizations of 231 agree",
          (90, 90, True), (len(enumerated), len(brute), set(enumerated) == set(brute)))

    classes = group_into_classes(enumerated)
    t1 = verify_table1(classes)
    claim("three-wire-classes", "rotation orbits of the 90 circuits: count, sizes, reference table",
          (30, [3], True), (len(classes), sorted({c.size for c in classes}), t1.full_match))

    fam = first_gate_families(classes)
    claim("first-gate-families", "class representatives by first gate, ADE vs BCF",
          (15, 15), (fam["ADE"], fam["BCF"]))

    example = parse_circuit("AEFDCB", 3)
    rotations = [format_circuit(m) for m in orbit_under_rotation(example).members]
    claim("worked-example", "AEFDCB realizes 231; its rotation orbit",
          (True, ["AEFDCB", "DABEFC", "EDCABF"]),
          (circuit_matrix(example) == perm_matrix("231"), rotations))

    claim("four-wire-cost", "|GL(4,2)| and minimal count for 2341",
          (20160, 9), (t4.element_count, min_cnot_count("2341", t4)))

    irreducible = sorted({str(conjugate_perm("2341", WireRelabeling.swap(4, a, b)))
                          for a, b in itertools.combinations(range(1, 5), 2)} | {"2341"})
    costs = {p: min_cnot_count(p, t4) for p in irreducible}
    reducible_max = max(min_cnot_count(PermSpec(p), t4)
                        for p in itertools.permutations(range(1, 5)) if is_reducible(PermSpec(p)))
    claim("relabel-invariance", "relabeled 4-cycles cost 9; reducible 4-wire elements cost <= 6",
          ({p: 9 for p in irreducible}, True), (costs, reducible_max <= 6))

    if 5 in tables:
        t5 = tables[5]
        claim("five-wire-cost", "|GL(5,2)| and minimal count for 23451",
              (9999360, 12), (t5.element_count, min_cnot_count("23451", t5)))
    else:
        skipped("five-wire-cost", "|GL(5,2)| and minimal count for 23451", (9999360, 12))

    saturation = {n: min_cnot_count(PermSpec.full_cycle(n), tables[n]) for n in sizes}
    claim("bound-saturation", "full cycle costs exactly 3(n-1)",
          {n: 3 * (n - 1) for n in sizes}, saturation)

    expected_bounds, computed_bounds = {}, {}
    for n in sizes:
        irr, red = set(), []
        for p in itertools.permutations(range(1, n + 1)):
            cost = min_cnot_count(PermSpec(p), tables[n])
            (red.append(cost) if is_reducible(PermSpec(p)) else irr.add(cost))
        expected_bounds[n] = (1, True, True)
        computed_bounds[n] = (len(irr), max(irr) <= 3 * n - 3, max(red) <= max(3 * n - 6, 0))
    claim("cycle-type-bounds", "n-cycles share one cost <= 3n-3; reducible cost <= 3n-6",
          expected_bounds, computed_bounds)

    phi3 = check_phi_properties(enumerated, "111")
    phi2 = check_phi_properties(swaps, "11")
    claim("weight-trace", "unit steps, range, weight n-1 before last gate on minimal circuits",
          (90, 2, 0), (phi3.checked, phi2.checked, len(phi3.violations) + len(phi2.violations)))

    if skip_n5:
        skipped("five-wire-bounds", "n=5 entries of the saturation and bound claims", "n=5")
    return report
