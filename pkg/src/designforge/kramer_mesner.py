"""Search for pair sets with a prescribed multiplier group.

A subgroup H of the units of Z_v containing -1 acts on residues and on
unordered pairs by multiplication.  Picking whole pair orbits at once turns
the two cover conditions into a linear system over orbit counts: one row per
element orbit and side, one column per pair orbit, solved for a 0-1 vector.
Orbit weights are well defined because the element multiplicity of an orbit
multiset is constant along each element orbit.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from sympy.ntheory import factorint

from .core import BudgetExceededError, PairSet, PPSSpec, verify_pps
from .modarith import crt_lift, mult_order


@dataclass(frozen=True)
class MultiplierGroup:
    """Multiplicative subgroup of the units of Z_v; must contain -1."""

    v: int
    generators: tuple[int, ...]
    elements: tuple[int, ...]

    @classmethod
    def generate(cls, v: int, generators: tuple[int, ...] | list[int]) -> "MultiplierGroup":
        gens = tuple(g % v for g in generators)
        for g in gens:
            if math.gcd(g, v) != 1:
                raise ValueError(f"generator {g} is not a unit modulo {v}")
        elements = {1}
        frontier = [1]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = x * g % v
                if y not in elements:
                    elements.add(y)
                    frontier.append(y)
        if (v - 1) % v not in elements:
            raise ValueError("multiplier group must contain -1")
        return cls(v, gens, tuple(sorted(elements)))

    def __len__(self) -> int:
        return len(self.elements)


def suggest_multiplier(v: int) -> int:
    """A unit whose powers give the product-of-primes multiplier group.

    For v = p*q (optionally times 3) with primes p < q and (p-1) | (q-1),
    combine the smallest elements of order p-1 in each prime component; the
    3-component, when present, is set to -1.  The result generates a group
    of order p-1 containing -1.  Other valid groups exist; this helper just
    fixes one deterministic choice.
    """
    factors = factorint(v)
    has3 = factors.pop(3, 0)
    if has3 > 1 or len(factors) != 2 or any(e != 1 for e in factors.values()):
        raise ValueError(f"no multiplier suggestion for v = {v}")
    p, q = sorted(factors)
    if (q - 1) % (p - 1) != 0:
        raise ValueError(f"{p}-1 must divide {q}-1")

    def smallest_of_order(t: int, modulus: int) -> int:
        for x in range(2, modulus):
            if math.gcd(x, modulus) == 1 and mult_order(x, modulus) == t:
                return x
        raise ValueError(f"no element of order {t} modulo {modulus}")

    residues = [smallest_of_order(p - 1, p), smallest_of_order(p - 1, q)]
    moduli = [p, q]
    if has3:
        if (p - 1) % 4 == 0:
            raise ValueError("(p-1)/2 must be odd for the 3-component trick")
        residues.append(2)  # -1 mod 3
        moduli.append(3)
    return crt_lift(residues, moduli)


@dataclass(frozen=True)
class OrbitIndex:
    """Element and pair orbits of a multiplier group, with canonical reps."""

    group: MultiplierGroup
    element_orbits: tuple[tuple[int, ...], ...]
    pair_orbits: tuple[tuple[tuple[int, int], ...], ...]
    element_orbit_index: tuple[int, ...]

    @property
    def element_reps(self) -> tuple[int, ...]:
        return tuple(o[0] for o in self.element_orbits)

    @property
    def pair_reps(self) -> tuple[tuple[int, int], ...]:
        return tuple(o[0] for o in self.pair_orbits)


def orbits(group: MultiplierGroup) -> OrbitIndex:
    v, els = group.v, group.elements
    orbit_index = [-1] * v
    element_orbits = []
    for x in range(v):
        if orbit_index[x] >= 0:
            continue
        orb = sorted({x * h % v for h in els})
        idx = len(element_orbits)
        for z in orb:
            orbit_index[z] = idx
        element_orbits.append(tuple(orb))
    seen: set[tuple[int, int]] = set()
    pair_orbits = []
    for x in range(v):
        for y in range(x + 1, v):
            if (x, y) in seen:
                continue
            orb = sorted({tuple(sorted((x * h % v, y * h % v))) for h in els})
            seen.update(orb)
            pair_orbits.append(tuple(orb))
    return OrbitIndex(group, tuple(element_orbits), tuple(pair_orbits),
                      tuple(orbit_index))


@dataclass(frozen=True)
class CoverSystem:
    """The orbit-weight system M X = J.

    Rows 0..n-1 count element-side hits of each element orbit, rows n..2n-1
    count sum/difference-side hits; J is 1 exactly on the rows whose orbit
    lies outside the corresponding excluded set.  Row labels pair each row
    with its orbit representative and side; column labels are the pair-orbit
    representatives.
    """

    matrix: tuple[tuple[int, ...], ...]  # 2n x m, dense
    j: tuple[int, ...]
    row_labels: tuple[tuple[int, str], ...]
    col_reps: tuple[tuple[int, int], ...]

    @property
    def n(self) -> int:
        return len(self.j) // 2

    @property
    def m(self) -> int:
        return len(self.col_reps)

    def to_sparse_text(self) -> str:
        """Row/column/value triples for nonzero entries, for external solvers."""
        lines = [f"# {2 * self.n} rows, {self.m} cols, J = {''.join(map(str, self.j))}"]
        for i, row in enumerate(self.matrix):
            for j, w in enumerate(row):
                if w:
                    lines.append(f"{i} {j} {w}")
        return "\n".join(lines) + "\n"


def build_system(group: MultiplierGroup, spec: PPSSpec,
                 index: OrbitIndex | None = None) -> CoverSystem:
    """Assemble M and J for the given excluded sets.

    Both excluded sets must be unions of element orbits, otherwise no orbit
    selection can avoid them exactly.
    """
    if group.v != spec.v:
        raise ValueError("group and spec moduli differ")
    if index is None:
        index = orbits(group)
    v = group.v
    for name, a in (("A1", spec.a1), ("A2", spec.a2)):
        for z in a:
            if any(w not in a for w in index.element_orbits[index.element_orbit_index[z]]):
                raise ValueError(f"{name} is not a union of orbits of the group")
    n = len(index.element_orbits)
    reps = index.element_reps
    rep_set = set(reps)
    rows: list[list[int]] = [[0] * len(index.pair_orbits) for _ in range(2 * n)]
    # Tally per negation class {B, -B}: a selected orbit enters the final set
    # through one member of each class, contributing +-{x, y} and
    # +-{x+y, x-y}.  A self-negating (degenerate) class double-hits its own
    # cells, so such columns can never satisfy a 0-1 row.
    for col, orb in enumerate(index.pair_orbits):
        done: set[tuple[int, int]] = set()
        for x, y in orb:
            if (x, y) in done:
                continue
            done.add((x, y))
            done.add(tuple(sorted(((-x) % v, (-y) % v))))
            total, diff = (x + y) % v, (x - y) % v
            for z in (x, y, (-x) % v, (-y) % v):
                if z in rep_set:
                    rows[index.element_orbit_index[z]][col] += 1
            for z in (total, diff, (-total) % v, (-diff) % v):
                if z in rep_set:
                    rows[n + index.element_orbit_index[z]][col] += 1
    j = tuple([int(reps[i] not in spec.a1) for i in range(n)]
              + [int(reps[i] not in spec.a2) for i in range(n)])
    labels = tuple([(rep, "U") for rep in reps] + [(rep, "D") for rep in reps])
    return CoverSystem(tuple(tuple(r) for r in rows), j, labels, index.pair_reps)


def solve_binary(system: CoverSystem, *, deadline: float | None = None) -> tuple[int, ...] | None:
    """First 0-1 solution of M X = J under a fixed branching order, or None.

    Columns that hit a forbidden (J=0) row, or hit any required row more
    than once, can never be selected and are dropped; what remains is a pure
    exact cover over the required rows, solved by Algorithm X branching on
    the row with fewest remaining columns.
    """
    required = [i for i, ji in enumerate(system.j) if ji == 1]
    required_set = set(required)
    usable: dict[int, frozenset[int]] = {}
    for col in range(system.m):
        covered = set()
        ok = True
        for i in range(2 * system.n):
            w = system.matrix[i][col]
            if w == 0:
                continue
            if i not in required_set or w > 1:
                ok = False
                break
            covered.add(i)
        if ok:
            usable[col] = frozenset(covered)
    candidates: dict[int, set[int]] = {i: set() for i in required}
    for col, covered in usable.items():
        for i in covered:
            candidates[i].add(col)

    selection: list[int] = []
    nodes = 0

    # Dict-based Algorithm X: selecting a column pops every row it covers and
    # hides all competing columns; deselect restores the popped snapshots.
    def select(col: int) -> list[tuple[int, set[int]]]:
        removed = []
        for i in usable[col]:
            removed.append((i, candidates.pop(i)))
        for i, cols in removed:
            for other in cols:
                if other == col:
                    continue
                for k in usable[other]:
                    if k in candidates:
                        candidates[k].discard(other)
        return removed

    def deselect(col: int, removed: list[tuple[int, set[int]]]) -> None:
        for i, cols in reversed(removed):
            candidates[i] = cols
            for other in cols:
                if other == col:
                    continue
                for k in usable[other]:
                    if k in candidates:
                        candidates[k].add(other)

    def descend() -> bool:
        nonlocal nodes
        if not candidates:
            return True
        nodes += 1
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceededError("exact-cover search hit its deadline")
        row = min(candidates, key=lambda i: (len(candidates[i]), i))
        for col in sorted(candidates[row]):
            selection.append(col)
            removed = select(col)
            if descend():
                return True
            deselect(col, removed)
            selection.pop()
        return False

    if not descend():
        return None
    chosen = set(selection)
    return tuple(int(c in chosen) for c in range(system.m))


def develop(initial: list[tuple[int, int]] | tuple, group: MultiplierGroup) -> PairSet:
    """Expand pair orbits and keep one representative per negation class."""
    v = group.v
    expanded: set[tuple[int, int]] = set()
    for x, y in initial:
        for h in group.elements:
            a, b = x * h % v, y * h % v
            if (a + b) % v == 0 or a == b:
                raise ValueError(f"orbit of {(x, y)} contains a degenerate pair")
            expanded.add((a, b) if a < b else (b, a))
    out = set()
    for pair in expanded:
        x, y = pair
        mirrored = tuple(sorted(((-x) % v, (-y) % v)))
        out.add(min(pair, mirrored))
    return PairSet(v, tuple(sorted(out)))


def km_search(
    v: int,
    generators: tuple[int, ...] | list[int],
    spec: PPSSpec,
    *,
    deadline: float | None = None,
) -> PairSet | None:
    """End-to-end orbit search: orbits, system, 0-1 solve, develop, verify."""
    group = MultiplierGroup.generate(v, generators)
    index = orbits(group)
    system = build_system(group, spec, index)
    x = solve_binary(system, deadline=deadline)
    if x is None:
        return None
    initial = [system.col_reps[col] for col, chosen in enumerate(x) if chosen]
    result = develop(initial, group)
    report = verify_pps(result, spec)
    if not report.valid:
        raise AssertionError("developed solution failed verification; solver bug")
    return result
