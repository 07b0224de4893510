"""Pair-set data model, verifiers, necessary conditions and the search oracle.

A pair set over Z_v is a list of unordered pairs {x, y}.  Closing the pairs
under negation must tile Z_v minus an excluded set A1, and closing the sums
and differences {x+y, x-y} under negation must tile Z_v minus A2.  The
excluded sets are carried by :class:`PPSSpec`; the two classical shapes are
A1 = A2 = {0} ("PS") and A1 = {0, a, -a}, A2 = {0, b, -b} ("APS").
"""

from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass
from functools import lru_cache

from sympy.ntheory import factorint

from .modarith import crt_lift, mod_sqrt


class BudgetExceededError(RuntimeError):
    """A search ran out of its configured time or size budget."""


@dataclass(frozen=True)
class PairSet:
    """A modulus v and a tuple of unordered residue pairs.

    Pairs are stored with the smaller residue first.  A pair {x, y} with
    x == +-y is rejected outright: its closure under negation repeats an
    element, so no valid pair set can contain it.
    """

    v: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.v < 1:
            raise ValueError("modulus must be positive")
        norm = []
        for pair in self.pairs:
            x, y = pair[0] % self.v, pair[1] % self.v
            if x == y:
                raise ValueError(f"pair {tuple(pair)} has equal entries modulo {self.v}")
            if (x + y) % self.v == 0:
                raise ValueError(
                    f"pair {tuple(pair)} collapses under negation modulo {self.v}")
            norm.append((x, y) if x < y else (y, x))
        object.__setattr__(self, "pairs", tuple(norm))

    def __len__(self) -> int:
        return len(self.pairs)

    def to_json(self) -> dict:
        return {"v": self.v, "pairs": [list(p) for p in self.pairs]}

    @classmethod
    def from_json(cls, obj: dict) -> "PairSet":
        return cls(int(obj["v"]), tuple((int(x), int(y)) for x, y in obj["pairs"]))


class SetKind(enum.Enum):
    PS = "PS"
    APS = "APS"
    PPS = "PPS"


@dataclass(frozen=True)
class PPSSpec:
    """Target excluded sets (A1 for elements, A2 for sums/differences)."""

    v: int
    a1: frozenset[int]
    a2: frozenset[int]

    def __post_init__(self) -> None:
        a1 = frozenset(x % self.v for x in self.a1)
        a2 = frozenset(x % self.v for x in self.a2)
        object.__setattr__(self, "a1", a1)
        object.__setattr__(self, "a2", a2)
        if len(a1) != len(a2):
            raise ValueError("excluded sets must have equal size")
        for name, a in (("A1", a1), ("A2", a2)):
            if 0 not in a:
                raise ValueError(f"{name} must contain 0")
            if any((-x) % self.v not in a for x in a):
                raise ValueError(f"{name} must be closed under negation")
        if (self.v - len(a1)) % 4 != 0:
            raise ValueError(f"v - |A1| = {self.v - len(a1)} is not divisible by 4")

    @classmethod
    def ps(cls, v: int) -> "PPSSpec":
        return cls(v, frozenset({0}), frozenset({0}))

    @classmethod
    def aps(cls, v: int, alpha: int, beta: int) -> "PPSSpec":
        alpha %= v
        beta %= v
        if alpha == 0 or beta == 0:
            raise ValueError("alpha and beta must be nonzero")
        return cls(v, frozenset({0, alpha, v - alpha}), frozenset({0, beta, v - beta}))

    @property
    def pair_count(self) -> int:
        return (self.v - len(self.a1)) // 4

    @property
    def kind(self) -> SetKind:
        if self.a1 == {0} and self.a2 == {0}:
            return SetKind.PS
        if len(self.a1) == 3 and len(self.a2) == 3:
            return SetKind.APS
        return SetKind.PPS

    @property
    def alpha(self) -> int:
        """Canonical alpha for an APS-shaped spec (smaller of the two signs)."""
        if self.kind is not SetKind.APS:
            raise ValueError("alpha is only defined for APS-shaped specs")
        return min(self.a1 - {0})

    @property
    def beta(self) -> int:
        if self.kind is not SetKind.APS:
            raise ValueError("beta is only defined for APS-shaped specs")
        return min(self.a2 - {0})

    def to_json(self) -> dict:
        if self.kind is SetKind.PS:
            return {"type": "PS", "v": self.v}
        if self.kind is SetKind.APS:
            return {"type": "APS", "v": self.v, "alpha": self.alpha, "beta": self.beta}
        return {"v": self.v, "A1": sorted(self.a1), "A2": sorted(self.a2)}

    @classmethod
    def from_json(cls, obj: dict) -> "PPSSpec":
        if obj.get("type") == "PS":
            return cls.ps(int(obj["v"]))
        if obj.get("type") == "APS":
            return cls.aps(int(obj["v"]), int(obj["alpha"]), int(obj["beta"]))
        return cls(int(obj["v"]), frozenset(obj["A1"]), frozenset(obj["A2"]))


@dataclass(frozen=True)
class VerifyReport:
    """Diagnostics from a pair-set verification.

    ``missing`` holds residues covered fewer times than required (once
    outside the excluded set), ``repeated`` holds residues covered more
    often than required, which includes any hit inside the excluded set.
    valid is equivalent to all four sets being empty.
    """

    valid: bool
    cover1_missing: frozenset[int]
    cover1_repeated: frozenset[int]
    cover2_missing: frozenset[int]
    cover2_repeated: frozenset[int]

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "cover1_missing": sorted(self.cover1_missing),
            "cover1_repeated": sorted(self.cover1_repeated),
            "cover2_missing": sorted(self.cover2_missing),
            "cover2_repeated": sorted(self.cover2_repeated),
        }


def element_cover_counts(s: PairSet) -> list[int]:
    """Multiplicity of each residue in the union of +-{x, y} over all pairs."""
    counts = [0] * s.v
    for x, y in s.pairs:
        counts[x] += 1
        counts[y] += 1
        counts[(-x) % s.v] += 1
        counts[(-y) % s.v] += 1
    return counts


def sum_diff_cover_counts(s: PairSet) -> list[int]:
    """Multiplicity of each residue in the union of +-{x+y, x-y} over all pairs."""
    counts = [0] * s.v
    for x, y in s.pairs:
        total, diff = (x + y) % s.v, (x - y) % s.v
        counts[total] += 1
        counts[diff] += 1
        counts[(-total) % s.v] += 1
        counts[(-diff) % s.v] += 1
    return counts


def _diagnose(counts: list[int], excluded: frozenset[int]) -> tuple[frozenset, frozenset]:
    missing = frozenset(z for z, c in enumerate(counts) if c < 1 and z not in excluded)
    repeated = frozenset(
        z for z, c in enumerate(counts) if c > (0 if z in excluded else 1))
    return missing, repeated

def verify_pps(s: PairSet, spec: PPSSpec) -> VerifyReport:
    """Check both cover conditions of s against spec, with full diagnostics."""
    if s.v != spec.v:
        raise ValueError(f"pair set modulus {s.v} != spec modulus {spec.v}")
    m1, r1 = _diagnose(element_cover_counts(s), spec.a1)
    m2, r2 = _diagnose(sum_diff_cover_counts(s), spec.a2)
    return VerifyReport(not (m1 or r1 or m2 or r2), m1, r1, m2, r2)


def infer_params(s: PairSet) -> PPSSpec | None:
    """Read the excluded sets off the two covers; None if either cover repeats.

    The tightest applicable label is available as ``.kind`` on the result.
    """
    c1 = element_cover_counts(s)
    c2 = sum_diff_cover_counts(s)
    if any(c > 1 for c in c1) or any(c > 1 for c in c2):
        return None
    a1 = frozenset(z for z, c in enumerate(c1) if c == 0)
    a2 = frozenset(z for z, c in enumerate(c2) if c == 0)
    return PPSSpec(s.v, a1, a2)


def aps_necessary(v: int, alpha: int, beta: int) -> bool:
    """Square-sum necessary condition for an APS(v, alpha, beta) to exist."""
    if v % 4 != 3:
        raise ValueError("v must be 3 modulo 4")
    alpha %= v
    beta %= v
    if alpha == 0 or beta == 0:
        raise ValueError("alpha and beta must be nonzero")
    lhs = (2 * alpha * alpha - beta * beta) % v
    if v % 12 == 3:
        return lhs == v // 3
    return lhs == 0


class NonexistenceCase(enum.Enum):
    """Why no APS (or PS) can exist at a given modulus."""

    EVEN_THREE_VALUATION = "even-three-valuation"
    NONRESIDUE_PRIMES_TIMES_THREE = "nonresidue-primes-times-three"
    NONRESIDUE_PRIMES = "nonresidue-primes"
    PS_RESIDUE_CLASS = "ps-residue-class"


def nonexistence_case(v: int) -> NonexistenceCase | None:
    """Match v against the arithmetic obstructions that rule out any APS/PS.

    For v = 3 (mod 4) the three cases are: an even power of 3 divides v
    exactly; v is 3 times a squarefree product of primes = +-3 (mod 8) with
    v = 15 (mod 36); or v itself is such a squarefree product with
    v = 7, 11 (mod 12).  In each, 2a^2 - b^2 can never meet the required
    value modulo v.  For v = 1 (mod 4) the only obstruction is the residue
    class v = 9 (mod 12), which rules out a PS.
    """
    if v % 2 == 0:
        raise ValueError("v must be odd")
    if v % 4 == 1:
        return NonexistenceCase.PS_RESIDUE_CLASS if v % 12 == 9 else None
    factors = factorint(v)
    e3 = factors.get(3, 0)
    rest = {p: e for p, e in factors.items() if p != 3}
    if v % 12 == 3 and e3 >= 2 and e3 % 2 == 0:
        return NonexistenceCase.EVEN_THREE_VALUATION
    squarefree_pm3 = all(e == 1 and p % 8 in (3, 5) for p, e in rest.items())
    if v % 36 == 15 and e3 == 1 and squarefree_pm3:
        return NonexistenceCase.NONRESIDUE_PRIMES_TIMES_THREE
    if v % 12 in (7, 11) and e3 == 0 and squarefree_pm3:
        return NonexistenceCase.NONRESIDUE_PRIMES
    return None


def admissible_params(v: int, scan_limit: int = 100_000) -> list[tuple[int, int]]:
    """All nonzero (alpha, beta) passing aps_necessary, by full scan."""
    if v % 4 != 3:
        raise ValueError("v must be 3 modulo 4")
    if v > scan_limit:
        raise BudgetExceededError(f"scan over Z_{v} exceeds limit {scan_limit}")
    target = v // 3 if v % 12 == 3 else 0
    by_square: dict[int, list[int]] = {}
    for b in range(1, v):
        by_square.setdefault(b * b % v, []).append(b)
    out = []
    for a in range(1, v):
        need = (2 * a * a - target) % v
        for b in by_square.get(need, ()):
            out.append((a, b))
    return out


def admissible_witness(v: int) -> tuple[int, int] | None:
    """One nonzero (alpha, beta) passing aps_necessary, assembled by CRT.

    Works at any scale, unlike the full scan: the congruence is solved in
    one prime-power component (a repeated prime factor, a prime with 2 a
    square, or the 3-part) and zero-filled elsewhere.  Returns None exactly
    when an arithmetic obstruction rules every pair out.
    """
    if v % 4 != 3:
        raise ValueError("v must be 3 modulo 4")
    if nonexistence_case(v) is not None:
        return None
    factors = dict(factorint(v))
    three_exp = factors.pop(3, 0)
    moduli = [p ** e for p, e in factors.items()]
    alpha = {m: 0 for m in moduli}
    beta = {m: 0 for m in moduli}

    def plant_nonzero() -> bool:
        # solve 2a^2 = b^2 with a, b nonzero in one component coprime to 3
        for p, e in factors.items():
            if e > 1:
                m = p ** e
                alpha[m] = beta[m] = p ** (e - 1)
                return True
        for p, e in factors.items():
            if p % 8 in (1, 7):
                alpha[p] = 1
                beta[p] = mod_sqrt(2, p)
                return True
        return False

    if three_exp == 0:
        if not plant_nonzero():  # exactly the squarefree +-3 (mod 8) case
            return None
    else:
        # v = 3 (mod 12): hit v/3 = +-3^(d-1) in the 3-part, d odd
        m3 = 3 ** three_exp
        moduli.append(m3)
        root = 3 ** ((three_exp - 1) // 2)
        if (v // m3) % 3 == 1:
            alpha[m3] = beta[m3] = root
        elif three_exp > 1:
            alpha[m3] = 3 ** (three_exp - 1)
            beta[m3] = root
        else:
            alpha[m3] = 0
            beta[m3] = root
            if not plant_nonzero():
                return None
    return (crt_lift([alpha[m] for m in moduli], moduli),
            crt_lift([beta[m] for m in moduli], moduli))


def scale_set(s: PairSet, lam: int) -> PairSet:
    """Multiply every pair entry by the unit lam."""
    lam %= s.v
    if math.gcd(lam, s.v) != 1:
        raise ValueError(f"{lam} is not a unit modulo {s.v}")
    return PairSet(s.v, tuple((x * lam % s.v, y * lam % s.v) for x, y in s.pairs))


@lru_cache(maxsize=None)
def _candidate_table(v: int) -> tuple[tuple[tuple[int, int, int], ...], ...]:
    """Per branch element e: candidate co-elements y with closure bitmasks.

    A candidate (y, m1, m2) stands for the pair {e, y}; m1 marks the four
    residues +-{e, y} and m2 the four residues +-{e+y, e-y}.  The mirror
    pair {e, v-y} has identical masks, so only the representative with the
    smaller co-element is kept.
    """
    table: list[tuple[tuple[int, int, int], ...]] = []
    for e in range(v):
        row = []
        for y in range(e + 1, v):
            if y == v - e:
                continue
            vy = v - y
            if e < vy < y:
                continue
            m1 = (1 << e) | (1 << y) | (1 << (v - e)) | (1 << vy)
            total, diff = (e + y) % v, (e - y) % v
            m2 = ((1 << total) | (1 << ((v - total) % v))
                  | (1 << diff) | (1 << ((v - diff) % v)))
            row.append((y, m1, m2))
        table.append(tuple(row))
    return tuple(table)


def exhaustive_search(
    spec: PPSSpec,
    *,
    max_pairs: int = 6,
    max_v: int = 40,
    force: bool = False,
    deadline: float | None = None,
) -> PairSet | None:
    """Backtracking oracle: the lexicographically first valid pair set, or None.

    Candidate pairs are canonicalized up to negation; branching always covers
    the smallest residue still required on the element side, so the result is
    deterministic.  Refuses instances beyond the size budget unless forced.
    """
    v = spec.v
    if not force and spec.pair_count > max_pairs and v > max_v:
        raise BudgetExceededError(
            f"search for {spec.pair_count} pairs over Z_{v} exceeds the default budget")
    if deadline is not None and time.monotonic() > deadline:
        raise BudgetExceededError("exhaustive search hit its deadline")
    full = (1 << v) - 1
    used1 = used2 = 0
    for z in spec.a1:
        used1 |= 1 << z
    for z in spec.a2:
        used2 |= 1 << z
    table = _candidate_table(v)
    chosen: list[tuple[int, int]] = []
    nodes = 0

    def descend(u1: int, u2: int) -> bool:
        nonlocal nodes
        if u1 == full:
            return True
        nodes += 1
        if deadline is not None and nodes % 4096 == 0 and time.monotonic() > deadline:
            raise BudgetExceededError("exhaustive search hit its deadline")
        free = (~u1) & full
        e = (free & -free).bit_length() - 1
        for y, m1, m2 in table[e]:
            if (m1 & u1) or (m2 & u2):
                continue
            chosen.append((e, y))
            if descend(u1 | m1, u2 | m2):
                return True
            chosen.pop()
        return False

    if descend(used1, used2):
        return PairSet(v, tuple(chosen))
    return None
