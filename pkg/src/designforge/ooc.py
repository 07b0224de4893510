"""Optical orthogonal codes built from pair sets.

A (n, k, 1) code is a set of k-subsets of Z_n whose internal differences are
globally distinct.  The builders place a pair set into the second coordinate
of Z_m x Z_v (m in {3, 5, 45}) and read the result back through the ring
isomorphism with Z_{mv}; the first coordinates follow fixed block patterns
whose own differences tile Z_m four times over.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .construct import silver_pps_p2, silver_witness, union_pps_pq
from .core import BudgetExceededError, PairSet, SetKind, infer_params
from .modarith import crt_lift, mod_sqrt


@dataclass(frozen=True)
class OOCode:
    n: int
    k: int
    codewords: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        norm = []
        for cw in self.codewords:
            entries = tuple(sorted(x % self.n for x in cw))
            if len(set(entries)) != self.k:
                raise ValueError(f"codeword {tuple(cw)} is not a {self.k}-subset of Z_{self.n}")
            norm.append(entries)
        object.__setattr__(self, "codewords", tuple(norm))

    def __len__(self) -> int:
        return len(self.codewords)

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "codewords": [list(c) for c in self.codewords]}

    @classmethod
    def from_json(cls, obj: dict) -> "OOCode":
        return cls(int(obj["n"]), int(obj["k"]),
                   tuple(tuple(int(x) for x in c) for c in obj["codewords"]))


@dataclass(frozen=True)
class OOCReport:
    differences_distinct: bool
    repeated: frozenset[int]
    leave: frozenset[int]
    is_maximum: bool

    def to_json(self) -> dict:
        return {
            "differences_distinct": self.differences_distinct,
            "repeated": sorted(self.repeated),
            "leave": sorted(self.leave),
            "is_maximum": self.is_maximum,
        }


def _difference_counts(code: OOCode) -> Counter:
    counts: Counter = Counter()
    for cw in code.codewords:
        for a in cw:
            for b in cw:
                if a != b:
                    counts[(a - b) % code.n] += 1
    return counts


def verify_ooc(code: OOCode) -> OOCReport:
    """Difference distinctness, the leave, and the maximum test |L| <= k(k-1)."""
    counts = _difference_counts(code)
    repeated = frozenset(d for d, c in counts.items() if c > 1)
    leave = frozenset(set(range(code.n)) - set(counts))
    return OOCReport(not repeated, repeated, leave,
                     len(leave) <= code.k * (code.k - 1))


def max_codeword_bound(n: int, k: int) -> int:
    """Largest possible codeword count: each codeword burns k(k-1) differences."""
    return (n - 1) // (k * (k - 1))


# Fixed first-coordinate block patterns.  Each is a (Z_m, k, 4) strong
# difference family, which is what lets the second coordinates absorb a pair
# set; SIGMA45 drives the 45v construction.
SIGMA3 = ((1, 1, -1, -1),)
SIGMA5 = ((0, 1, 1, -1, -1),)
SIGMA45 = ((0, 1, 1, -1, -1),) + ((0, 3, 7, 13, 30),) * 4 + ((0, 5, 14, 26, 34),) * 4


@dataclass(frozen=True)
class SDF:
    """Family of k-multisets whose internal differences cover Z_g mu times."""

    g: int
    k: int
    mu: int
    base_blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        blocks = tuple(tuple(x % self.g for x in b) for b in self.base_blocks)
        if any(len(b) != self.k for b in blocks):
            raise ValueError("every base block must have size k")
        object.__setattr__(self, "base_blocks", blocks)


@dataclass(frozen=True)
class SDFReport:
    valid: bool
    counts: tuple[int, ...]


def verify_sdf(sdf: SDF) -> SDFReport:
    counts = [0] * sdf.g
    for block in sdf.base_blocks:
        for i, a in enumerate(block):
            for j, b in enumerate(block):
                if i != j:
                    counts[(a - b) % sdf.g] += 1
    return SDFReport(all(c == sdf.mu for c in counts), tuple(counts))


def _mixed(i: int, m: int, x: int, v: int) -> int:
    """The residue of Z_{mv} that is i mod m and x mod v."""
    return crt_lift([i % m, x % v], [m, v])


def _pair_template_codewords(pairs, v: int, k: int) -> list[tuple[int, ...]]:
    """Codewords {(1,x),(1,-x),(-1,y),(-1,-y)} (plus (0,0) when k=5)."""
    m = 3 if k == 4 else 5
    out = []
    for x, y in pairs:
        cw = [_mixed(1, m, x, v), _mixed(1, m, -x, v),
              _mixed(-1, m, y, v), _mixed(-1, m, -y, v)]
        if k == 5:
            cw.append(0)
        out.append(tuple(sorted(cw)))
    return out


def ooc_from_pairs(s: PairSet, k: int) -> OOCode:
    """Maximum (3v, 4, 1) or (5v, 5, 1) code from a valid PS or APS on Z_v.

    The leave is the multiples of v (size 3 or 5) for a PS input, or the
    9/15-element sets determined by the APS parameters.
    """
    if k not in (4, 5):
        raise ValueError("k must be 4 or 5")
    v = s.v
    if k == 4 and math.gcd(v, 6) != 1:
        raise ValueError(f"gcd({v}, 6) must be 1")
    if k == 5 and math.gcd(v, 10) != 1:
        raise ValueError(f"gcd({v}, 10) must be 1")
    spec = infer_params(s)
    if spec is None or spec.kind is SetKind.PPS:
        raise ValueError("input must be a valid PS or APS")
    m = 3 if k == 4 else 5
    return OOCode(m * v, k, tuple(_pair_template_codewords(s.pairs, v, k)))


def ooc_45v_from_ps(s: PairSet) -> OOCode:
    """Maximum (45v, 5, 1) code from a PS(v) with gcd(v, 45) = 1.

    Nine codewords per pair follow the SIGMA45 block patterns in the first
    coordinate; two extra constant-second-coordinate codewords close the
    difference leave down to five elements.
    """
    v = s.v
    if v % 4 != 1 or math.gcd(v, 45) != 1:
        raise ValueError("need v = 1 (mod 4) with gcd(v, 45) = 1")
    spec = infer_params(s)
    if spec is None or spec.kind is not SetKind.PS:
        raise ValueError("input must be a valid PS")
    m = 45
    out = []
    for x, y in s.pairs:
        out.append(tuple(sorted((0, _mixed(1, m, x, v), _mixed(1, m, -x, v),
                                 _mixed(-1, m, y, v), _mixed(-1, m, -y, v)))))
        for z in (x, -x, y, -y):
            out.append(tuple(sorted((0, _mixed(3, m, z, v), _mixed(7, m, 2 * z, v),
                                     _mixed(13, m, 3 * z, v), _mixed(30, m, 4 * z, v)))))
            out.append(tuple(sorted((0, _mixed(5, m, z, v), _mixed(14, m, 2 * z, v),
                                     _mixed(26, m, 3 * z, v), _mixed(34, m, 4 * z, v)))))
    extras = [
        tuple(sorted((0, _mixed(1, m, 0, v), _mixed(3, m, 0, v),
                      _mixed(29, m, 0, v), _mixed(35, m, 0, v)))),
        tuple(sorted((0, _mixed(5, m, 0, v), _mixed(20, m, 0, v),
                      _mixed(27, m, 0, v), _mixed(41, m, 0, v)))),
    ]
    return OOCode(45 * v, 5, tuple(out + extras))


def maximal_ooc_pq(p: int, q: int, sp: PairSet, sq: PairSet, k: int) -> OOCode:
    """Maximal (3pq, 4, 1) or (5pq, 5, 1) code, one codeword short of maximum.

    Feeds the glued coprime-residue pair set of Z_pq (cyclotomic tiling plus
    the two rescaled APS inputs) through the pair template.
    """
    if k not in (4, 5):
        raise ValueError("k must be 4 or 5")
    pairs, _ = union_pps_pq(p, q, sp, sq)
    return OOCode((3 if k == 4 else 5) * p * q, k,
                  tuple(_pair_template_codewords(pairs.pairs, p * q, k)))


def maximal_ooc_p2(p: int, k: int) -> OOCode:
    """Maximal (3p^2, 4, 1) or (5p^2, 5, 1) code from the prime-square chain.

    Requires 1 + sqrt(2) to generate the units of Z_{p^2} up to sign; the
    known failures (e.g. p = 31) surface as a ValueError.
    """
    if k not in (4, 5):
        raise ValueError("k must be 4 or 5")
    if not silver_witness(p, square=True).generates:
        raise ValueError(
            f"1 + sqrt(2) does not generate the units of Z_{p}^2 up to sign")
    beta = mod_sqrt(2, p * p)
    pairs, _ = silver_pps_p2(p, 1, beta)
    return OOCode((3 if k == 4 else 5) * p * p, k,
                  tuple(_pair_template_codewords(pairs.pairs, p * p, k)))


def is_maximal(code: OOCode, *, candidate_limit: int = 64,
               ) -> tuple[bool, tuple[int, ...] | None]:
    """Exact extendability test: can one more codeword fit inside the leave?

    A new codeword needs k(k-1) distinct differences drawn from the leave
    minus 0, so translate it to contain 0 and search cliques among the
    residues whose +- pair lies in the leave.  Returns (False, witness) with
    an extending codeword when one exists.
    """
    n, k = code.n, code.k
    report = verify_ooc(code)
    leave_nz = set(report.leave) - {0}
    if len(leave_nz) < k * (k - 1):
        return True, None
    if len(report.leave) > candidate_limit:
        raise BudgetExceededError(
            f"leave of size {len(report.leave)} exceeds the search limit {candidate_limit}")
    candidates = sorted(x for x in leave_nz if (n - x) % n in leave_nz)

    def extend(start: int, chosen: list[int], diffs: set[int]):
        if len(chosen) == k:
            return tuple(chosen)
        for idx in range(start, len(candidates)):
            c = candidates[idx]
            fresh: set[int] = set()
            ok = True
            for b in chosen:
                for d in ((c - b) % n, (b - c) % n):
                    if d not in leave_nz or d in diffs or d in fresh:
                        ok = False
                        break
                    fresh.add(d)
                if not ok:
                    break
            if ok:
                found = extend(idx + 1, chosen + [c], diffs | fresh)
                if found:
                    return found
        return None

    witness = extend(0, [0], set())
    return (witness is None), witness
