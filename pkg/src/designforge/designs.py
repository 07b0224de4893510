"""Whist tournaments, cyclic difference matrices, and contiguous-free plans.

A game (a, b, c, d) seats four players round a table: a/c are partners (and
first-kind players), b/d are partners (second-kind); every adjacent pair is
an opponent pair.  A pair set gives the initial round (x, y, -x, -y); cyclic
development by +1 then yields the full schedule.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Union

from .core import PairSet, PPSSpec, verify_pps

INF = "inf"  # the adjoined player for tournaments on 4n players; INF + 1 = INF

Seat = Union[int, str]
Game = tuple[Seat, Seat, Seat, Seat]


def _shift(seat: Seat, k: int, u: int) -> Seat:
    return seat if seat == INF else (seat + k) % u


def partner_pairs(game: Game) -> tuple[frozenset, frozenset]:
    a, b, c, d = game
    return frozenset((a, c)), frozenset((b, d))


def opponent_pairs(game: Game) -> tuple[frozenset, ...]:
    a, b, c, d = game
    return (frozenset((a, b)), frozenset((c, d)), frozenset((a, d)), frozenset((b, c)))


def initial_round(s: PairSet, alpha: int | None = None) -> tuple[Game, ...]:
    """Games (x, y, -x, -y) of the starting round.

    Without alpha the pair set must be a valid PS.  With alpha it must be a
    valid APS(v, alpha, alpha) -- equal parameters on both sides -- and the
    round is prefixed with the special game (INF, alpha, 0, -alpha).
    """
    v = s.v
    if alpha is None:
        report = verify_pps(s, PPSSpec.ps(v))
        if not report.valid:
            raise ValueError("pair set is not a valid PS; cannot seed a round")
        games: list[Game] = []
    else:
        report = verify_pps(s, PPSSpec.aps(v, alpha, alpha))
        if not report.valid:
            raise ValueError(
                f"pair set is not a valid APS({v},{alpha},{alpha}); "
                "the special game needs equal parameters on both sides")
        games = [(INF, alpha % v, 0, (-alpha) % v)]
    games.extend((x, y, (-x) % v, (-y) % v) for x, y in s.pairs)
    return tuple(games)


@dataclass(frozen=True)
class WhistTournament:
    """A full schedule; players are Z_u, plus INF when v = u + 1."""

    v: int
    u: int
    rounds: tuple[tuple[Game, ...], ...]
    cyclic: bool

    @property
    def players(self) -> list[Seat]:
        base: list[Seat] = list(range(self.u))
        return base + [INF] if self.v == self.u + 1 else base

    def to_json(self) -> dict:
        return {"v": self.v, "cyclic": self.cyclic,
                "rounds": [[list(g) for g in rnd] for rnd in self.rounds]}

    @classmethod
    def from_json(cls, obj: dict) -> "WhistTournament":
        rounds = tuple(
            tuple(tuple(seat if seat == INF else int(seat) for seat in g) for g in rnd)
            for rnd in obj["rounds"])
        v = int(obj["v"])
        u = v - 1 if any(INF in g for rnd in rounds for g in rnd) else v
        return cls(v, u, rounds, bool(obj.get("cyclic", False)))


def develop_rounds(r0: tuple[Game, ...] | list[Game], u: int) -> WhistTournament:
    """Cyclic development: round j adds j to every seat, INF staying fixed."""
    r0 = tuple(tuple(g) for g in r0)
    has_inf = any(INF in g for g in r0)
    rounds = tuple(
        tuple(tuple(_shift(seat, j, u) for seat in g) for g in r0) for j in range(u))
    return WhistTournament(u + 1 if has_inf else u, u, rounds, True)


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    detail: str = ""


def _check_basic(t: WhistTournament) -> CheckResult:
    v = t.v
    if v % 4 not in (0, 1):
        return CheckResult(False, f"{v} players is not 0 or 1 modulo 4")
    n = v // 4
    expected_rounds = v - 1 if v % 4 == 0 else v
    if len(t.rounds) != expected_rounds:
        return CheckResult(False, f"expected {expected_rounds} rounds, got {len(t.rounds)}")
    players = set(t.players)
    misses: Counter = Counter()
    for rnd in t.rounds:
        if len(rnd) != n:
            return CheckResult(False, f"a round has {len(rnd)} games, expected {n}")
        seen: list[Seat] = [seat for g in rnd for seat in g]
        if len(set(seen)) != len(seen):
            return CheckResult(False, "a player appears twice in one round")
        if not set(seen) <= players:
            return CheckResult(False, "unknown player in a round")
        absent = players - set(seen)
        if v % 4 == 0:
            if absent:
                return CheckResult(False, f"players {sorted(map(str, absent))} sit out a round")
        else:
            if len(absent) != 1:
                return CheckResult(False, "exactly one player must sit out each round")
            misses[next(iter(absent))] += 1
    if v % 4 == 1 and (len(misses) != v or any(c != 1 for c in misses.values())):
        return CheckResult(False, "each player must sit out exactly one round")
    partners: Counter = Counter()
    opponents: Counter = Counter()
    for rnd in t.rounds:
        for g in rnd:
            partners.update(partner_pairs(g))
            opponents.update(opponent_pairs(g))
    all_pairs = {frozenset((x, y)) for x in players for y in players if x != y}
    bad = [p for p in all_pairs if partners.get(p, 0) != 1]
    if bad:
        pair = sorted(map(str, next(iter(bad))))
        return CheckResult(False, f"partner count wrong for pair {pair}")
    bad = [p for p in all_pairs if opponents.get(p, 0) != 2]
    if bad:
        pair = sorted(map(str, next(iter(bad))))
        return CheckResult(False, f"opponent count wrong for pair {pair}")
    return CheckResult(True)


def _check_zcps(t: WhistTournament) -> CheckResult:
    if not t.cyclic:
        return CheckResult(False, "tournament is not cyclically developed")
    u = t.u
    starter = {frozenset((x, (-x) % u)) for x in range(1, u)}
    if t.v == u + 1:
        starter.add(frozenset((INF, 0)))
    got = set()
    for g in t.rounds[0]:
        got.update(partner_pairs(g))
    if got != starter:
        return CheckResult(False, "initial-round partner pairs are not the patterned starter")
    return CheckResult(True)


def _left_pairs(game: Game) -> tuple[tuple[Seat, Seat], ...]:
    a, b, c, d = game
    return ((a, b), (b, c), (c, d), (d, a))


def _first_kind_pairs(game: Game) -> tuple[tuple[Seat, Seat], ...]:
    a, b, c, d = game
    return ((a, b), (a, d), (c, b), (c, d))


def _check_ordered_pair_cover(t: WhistTournament, pairs_of) -> CheckResult:
    tally: Counter = Counter()
    for rnd in t.rounds:
        for g in rnd:
            tally.update(pairs_of(g))
    players = t.players
    for x in players:
        for y in players:
            if x == y:
                continue
            if tally.get((x, y), 0) != 1:
                return CheckResult(False, f"ordered pair ({x}, {y}) covered "
                                          f"{tally.get((x, y), 0)} times")
    return CheckResult(True)


def _check_directed(t: WhistTournament) -> CheckResult:
    # Difference shortcut is only sound for cyclic tournaments without INF.
    if t.cyclic and t.v == t.u:
        u = t.u
        diffs = [(b - a) % u
                 for g in t.rounds[0]
                 for (a, b) in _left_pairs(g)]
        if sorted(diffs) != list(range(1, u)):
            return CheckResult(False, "left-opponent differences do not tile Z_v - {0}")
        return CheckResult(True)
    return _check_ordered_pair_cover(t, _left_pairs)


def _check_ordered(t: WhistTournament) -> CheckResult:
    if t.cyclic and t.v == t.u:
        u = t.u
        diffs = [(b - a) % u
                 for g in t.rounds[0]
                 for (a, b) in _first_kind_pairs(g)]
        if sorted(diffs) != list(range(1, u)):
            return CheckResult(False, "first-kind opponent differences do not tile Z_v - {0}")
        return CheckResult(True)
    return _check_ordered_pair_cover(t, _first_kind_pairs)


_CHECKS = {
    "basic": _check_basic,
    "zcps": _check_zcps,
    "directed": _check_directed,
    "ordered": _check_ordered,
}


def verify_whist(t: WhistTournament,
                 checks: tuple[str, ...] = ("basic", "zcps", "directed", "ordered"),
                 ) -> dict[str, CheckResult]:
    unknown = set(checks) - set(_CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    return {name: _CHECKS[name](t) for name in checks}


@dataclass(frozen=True)
class DifferenceMatrix:
    """k x v array over Z_v; every row pair's differences tile Z_v once."""

    k: int
    v: int
    rows: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"k": self.k, "v": self.v, "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, obj: dict) -> "DifferenceMatrix":
        return cls(int(obj["k"]), int(obj["v"]),
                   tuple(tuple(int(x) for x in r) for r in obj["rows"]))


def cdm_from_round(r0: tuple[Game, ...] | list[Game]) -> DifferenceMatrix:
    """5-row difference matrix from the initial round of a directed schedule.

    Each game contributes a zero row atop its four cyclic seat rotations;
    a leading all-zero column completes the matrix.  This works exactly when
    the round has every nonzero player once, the partner differences tile
    Z_v - {0}, and the left-opponent differences tile Z_v - {0} (the
    directed condition).
    """
    games = [tuple(g) for g in r0]
    if any(INF in g for g in games):
        raise ValueError("rounds with the adjoined player do not yield difference matrices")
    v = 4 * len(games) + 1
    players = sorted(seat for g in games for seat in g)
    if players != list(range(1, v)):
        raise ValueError("round must contain every player of Z_v except 0 exactly once")
    partner_diffs = sorted(
        diff % v for a, b, c, d in games for diff in (a - c, c - a, b - d, d - b))
    if partner_diffs != list(range(1, v)):
        raise ValueError("partner differences do not tile Z_v - {0}")
    directed_diffs = sorted((b - a) % v for g in games for a, b in _left_pairs(g))
    if directed_diffs != list(range(1, v)):
        raise ValueError("directed condition fails: left-opponent differences do not tile")
    rows = [[0] for _ in range(5)]
    for a, b, c, d in games:
        block = (a, b, c, d)
        rows[0].extend([0, 0, 0, 0])
        for r in range(4):
            rows[r + 1].extend(block[r:] + block[:r])
    return DifferenceMatrix(5, v, tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class CdmReport:
    valid: bool
    failures: tuple[tuple[int, int], ...]  # row index pairs whose differences misfire


def verify_cdm(d: DifferenceMatrix) -> CdmReport:
    failures = []
    for r in range(d.k):
        for s in range(r + 1, d.k):
            diffs = sorted((d.rows[r][l] - d.rows[s][l]) % d.v for l in range(len(d.rows[r])))
            if diffs != list(range(d.v)):
                failures.append((r, s))
    return CdmReport(not failures, tuple(failures))


@dataclass(frozen=True)
class CbsecReport:
    valid: bool
    contiguous_hits: tuple[tuple[int, int], ...]
    miscovered: tuple[tuple[int, int, int], ...]  # (x, y, count) for wrong coverage


def verify_cbsec(v: int, k: int, blocks, cyclic: bool = False) -> CbsecReport:
    """Check the contiguous-exclusion plan property.

    Cyclically adjacent point pairs must appear in no block; every other
    pair exactly once.  With cyclic=True the blocks are base blocks and are
    developed modulo v first.
    """
    blocks = [tuple(x % v for x in b) for b in blocks]
    for b in blocks:
        if len(b) != k or len(set(b)) != k:
            raise ValueError(f"block {b} is not a {k}-subset")
    if cyclic:
        blocks = [tuple(sorted((x + j) % v for x in b)) for b in blocks for j in range(v)]
    tally: Counter = Counter()
    for b in blocks:
        for i in range(k):
            for j in range(i + 1, k):
                tally[frozenset((b[i], b[j]))] += 1
    contiguous_hits = []
    miscovered = []
    for x in range(v):
        for y in range(x + 1, v):
            count = tally.get(frozenset((x, y)), 0)
            if (y - x) % v in (1, v - 1):
                if count:
                    contiguous_hits.append((x, y))
            elif count != 1:
                miscovered.append((x, y, count))
    return CbsecReport(not contiguous_hits and not miscovered,
                       tuple(contiguous_hits), tuple(miscovered))
