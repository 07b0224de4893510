"""Direct and recursive pair-set constructions.

The direct family lives on primes p = 7 (mod 8): with r = sqrt(2) mod p the
element t = 1 + r satisfies t(t-1) = t+1, so consecutive powers of t chain
elements to sums/differences and a run of power pairs tiles the group.  The
recursive operations (inflate, fill, products, unions) assemble larger
moduli from verified smaller witnesses, and everything returns the pair set
together with the spec it claims, so callers can re-verify.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from sympy import isprime

from .core import PairSet, PPSSpec, SetKind, infer_params, scale_set, verify_pps
from .modarith import crt_lift, generates_mod_pm_one, mod_sqrt


@dataclass(frozen=True)
class SilverWitness:
    """1 + sqrt(2) modulo p or p**2, with its unit-group generation status."""

    p: int
    modulus: int
    theta: int
    generates: bool


def silver_witness(p: int, *, square: bool = False) -> SilverWitness:
    if not isprime(p) or p % 8 != 7:
        raise ValueError(f"p must be a prime congruent to 7 modulo 8, got {p}")
    m = p * p if square else p
    root = mod_sqrt(2, m)
    assert root is not None  # 2 is a square for p = 7 (mod 8)
    theta = (1 + root) % m
    assert theta * (theta - 1) % m == (theta + 1) % m
    return SilverWitness(p, m, theta, generates_mod_pm_one(theta, m))


def _power_chain(theta: int, m: int, count: int) -> list[tuple[int, int]]:
    """Pairs {theta^(2i-1), theta^(2i)} for i = 1..count."""
    pairs = []
    x = 1
    for _ in range(count):
        a = x * theta % m
        b = a * theta % m
        pairs.append((a, b))
        x = b
    return pairs


def silver_aps(p: int) -> tuple[PairSet, PPSSpec]:
    """APS(p, 1, theta-1) from the power chain of theta = 1 + sqrt(2)."""
    w = silver_witness(p)
    if not w.generates:
        raise ValueError(
            f"1 + sqrt(2) does not generate the units of Z_{p} up to sign")
    pairs = _power_chain(w.theta, p, (p - 3) // 4)
    return PairSet(p, tuple(pairs)), PPSSpec.aps(p, 1, w.theta - 1)


def aps_with_params(p: int, alpha: int, beta: int) -> tuple[PairSet, PPSSpec]:
    """APS(p, alpha, beta) for any admissible target, by scaling the chain.

    Requires 2*alpha**2 == beta**2 (mod p); both square roots of 2 are tried
    before giving up, though the first consistently suffices.
    """
    alpha %= p
    beta %= p
    if alpha == 0 or beta == 0:
        raise ValueError("alpha and beta must be nonzero")
    if (2 * alpha * alpha - beta * beta) % p != 0:
        raise ValueError(
            f"2*{alpha}^2 - {beta}^2 is not 0 modulo {p}; no such APS exists")
    w = silver_witness(p)
    if not w.generates:
        raise ValueError(
            f"1 + sqrt(2) does not generate the units of Z_{p} up to sign")
    spec = PPSSpec.aps(p, alpha, beta)
    root = w.theta - 1
    for theta in (1 + root, 1 + (p - root)):
        base = PairSet(p, tuple(_power_chain(theta % p, p, (p - 3) // 4)))
        scaled = scale_set(base, alpha)
        if verify_pps(scaled, spec).valid:
            return scaled, spec
    raise ValueError(f"no scaling of the power chain realizes APS({p},{alpha},{beta})")


def fill(
    outer: PairSet,
    inner: PairSet,
    d: int,
    *,
    inner_spec: PPSSpec | None = None,
) -> tuple[PairSet, PPSSpec]:
    """Replace the subgroup hole of outer by an embedded copy of inner.

    outer must cover Z_v minus the subgroup H of multiples of d, on both
    sides; inner lives on Z_h with h = v/d and is embedded via x -> d*x.
    """
    v = outer.v
    if v % d != 0:
        raise ValueError(f"{d} does not divide {v}")
    h = v // d
    if inner.v != h:
        raise ValueError(f"inner modulus {inner.v} != {v}/{d}")
    subgroup = frozenset(range(0, v, d))
    outer_spec = PPSSpec(v, subgroup, subgroup)
    if not verify_pps(outer, outer_spec).valid:
        raise ValueError("outer pair set does not cover the complement of the subgroup")
    if inner_spec is None:
        inner_spec = infer_params(inner)
        if inner_spec is None:
            raise ValueError("inner pair set is not a valid partial pair set")
    elif not verify_pps(inner, inner_spec).valid:
        raise ValueError("inner pair set fails its stated spec")
    pairs = outer.pairs + tuple((d * x % v, d * y % v) for x, y in inner.pairs)
    spec = PPSSpec(
        v,
        frozenset(d * a % v for a in inner_spec.a1),
        frozenset(d * a % v for a in inner_spec.a2),
    )
    return PairSet(v, pairs), spec


def inflate(
    s: PairSet,
    u: int,
    *,
    spec: PPSSpec | None = None,
) -> tuple[PairSet, PPSSpec]:
    """Stretch a pair set on Z_v to Z_{vu} by the {x + sv, y + 2sv} family.

    Needs gcd(u, 6) = 1 so that the shifts s, 2s and 3s each run over all of
    Z_u.  The excluded sets lift to all of their preimages modulo v.
    """
    if math.gcd(u, 6) != 1:
        raise ValueError(f"u = {u} must be coprime to 6")
    if spec is None:
        spec = infer_params(s)
        if spec is None:
            raise ValueError("input pair set is not a valid partial pair set")
    elif not verify_pps(s, spec).valid:
        raise ValueError("input pair set fails its stated spec")
    v, n = s.v, s.v * u
    pairs = tuple(
        ((x + k * v) % n, (y + 2 * k * v) % n) for x, y in s.pairs for k in range(u))
    lifted = PPSSpec(
        n,
        frozenset(a + v * k for a in spec.a1 for k in range(u)),
        frozenset(a + v * k for a in spec.a2 for k in range(u)),
    )
    return PairSet(n, pairs), lifted


def compose_ps_aps(sv: PairSet, su: PairSet) -> tuple[PairSet, PPSSpec]:
    """PS(v) x APS(u, a, b) -> APS(vu, va, vb) for u = 7, 11 (mod 12)."""
    u = su.v
    if u % 12 not in (7, 11):
        raise ValueError(f"u = {u} must be 7 or 11 modulo 12")
    if not verify_pps(sv, PPSSpec.ps(sv.v)).valid:
        raise ValueError("first argument is not a valid PS")
    su_spec = infer_params(su)
    if su_spec is None or su_spec.kind is not SetKind.APS:
        raise ValueError("second argument is not a valid APS")
    outer, _ = inflate(sv, u, spec=PPSSpec.ps(sv.v))
    return fill(outer, su, sv.v, inner_spec=su_spec)


def ps_product(su: PairSet, sv: PairSet) -> tuple[PairSet, PPSSpec]:
    """PS(u) x PS(v) -> PS(uv) for u, v = 1 (mod 4)."""
    u, v = su.v, sv.v
    if u % 4 != 1 or v % 4 != 1:
        raise ValueError("both moduli must be 1 modulo 4")
    for s in (su, sv):
        if not verify_pps(s, PPSSpec.ps(s.v)).valid:
            raise ValueError(f"input over Z_{s.v} is not a valid PS")
    outer, _ = inflate(sv, u, spec=PPSSpec.ps(v))
    return fill(outer, su, v, inner_spec=PPSSpec.ps(u))


def _nonzero_squares(p: int) -> set[int]:
    return {x * x % p for x in range(1, p)}


def cyclotomic_witnesses(p: int, q: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Witness pairs (x1, y1) mod p and (x2, y2) mod q for the two-prime tiling.

    Modulo p both entries, their sum and their difference must be squares;
    modulo q the entries must fall in opposite square classes in the pattern
    (square, nonsquare) with x2+y2 a square and x2-y2 a nonsquare.  The
    lexicographically first witnesses are returned.  Above the class-pattern
    bound q_bound(2, 3) = 45.86 existence is guaranteed; the handful of
    smaller primes all have witnesses too (pinned in the catalog).
    """
    sq_p = _nonzero_squares(p)
    sq_q = _nonzero_squares(q)
    first = None
    for x1 in range(1, p):
        if x1 not in sq_p:
            continue
        for y1 in range(1, p):
            if (y1 in sq_p and (x1 + y1) % p in sq_p and (x1 - y1) % p in sq_p):
                first = (x1, y1)
                break
        if first:
            break
    second = None
    for x2 in range(1, q):
        if x2 not in sq_q:
            continue
        for y2 in range(1, q):
            if y2 == 0 or y2 in sq_q:
                continue
            total, diff = (x2 + y2) % q, (x2 - y2) % q
            if total in sq_q and diff != 0 and diff not in sq_q:
                second = (x2, y2)
                break
        if second:
            break
    if first is None or second is None:
        raise ValueError(f"no cyclotomic witnesses exist for ({p}, {q})")
    return first, second


def cyclotomic_pps(p: int, q: int) -> tuple[PairSet, PPSSpec]:
    """Pair set on Z_pq covering exactly the residues coprime to pq.

    Both excluded sets are the union of the multiples of p and of q.
    """
    if not (isprime(p) and isprime(q)) or p % 4 != 3 or q % 4 != 3 or not p > q > 3:
        raise ValueError("need primes p > q > 3 with p, q = 3 modulo 4")
    (x1, y1), (x2, y2) = cyclotomic_witnesses(p, q)
    n = p * q
    pairs = []
    for s1 in sorted(_nonzero_squares(p)):
        for s2 in sorted(_nonzero_squares(q)):
            a = crt_lift([x1 * s1 % p, x2 * s2 % q], [p, q])
            b = crt_lift([y1 * s1 % p, y2 * s2 % q], [p, q])
            pairs.append((a, b))
    excluded = frozenset(z for z in range(n) if z % p == 0 or z % q == 0)
    return PairSet(n, tuple(pairs)), PPSSpec(n, excluded, excluded)


def union_pps_pq(
    p: int,
    q: int,
    sp: PairSet,
    sq: PairSet,
) -> tuple[PairSet, PPSSpec]:
    """Glue APS(p) and APS(q) into the coprime-residue tiling of Z_pq.

    The result excludes {0, +-q*a1, +-p*a2} on the element side and
    {0, +-q*b1, +-p*b2} on the sum/difference side, where (a1, b1) and
    (a2, b2) are the parameters of the two inputs.
    """
    if sp.v != p or sq.v != q:
        raise ValueError("pair-set moduli must match p and q")
    sp_spec = infer_params(sp)
    sq_spec = infer_params(sq)
    for spec, v in ((sp_spec, p), (sq_spec, q)):
        if spec is None or spec.kind is not SetKind.APS:
            raise ValueError(f"input over Z_{v} is not a valid APS")
    base, _ = cyclotomic_pps(p, q)
    n = p * q
    pairs = base.pairs
    pairs += tuple((q * x % n, q * y % n) for x, y in sp.pairs)
    pairs += tuple((p * x % n, p * y % n) for x, y in sq.pairs)
    a1 = frozenset({0, q * sp_spec.alpha % n, -q * sp_spec.alpha % n,
                    p * sq_spec.alpha % n, -p * sq_spec.alpha % n})
    a2 = frozenset({0, q * sp_spec.beta % n, -q * sp_spec.beta % n,
                    p * sq_spec.beta % n, -p * sq_spec.beta % n})
    return PairSet(n, pairs), PPSSpec(n, a1, a2)


def silver_pps_p2(p: int, alpha: int, beta: int) -> tuple[PairSet, PPSSpec]:
    """Pair set on Z_{p^2} excluding {0, +-alpha, +-p*alpha} / the beta analogue.

    Two power chains of theta = 1 + sqrt(2) mod p**2 are glued: one through
    the units, one through p times the units, then both are scaled by alpha.
    Requires 2*alpha**2 == beta**2 (mod p**2) and that theta generates the
    units of Z_{p^2} up to sign (which fails for some p, e.g. 31).
    """
    m = p * p
    alpha %= m
    beta %= m
    if math.gcd(alpha, p) != 1:
        raise ValueError("alpha must be a unit modulo p")
    if (2 * alpha * alpha - beta * beta) % m != 0:
        raise ValueError(f"2*{alpha}^2 - {beta}^2 is not 0 modulo {m}; no such set exists")
    w = silver_witness(p, square=True)
    if not w.generates:
        raise ValueError(
            f"1 + sqrt(2) does not generate the units of Z_{p}^2 up to sign")
    unit_chain = _power_chain(w.theta, m, (m - p - 2) // 4)
    sub_chain = [(p * x % m, p * y % m)
                 for x, y in _power_chain(w.theta, m, (p - 3) // 4)]
    scaled = scale_set(PairSet(m, tuple(unit_chain + sub_chain)), alpha)
    spec = PPSSpec(
        m,
        frozenset({0, alpha, -alpha % m, p * alpha % m, -p * alpha % m}),
        frozenset({0, beta, -beta % m, p * beta % m, -p * beta % m}),
    )
    return scaled, spec
