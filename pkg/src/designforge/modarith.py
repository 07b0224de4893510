"""Modular arithmetic shared by the construction and search modules.

Everything here is a pure function of its arguments.  Moduli are plain
Python ints; residues are ints reduced into [0, m).
"""

from __future__ import annotations

import math
from functools import lru_cache

from sympy import isprime
from sympy.ntheory import discrete_log, factorint
from sympy.ntheory import primitive_root as _sympy_primitive_root
from sympy.ntheory import sqrt_mod as _sympy_sqrt_mod


def _prime_power_shape(m: int) -> tuple[int, int]:
    """Return (p, e) for m = p**e with p an odd prime and e in {1, 2}."""
    if m < 3 or m % 2 == 0:
        raise ValueError(f"modulus {m} must be an odd prime or the square of one")
    if isprime(m):
        return m, 1
    r = math.isqrt(m)
    if r * r == m and isprime(r):
        return r, 2
    raise ValueError(f"modulus {m} must be an odd prime or the square of one")


def mod_sqrt(a: int, m: int) -> int | None:
    """Canonical square root of a modulo m, or None if a is a non-residue.

    m must be an odd prime p or p**2.  When two roots exist the numerically
    smaller one is returned, so downstream constructions are reproducible.
    """
    p, e = _prime_power_shape(m)
    a %= m
    if a == 0:
        return 0
    if math.gcd(a, m) != 1:
        raise ValueError(f"{a} is neither 0 nor a unit modulo {m}")
    root = _sympy_sqrt_mod(a, p)
    if root is None:
        return None
    if e == 1:
        return min(root, p - root)
    # Hensel lift from p to p**2; 2*root is a unit because p is odd and a != 0.
    lifted = (root - (root * root - a) * pow(2 * root, -1, m)) % m
    return min(lifted, m - lifted)


def crt_lift(residues: list[int], moduli: list[int]) -> int:
    """The unique residue modulo prod(moduli) matching every input residue."""
    if len(residues) != len(moduli):
        raise ValueError("residues and moduli must have equal length")
    if not moduli:
        raise ValueError("need at least one modulus")
    for i in range(len(moduli)):
        for j in range(i + 1, len(moduli)):
            if math.gcd(moduli[i], moduli[j]) != 1:
                raise ValueError(f"moduli {moduli[i]} and {moduli[j]} are not coprime")
    x, m = residues[0] % moduli[0], moduli[0]
    for r, n in zip(residues[1:], moduli[1:]):
        x += m * ((r - x) * pow(m, -1, n) % n)
        m *= n
    return x % m


@lru_cache(maxsize=None)
def _totient_with_factors(v: int) -> tuple[int, tuple[int, ...]]:
    phi = 1
    for p, e in factorint(v).items():
        phi *= (p - 1) * p ** (e - 1)
    return phi, tuple(factorint(phi))


def totient(v: int) -> int:
    return _totient_with_factors(v)[0]


def mult_order(x: int, v: int) -> int:
    """Least t > 0 with x**t == 1 (mod v)."""
    x %= v
    if math.gcd(x, v) != 1:
        raise ValueError(f"{x} is not a unit modulo {v}")
    phi, phi_primes = _totient_with_factors(v)
    t = phi
    for q in phi_primes:
        while t % q == 0 and pow(x, t // q, v) == 1:
            t //= q
    return t


def generates_mod_pm_one(x: int, v: int) -> bool:
    """True iff x together with -1 generates the full unit group of Z_v."""
    if v % 2 == 0:
        raise ValueError("modulus must be odd")
    x %= v
    if math.gcd(x, v) != 1:
        raise ValueError(f"{x} is not a unit modulo {v}")
    t = mult_order(x, v)
    minus_one_in_x = t % 2 == 0 and pow(x, t // 2, v) == v - 1
    size = t if minus_one_in_x else 2 * t
    return size == totient(v)


def smallest_primitive_root(q: int) -> int:
    """Smallest positive primitive root of the prime q."""
    if not isprime(q):
        raise ValueError(f"{q} is not prime")
    return int(_sympy_primitive_root(q))


def cyclotomic_index(x: int, d: int, q: int, omega: int | None = None) -> int:
    """Index i in [0, d) of the power-residue class of x modulo the prime q.

    Classes are the cosets of the d-th powers, numbered so that class i is
    omega**i times the class of the d-th powers.  omega defaults to the
    smallest primitive root, which fixes the numbering.
    """
    if not isprime(q):
        raise ValueError(f"{q} is not prime")
    if (q - 1) % d != 0:
        raise ValueError(f"{d} must divide {q}-1")
    x %= q
    if x == 0:
        raise ValueError("0 has no cyclotomic class")
    if omega is None:
        omega = smallest_primitive_root(q)
    elif mult_order(omega, q) != q - 1:
        raise ValueError(f"{omega} is not a primitive root modulo {q}")
    return int(discrete_log(q, x, omega)) % d


def q_bound(d: int, m: int) -> float:
    """Threshold above which any m-fold pattern of d-class conditions is solvable.

    Primes exceeding this bound always admit an element x lying in prescribed
    power-residue classes relative to m fixed shifts.
    """
    if d < 1 or m < 1:
        raise ValueError("d and m must be positive")
    u = sum(math.comb(m, h) * (d - 1) ** h * (h - 1) for h in range(1, m + 1))
    return 0.25 * (u + math.sqrt(u * u + 4 * d ** (m - 1) * m)) ** 2
