"""Integer helpers: divisors, Mobius function, multiplicative order, iterated gcd.

Everything here is exact big-integer arithmetic; divisibility conditions used by the
graph predictions must never be evaluated through modular shortcuts.
"""

from math import gcd, isqrt

TRIAL_DIVISION_LIMIT = 10**6


class NotCoprime(ValueError):
    """Raised when a multiplicative order is requested for a non-unit."""


def is_prime(n: int) -> bool:
    """Trial-division primality test (desk scale)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_up_to(limit: int) -> list[int]:
    """All primes <= limit, via a plain sieve."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, flag in enumerate(sieve) if flag]


def factorize(n: int) -> dict[int, int]:
    """Prime factorization {p: exponent} by trial division up to 1e6."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n and f <= TRIAL_DIVISION_LIMIT:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        if n > TRIAL_DIVISION_LIMIT**2:
            raise ValueError(f"cofactor {n} too large for trial division")
        out[n] = out.get(n, 0) + 1
    return out


def divisors(u: int) -> tuple[int, ...]:
    """All positive divisors of u, ascending."""
    if u < 1:
        raise ValueError("divisors expects a positive integer")
    divs = [1]
    for p, e in factorize(u).items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return tuple(sorted(divs))


def mobius(d: int) -> int:
    """Mobius function: 0 on non-squarefree d, else (-1)^(number of prime factors)."""
    if d < 1:
        raise ValueError("mobius expects a positive integer")
    fac = factorize(d)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def mult_order(b: int, d: int) -> int:
    """Least t >= 1 with b^t = 1 (mod d), by successive multiplication.

    The loop is capped at d steps; for units mod d the order always divides
    the group order, so the cap is never reached.
    """
    if d < 1:
        raise ValueError("modulus must be positive")
    if d == 1:
        return 1
    if gcd(b, d) != 1:
        raise NotCoprime(f"gcd({b}, {d}) > 1")
    acc = b % d
    t = 1
    while acc != 1:
        acc = acc * b % d
        t += 1
        if t > d:
            raise ArithmeticError("order loop exceeded modulus")
    return t


def coprime_split(N: int, n: int) -> tuple[int, int]:
    """Split N = omega * nu with gcd(omega, n) = 1 and every prime of nu dividing n.

    Returns (omega, nu); omega is the greatest divisor of N coprime to n.
    """
    if N < 1 or n < 1:
        raise ValueError("coprime_split expects positive integers")
    omega = N
    g = gcd(omega, n)
    while g > 1:
        omega //= g
        g = gcd(omega, n)
    return omega, N // omega


def iterated_gcd(n: int, v: int) -> tuple[int, ...]:
    """Iterated gcd series (v_1, ..., v_s): v_i = gcd(n^i, v) / gcd(n^(i-1), v).

    Prefix products recover gcd(n^j, v); s is minimal with v_s = 1.
    """
    if n < 1 or v < 1:
        raise ValueError("iterated_gcd expects positive integers")
    entries = []
    prev = 1
    power = 1
    while True:
        power *= n
        cur = gcd(power, v)
        entries.append(cur // prev)
        if entries[-1] == 1:
            return tuple(entries)
        prev = cur
