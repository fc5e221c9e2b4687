#!/usr/bin/env python3
"""Regenerate the vendored OEIS b-file excerpts under crates/core/data/oeis.

Used when the OEIS server is unreachable. Shell counts are brute-force
lattice point counts; the "smallest k" sequences come from a minimal
product construction over the split primes and are spot-checked against
a brute-force scan. Nothing here shares code with the Rust crate.
"""
import math
import os
import sys

N_SHELL = 200
N_LOWEST = 200
OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "data", "oeis")


def count_hex(n):
    bound = 2 * math.isqrt(n) + 2
    return sum(
        1
        for a in range(-bound, bound + 1)
        for b in range(-bound, bound + 1)
        if a * a + a * b + b * b == n
    )


def count_square(n):
    bound = math.isqrt(n) + 1
    return sum(
        1
        for a in range(-bound, bound + 1)
        for b in range(-bound, bound + 1)
        if a * a + b * b == n
    )


def primes_in_class(modulus, residue, count):
    out, p = [], 2
    while len(out) < count:
        if all(p % q for q in range(2, math.isqrt(p) + 1)) and p % modulus == residue:
            out.append(p)
        p += 1
    return out


def minimal_product(n, primes, idx=0, max_exp=None):
    if n == 1:
        return 1
    best = None
    for d in range(2, n + 1):
        if n % d:
            continue
        e = d - 1
        if max_exp is not None and e > max_exp:
            continue
        rest = minimal_product(n // d, primes, idx + 1, e)
        if rest is None:
            continue
        cand = primes[idx] ** e * rest
        if best is None or cand < best:
            best = cand
    return best


def lowest(unit, modulus, zero_value):
    primes = primes_in_class(modulus, 1, 16)
    seq = [zero_value]
    for n in range(1, N_LOWEST + 1):
        seq.append(minimal_product(n, primes))
    return seq


def write(name, seq, title):
    path = os.path.join(OUT, name + ".bfile")
    with open(path, "w") as fh:
        fh.write(f"# {name} {title}\n")
        fh.write("# excerpt generated offline by scripts/gen_oeis_excerpts.py\n")
        for n, v in enumerate(seq):
            fh.write(f"{n} {v}\n")


def spot_check(seq, counter, unit, limit):
    first = {}
    for k in range(1, limit + 1):
        c = counter(k)
        if c % unit == 0:
            first.setdefault(c // unit, k)
    for n, v in enumerate(seq):
        if v <= limit:
            assert first.get(n) == v, (n, v, first.get(n))
        else:
            assert n not in first, (n, first[n], v)


def main():
    hexa = [1] + [count_hex(n) for n in range(1, N_SHELL + 1)]
    sq = [1] + [count_square(n) for n in range(1, N_SHELL + 1)]
    low_hex = lowest(6, 3, 2)
    low_sq = lowest(4, 4, 3)
    spot_check(low_hex, count_hex, 6, 3000)
    spot_check(low_sq, count_square, 4, 3000)
    os.makedirs(OUT, exist_ok=True)
    write("A004016", hexa, "number of vectors of norm n in the hexagonal lattice")
    write("A004018", sq, "number of ways of writing n as a sum of 2 squares")
    write("A343771", low_hex, "smallest k with A004016(k) = 6n")
    write("A018782", low_sq, "smallest k with A004018(k) = 4n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
