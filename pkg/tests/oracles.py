"""Tiny self-contained reference implementations used as independent oracles.

Everything here works on plain Python ints/tuples and never touches the
package's index machinery, so a test comparing against these functions checks
the library along a genuinely different route.
"""

from itertools import product


def mat_mul(A, B, mod, k=2):
    return tuple(
        tuple(sum(A[i][l] * B[l][j] for l in range(k)) % mod for j in range(k))
        for i in range(k)
    )


def mat_add(A, B, mod, k=2):
    return tuple(tuple((A[i][j] + B[i][j]) % mod for j in range(k)) for i in range(k))


def mat_sub(A, B, mod, k=2):
    return tuple(tuple((A[i][j] - B[i][j]) % mod for j in range(k)) for i in range(k))


def all_matrices(mod, k=2):
    ents = range(mod)
    for flat in product(ents, repeat=k * k):
        yield tuple(tuple(flat[i * k + j] for j in range(k)) for i in range(k))


def all_triangular(mod, k=2):
    for flat in product(range(mod), repeat=k * (k + 1) // 2):
        it = iter(flat)
        rows = []
        for i in range(k):
            rows.append(tuple(0 if j < i else next(it) for j in range(k)))
        yield tuple(rows)


def units_zn(n):
    return {x for x in range(n) if any(x * y % n == 1 for y in range(n))}


def idempotents_of(elements, mul):
    return [a for a in elements if mul(a, a) == a]


def gauss_mul(x, y, n):
    a, b = x
    c, d = y
    return ((a * c - b * d) % n, (a * d + b * c) % n)


def gauss_add(x, y, n):
    return ((x[0] + y[0]) % n, (x[1] + y[1]) % n)


def two_sided_ideal(gens, elements, mul, add, zero):
    """Fixpoint closure under +, and left/right multiplication."""
    ideal = {zero} | set(gens)
    changed = True
    while changed:
        changed = False
        for x in list(ideal):
            for r in elements:
                for y in (mul(r, x), mul(x, r)):
                    if y not in ideal:
                        ideal.add(y)
                        changed = True
            for z in list(ideal):
                s = add(x, z)
                if s not in ideal:
                    ideal.add(s)
                    changed = True
    return ideal


def ideal_nilpotency(ideal, mul, add, zero, cap=64):
    """Smallest k with I^k = {0}, by direct power iteration on sets."""

    def addclose(seed):
        out = {zero} | set(seed)
        changed = True
        while changed:
            changed = False
            for x in list(out):
                for y in list(out):
                    s = add(x, y)
                    if s not in out:
                        out.add(s)
                        changed = True
        return out

    cur = set(ideal)
    k = 1
    while k <= cap:
        if cur == {zero}:
            return k
        nxt = addclose({mul(x, y) for x in ideal for y in cur})
        if nxt == cur:
            return None
        cur = nxt
        k += 1
    return None
