"""Ideals, nilpotency, strongly nilpotent elements, and the two radicals.

Strong nilpotence is decided through the nilpotency of the two-sided ideal
generated by the element; the descent-sequence definition is kept as an
independent oracle for small rings (`descent_strongly_nilpotent_mask`).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import RadicalNotIdeal, RingTooLarge
from .rings import (
    _CHUNK,
    UNIT_SCAN_LIMIT,
    Element,
    RingTable,
    additive_closure_mask,
    ideal_closure_mask,
    subgroup_basis,
)


@dataclass
class Ideal:
    ring: RingTable
    mask: np.ndarray
    _indices: np.ndarray | None = field(default=None, repr=False)
    _nilpotency: tuple | None = field(default=None, repr=False)

    @property
    def indices(self) -> np.ndarray:
        if self._indices is None:
            self._indices = np.flatnonzero(self.mask)
        return self._indices

    @property
    def order(self) -> int:
        return int(self.indices.size)

    def contains(self, x) -> bool:
        if isinstance(x, Element):
            x = x.index
        return bool(self.mask[x])

    def elements(self):
        return [Element(self.ring, int(i)) for i in self.indices]

    def __eq__(self, other):
        return (
            isinstance(other, Ideal)
            and other.ring is self.ring
            and np.array_equal(other.mask, self.mask)
        )

    def __repr__(self):
        return f"Ideal({self.ring.name}, order={self.order})"


def _certify_ideal(r: RingTable, mask: np.ndarray) -> bool:
    idx = np.flatnonzero(mask)
    if not mask[r.zero]:
        return False
    if not mask[r.vneg(idx)].all():
        return False
    if idx.size <= 2048:
        if not mask[r.vadd(idx[:, None], idx[None, :])].all():
            return False
    else:
        basis = subgroup_basis(r, idx)
        if not mask[r.vadd(idx[:, None], basis[None, :])].all():
            return False
    gens = np.unique(np.append(np.asarray(r.additive_generators, np.int64), r.one))
    for g in gens:
        if not mask[r.vmul(np.int64(g), idx)].all():
            return False
        if not mask[r.vmul(idx, np.int64(g))].all():
            return False
    return True


def ideal_generated(r: RingTable, gens) -> Ideal:
    """Smallest two-sided ideal containing `gens`, with its closure re-checked."""
    idxs = [g.index if isinstance(g, Element) else int(g) for g in gens]
    mask = ideal_closure_mask(r, np.asarray(idxs, np.int64))
    if not _certify_ideal(r, mask):
        raise RadicalNotIdeal(f"closure of {idxs} in {r.name} failed certification")
    return Ideal(r, mask)


def nilpotency_index(I: Ideal) -> int | None:
    """Smallest k with I^k = 0, or None if the powers stabilize above zero."""
    if I._nilpotency is not None:
        return I._nilpotency[0]
    r = I.ring
    result = _ideal_nilpotency(r, I.mask)
    I._nilpotency = (result,)
    return result


def _ideal_nilpotency(r: RingTable, mask: np.ndarray) -> int | None:
    count = int(mask.sum())
    if count == 1:
        return 1
    gens1 = subgroup_basis(r, np.flatnonzero(mask))
    cur_gens = gens1
    cur_count = count
    k = 1
    while k <= r.order:
        prods = np.unique(r.vmul(gens1[:, None], cur_gens[None, :]).ravel())
        nxt = additive_closure_mask(r, prods)
        k += 1
        cnt = int(nxt.sum())
        if cnt == 1:
            return k
        if cnt == cur_count:  # I^k = I^(k-1) != 0
            return None
        cur_count = cnt
        cur_gens = subgroup_basis(r, np.flatnonzero(nxt))
    return None


def element_nilpotency(r: RingTable, a: int) -> int | None:
    """Smallest e >= 1 with a^e = 0, or None if a is not nilpotent."""
    seen = set()
    x, e = a, 1
    while x not in seen:
        if x == r.zero:
            return e
        seen.add(x)
        x = r.mul(x, a)
        e += 1
    return None


def nilpotent_mask(r: RingTable) -> np.ndarray:
    """Mask of nilpotent elements (x^(2^m) = 0 for 2^m >= |R|)."""
    mask = r.cache.get("nilpotent_mask")
    if mask is None:
        passes = max(1, int(np.ceil(np.log2(max(2, r.order)))))
        mask = np.zeros(r.order, dtype=bool)
        for s in range(0, r.order, _CHUNK):
            y = np.arange(s, min(s + _CHUNK, r.order), dtype=np.int64)
            for _ in range(passes):
                y = r.vmul(y, y)
            mask[s : s + y.size] = y == r.zero
        r.cache["nilpotent_mask"] = mask
    return mask


def is_strongly_nilpotent(r: RingTable, a) -> tuple[bool, int | None]:
    """Whether RaR is nilpotent; the witness is that ideal's nilpotency index."""
    if isinstance(a, Element):
        a = a.index
    memo = r.cache.setdefault("sn_memo", {})
    hit = memo.get(a)
    if hit is not None:
        return hit
    p = r.cache.get("prime_ideal")
    if a == r.zero:
        res = (True, 1)
    elif p is not None and not p.mask[a]:
        res = (False, None)
    elif p is None and element_nilpotency(r, a) is None:
        # a = 1*a*1 lies in RaR, so a non-nilpotent element cannot qualify
        res = (False, None)
    else:
        mask = ideal_closure_mask(r, np.asarray([a], np.int64))
        k = _ideal_nilpotency(r, mask)
        res = (k is not None, k)
    memo[a] = res
    return res


def strongly_nilpotent_mask(r: RingTable) -> np.ndarray:
    return prime_radical(r).mask


def prime_radical(r: RingTable) -> Ideal:
    """The set of strongly nilpotent elements, verified to be an ideal.

    Elements are classified one by one; once some ideal RaR is known nilpotent
    its members are all strongly nilpotent, and sums of such ideals stay inside
    the radical, which collapses the scan to one test per coset.
    """
    cached = r.cache.get("prime_ideal")
    if cached is not None:
        return cached
    n = r.order
    nil = nilpotent_mask(r)
    classified = np.full(n, -1, dtype=np.int8)
    classified[~nil] = 0
    classified[r.zero] = 1
    known_mask = np.zeros(n, dtype=bool)
    known_mask[r.zero] = True
    known_basis = np.asarray([], np.int64)
    for x in range(n):
        if classified[x] != -1:
            continue
        ok, witness = is_strongly_nilpotent(r, x)
        if ok:
            part = ideal_closure_mask(r, np.asarray([x], np.int64))
            seeds = np.concatenate(
                [known_basis, subgroup_basis(r, np.flatnonzero(part))]
            )
            known_mask = additive_closure_mask(r, seeds)
            known_basis = subgroup_basis(r, np.flatnonzero(known_mask))
            classified[known_mask] = 1
        else:
            classified[r.vadd(np.int64(x), np.flatnonzero(known_mask))] = 0
    mask = classified == 1
    if not _certify_ideal(r, mask):
        raise RadicalNotIdeal(f"strongly nilpotent elements of {r.name} are not an ideal")
    ideal = Ideal(r, mask)
    r.cache["prime_ideal"] = ideal
    return ideal


def jacobson_radical(r: RingTable) -> Ideal:
    """{x : 1 - rx is a unit for every r}, valid in finite rings.

    Above the unit-scan guard the radical is produced from the prime radical:
    in a finite ring J(R) is nilpotent, hence equals P(R); the inclusion
    P(R) <= J(R) is still verified by checking that 1 + P consists of units.
    """
    cached = r.cache.get("jacobson_ideal")
    if cached is not None:
        return cached
    if r.order <= UNIT_SCAN_LIMIT:
        units = r.unit_mask
        idx = np.arange(r.order, dtype=np.int64)
        mask = np.zeros(r.order, dtype=bool)
        cols = max(1, _CHUNK // r.order)
        for s in range(0, r.order, cols):
            block = idx[s : s + cols]
            t = r.vmul(idx[:, None], block[None, :])
            mask[block] = units[r.vadd(r.one, r.vneg(t))].all(axis=0)
    else:
        p = prime_radical(r)
        one_plus = r.vadd(r.one, p.indices)
        if not _all_units_by_powers(r, one_plus):
            raise RadicalNotIdeal(
                f"{r.name}: some 1 + p with p in P(R) is not a unit (bug trap)"
            )
        mask = p.mask.copy()
    if not _certify_ideal(r, mask):
        raise RadicalNotIdeal(f"Jacobson radical of {r.name} failed ideal closure")
    if not mask[prime_radical(r).indices].all():
        raise RadicalNotIdeal(f"{r.name}: prime radical not inside Jacobson radical")
    ideal = Ideal(r, mask)
    r.cache["jacobson_ideal"] = ideal
    return ideal


def _all_units_by_powers(r: RingTable, xs: np.ndarray) -> bool:
    """True iff every x has some power equal to 1 (units of finite order)."""
    z = xs.copy()
    pending = np.ones(xs.size, dtype=bool)
    for _ in range(r.order + 1):
        pending &= z != r.one
        if not pending.any():
            return True
        z = r.vmul(z, xs)
    return False


def is_boolean(r: RingTable) -> bool:
    return bool(r.idempotent_mask.all())


def is_local(r: RingTable) -> bool:
    """Finite-ring test: the non-units form a (two-sided) ideal.

    Closure of non-units under multiplication is automatic in a finite ring,
    so only additive closure is checked.  Beyond the unit-scan guard the
    equivalent trivial-idempotent criterion is used (idempotents lift modulo
    the nilpotent radical, so a finite ring is local iff its only idempotents
    are 0 and 1).
    """
    flag = r.cache.get("is_local")
    if flag is None:
        if r.order <= UNIT_SCAN_LIMIT:
            nonunits = np.flatnonzero(~r.unit_mask)
            flag = True
            rows = max(1, _CHUNK // max(1, nonunits.size))
            for s in range(0, nonunits.size, rows):
                block = r.vadd(nonunits[s : s + rows, None], nonunits[None, :])
                if r.unit_mask[block].any():
                    flag = False
                    break
        else:
            flag = r.idempotent_indices.size == 2
        r.cache["is_local"] = flag
    return flag


def is_abelian(r: RingTable) -> bool:
    """Every idempotent is central."""
    flag = r.cache.get("is_abelian")
    if flag is None:
        idx = np.arange(r.order, dtype=np.int64)
        flag = True
        for e in r.idempotent_indices:
            if not np.array_equal(r.vmul(np.int64(e), idx), r.vmul(idx, np.int64(e))):
                flag = False
                break
        r.cache["is_abelian"] = flag
    return flag


def is_locally_nilpotent(I: Ideal) -> bool:
    """Every element of I generates a nilpotent ideal."""
    r = I.ring
    p = r.cache.get("prime_ideal")
    if p is not None:
        return bool(p.mask[I.indices].all())
    return all(is_strongly_nilpotent(r, int(x))[0] for x in I.indices)


# ---------------------------------------------------------------------------
# independent oracle: the descent-sequence definition


def descent_strongly_nilpotent_mask(r: RingTable, guard: int = 512) -> np.ndarray:
    """Strong nilpotence decided directly on descent sequences a_{i+1} = a_i t a_i.

    An element is strongly nilpotent iff no sequence of descents can avoid 0
    forever; over a finite ring that happens exactly when no nonzero cycle in
    the descent graph is reachable from it.  Exponential-flavored reference
    path, guarded to small rings.
    """
    n = r.order
    if n > guard:
        raise RingTooLarge(f"descent oracle guarded to order <= {guard}")
    idx = np.arange(n, dtype=np.int64)
    children = [
        np.unique(r.vmul(r.vmul(np.int64(x), idx), np.int64(x))) for x in range(n)
    ]

    # Tarjan SCC (iterative); nonzero SCCs with a cycle are unsafe cores.
    index = np.full(n, -1, dtype=np.int64)
    low = np.zeros(n, dtype=np.int64)
    on_stack = np.zeros(n, dtype=bool)
    stack: list[int] = []
    bad = np.zeros(n, dtype=bool)
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            kids = children[v]
            while pi < len(kids):
                w = int(kids[pi])
                pi += 1
                if index[w] == -1:
                    work[-1] = (v, pi)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                cyclic = len(comp) > 1 or v in set(int(c) for c in children[v])
                if cyclic:
                    for w in comp:
                        if w != r.zero:
                            bad[w] = True
            if work:
                pv, _ = work[-1]
                low[pv] = min(low[pv], low[v])

    # unsafe = can reach a bad node
    rev: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        for w in children[v]:
            rev[int(w)].append(v)
    unsafe = bad.copy()
    frontier = list(np.flatnonzero(bad))
    while frontier:
        w = frontier.pop()
        for v in rev[w]:
            if not unsafe[v]:
                unsafe[v] = True
                frontier.append(v)
    return ~unsafe
