"""Finite unital rings materialized over a dense element index 0..|R|-1.

Rings of order <= DENSE_TABLE_LIMIT carry full Cayley tables (uint16); larger
rings compute on coordinates with identical observable behavior.  All bulk
operations are numpy-vectorized over index arrays.
"""

from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass

import numpy as np

from . import specs
from .errors import (
    MalformedSpec,
    MixedRingOperands,
    OrderLimitExceeded,
    PcleanError,
    PreconditionFailed,
    RingTooLarge,
)

DENSE_TABLE_LIMIT = 4096
DEFAULT_ORDER_LIMIT = 65536
UNIT_SCAN_LIMIT = 16384
_CHUNK = 1 << 20  # lanes per chunk in whole-ring scans


# ---------------------------------------------------------------------------
# element literal scanning


class _Lit:
    """Cursor over an element literal; offsets refer to the original text."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def expect(self, ch: str):
        if self.peek() != ch:
            raise MalformedSpec(f"expected {ch!r} in element literal", self.pos)
        self.pos += 1

    def parse_int(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        tok = self.text[start : self.pos]
        if not tok or tok in "+-":
            raise MalformedSpec("expected an integer", start)
        return int(tok)


# ---------------------------------------------------------------------------
# arithmetic kernels


class ZnKernel:
    def __init__(self, n: int):
        self.n = n
        self.order = n
        self.zero = 0
        self.one = 1 % n

    def vadd(self, a, b):
        return (np.asarray(a, np.int64) + np.asarray(b, np.int64)) % self.n

    def vneg(self, a):
        return (-np.asarray(a, np.int64)) % self.n

    def vmul(self, a, b):
        return (np.asarray(a, np.int64) * np.asarray(b, np.int64)) % self.n

    def additive_generators(self):
        return [1 % self.n]

    def fmt(self, i: int) -> str:
        return str(i)

    def parse_literal(self, lit: _Lit) -> int:
        return lit.parse_int() % self.n


class QuadExtKernel:
    """Z_n adjoin t with t^2 = c0 + c1*t; element a + b*t has index a*n + b."""

    def __init__(self, n: int, c0: int, c1: int, symbol: str):
        self.n = n
        self.c0 = c0 % n
        self.c1 = c1 % n
        self.symbol = symbol
        self.order = n * n
        self.zero = 0
        self.one = (1 % n) * n

    def _parts(self, a):
        a = np.asarray(a, np.int64)
        return a // self.n, a % self.n

    def _join(self, x, y):
        return x * self.n + y

    def vadd(self, a, b):
        xa, ya = self._parts(a)
        xb, yb = self._parts(b)
        return self._join((xa + xb) % self.n, (ya + yb) % self.n)

    def vneg(self, a):
        x, y = self._parts(a)
        return self._join((-x) % self.n, (-y) % self.n)

    def vmul(self, a, b):
        xa, ya = self._parts(a)
        xb, yb = self._parts(b)
        cross = ya * yb
        x = (xa * xb + cross * self.c0) % self.n
        y = (xa * yb + ya * xb + cross * self.c1) % self.n
        return self._join(x, y)

    def additive_generators(self):
        return [self._join(1, 0), self._join(0, 1)]

    def fmt(self, i: int) -> str:
        a, b = i // self.n, i % self.n
        if b == 0:
            return str(a)
        bi = self.symbol if b == 1 else f"{b}{self.symbol}"
        return bi if a == 0 else f"{a}+{bi}"

    def parse_literal(self, lit: _Lit) -> int:
        a = b = 0
        first = True
        while True:
            ch = lit.peek()
            sign = 1
            if ch and ch in "+-":
                sign = -1 if ch == "-" else 1
                lit.take()
            elif not first:
                break
            ch = lit.peek()
            if ch.isdigit():
                v = lit.parse_int()
                if lit.peek().lower() == self.symbol:
                    lit.take()
                    b += sign * v
                else:
                    a += sign * v
            elif ch.lower() == self.symbol:
                lit.take()
                b += sign
            else:
                raise MalformedSpec("expected a coefficient term", lit.pos)
            first = False
        return self._join(a % self.n, b % self.n)


class _PositionalKernel:
    """Shared machinery for rings whose elements are digit vectors over a base."""

    def __init__(self, base: "RingTable", npos: int):
        self.base = base
        self.npos = npos
        self.m = base.order
        self.order = self.m**npos
        self.zero = 0

    def _digits(self, a):
        a = np.asarray(a, np.int64).copy()
        out = np.empty((self.npos,) + a.shape, dtype=np.int64)
        for j in range(self.npos - 1, -1, -1):
            out[j] = a % self.m
            a //= self.m
        return out

    def _encode(self, digits):
        acc = np.zeros(np.shape(digits[0]), dtype=np.int64)
        for j in range(self.npos):
            acc = acc * self.m + np.asarray(digits[j], np.int64)
        return acc

    def vadd(self, a, b):
        da, db = self._digits(a), self._digits(b)
        return self._encode([self.base.vadd(da[j], db[j]) for j in range(self.npos)])

    def vneg(self, a):
        da = self._digits(a)
        return self._encode([self.base.vneg(da[j]) for j in range(self.npos)])

    def additive_generators(self):
        gens = []
        for j in range(self.npos):
            for g in self.base.additive_generators:
                digits = [self.base.zero] * self.npos
                digits[j] = g
                gens.append(int(self._encode([np.int64(d) for d in digits])))
        return gens

    def _dot(self, terms):
        acc = None
        for x, y in terms:
            p = self.base.vmul(x, y)
            acc = p if acc is None else self.base.vadd(acc, p)
        return acc


class MatrixKernel(_PositionalKernel):
    """k x k matrices, entries row-major, big-endian digit index."""

    def __init__(self, k: int, base: "RingTable"):
        super().__init__(base, k * k)
        self.k = k
        one = [base.zero] * self.npos
        for i in range(k):
            one[i * k + i] = base.one
        self.one = int(self._encode([np.int64(d) for d in one]))

    def vmul(self, a, b):
        k = self.k
        da, db = self._digits(a), self._digits(b)
        out = [
            self._dot([(da[i * k + l], db[l * k + j]) for l in range(k)])
            for i in range(k)
            for j in range(k)
        ]
        return self._encode(out)

    def fmt(self, idx: int) -> str:
        d = self._digits(np.int64(idx))
        k = self.k
        rows = [
            ",".join(self.base.fmt_index(int(d[i * k + j])) for j in range(k))
            for i in range(k)
        ]
        return "[" + ";".join(rows) + "]"

    def parse_literal(self, lit: _Lit) -> int:
        entries = _parse_matrix_entries(lit, self.k, self.base)
        return int(self._encode([np.int64(e) for row in entries for e in row]))


class TriangularKernel(_PositionalKernel):
    """Upper triangular k x k matrices; positions (i,j), i<=j, row-major."""

    def __init__(self, k: int, base: "RingTable"):
        self.k = k
        self.positions = [(i, j) for i in range(k) for j in range(i, k)]
        super().__init__(base, len(self.positions))
        self.pos_index = {p: t for t, p in enumerate(self.positions)}
        one = [base.zero] * self.npos
        for i in range(k):
            one[self.pos_index[(i, i)]] = base.one
        self.one = int(self._encode([np.int64(d) for d in one]))

    def vmul(self, a, b):
        da, db = self._digits(a), self._digits(b)
        out = []
        for i, j in self.positions:
            terms = [
                (da[self.pos_index[(i, l)]], db[self.pos_index[(l, j)]])
                for l in range(i, j + 1)
            ]
            out.append(self._dot(terms))
        return self._encode(out)

    def fmt(self, idx: int) -> str:
        d = self._digits(np.int64(idx))
        zero = self.base.fmt_index(self.base.zero)
        rows = []
        for i in range(self.k):
            row = []
            for j in range(self.k):
                if i <= j:
                    row.append(self.base.fmt_index(int(d[self.pos_index[(i, j)]])))
                else:
                    row.append(zero)
            rows.append(",".join(row))
        return "[" + ";".join(rows) + "]"

    def parse_literal(self, lit: _Lit) -> int:
        start = lit.pos
        entries = _parse_matrix_entries(lit, self.k, self.base)
        digits = [self.base.zero] * self.npos
        for i in range(self.k):
            for j in range(self.k):
                if i <= j:
                    digits[self.pos_index[(i, j)]] = entries[i][j]
                elif entries[i][j] != self.base.zero:
                    raise MalformedSpec(
                        "below-diagonal entry must be 0 in a triangular ring", start
                    )
        return int(self._encode([np.int64(d) for d in digits]))


class ConstDiagKernel(_PositionalKernel):
    """Upper triangular k x k with a single shared diagonal entry (digit 0)."""

    def __init__(self, k: int, base: "RingTable"):
        self.k = k
        self.uppers = [(i, j) for i in range(k) for j in range(i + 1, k)]
        super().__init__(base, 1 + len(self.uppers))
        self.pos_index = {p: 1 + t for t, p in enumerate(self.uppers)}
        self.one = int(
            self._encode([np.int64(base.one)] + [np.int64(base.zero)] * len(self.uppers))
        )

    def vmul(self, a, b):
        da, db = self._digits(a), self._digits(b)
        out = [self.base.vmul(da[0], db[0])]
        for i, j in self.uppers:
            terms = [(da[0], db[self.pos_index[(i, j)]]), (da[self.pos_index[(i, j)]], db[0])]
            terms += [
                (da[self.pos_index[(i, l)]], db[self.pos_index[(l, j)]])
                for l in range(i + 1, j)
            ]
            out.append(self._dot(terms))
        return self._encode(out)

    def fmt(self, idx: int) -> str:
        d = self._digits(np.int64(idx))
        zero = self.base.fmt_index(self.base.zero)
        diag = self.base.fmt_index(int(d[0]))
        rows = []
        for i in range(self.k):
            row = []
            for j in range(self.k):
                if i == j:
                    row.append(diag)
                elif i < j:
                    row.append(self.base.fmt_index(int(d[self.pos_index[(i, j)]])))
                else:
                    row.append(zero)
            rows.append(",".join(row))
        return "[" + ";".join(rows) + "]"

    def parse_literal(self, lit: _Lit) -> int:
        start = lit.pos
        entries = _parse_matrix_entries(lit, self.k, self.base)
        diag = entries[0][0]
        digits = [diag] + [self.base.zero] * len(self.uppers)
        for i in range(self.k):
            for j in range(self.k):
                if i == j and entries[i][j] != diag:
                    raise MalformedSpec("diagonal entries must all be equal", start)
                if i < j:
                    digits[self.pos_index[(i, j)]] = entries[i][j]
                if i > j and entries[i][j] != self.base.zero:
                    raise MalformedSpec(
                        "below-diagonal entry must be 0 in a triangular ring", start
                    )
        return int(self._encode([np.int64(d) for d in digits]))


def _parse_matrix_entries(lit: _Lit, k: int, base: "RingTable"):
    lit.expect("[")
    rows = []
    for i in range(k):
        row = [base.kernel.parse_literal(lit)]
        for _ in range(k - 1):
            lit.expect(",")
            row.append(base.kernel.parse_literal(lit))
        rows.append(row)
        if i < k - 1:
            lit.expect(";")
    lit.expect("]")
    return rows


class ProductKernel:
    def __init__(self, factors: list["RingTable"]):
        self.factors = factors
        self.radices = [f.order for f in factors]
        self.order = 1
        for rad in self.radices:
            self.order *= rad
        self.zero = self._encode_scalar([f.zero for f in factors])
        self.one = self._encode_scalar([f.one for f in factors])

    def _encode_scalar(self, parts):
        acc = 0
        for r, p in zip(self.radices, parts):
            acc = acc * r + p
        return acc

    def _split(self, a):
        a = np.asarray(a, np.int64).copy()
        out = [None] * len(self.radices)
        for t in range(len(self.radices) - 1, -1, -1):
            out[t] = a % self.radices[t]
            a //= self.radices[t]
        return out

    def _join(self, parts):
        acc = np.zeros(np.shape(parts[0]), dtype=np.int64)
        for r, p in zip(self.radices, parts):
            acc = acc * r + np.asarray(p, np.int64)
        return acc

    def vadd(self, a, b):
        pa, pb = self._split(a), self._split(b)
        return self._join([f.vadd(x, y) for f, x, y in zip(self.factors, pa, pb)])

    def vneg(self, a):
        return self._join([f.vneg(x) for f, x in zip(self.factors, self._split(a))])

    def vmul(self, a, b):
        pa, pb = self._split(a), self._split(b)
        return self._join([f.vmul(x, y) for f, x, y in zip(self.factors, pa, pb)])

    def additive_generators(self):
        gens = []
        for t, f in enumerate(self.factors):
            for g in f.additive_generators:
                parts = [x.zero for x in self.factors]
                parts[t] = g
                gens.append(self._encode_scalar(parts))
        return gens

    def fmt(self, idx: int) -> str:
        parts = self._split(np.int64(idx))
        return "[" + ",".join(f.fmt_index(int(p)) for f, p in zip(self.factors, parts)) + "]"

    def parse_literal(self, lit: _Lit) -> int:
        lit.expect("[")
        parts = [self.factors[0].kernel.parse_literal(lit)]
        for f in self.factors[1:]:
            lit.expect(",")
            parts.append(f.kernel.parse_literal(lit))
        lit.expect("]")
        return self._encode_scalar(parts)


class QuotientKernel:
    """Cosets of a two-sided ideal; canonical representative = least index."""

    def __init__(self, base: "RingTable", ideal_indices: np.ndarray):
        self.base = base
        ideal_indices = np.unique(np.asarray(ideal_indices, np.int64))
        n = base.order
        rep_of = np.empty(n, dtype=np.int64)
        chunk = max(1, _CHUNK // max(1, ideal_indices.size))
        for s in range(0, n, chunk):
            idx = np.arange(s, min(s + chunk, n), dtype=np.int64)
            rep_of[idx] = base.vadd(idx[:, None], ideal_indices[None, :]).min(axis=1)
        self.rep_of = rep_of
        self.reps = np.unique(rep_of)
        self.pos_of = np.full(n, -1, dtype=np.int64)
        self.pos_of[self.reps] = np.arange(self.reps.size)
        self.order = int(self.reps.size)
        self.zero = int(self.pos_of[rep_of[base.zero]])
        self.one = int(self.pos_of[rep_of[base.one]])

    def project(self, a):
        return self.pos_of[self.rep_of[np.asarray(a, np.int64)]]

    def vadd(self, a, b):
        return self.project(self.base.vadd(self.reps[a], self.reps[b]))

    def vneg(self, a):
        return self.project(self.base.vneg(self.reps[a]))

    def vmul(self, a, b):
        return self.project(self.base.vmul(self.reps[a], self.reps[b]))

    def additive_generators(self):
        gens = np.unique(self.project(np.asarray(self.base.additive_generators)))
        return [int(g) for g in gens if g != self.zero] or [self.zero]

    def fmt(self, idx: int) -> str:
        return self.base.fmt_index(int(self.reps[idx]))

    def parse_literal(self, lit: _Lit) -> int:
        return int(self.project(self.base.kernel.parse_literal(lit)))


class SubsetKernel:
    """A unital subring on a closed subset of an ambient ring (e.g. a corner eRe)."""

    def __init__(self, base: "RingTable", members: np.ndarray, one_index: int):
        self.base = base
        self.members = np.unique(np.asarray(members, np.int64))
        self.pos_of = np.full(base.order, -1, dtype=np.int64)
        self.pos_of[self.members] = np.arange(self.members.size)
        self.order = int(self.members.size)
        self.zero = int(self.pos_of[base.zero])
        self.one = int(self.pos_of[one_index])
        if self.zero < 0 or self.one < 0:
            raise PreconditionFailed("subset kernel must contain 0 and its identity")

    def _lift(self, res):
        out = self.pos_of[res]
        if np.any(out < 0):
            raise PreconditionFailed("subset is not closed under ring operations")
        return out

    def vadd(self, a, b):
        return self._lift(self.base.vadd(self.members[a], self.members[b]))

    def vneg(self, a):
        return self._lift(self.base.vneg(self.members[a]))

    def vmul(self, a, b):
        return self._lift(self.base.vmul(self.members[a], self.members[b]))

    def additive_generators(self):
        return None  # computed greedily by the RingTable

    def fmt(self, idx: int) -> str:
        return self.base.fmt_index(int(self.members[idx]))

    def parse_literal(self, lit: _Lit) -> int:
        start = lit.pos
        i = self.base.kernel.parse_literal(lit)
        p = int(self.pos_of[i])
        if p < 0:
            raise MalformedSpec("element lies outside the subring", start)
        return p


class TableKernel:
    """A ring given by explicit addition/multiplication tables (test fixtures)."""

    def __init__(self, add_table, mul_table, zero: int, one: int, labels=None):
        self.add_table = np.asarray(add_table, np.int64)
        self.mul_table = np.asarray(mul_table, np.int64)
        self.order = self.add_table.shape[0]
        self.zero = zero
        self.one = one
        self.labels = list(labels) if labels else [str(i) for i in range(self.order)]
        neg = np.full(self.order, -1, dtype=np.int64)
        rows, cols = np.nonzero(self.add_table == zero)
        neg[rows] = cols
        self._neg = neg

    def vadd(self, a, b):
        return self.add_table[np.asarray(a, np.int64), np.asarray(b, np.int64)]

    def vneg(self, a):
        return self._neg[np.asarray(a, np.int64)]

    def vmul(self, a, b):
        return self.mul_table[np.asarray(a, np.int64), np.asarray(b, np.int64)]

    def additive_generators(self):
        return None

    def fmt(self, idx: int) -> str:
        return self.labels[idx]

    def parse_literal(self, lit: _Lit) -> int:
        start = lit.pos
        while lit.pos < len(lit.text) and lit.text[lit.pos] not in ",;])":
            lit.pos += 1
        tok = lit.text[start : lit.pos].strip()
        try:
            return self.labels.index(tok)
        except ValueError:
            raise MalformedSpec(f"unknown element label {tok!r}", start) from None


# ---------------------------------------------------------------------------
# elements


@dataclass(frozen=True, eq=False)
class Element:
    ring: "RingTable"
    index: int

    def _check(self, other: "Element"):
        if other.ring is not self.ring:
            raise MixedRingOperands(
                f"cannot combine elements of {self.ring.name} and {other.ring.name}"
            )

    def __add__(self, other):
        self._check(other)
        return Element(self.ring, self.ring.add(self.index, other.index))

    def __sub__(self, other):
        self._check(other)
        return Element(self.ring, self.ring.sub(self.index, other.index))

    def __mul__(self, other):
        self._check(other)
        return Element(self.ring, self.ring.mul(self.index, other.index))

    def __neg__(self):
        return Element(self.ring, self.ring.neg(self.index))

    def __eq__(self, other):
        return (
            isinstance(other, Element)
            and other.ring is self.ring
            and other.index == self.index
        )

    def __hash__(self):
        return hash((id(self.ring), self.index))

    def __repr__(self):
        return self.ring.fmt_index(self.index)


# ---------------------------------------------------------------------------
# the ring table


class RingTable:
    def __init__(self, kernel, name: str):
        self.kernel = kernel
        self.name = name
        self.order = kernel.order
        self.zero = kernel.zero
        self.one = kernel.one
        if self.zero == self.one:
            raise MalformedSpec(f"{name}: ring collapses to the zero ring (0 = 1)")
        self.cache: dict = {}
        self._add_t = self._mul_t = self._neg_t = None
        if self.order <= DENSE_TABLE_LIMIT:
            self._build_tables()

    def __repr__(self):
        return f"RingTable({self.name}, order={self.order})"

    def _build_tables(self):
        n = self.order
        idx = np.arange(n, dtype=np.int64)
        add_t = np.empty((n, n), dtype=np.uint16)
        mul_t = np.empty((n, n), dtype=np.uint16)
        rows = max(1, _CHUNK // n)
        for s in range(0, n, rows):
            block = idx[s : s + rows, None]
            add_t[s : s + rows] = self.kernel.vadd(block, idx[None, :])
            mul_t[s : s + rows] = self.kernel.vmul(block, idx[None, :])
        self._add_t = add_t
        self._mul_t = mul_t
        self._neg_t = self.kernel.vneg(idx).astype(np.uint16)

    # -- vector ops (index arrays in, index arrays out)

    def vadd(self, a, b):
        if self._add_t is not None:
            return self._add_t[a, b].astype(np.int64, copy=False)
        return self.kernel.vadd(a, b)

    def vmul(self, a, b):
        if self._mul_t is not None:
            return self._mul_t[a, b].astype(np.int64, copy=False)
        return self.kernel.vmul(a, b)

    def vneg(self, a):
        if self._neg_t is not None:
            return self._neg_t[a].astype(np.int64, copy=False)
        return self.kernel.vneg(a)

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    # -- scalar ops

    def add(self, a: int, b: int) -> int:
        if self._add_t is not None:
            return int(self._add_t[a, b])
        return int(self.kernel.vadd(a, b))

    def mul(self, a: int, b: int) -> int:
        if self._mul_t is not None:
            return int(self._mul_t[a, b])
        return int(self.kernel.vmul(a, b))

    def neg(self, a: int) -> int:
        if self._neg_t is not None:
            return int(self._neg_t[a])
        return int(self.kernel.vneg(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def power(self, x: int, k: int) -> int:
        if k < 0:
            raise PreconditionFailed("negative powers need an explicit inverse")
        acc, base = self.one, x
        while k:
            if k & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            k >>= 1
        return acc

    def embed_int(self, m: int) -> int:
        """m * 1 computed by double-and-add, safe in any characteristic."""
        neg = m < 0
        m = abs(m)
        acc, base = self.zero, self.one
        while m:
            if m & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            m >>= 1
        return self.neg(acc) if neg else acc

    # -- cached structure

    @property
    def idempotent_mask(self) -> np.ndarray:
        mask = self.cache.get("idempotent_mask")
        if mask is None:
            mask = np.zeros(self.order, dtype=bool)
            for s in range(0, self.order, _CHUNK):
                idx = np.arange(s, min(s + _CHUNK, self.order), dtype=np.int64)
                mask[idx] = self.vmul(idx, idx) == idx
            self.cache["idempotent_mask"] = mask
        return mask

    @property
    def idempotent_indices(self) -> np.ndarray:
        idx = self.cache.get("idempotent_indices")
        if idx is None:
            idx = np.flatnonzero(self.idempotent_mask)
            self.cache["idempotent_indices"] = idx
        return idx

    @property
    def unit_mask(self) -> np.ndarray:
        mask = self.cache.get("unit_mask")
        if mask is None:
            if self.order > UNIT_SCAN_LIMIT:
                raise RingTooLarge(
                    f"unit enumeration needs order <= {UNIT_SCAN_LIMIT}, "
                    f"{self.name} has {self.order}"
                )
            mask = np.zeros(self.order, dtype=bool)
            idx = np.arange(self.order, dtype=np.int64)
            rows = max(1, _CHUNK // self.order)
            for s in range(0, self.order, rows):
                block = np.arange(s, min(s + rows, self.order), dtype=np.int64)
                hits = np.nonzero(self.vmul(block[:, None], idx[None, :]) == self.one)
                for xi, y in zip(*hits):
                    x = int(block[xi])
                    if self.mul(int(y), x) == self.one:
                        mask[x] = True
            self.cache["unit_mask"] = mask
        return mask

    @property
    def unit_indices(self) -> np.ndarray:
        idx = self.cache.get("unit_indices")
        if idx is None:
            idx = np.flatnonzero(self.unit_mask)
            self.cache["unit_indices"] = idx
        return idx

    def is_unit(self, x: int) -> bool:
        if "unit_mask" in self.cache or self.order <= UNIT_SCAN_LIMIT:
            return bool(self.unit_mask[x])
        return self.inverse(x) is not None

    def inverse(self, x: int) -> int | None:
        idx = np.arange(self.order, dtype=np.int64)
        for s in range(0, self.order, _CHUNK):
            block = idx[s : s + _CHUNK]
            ys = block[self.vmul(x, block) == self.one]
            for y in ys:
                if self.mul(int(y), x) == self.one:
                    return int(y)
        return None

    @property
    def additive_generators(self) -> list[int]:
        gens = self.cache.get("additive_generators")
        if gens is None:
            gens = self.kernel.additive_generators()
            if gens is None:
                gens = self._greedy_additive_generators()
            self.cache["additive_generators"] = gens
        return gens

    def _greedy_additive_generators(self) -> list[int]:
        gens: list[int] = []
        mask = np.zeros(self.order, dtype=bool)
        mask[self.zero] = True
        for x in range(self.order):
            if not mask[x]:
                gens.append(x)
                mask = additive_closure_mask(self, np.asarray(gens, np.int64))
        return gens

    @property
    def commutative(self) -> bool:
        flag = self.cache.get("commutative")
        if flag is None:
            gens = np.asarray(self.additive_generators, np.int64)
            flag = bool(
                np.array_equal(
                    self.vmul(gens[:, None], gens[None, :]),
                    self.vmul(gens[None, :], gens[:, None]),
                )
            )
            if self._mul_t is not None:
                # bilinearity makes the generator test exact; cross-check on tables
                assert flag == bool(np.array_equal(self._mul_t, self._mul_t.T))
            self.cache["commutative"] = flag
        return flag

    # -- element interface

    def element(self, i: int) -> Element:
        if not 0 <= i < self.order:
            raise PreconditionFailed(f"index {i} out of range for {self.name}")
        return Element(self, i)

    def fmt_index(self, i: int) -> str:
        return self.kernel.fmt(int(i))

    def parse_element(self, text: str) -> Element:
        lit = _Lit(text)
        idx = self.kernel.parse_literal(lit)
        lit.skip_ws()
        if lit.pos != len(lit.text):
            raise MalformedSpec(f"trailing input in element literal {text!r}", lit.pos)
        return Element(self, int(idx))

    def elements(self):
        return (Element(self, i) for i in range(self.order))

    # -- validation

    def check_axioms(self, full_limit: int = 512, samples: int = 4096, seed: int = 0):
        """Verify ring axioms; exhaustive for order <= full_limit, sampled above.

        Raises PcleanError on the first violated axiom.
        """
        n = self.order
        idx = np.arange(n, dtype=np.int64)
        if self.add(self.zero, self.one) != self.one:
            raise PcleanError(f"{self.name}: 0 + 1 != 1")
        if not np.array_equal(self.vadd(idx, self.zero), idx):
            raise PcleanError(f"{self.name}: 0 is not an additive identity")
        if not np.array_equal(self.vadd(idx, self.vneg(idx)), np.full(n, self.zero)):
            raise PcleanError(f"{self.name}: negation is not an additive inverse")
        if not np.array_equal(self.vmul(idx, self.one), idx) or not np.array_equal(
            self.vmul(np.full(n, self.one), idx), idx
        ):
            raise PcleanError(f"{self.name}: 1 is not a multiplicative identity")
        pair_rows = max(1, _CHUNK // n)
        for s in range(0, n, pair_rows):
            block = idx[s : s + pair_rows]
            if not np.array_equal(
                self.vadd(block[:, None], idx[None, :]),
                self.vadd(idx[None, :], block[:, None]),
            ):
                raise PcleanError(f"{self.name}: addition is not commutative")

        def triple_chunks():
            if n <= full_limit:
                total = n * n * n
                for s in range(0, total, _CHUNK):
                    t = np.arange(s, min(s + _CHUNK, total), dtype=np.int64)
                    yield t // (n * n), (t // n) % n, t % n
            else:
                rng = np.random.default_rng(seed)
                yield rng.integers(0, n, size=(3, samples), dtype=np.int64)

        for aa, bb, cc in triple_chunks():
            if not np.array_equal(
                self.vadd(self.vadd(aa, bb), cc), self.vadd(aa, self.vadd(bb, cc))
            ):
                raise PcleanError(f"{self.name}: addition is not associative")
            if not np.array_equal(
                self.vmul(self.vmul(aa, bb), cc), self.vmul(aa, self.vmul(bb, cc))
            ):
                raise PcleanError(f"{self.name}: multiplication is not associative")
            if not np.array_equal(
                self.vmul(aa, self.vadd(bb, cc)),
                self.vadd(self.vmul(aa, bb), self.vmul(aa, cc)),
            ):
                raise PcleanError(f"{self.name}: left distributivity fails")
            if not np.array_equal(
                self.vmul(self.vadd(aa, bb), cc),
                self.vadd(self.vmul(aa, cc), self.vmul(bb, cc)),
            ):
                raise PcleanError(f"{self.name}: right distributivity fails")


# ---------------------------------------------------------------------------
# additive / ideal closures (shared by quotients and the radical machinery)


def additive_closure_mask(r: RingTable, seeds) -> np.ndarray:
    """Boolean mask of the additive subgroup generated by `seeds`."""
    mask = np.zeros(r.order, dtype=bool)
    mask[r.zero] = True
    seeds = np.unique(np.asarray(seeds, np.int64))
    if seeds.size == 0:
        return mask
    frontier = np.array([r.zero], dtype=np.int64)
    lanes = max(1, _CHUNK // seeds.size)
    while frontier.size:
        parts = []
        for s in range(0, frontier.size, lanes):
            parts.append(r.vadd(frontier[s : s + lanes, None], seeds[None, :]).ravel())
        nxt = np.unique(np.concatenate(parts))
        nxt = nxt[~mask[nxt]]
        mask[nxt] = True
        frontier = nxt
    return mask


def subgroup_basis(r: RingTable, members) -> np.ndarray:
    """A small additive generating set for the subgroup formed by `members`."""
    members = np.unique(np.asarray(members, np.int64))
    gens: list[int] = []
    mask = np.zeros(r.order, dtype=bool)
    mask[r.zero] = True
    for x in members:
        if not mask[x]:
            gens.append(int(x))
            mask = additive_closure_mask(r, np.asarray(gens, np.int64))
    return np.asarray(gens, np.int64)


def ideal_closure_mask(r: RingTable, gens) -> np.ndarray:
    """Mask of the two-sided ideal generated by the given element indices."""
    gens = np.unique(np.asarray(gens, np.int64))
    if gens.size == 0:
        mask = np.zeros(r.order, dtype=bool)
        mask[r.zero] = True
        return mask
    G = np.unique(np.append(np.asarray(r.additive_generators, np.int64), r.one))
    seeds = []
    for x in gens:
        left = r.vmul(G, np.int64(x))
        seeds.append(r.vmul(left[:, None], G[None, :]).ravel())
    return additive_closure_mask(r, np.concatenate(seeds))


# ---------------------------------------------------------------------------
# construction


_RING_CACHE: OrderedDict[str, RingTable] = OrderedDict()
_RING_CACHE_MAX = 48


def build_ring(spec, limit: int = DEFAULT_ORDER_LIMIT) -> RingTable:
    """Materialize a ring from a spec (or its text form), deterministically.

    Raises OrderLimitExceeded if the described order exceeds `limit`, and
    MalformedSpec for unparseable descriptors or quotient generators.
    """
    if isinstance(spec, str):
        spec = specs.parse_ring_spec(spec)
    name = specs.canon(spec)
    cached = _RING_CACHE.get(name)
    if cached is not None:
        if cached.order <= limit:
            _RING_CACHE.move_to_end(name)
            return cached
        raise OrderLimitExceeded(
            f"{name} has order {cached.order} > limit {limit}"
        )
    order = specs.spec_order(spec)
    if order > limit:
        raise OrderLimitExceeded(f"{name} describes order {order} > limit {limit}")
    ring = RingTable(_make_kernel(spec, limit), name)
    _RING_CACHE[name] = ring
    if len(_RING_CACHE) > _RING_CACHE_MAX:
        _RING_CACHE.popitem(last=False)
    return ring


def _make_kernel(spec, limit: int):
    if isinstance(spec, specs.ZnSpec):
        return ZnKernel(spec.n)
    if isinstance(spec, specs.GaussianSpec):
        return QuadExtKernel(spec.n, c0=spec.n - 1, c1=0, symbol="i")
    if isinstance(spec, specs.EisensteinSpec):
        # w^2 = -1 - w
        return QuadExtKernel(spec.n, c0=spec.n - 1, c1=spec.n - 1, symbol="w")
    if isinstance(spec, specs.ProductSpec):
        return ProductKernel([build_ring(f, limit) for f in spec.factors])
    if isinstance(spec, specs.MatrixSpec):
        return MatrixKernel(spec.k, build_ring(spec.base, limit))
    if isinstance(spec, specs.TriangularSpec):
        return TriangularKernel(spec.k, build_ring(spec.base, limit))
    if isinstance(spec, specs.ConstDiagSpec):
        return ConstDiagKernel(spec.k, build_ring(spec.base, limit))
    if isinstance(spec, specs.QuotientSpec):
        base = build_ring(spec.base, limit)
        gens = []
        for lit in spec.gens:
            try:
                gens.append(base.parse_element(lit).index)
            except MalformedSpec as exc:
                raise MalformedSpec(
                    f"quotient generator {lit!r} is not an element of {base.name}: {exc}"
                ) from exc
        mask = ideal_closure_mask(base, np.asarray(gens, np.int64))
        kernel = QuotientKernel(base, np.flatnonzero(mask))
        if kernel.order == 1:
            raise MalformedSpec(
                f"{specs.canon(spec)}: quotient collapses to the zero ring"
            )
        return kernel
    raise MalformedSpec(f"not a ring spec: {spec!r}")


def quotient_ring(r: RingTable, gens) -> tuple[RingTable, np.ndarray]:
    """Quotient of r by the two-sided ideal generated by `gens`.

    Returns the quotient table and the projection array (base index ->
    quotient index).  gens may be Elements of r or raw indices.
    """
    idxs = [g.index if isinstance(g, Element) else int(g) for g in gens]
    mask = ideal_closure_mask(r, np.asarray(idxs, np.int64))
    kernel = QuotientKernel(r, np.flatnonzero(mask))
    if kernel.order == 1:
        raise MalformedSpec(f"quotient of {r.name} collapses to the zero ring")
    lits = ",".join(r.fmt_index(i) for i in idxs) if idxs else "0"
    table = RingTable(kernel, f"{r.name}/({lits})")
    projection = kernel.pos_of[kernel.rep_of]
    return table, projection


def units(r: RingTable) -> list[Element]:
    """Exact unit set by exhaustive scan (both-sided inverses)."""
    return [Element(r, int(i)) for i in r.unit_indices]


def idempotents(r: RingTable) -> list[Element]:
    return [Element(r, int(i)) for i in r.idempotent_indices]


def is_commutative(r: RingTable) -> bool:
    return r.commutative


def corner_ring(r: RingTable, f: int) -> tuple[RingTable, np.ndarray]:
    """The corner ring fRf for an idempotent f != 0, with its member indices."""
    if r.mul(f, f) != f:
        raise PreconditionFailed(f"{r.fmt_index(f)} is not idempotent in {r.name}")
    if f == r.zero:
        raise PreconditionFailed("the zero corner is the zero ring")
    idx = np.arange(r.order, dtype=np.int64)
    members = np.unique(r.vmul(r.vmul(np.int64(f), idx), np.int64(f)))
    kernel = SubsetKernel(r, members, f)
    table = RingTable(kernel, f"{r.name}|{r.fmt_index(f)}")
    return table, kernel.members
