"""Decision procedures for 2x2 matrices over commutative local rings.

Covers the quadratic-root criterion, the A - A^2 radical-membership test, the
definitional idempotent scan (the three are cross-validated on every call),
explicit diagonal and companion similarity witnesses, the Sylvester-style
phi-map solver for triangular matrices, and the discriminant records.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import radicals
from .decompositions import (
    STRONGLY_P_CLEAN,
    CleanCertificate,
    strongly_pi_regular_element,
)
from .errors import (
    CriterionMismatch,
    HypothesisViolated,
    MalformedSpec,
    NotCommutative,
    NotInvertible,
    NotLocal,
    PcleanError,
    PreconditionFailed,
    TrivialIdempotent,
)
from .rings import (
    DEFAULT_ORDER_LIMIT,
    Element,
    MatrixKernel,
    RingTable,
    TriangularKernel,
    _Lit,
    _parse_matrix_entries,
)

IN_P = "IN_P"
ONE_MINUS_IN_P = "ONE_MINUS_IN_P"
SPLIT = "SPLIT"
NOT_PCLEAN = "NOT_PCLEAN"

CLASS_P = "P"
CLASS_ONE_PLUS_P = "1+P"
CLASS_OTHER = "OTHER"


@dataclass(frozen=True)
class Matrix2:
    """2x2 matrix over a commutative base ring, entries as dense indices."""

    ring: RingTable
    a11: int
    a12: int
    a21: int
    a22: int

    @classmethod
    def parse(cls, r: RingTable, text: str) -> "Matrix2":
        lit = _Lit(text)
        entries = _parse_matrix_entries(lit, 2, r)
        lit.skip_ws()
        if lit.pos != len(lit.text):
            raise MalformedSpec(f"trailing input in matrix literal {text!r}", lit.pos)
        return cls(r, entries[0][0], entries[0][1], entries[1][0], entries[1][1])

    @classmethod
    def identity(cls, r: RingTable) -> "Matrix2":
        return cls(r, r.one, r.zero, r.zero, r.one)

    @classmethod
    def zero(cls, r: RingTable) -> "Matrix2":
        return cls(r, r.zero, r.zero, r.zero, r.zero)

    @classmethod
    def diag(cls, r: RingTable, x: int, y: int) -> "Matrix2":
        return cls(r, x, r.zero, r.zero, y)

    def entries(self):
        return (self.a11, self.a12, self.a21, self.a22)

    def __add__(self, other: "Matrix2") -> "Matrix2":
        r = self.ring
        return Matrix2(
            r,
            r.add(self.a11, other.a11),
            r.add(self.a12, other.a12),
            r.add(self.a21, other.a21),
            r.add(self.a22, other.a22),
        )

    def __sub__(self, other: "Matrix2") -> "Matrix2":
        return self + (-other)

    def __neg__(self) -> "Matrix2":
        r = self.ring
        return Matrix2(r, r.neg(self.a11), r.neg(self.a12), r.neg(self.a21), r.neg(self.a22))

    def __mul__(self, other: "Matrix2") -> "Matrix2":
        r = self.ring
        return Matrix2(
            r,
            r.add(r.mul(self.a11, other.a11), r.mul(self.a12, other.a21)),
            r.add(r.mul(self.a11, other.a12), r.mul(self.a12, other.a22)),
            r.add(r.mul(self.a21, other.a11), r.mul(self.a22, other.a21)),
            r.add(r.mul(self.a21, other.a12), r.mul(self.a22, other.a22)),
        )

    @property
    def trace(self) -> int:
        return self.ring.add(self.a11, self.a22)

    @property
    def det(self) -> int:
        r = self.ring
        return r.sub(r.mul(self.a11, self.a22), r.mul(self.a12, self.a21))

    def inverse(self) -> "Matrix2":
        r = self.ring
        dinv = r.inverse(self.det)
        if dinv is None:
            raise NotInvertible(f"matrix {self} has non-unit determinant")
        return Matrix2(
            r,
            r.mul(dinv, self.a22),
            r.mul(dinv, r.neg(self.a12)),
            r.mul(dinv, r.neg(self.a21)),
            r.mul(dinv, self.a11),
        )

    def is_upper_triangular(self) -> bool:
        return self.a21 == self.ring.zero

    def __repr__(self):
        f = self.ring.fmt_index
        return f"[{f(self.a11)},{f(self.a12)};{f(self.a21)},{f(self.a22)}]"


@dataclass(frozen=True)
class SimilarityWitness:
    """H with H A H^-1 equal to the tagged target form, bit-exact."""

    conjugator: Matrix2
    inverse: Matrix2
    form: str  # "DIAGONAL" | "COMPANION"
    lam: int
    mu: int

    def target(self) -> Matrix2:
        r = self.conjugator.ring
        if self.form == "DIAGONAL":
            return Matrix2.diag(r, self.lam, self.mu)
        return Matrix2(r, r.zero, self.lam, r.one, self.mu)

    def validate(self, A: Matrix2) -> bool:
        ident = Matrix2.identity(A.ring)
        if self.conjugator * self.inverse != ident:
            return False
        if self.inverse * self.conjugator != ident:
            return False
        return self.conjugator * A * self.inverse == self.target()


# ---------------------------------------------------------------------------
# M2(r) / T2(r) as rings, with cached criteria masks


def matrix_ring(r: RingTable, limit: int = DEFAULT_ORDER_LIMIT * 1024) -> RingTable:
    m2 = r.cache.get("m2_ring")
    if m2 is None:
        if r.order**4 > limit:
            raise PreconditionFailed(f"M2({r.name}) exceeds the materialization limit")
        m2 = RingTable(MatrixKernel(2, r), f"M2({r.name})")
        r.cache["m2_ring"] = m2
    return m2


def triangular_ring(r: RingTable, k: int = 2, limit: int = DEFAULT_ORDER_LIMIT) -> RingTable:
    key = f"t{k}_ring"
    tk = r.cache.get(key)
    if tk is None:
        if r.order ** (k * (k + 1) // 2) > limit:
            raise PreconditionFailed(f"T{k}({r.name}) exceeds the materialization limit")
        tk = RingTable(TriangularKernel(k, r), f"T{k}({r.name})")
        r.cache[key] = tk
    return tk


def matrix_to_index(m2: RingTable, A: Matrix2) -> int:
    k = m2.kernel
    return int(k._encode([np.int64(e) for e in A.entries()]))

def matrix_from_index(m2: RingTable, idx: int) -> Matrix2:
    d = m2.kernel._digits(np.int64(idx))
    return Matrix2(m2.kernel.base, int(d[0]), int(d[1]), int(d[2]), int(d[3]))


def _require_commutative(r: RingTable):
    if not r.commutative:
        raise NotCommutative(f"{r.name} is not commutative")


def _require_local(r: RingTable):
    if not radicals.is_local(r):
        raise NotLocal(f"{r.name} is not local")


def entries_in_p_mask(m2: RingTable) -> np.ndarray:
    """Mask over M2(r) of matrices with every entry in P(r)."""
    mask = m2.cache.get("entries_in_p")
    if mask is None:
        base = m2.kernel.base
        pm = radicals.prime_radical(base).mask
        d = m2.kernel._digits(np.arange(m2.order, dtype=np.int64))
        mask = pm[d].all(axis=0)
        m2.cache["entries_in_p"] = mask
    return mask


def one_minus_in_p_mask(m2: RingTable) -> np.ndarray:
    mask = m2.cache.get("one_minus_in_p")
    if mask is None:
        idx = np.arange(m2.order, dtype=np.int64)
        mask = entries_in_p_mask(m2)[m2.vsub(np.int64(m2.one), idx)]
        m2.cache["one_minus_in_p"] = mask
    return mask


def diff_in_p_mask(m2: RingTable) -> np.ndarray:
    """Criterion A - A^2 in M2(P(r)), vectorized over the whole matrix ring."""
    mask = m2.cache.get("diff_in_p")
    if mask is None:
        idx = np.arange(m2.order, dtype=np.int64)
        diff = m2.vsub(idx, m2.vmul(idx, idx))
        mask = entries_in_p_mask(m2)[diff]
        m2.cache["diff_in_p"] = mask
    return mask


def root_pair_table(r: RingTable) -> tuple[np.ndarray, np.ndarray]:
    """For every (t, d): does x^2 - t x + d = 0 have a root in P / in 1+P."""
    cached = r.cache.get("root_pair_table")
    if cached is None:
        n = r.order
        idx = np.arange(n, dtype=np.int64)
        pm = radicals.prime_radical(r).mask
        one_plus = pm[r.vsub(idx, np.int64(r.one))]
        xx = r.vmul(idx, idx)
        # zero[x, t, d] <=> x^2 - t*x + d = 0
        quad = r.vsub(xx[:, None], r.vmul(idx[None, :], idx[:, None]))  # (x, t)
        zero = r.vadd(quad[:, :, None], idx[None, None, :]) == r.zero  # (x, t, d)
        has_p = np.tensordot(pm.astype(np.int64), zero, axes=1) > 0
        has_1p = np.tensordot(one_plus.astype(np.int64), zero, axes=1) > 0
        cached = (has_p, has_1p)
        r.cache["root_pair_table"] = cached
    return cached


def roots_criterion_mask(m2: RingTable) -> np.ndarray:
    """Trichotomy (3): in M2(P), or I - A in M2(P), or a root in P and in 1+P."""
    mask = m2.cache.get("roots_criterion")
    if mask is None:
        base = m2.kernel.base
        has_p, has_1p = root_pair_table(base)
        d = m2.kernel._digits(np.arange(m2.order, dtype=np.int64))
        tr = base.vadd(d[0], d[3])
        det = base.vsub(base.vmul(d[0], d[3]), base.vmul(d[1], d[2]))
        mask = entries_in_p_mask(m2) | one_minus_in_p_mask(m2) | (has_p[tr, det] & has_1p[tr, det])
        m2.cache["roots_criterion"] = mask
    return mask


def definitional_mask(m2: RingTable) -> np.ndarray:
    """Idempotent-scan verdicts over the whole matrix ring."""
    from .decompositions import strongly_pclean_mask

    return strongly_pclean_mask(m2)


# ---------------------------------------------------------------------------
# single-matrix operations


def quadratic_roots(r: RingTable, t, d) -> list[tuple[int, str]]:
    """All x with x^2 - t x + d = 0, classified against P(r)."""
    _require_commutative(r)
    t, d = _as_index(r, t), _as_index(r, d)
    idx = np.arange(r.order, dtype=np.int64)
    val = r.vadd(r.vsub(r.vmul(idx, idx), r.vmul(np.int64(t), idx)), np.int64(d))
    pm = radicals.prime_radical(r).mask
    out = []
    for x in np.flatnonzero(val == r.zero):
        if pm[x]:
            cls = CLASS_P
        elif pm[r.sub(int(x), r.one)]:
            cls = CLASS_ONE_PLUS_P
        else:
            cls = CLASS_OTHER
        out.append((int(x), cls))
    return out


def _as_index(r: RingTable, x) -> int:
    return x.index if isinstance(x, Element) else int(x)


@dataclass
class Classification:
    kind: str  # IN_P | ONE_MINUS_IN_P | SPLIT | NOT_PCLEAN
    criteria: dict
    certificate: CleanCertificate | None  # lives in M2(r)
    witness: SimilarityWitness | None
    roots: list


def classify_pclean_2x2(A: Matrix2) -> Classification:
    """Evaluate all three strong P-cleanness criteria for A and cross-check.

    (i) definitional idempotent scan in M2(r), (ii) A - A^2 entrywise in P(r),
    (iii) trivial classes or quadratic roots in P and 1+P.  Disagreement
    raises CriterionMismatch.
    """
    r = A.ring
    _require_commutative(r)
    _require_local(r)
    m2 = matrix_ring(r)
    aidx = matrix_to_index(m2, A)

    from .decompositions import strongly_pclean_element

    cert, _count = strongly_pclean_element(m2, aidx)
    crit_scan = cert is not None

    pm = radicals.prime_radical(r).mask
    diff = A - A * A
    crit_diff = bool(all(pm[e] for e in diff.entries()))

    in_p = bool(all(pm[e] for e in A.entries()))
    one_minus = bool(all(pm[e] for e in (Matrix2.identity(r) - A).entries()))
    roots = quadratic_roots(r, A.trace, A.det)
    root_classes = {c for _, c in roots}
    crit_roots = in_p or one_minus or (CLASS_P in root_classes and CLASS_ONE_PLUS_P in root_classes)

    criteria = {
        "idempotent_scan": crit_scan,
        "difference_in_radical": crit_diff,
        "quadratic_roots": crit_roots,
    }
    if not (crit_scan == crit_diff == crit_roots):
        raise CriterionMismatch(f"criteria disagree for {A} over {r.name}: {criteria}")

    witness = None
    if not crit_scan:
        kind = NOT_PCLEAN
        cert = None
    elif in_p:
        kind = IN_P
    elif one_minus:
        kind = ONE_MINUS_IN_P
    else:
        kind = SPLIT
        witness = diagonalize_split(A, cert)
    return Classification(kind, criteria, cert, witness, roots)


def diagonalize_split(A: Matrix2, cert: CleanCertificate) -> SimilarityWitness:
    """Conjugate a split strongly P-clean matrix to diag(1 + v11, v22).

    The conjugator is built by pairing an E-fixed column having a unit entry
    with an E-killed column; exhaustive GL2 search remains as a fallback for
    tiny bases.
    """
    r = A.ring
    _require_commutative(r)
    _require_local(r)
    m2 = matrix_ring(r)
    E = matrix_from_index(m2, cert.idempotent)
    ident = Matrix2.identity(r)
    if E == Matrix2.zero(r) or E == ident:
        raise TrivialIdempotent(f"idempotent {E} cannot be split-diagonalized")

    pm = radicals.prime_radical(r).mask
    units = r.unit_mask

    def unit_column(M: Matrix2):
        for col in ((M.a11, M.a21), (M.a12, M.a22)):
            if units[col[0]] or units[col[1]]:
                return col
        return None

    u = unit_column(E)
    dcol = unit_column(ident - E)
    if u is not None and dcol is not None:
        G = Matrix2(r, u[0], dcol[0], u[1], dcol[1])
        if r.is_unit(G.det):
            H = G.inverse()
            C = H * A * G
            if (
                C.a12 == r.zero
                and C.a21 == r.zero
                and pm[r.sub(C.a11, r.one)]
                and pm[C.a22]
            ):
                w = SimilarityWitness(H, G, "DIAGONAL", C.a11, C.a22)
                if w.validate(A):
                    return w
    # fallback: exhaustive search over GL2(r) for tiny bases
    if r.order <= 16:
        idx = range(r.order)
        for h11 in idx:
            for h12 in idx:
                for h21 in idx:
                    for h22 in idx:
                        H = Matrix2(r, h11, h12, h21, h22)
                        if not units[H.det]:
                            continue
                        Hi = H.inverse()
                        C = H * A * Hi
                        if (
                            C.a12 == r.zero
                            and C.a21 == r.zero
                            and pm[r.sub(C.a11, r.one)]
                            and pm[C.a22]
                        ):
                            return SimilarityWitness(H, Hi, "DIAGONAL", C.a11, C.a22)
    raise PcleanError(f"no diagonalizing conjugator found for {A} over {r.name}")


def companion_form(r: RingTable, alpha, beta) -> SimilarityWitness:
    """The explicit transvection product taking diag(alpha, beta) to its
    companion matrix [[0, -alpha*beta], [1, alpha+beta]].

    The product is evaluated verbatim in its non-commutative order so the
    displayed identity itself is regression-tested; pre: alpha - beta a unit.
    """
    _require_commutative(r)
    alpha, beta = _as_index(r, alpha), _as_index(r, beta)
    dinv = r.inverse(r.sub(alpha, beta))
    if dinv is None:
        raise NotInvertible(f"alpha - beta is not a unit in {r.name}")
    delta = r.sub(alpha, beta)

    def b12(x):
        return Matrix2(r, r.one, x, r.zero, r.one)

    def b21(x):
        return Matrix2(r, r.one, r.zero, x, r.one)

    c = r.mul(alpha, dinv)
    H = Matrix2.diag(r, delta, r.one) * b12(r.neg(c)) * b21(r.one)
    Hinv = b21(r.neg(r.one)) * b12(c) * Matrix2.diag(r, dinv, r.one)
    D = Matrix2.diag(r, alpha, beta)
    C = H * D * Hinv

    # non-commutative forms from the displayed product, then simplified
    lam_nc = r.neg(r.mul(r.mul(r.mul(delta, alpha), dinv), beta))
    mu_nc = r.add(r.mul(r.mul(delta, alpha), dinv), beta)
    lam = r.neg(r.mul(alpha, beta))
    mu = r.add(alpha, beta)
    if (lam, mu) != (lam_nc, mu_nc):
        raise PcleanError("commutative simplification of the companion parameters failed")
    expected = Matrix2(r, r.zero, lam, r.one, mu)
    if C != expected or H * Hinv != Matrix2.identity(r):
        raise PcleanError(f"transvection product identity failed over {r.name}")
    return SimilarityWitness(H, Hinv, "COMPANION", lam, mu)


def solve_phi(r: RingTable, a, b, v) -> int:
    """x = sum a^-(k+1) v b^k solving a x - x b = v (a a unit, b nilpotent)."""
    a, b, v = _as_index(r, a), _as_index(r, b), _as_index(r, v)
    ainv = r.inverse(a)
    if ainv is None:
        raise PreconditionFailed(f"{r.fmt_index(a)} is not a unit in {r.name}")
    m = radicals.element_nilpotency(r, b)
    if m is None:
        raise PreconditionFailed(f"{r.fmt_index(b)} is not nilpotent in {r.name}")
    x = r.zero
    left = ainv
    right = r.one  # b^k
    for _ in range(m):
        x = r.add(x, r.mul(r.mul(left, v), right))
        left = r.mul(left, ainv)
        right = r.mul(right, b)
    if r.sub(r.mul(a, x), r.mul(x, b)) != v:
        raise PcleanError("phi-map solution failed its defining identity")
    return x


def triangular_pclean(
    r: RingTable, a, b, v, limit: int = DEFAULT_ORDER_LIMIT
) -> CleanCertificate | None:
    """Strong P-cleanness of [[a, v], [0, b]] in T2(r) by the diagonal rule.

    Returns a full certificate in the T2(r) ring (idempotent built through the
    phi-map in the mixed cases), or None when a or b avoids P and 1+P.
    """
    _require_local(r)
    a, b, v = _as_index(r, a), _as_index(r, b), _as_index(r, v)
    pm = radicals.prime_radical(r).mask
    in_p = lambda x: bool(pm[x])
    in_1p = lambda x: bool(pm[r.sub(x, r.one)])
    if not ((in_p(a) or in_1p(a)) and (in_p(b) or in_1p(b))):
        return None
    if in_p(a) and in_p(b):
        e11, e12, e22 = r.zero, r.zero, r.zero
    elif in_1p(a) and in_1p(b):
        e11, e12, e22 = r.one, r.zero, r.one
    elif in_1p(a) and in_p(b):
        x = solve_phi(r, a, b, v)
        e11, e12, e22 = r.one, x, r.zero
    else:
        y = solve_phi(r, b, a, v)
        e11, e12, e22 = r.zero, y, r.one
    t2 = triangular_ring(r, 2, limit)
    k = t2.kernel
    aidx = int(k._encode([np.int64(a), np.int64(v), np.int64(b)]))
    eidx = int(k._encode([np.int64(e11), np.int64(e12), np.int64(e22)]))
    widx = t2.sub(aidx, eidx)
    ok, witness = radicals.is_strongly_nilpotent(t2, widx)
    if not ok:
        raise PcleanError("triangular certificate remainder escaped P(T2)")
    cert = CleanCertificate(STRONGLY_P_CLEAN, t2, aidx, eidx, widx, witness)
    if not cert.validate():
        raise PcleanError("triangular certificate failed validation")
    return cert


@dataclass
class DiscriminantRecord:
    trace: int
    det: int
    in_p: bool
    one_minus_in_p: bool
    trace_in_one_plus_p: bool
    disc: int  # tr^2 - 4 det
    square_witnesses: list  # u in 1+P with u^2 = disc
    ratio_roots_in_p: list  # roots in P of x^2 - x + det/tr^2 = 0 (tr a unit)
    half: int | None  # 2^-1 when 2 is a unit
    half_roots: tuple | None  # (1/2(tr - u), 1/2(tr + u)) for the least witness


def discriminant_criteria(A: Matrix2) -> DiscriminantRecord:
    """Evaluate the published trace/determinant conditions with witnesses."""
    r = A.ring
    _require_commutative(r)
    _require_local(r)
    pm = radicals.prime_radical(r).mask
    tr, det = A.trace, A.det
    four = r.embed_int(4)
    disc = r.sub(r.mul(tr, tr), r.mul(four, det))
    idx = np.arange(r.order, dtype=np.int64)
    one_plus = pm[r.vsub(idx, np.int64(r.one))]
    squares = r.vmul(idx, idx)
    sq_witnesses = [int(u) for u in np.flatnonzero(one_plus & (squares == disc))]

    ratio_roots = []
    trinv = r.inverse(tr)
    if trinv is None:
        tr_in_1p = False
    else:
        tr_in_1p = bool(pm[r.sub(tr, r.one)])
        c = r.mul(det, r.mul(trinv, trinv))
        val = r.vadd(r.vsub(squares, idx), np.int64(c))  # x^2 - x + det/tr^2
        ratio_roots = [int(x) for x in np.flatnonzero((val == r.zero) & pm)]

    half = r.inverse(r.embed_int(2))
    half_roots = None
    if half is not None and sq_witnesses:
        u = sq_witnesses[0]
        half_roots = (r.mul(half, r.sub(tr, u)), r.mul(half, r.add(tr, u)))

    return DiscriminantRecord(
        trace=tr,
        det=det,
        in_p=bool(all(pm[e] for e in A.entries())),
        one_minus_in_p=bool(all(pm[e] for e in (Matrix2.identity(r) - A).entries())),
        trace_in_one_plus_p=tr_in_1p,
        disc=disc,
        square_witnesses=sq_witnesses,
        ratio_roots_in_p=ratio_roots,
        half=half,
        half_roots=half_roots,
    )


UNIT = "UNIT"
NILPOTENT = "NILPOTENT"
PCLEAN = "PCLEAN"
NOT_PI_REGULAR = "NOT_PI_REGULAR"


def pi_regular_trichotomy(A: Matrix2) -> str:
    """Classify A as UNIT / NILPOTENT / PCLEAN under R/J = Z_2, J nilpotent.

    The verdict is asserted against the strong pi-regularity of A computed in
    M2(r) from its definition.
    """
    r = A.ring
    _require_commutative(r)
    j = radicals.jacobson_radical(r)
    if r.order != 2 * j.order or radicals.nilpotency_index(j) is None:
        raise HypothesisViolated(
            f"{r.name} needs R/J(R) = Z_2 with J(R) nilpotent for the trichotomy"
        )
    if r.is_unit(A.det):
        kind = UNIT
    else:
        m2 = matrix_ring(r)
        aidx = matrix_to_index(m2, A)
        if radicals.element_nilpotency(m2, aidx) is not None:
            kind = NILPOTENT
        else:
            kind = PCLEAN if classify_pclean_2x2(A).kind != NOT_PCLEAN else NOT_PI_REGULAR
    m2 = matrix_ring(r)
    pi_reg, _, _ = strongly_pi_regular_element(m2, matrix_to_index(m2, A))
    if pi_reg != (kind != NOT_PI_REGULAR):
        raise CriterionMismatch(
            f"pi-regular trichotomy disagrees with the definitional scan for {A}"
        )
    return kind
