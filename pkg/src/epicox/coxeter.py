"""Exact word-problem engine for reflection systems with labels in {2, 3, oo}.

Generators act on simple-root coordinates through the standard geometric
representation, scaled so every matrix entry is an integer: the doubled
pairing takes value 2 on the diagonal and 0, -1, -2 for labels 2, 3 and
infinity.  The representation is faithful, so equality of group elements is
literal matrix equality and the word problem is decided exactly, with no
floating point anywhere.

Conventions.  Words multiply left to right: evaluate((i, j)) is the matrix
of sigma_i * sigma_j.  A generator index i is a (right) descent of w exactly
when column i of w is nonpositive; a valid element has every column either
nonnegative or nonpositive, and a mixed-sign column means the matrix does
not represent a group element at all.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import (EnumerationCapExceeded, InternalInconsistencyError,
                     PreconditionError)

INFINITE = 0  # label marker for an unbounded product order
DEFAULT_ENUM_CAP = 10000

# reduced-word extraction strictly shortens a valid element each step, so
# only a corrupt matrix can loop; this bound is how we notice
_WORD_GUARD = 1_000_000

# beyond this magnitude one more generator product could leave int64 range
# (a right multiplication at most triples the largest entry)
_INT64_SAFE = 2**61

Word = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]

# off-diagonal label -> root coefficient in sigma_i(alpha_j) = alpha_j + c*alpha_i
_COEFF = {2: 0, 3: 1, INFINITE: 2}
# off-diagonal label -> doubled pairing value
_PAIRING = {2: 0, 3: -1, INFINITE: -2}


@dataclass(frozen=True)
class CoxeterMatrix:
    n: int
    m: tuple[tuple[int, ...], ...]
    names: tuple[str, ...]
    # per-generator column operations, precomputed once; not part of identity
    _gen_coeffs: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise PreconditionError("rank must be nonnegative")
        if len(self.m) != self.n or any(len(row) != self.n for row in self.m):
            raise PreconditionError("label matrix shape does not match n")
        if len(self.names) != self.n:
            raise PreconditionError("need one name per generator")
        if len(set(self.names)) != self.n:
            raise PreconditionError("generator names must be distinct")
        for i in range(self.n):
            if self.m[i][i] != 1:
                raise PreconditionError(f"diagonal label at {i} must be 1")
            for j in range(i + 1, self.n):
                if self.m[i][j] != self.m[j][i]:
                    raise PreconditionError(f"labels not symmetric at ({i},{j})")
                if self.m[i][j] not in (2, 3, INFINITE):
                    raise PreconditionError(
                        f"label {self.m[i][j]} at ({i},{j}) outside {{2,3,oo}}")
        coeffs = tuple(
            tuple((j, _COEFF[self.m[i][j]]) for j in range(self.n)
                  if j != i and _COEFF[self.m[i][j]] != 0)
            for i in range(self.n))
        object.__setattr__(self, "_gen_coeffs", coeffs)

    @staticmethod
    def from_labels(n: int, labels, names=None) -> CoxeterMatrix:
        """Build from (i, j, m) triples; unlisted off-diagonal pairs get the
        infinite label."""
        m = [[INFINITE] * n for _ in range(n)]
        for i in range(n):
            m[i][i] = 1
        for i, j, lab in labels:
            if i == j:
                raise PreconditionError("cannot relabel the diagonal")
            m[i][j] = lab
            m[j][i] = lab
        if names is None:
            names = tuple(f"g{i}" for i in range(n))
        return CoxeterMatrix(n, tuple(tuple(row) for row in m), tuple(names))

    def label(self, i: int, j: int) -> int:
        return self.m[i][j]

    def submatrix(self, order) -> CoxeterMatrix:
        """Restriction to the given generators, in the given order."""
        order = tuple(order)
        m = tuple(tuple(self.m[i][j] for j in order) for i in order)
        return CoxeterMatrix(len(order), m, tuple(self.names[i] for i in order))


@dataclass(frozen=True)
class GroupElement:
    mat: Matrix

    @property
    def rank(self) -> int:
        return len(self.mat)


def identity(C: CoxeterMatrix) -> GroupElement:
    return GroupElement(tuple(tuple(int(i == j) for j in range(C.n))
                              for i in range(C.n)))


def simple_reflection(C: CoxeterMatrix, i: int) -> GroupElement:
    """The identity matrix with row i replaced: -1 on the diagonal and the
    root coefficient of each neighbour elsewhere."""
    if not (0 <= i < C.n):
        raise PreconditionError(f"generator index {i} out of range")
    rows = []
    for r in range(C.n):
        if r != i:
            rows.append(tuple(int(r == j) for j in range(C.n)))
        else:
            row = [0] * C.n
            row[i] = -1
            for j, c in C._gen_coeffs[i]:
                row[j] = c
            rows.append(tuple(row))
    return GroupElement(tuple(rows))


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols)
                 for row in a)


def mul(a: GroupElement, b: GroupElement) -> GroupElement:
    if a.rank != b.rank:
        raise PreconditionError("rank mismatch in multiplication")
    return GroupElement(_matmul(a.mat, b.mat))


def mul_gen(C: CoxeterMatrix, w: GroupElement, i: int) -> GroupElement:
    """Right multiplication by sigma_i as column operations: column i flips
    sign and feeds into its neighbours.  Much cheaper than a full product."""
    coeffs = C._gen_coeffs[i]
    rows = []
    for row in w.mat:
        v = row[i]
        new = list(row)
        new[i] = -v
        if v:
            for j, c in coeffs:
                new[j] += c * v
        rows.append(tuple(new))
    return GroupElement(tuple(rows))


def evaluate(C: CoxeterMatrix, word) -> GroupElement:
    w = identity(C)
    for i in word:
        if not (0 <= i < C.n):
            raise PreconditionError(f"letter {i} out of range")
        w = mul_gen(C, w, i)
    return w


def is_descent(C: CoxeterMatrix, w: GroupElement, i: int) -> bool:
    """True when w sends the i-th simple root to a negative root."""
    col = [row[i] for row in w.mat]
    if all(x <= 0 for x in col) and any(x < 0 for x in col):
        return True
    if all(x >= 0 for x in col) and any(x > 0 for x in col):
        return False
    raise PreconditionError(
        f"column {i} is not a sign-coherent root image; "
        "the matrix does not represent a group element")


def reduced_word(C: CoxeterMatrix, w: GroupElement) -> Word:
    """Greedy descent stripping, lowest index first.  The result is a
    minimal-length word evaluating back to w."""
    letters = []
    cur = w
    idn = identity(C)
    steps = 0
    while cur != idn:
        for i in range(C.n):
            if is_descent(C, cur, i):
                cur = mul_gen(C, cur, i)
                letters.append(i)
                break
        else:
            raise PreconditionError("nonidentity matrix with no descent")
        steps += 1
        if steps > _WORD_GUARD:
            raise InternalInconsistencyError(
                "length failed to keep decreasing; invalid element?")
    letters.reverse()
    return tuple(letters)


def length(C: CoxeterMatrix, w: GroupElement) -> int:
    return len(reduced_word(C, w))


def invert(C: CoxeterMatrix, w: GroupElement) -> GroupElement:
    return evaluate(C, tuple(reversed(reduced_word(C, w))))


def gram_matrix(C: CoxeterMatrix) -> Matrix:
    """Doubled pairing of the simple roots: 2 on the diagonal, 0/-1/-2 for
    labels 2/3/infinity."""
    return tuple(
        tuple(2 if i == j else _PAIRING[C.m[i][j]] for j in range(C.n))
        for i in range(C.n))


def preserves_form(C: CoxeterMatrix, w: GroupElement) -> bool:
    B = gram_matrix(C)
    wt = tuple(zip(*w.mat))
    return _matmul(_matmul(wt, B), w.mat) == B


def validate_element(C: CoxeterMatrix, w: GroupElement) -> None:
    """Raise unless w preserves the pairing and has sign-coherent columns."""
    if len(w.mat) != C.n or any(len(r) != C.n for r in w.mat):
        raise PreconditionError("matrix shape does not match the system")
    if not preserves_form(C, w):
        raise PreconditionError("matrix does not preserve the pairing")
    for i in range(C.n):
        is_descent(C, w, i)


def leading_minors(C: CoxeterMatrix, subset) -> tuple[int, ...]:
    """Leading principal minors of the pairing restricted to the subset
    (sorted order), by fraction-free elimination.  Stops early at a zero
    pivot, which is enough for the positivity test below."""
    idx = sorted(subset)
    B = gram_matrix(C)
    M = [[B[i][j] for j in idx] for i in idx]
    k = len(idx)
    minors = []
    prev = 1
    for t in range(k):
        piv = M[t][t]
        minors.append(piv)
        if piv == 0:
            break
        for a in range(t + 1, k):
            for b in range(t + 1, k):
                M[a][b] = (M[a][b] * piv - M[a][t] * M[t][b]) // prev
        prev = piv
    return tuple(minors)


def is_spherical(C: CoxeterMatrix, subset) -> bool:
    """Whether the standard subgroup on the subset is finite, by positive
    definiteness of the restricted pairing (all leading minors positive)."""
    subset = frozenset(subset)
    for i in subset:
        if not (0 <= i < C.n):
            raise PreconditionError(f"generator index {i} out of range")
    minors = leading_minors(C, subset)
    return len(minors) == len(subset) and all(d > 0 for d in minors)


def longest_element(C: CoxeterMatrix, subset) -> GroupElement:
    """Greedy ascent inside a spherical subset: keep multiplying by the
    lowest non-descent until every generator of the subset is a descent."""
    subset = sorted(frozenset(subset))
    if not is_spherical(C, subset):
        raise PreconditionError("longest element requires a spherical subset")
    w = identity(C)
    steps = 0
    while True:
        for i in subset:
            if not is_descent(C, w, i):
                w = mul_gen(C, w, i)
                break
        else:
            return w
        steps += 1
        if steps > _WORD_GUARD:
            raise InternalInconsistencyError("ascent failed to terminate")


@lru_cache(maxsize=None)
def _enumerate_parabolic_cached(C: CoxeterMatrix, subset: frozenset,
                                cap: int) -> tuple[GroupElement, ...]:
    gens = sorted(subset)
    for i in gens:
        if not (0 <= i < C.n):
            raise PreconditionError(f"generator index {i} out of range")
    idn = identity(C)
    seen = {idn.mat}
    out = [idn]
    frontier = [idn]
    while frontier:
        nxt = []
        for w in frontier:
            for i in gens:
                cand = mul_gen(C, w, i)
                if cand.mat not in seen:
                    if len(seen) + 1 > cap:
                        raise EnumerationCapExceeded(
                            f"parabolic enumeration exceeded cap {cap}; "
                            "nonspherical subset or budget too small")
                    seen.add(cand.mat)
                    out.append(cand)
                    nxt.append(cand)
        frontier = nxt
    return tuple(out)


def enumerate_parabolic(C: CoxeterMatrix, subset,
                        cap: int = DEFAULT_ENUM_CAP) -> tuple[GroupElement, ...]:
    """All elements of the standard subgroup on the subset, in breadth-first
    order from the identity.  Raises EnumerationCapExceeded past the cap."""
    return _enumerate_parabolic_cached(C, frozenset(subset), cap)


def close_under_multiplication(elements, rank: int,
                               cap: int = DEFAULT_ENUM_CAP) -> tuple[GroupElement, ...]:
    """Subgroup generated by the given elements (finite expected).  In a
    finite group the multiplicative closure of any set containing it is
    already a subgroup, so no inverses are needed."""
    idn = GroupElement(tuple(tuple(int(i == j) for j in range(rank))
                             for i in range(rank)))
    gens = [g for g in elements]
    for g in gens:
        if g.rank != rank:
            raise PreconditionError("rank mismatch in closure")
    seen = {idn.mat}
    out = [idn]
    frontier = [idn]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                cand = mul(w, g)
                if cand.mat not in seen:
                    if len(seen) + 1 > cap:
                        raise EnumerationCapExceeded(
                            f"closure exceeded cap {cap}")
                    seen.add(cand.mat)
                    out.append(cand)
                    nxt.append(cand)
        frontier = nxt
    return tuple(out)


def _flat_key(arr) -> tuple:
    return tuple(arr.reshape(-1).tolist())


def ball_levels(C: CoxeterMatrix, radius: int, cap: int | None = None) -> list[np.ndarray]:
    """Matrices of all elements of length <= radius, grouped by length.

    Level k is an array of shape (N_k, n, n).  Work is done in int64 while a
    conservative growth bound holds and switches to exact object arrays
    beyond it, so the result is always exact.  Deterministic order within a
    level: previous level order, then generator index.
    """
    if radius < 0:
        raise PreconditionError("radius must be nonnegative")
    n = C.n
    idn = np.eye(n, dtype=np.int64)[None, :, :]
    levels = [idn]
    if radius == 0 or n == 0:
        return levels
    gens = [np.array(simple_reflection(C, i).mat, dtype=np.int64)
            for i in range(n)]
    seen = {_flat_key(idn[0])}
    total = 1
    cur = idn
    as_object = False
    for _ in range(radius):
        if not as_object and int(np.abs(cur).max()) > _INT64_SAFE // 3:
            as_object = True
            cur = cur.astype(object)
            gens = [g.astype(object) for g in gens]
        cands = np.concatenate([cur.dot(g) for g in gens], axis=0)
        fresh = []
        for idx in range(cands.shape[0]):
            key = _flat_key(cands[idx])
            if key not in seen:
                seen.add(key)
                fresh.append(idx)
        if not fresh:
            break
        total += len(fresh)
        if cap is not None and total > cap:
            raise EnumerationCapExceeded(f"ball enumeration exceeded cap {cap}")
        cur = cands[fresh]
        levels.append(cur)
    return levels


def ball(C: CoxeterMatrix, radius: int, cap: int | None = None) -> list[GroupElement]:
    """All elements of length <= radius as exact GroupElements, shortest
    first."""
    out = []
    for level in ball_levels(C, radius, cap):
        for a in level:
            out.append(GroupElement(
                tuple(tuple(int(x) for x in row) for row in a)))
    return out


# --- serialization --------------------------------------------------------
#
# JSON: {"n": rank, "labels": [[i, j, m], ...] for i < j with finite m,
# "names": [...]}.  Absent off-diagonal pairs mean the infinite label.


def coxeter_to_json_dict(C: CoxeterMatrix) -> dict:
    labels = [[i, j, C.m[i][j]] for i in range(C.n)
              for j in range(i + 1, C.n) if C.m[i][j] != INFINITE]
    return {"n": C.n, "labels": labels, "names": list(C.names)}


def coxeter_from_json_dict(d: dict) -> CoxeterMatrix:
    try:
        n = int(d["n"])
        labels = [(int(i), int(j), int(m)) for i, j, m in d.get("labels", [])]
        names = d.get("names")
    except (KeyError, TypeError, ValueError) as exc:
        raise PreconditionError(f"malformed Coxeter JSON: {exc}") from exc
    for i, j, m in labels:
        if m not in (2, 3):
            raise PreconditionError(f"finite label {m} must be 2 or 3")
        if not (0 <= i < n and 0 <= j < n and i != j):
            raise PreconditionError(f"label pair ({i},{j}) out of range")
    return CoxeterMatrix.from_labels(n, labels,
                                     tuple(names) if names else None)
