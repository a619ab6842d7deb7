"""Hot table kernels.

Every kernel exists twice: a loop version compiled with numba (``*_nb``) and a
vectorised numpy version (``*_np``).  The public names pick one of them at
import time.  Set ``SCHREIERLAB_DISABLE_JIT=1`` to force the numpy path (useful
when numba is missing or when debugging).

All tables are ``int64`` arrays of element indices.  Kernels return ``-1``
sentinels instead of ``None`` so that both paths share one signature.
"""

import os

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None

JIT_DISABLED = os.environ.get("SCHREIERLAB_DISABLE_JIT", "").strip().lower() in ("1", "true", "yes", "on")
USE_NUMBA = njit is not None and not JIT_DISABLED
BACKEND = "numba" if USE_NUMBA else "numpy"


def _jit(fn):
    if njit is None:
        return fn
    return njit(cache=True)(fn)


# ---------------------------------------------------------------- associativity


@_jit
def assoc_violation_nb(table):
    n = table.shape[0]
    for i in range(n):
        for j in range(n):
            ij = table[i, j]
            for k in range(n):
                if table[ij, k] != table[i, table[j, k]]:
                    return i, j, k
    return -1, -1, -1


def assoc_violation_np(table, chunk=64):
    n = table.shape[0]
    for start in range(0, n, chunk):
        rows = table[start:start + chunk]
        lhs = table[rows]                # [i, j, k] = (i j) k
        rhs = rows[:, table]             # [i, j, k] = i (j k)
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            i, j, k = bad[0]
            return int(i) + start, int(j), int(k)
    return -1, -1, -1


@_jit
def assoc_mask_batch_nb(tables):
    b, n = tables.shape[0], tables.shape[1]
    out = np.ones(b, dtype=np.bool_)
    for t in range(b):
        ok = True
        for i in range(n):
            if not ok:
                break
            for j in range(n):
                if not ok:
                    break
                ij = tables[t, i, j]
                for k in range(n):
                    if tables[t, ij, k] != tables[t, i, tables[t, j, k]]:
                        ok = False
                        break
        out[t] = ok
    return out


def assoc_mask_batch_np(tables, chunk=8192):
    b, n = tables.shape[0], tables.shape[1]
    out = np.empty(b, dtype=bool)
    idx = np.arange(n)
    for start in range(0, b, chunk):
        tb = tables[start:start + chunk]
        m = tb.shape[0]
        bi = np.arange(m)[:, None, None, None]
        # (ij)k
        ij = tb[:, :, :, None]
        lhs = tb[bi, ij, idx[None, None, None, :]]
        # i(jk)
        jk = tb[:, None, :, :]
        rhs = tb[bi, idx[None, :, None, None], jk]
        out[start:start + m] = (lhs == rhs).reshape(m, -1).all(axis=1)
    return out


# ---------------------------------------------------------------- identity


@_jit
def identity_candidates_nb(table):
    n = table.shape[0]
    out = np.zeros(n, dtype=np.bool_)
    for e in range(n):
        ok = True
        for x in range(n):
            if table[e, x] != x or table[x, e] != x:
                ok = False
                break
        out[e] = ok
    return out


def identity_candidates_np(table):
    idx = np.arange(table.shape[0])
    return (table == idx[None, :]).all(axis=1) & (table.T == idx[None, :]).all(axis=1)


# ---------------------------------------------------------------- decompositions


@_jit
def decomposition_counts_nb(table, kernel, sf, left):
    """For every x count kernel elements a with x = k(a) sf(x) (or sf(x) k(a))."""
    n = table.shape[0]
    counts = np.zeros(n, dtype=np.int64)
    first = np.full(n, -1, dtype=np.int64)
    for x in range(n):
        for a in kernel:
            v = table[sf[x], a] if left else table[a, sf[x]]
            if v == x:
                if counts[x] == 0:
                    first[x] = a
                counts[x] += 1
    return counts, first


def decomposition_counts_np(table, kernel, sf, left):
    n = table.shape[0]
    if left:
        vals = table[sf[None, :], kernel[:, None]]
    else:
        vals = table[kernel[:, None], sf[None, :]]
    match = vals == np.arange(n)[None, :]
    counts = match.sum(axis=0).astype(np.int64)
    first = np.where(counts > 0, kernel[match.argmax(axis=0)], -1).astype(np.int64)
    return counts, first


# ---------------------------------------------------------------- words in groups


@_jit
def power_table_nb(table, inverse, identity, max_exp):
    n = table.shape[0]
    pw = np.empty((2 * max_exp + 1, n), dtype=np.int64)
    for x in range(n):
        pw[max_exp, x] = identity
    for e in range(1, max_exp + 1):
        for x in range(n):
            pw[max_exp + e, x] = table[pw[max_exp + e - 1, x], x]
            pw[max_exp - e, x] = table[pw[max_exp - e + 1, x], inverse[x]]
    return pw


def power_table_np(table, inverse, identity, max_exp):
    n = table.shape[0]
    idx = np.arange(n)
    pw = np.empty((2 * max_exp + 1, n), dtype=np.int64)
    pw[max_exp] = identity
    for e in range(1, max_exp + 1):
        pw[max_exp + e] = table[pw[max_exp + e - 1], idx]
        pw[max_exp - e] = table[pw[max_exp - e + 1], inverse]
    return pw


@_jit
def eval_word_nb(table, inverse, identity, word):
    """Table of x^k1 y^l1 ... x^km y^lm over all (x, y); ``word`` is an (m, 2) array."""
    n = table.shape[0]
    max_exp = 0
    for r in range(word.shape[0]):
        max_exp = max(max_exp, abs(word[r, 0]), abs(word[r, 1]))
    pw = power_table_nb(table, inverse, identity, max_exp)
    out = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        for y in range(n):
            acc = identity
            for r in range(word.shape[0]):
                acc = table[acc, pw[max_exp + word[r, 0], x]]
                acc = table[acc, pw[max_exp + word[r, 1], y]]
            out[x, y] = acc
    return out


def eval_word_np(table, inverse, identity, word):
    n = table.shape[0]
    max_exp = int(np.abs(word).max()) if len(word) else 0
    pw = power_table_np(table, inverse, identity, max_exp)
    out = np.full((n, n), identity, dtype=np.int64)
    for k, l in word:
        out = table[out, pw[max_exp + k][:, None]]
        out = table[out, pw[max_exp + l][None, :]]
    return out


# ---------------------------------------------------------------- latin columns


@_jit
def column_inverse_nb(star):
    """Solve z * y = x for z.  Returns (q, bad_y, x1, x2); bad_y = -1 when every column is a permutation.

    On failure x1, x2 are two rows colliding in column bad_y.
    """
    n = star.shape[0]
    q = np.full((n, n), -1, dtype=np.int64)
    for y in range(n):
        for z in range(n):
            x = star[z, y]
            if q[x, y] != -1:
                return q, y, q[x, y], z
            q[x, y] = z
    return q, -1, -1, -1


def column_inverse_np(star):
    n = star.shape[0]
    srt = np.sort(star, axis=0)
    ok = (srt == np.arange(n)[:, None]).all(axis=0)
    if not ok.all():
        y = int(np.argmin(ok))
        col = star[:, y]
        seen = {}
        for z, x in enumerate(col.tolist()):
            if x in seen:
                return np.full((n, n), -1, dtype=np.int64), y, seen[x], z
            seen[x] = z
    q = np.empty((n, n), dtype=np.int64)
    q[star, np.arange(n)[None, :]] = np.arange(n)[:, None]
    return q, -1, -1, -1


# ---------------------------------------------------------------- closure


@_jit
def closure_nb(table, seed):
    n = table.shape[0]
    mask = seed.copy()
    members = np.empty(n, dtype=np.int64)
    count = 0
    for x in range(n):
        if mask[x]:
            members[count] = x
            count += 1
    pos = 0
    while pos < count:
        a = members[pos]
        pos += 1
        upto = count
        for t in range(upto):
            b = members[t]
            for v in (table[a, b], table[b, a]):
                if not mask[v]:
                    mask[v] = True
                    members[count] = v
                    count += 1
    return mask


def closure_np(table, seed):
    mask = seed.copy()
    while True:
        s = np.flatnonzero(mask)
        new = np.zeros_like(mask)
        new[table[np.ix_(s, s)].ravel()] = True
        new |= mask
        if (new == mask).all():
            return mask
        mask = new


KERNELS = (
    "assoc_violation",
    "assoc_mask_batch",
    "identity_candidates",
    "decomposition_counts",
    "power_table",
    "eval_word",
    "column_inverse",
    "closure",
)

_suffix = "_nb" if USE_NUMBA else "_np"
assoc_violation = globals()["assoc_violation" + _suffix]
assoc_mask_batch = globals()["assoc_mask_batch" + _suffix]
identity_candidates = globals()["identity_candidates" + _suffix]
decomposition_counts = globals()["decomposition_counts" + _suffix]
power_table = globals()["power_table" + _suffix]
eval_word = globals()["eval_word" + _suffix]
column_inverse = globals()["column_inverse" + _suffix]
closure = globals()["closure" + _suffix]


def implementations(name):
    """Both implementations of kernel ``name`` as ``{"numba": fn, "numpy": fn}``."""
    if name not in KERNELS:
        raise KeyError(name)
    return {"numba": globals()[name + "_nb"], "numpy": globals()[name + "_np"]}


def warmup():
    """Trigger JIT compilation (or cache load) of every kernel on tiny inputs."""
    t = np.array([[0, 1], [1, 0]], dtype=np.int64)
    inv = np.array([0, 1], dtype=np.int64)
    assoc_violation(t)
    assoc_mask_batch(t[None])
    identity_candidates(t)
    decomposition_counts(t, np.array([0, 1], dtype=np.int64), np.array([0, 0], dtype=np.int64), False)
    power_table(t, inv, 0, 2)
    eval_word(t, inv, 0, np.array([[1, 1]], dtype=np.int64))
    column_inverse(t)
    closure(t, np.array([True, False]))
