"""Hot integer kernels, each in a numba and a vectorized-numpy flavour.

Backend selection: ``SCROLLHN_BACKEND=numpy`` (or ``SCROLLHN_DISABLE_NUMBA=1``)
forces the numpy path; otherwise numba is used when importable. Both paths
return identical results; the test suite checks that.

Everything here is machine-integer arithmetic. Callers keep inputs small
enough that no intermediate leaves int64 (see the guards below).
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

# rule codes shared with nodal.Rule
SUM_SMALL, A1_FULL, RANK2, LOW_B, RESIDUAL = range(5)
N_RULES = 5

# largest genus for which r*(2g+3)*r*(g-3)-style cross products stay in int64
MAX_KERNEL_GENUS = 20_000

# prime for modular rank certification; p^2 < 2^63
MODULUS = 2_147_483_647


def default_backend() -> str:
    forced = os.environ.get("SCROLLHN_BACKEND", "").strip().lower()
    if forced in ("numpy", "numba"):
        if forced == "numba" and not HAVE_NUMBA:
            raise RuntimeError("SCROLLHN_BACKEND=numba but numba is not importable")
        return forced
    if os.environ.get("SCROLLHN_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes"):
        return "numpy"
    return "numba" if HAVE_NUMBA else "numpy"


def _resolve(backend: str | None) -> str:
    b = backend or default_backend()
    if b not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {b!r}")
    if b == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not importable")
    return b


# ---------------------------------------------------------------------------
# destabilizer enumeration
#
# Output layout (int64 array of length 16):
#   [0:5]   rule histogram
#   [5]     number of candidates
#   [6],[7] best bound and its rank r (maximizes bound / r)
#   [8]     max of bound - r*(2g+3)
#   [9]     gap flag (1 if some candidate matched no rule)
#   [10:14] first gap candidate (r, a1, a2, a3)
#   [14]    count of candidates with sum(a) >= 2r+1 (reduced cases)
#   [15]    unused


def _enumerate_py(g, cap1, cap2, cap3):  # pragma: no cover - compiled or replaced
    out = np.zeros(16, dtype=np.int64)
    out[6] = -1
    out[7] = 1
    out[8] = -(1 << 62)
    two_g1 = 2 * g + 1
    for r in range(1, g - 3):
        base = r * two_g1
        top = r * (2 * g + 3)
        m1 = min(r, cap1)
        m2 = min(r, cap2)
        m3 = min(r, cap3)
        for a1 in range(m1 + 1):
            for a2 in range(m2 + 1):
                for a3 in range(m3 + 1):
                    s = a1 + a2 + a3
                    b23 = 2 * r - a2 - a3
                    rule = -1
                    bound = 0
                    if s <= 2 * r:
                        rule = SUM_SMALL
                        bound = base + s
                    elif a1 == r:
                        rule = A1_FULL
                        bound = base + s - (a2 + a3)
                    elif r == 2:
                        if a1 == 1 and a2 == 2 and a3 == 2:
                            rule = RANK2
                            bound = base + s - 2
                    elif r >= 3 and b23 <= r - 3:
                        rule = LOW_B
                        bound = base + s - (3 * r - 3 * b23 - 6)
                    elif (
                        a1 == r - 1
                        and a2 + a3 == r + 2
                        and s == 2 * r + 1
                        and r >= 3
                        and (a2 == r or a3 == r or (r >= 4 and a2 >= 3 and a3 >= 3))
                    ):
                        rule = RESIDUAL
                        bound = base + s - 1
                    out[5] += 1
                    if s >= 2 * r + 1:
                        out[14] += 1
                    if rule < 0:
                        if out[9] == 0:
                            out[9] = 1
                            out[10] = r
                            out[11] = a1
                            out[12] = a2
                            out[13] = a3
                        continue
                    out[rule] += 1
                    if bound * out[7] > out[6] * r:
                        out[6] = bound
                        out[7] = r
                    if bound - top > out[8]:
                        out[8] = bound - top
    return out


if HAVE_NUMBA:
    _enumerate_numba = numba.njit(cache=True)(_enumerate_py)
else:  # pragma: no cover
    _enumerate_numba = None


def _enumerate_numpy(g, cap1, cap2, cap3):
    out = np.zeros(16, dtype=np.int64)
    best_bound, best_r = -1, 1
    max_excess = -(1 << 62)
    two_g1 = 2 * g + 1
    for r in range(1, g - 3):
        a1 = np.arange(min(r, cap1) + 1, dtype=np.int64)[:, None, None]
        a2 = np.arange(min(r, cap2) + 1, dtype=np.int64)[None, :, None]
        a3 = np.arange(min(r, cap3) + 1, dtype=np.int64)[None, None, :]
        a1, a2, a3 = np.broadcast_arrays(a1, a2, a3)
        s = a1 + a2 + a3
        b23 = 2 * r - a2 - a3
        c_sum = s <= 2 * r
        c_a1 = ~c_sum & (a1 == r)
        rest = ~c_sum & ~c_a1
        if r == 2:
            c_r2 = rest & (a1 == 1) & (a2 == 2) & (a3 == 2)
            c_low = np.zeros_like(c_sum)
            c_res = np.zeros_like(c_sum)
        else:
            c_r2 = np.zeros_like(c_sum)
            c_low = rest & (r >= 3) & (b23 <= r - 3)
            rest2 = rest & ~c_low
            sub = (a2 == r) | (a3 == r) | ((r >= 4) & (a2 >= 3) & (a3 >= 3))
            c_res = rest2 & (a1 == r - 1) & (a2 + a3 == r + 2) & (s == 2 * r + 1) & (r >= 3) & sub
        base = r * two_g1
        bound = np.select(
            [c_sum, c_a1, c_r2, c_low, c_res],
            [base + s, base + s - (a2 + a3), base + s - 2, base + s - (3 * r - 3 * b23 - 6), base + s - 1],
            default=np.iinfo(np.int64).min,
        )
        matched = c_sum | c_a1 | c_r2 | c_low | c_res
        for code, mask in enumerate((c_sum, c_a1, c_r2, c_low, c_res)):
            out[code] += int(mask.sum())
        out[5] += s.size
        out[14] += int((s >= 2 * r + 1).sum())
        if out[9] == 0 and not matched.all():
            # first gap in (a1, a2, a3) lexicographic order, like the loop
            idx = np.argwhere(~matched)[0]
            out[9] = 1
            out[10:14] = (r, idx[0], idx[1], idx[2])
        if matched.any():
            bmax = int(bound[matched].max())
            if bmax * best_r > best_bound * r:
                best_bound, best_r = bmax, r
            max_excess = max(max_excess, bmax - r * (2 * g + 3))
    out[6], out[7], out[8] = best_bound, best_r, max_excess
    return out


def enumerate_destabilizers(g: int, caps: tuple[int, int, int], backend: str | None = None) -> np.ndarray:
    """Run the rule engine over every candidate ``(r, a1, a2, a3)`` with
    ``1 <= r <= g-4`` and ``a_i <= min(r, caps[i])``."""
    if g > MAX_KERNEL_GENUS:
        raise OverflowError(f"g={g} exceeds the int64-safe kernel range; use the exact reference path")
    b = _resolve(backend)
    fn = _enumerate_numba if b == "numba" else _enumerate_numpy
    return fn(int(g), int(caps[0]), int(caps[1]), int(caps[2]))


# ---------------------------------------------------------------------------
# modular row-rank certification
#
# rows: (n, m) int64 residues mod MODULUS; masks: (B,) uint64 subsets of rows.
# Returns (B,) int64 ranks mod p of the selected rows. A rank equal to the
# subset size certifies independence over Q.



def _powmod(a, e, p):
    result = 1
    a %= p
    while e > 0:
        if e & 1:
            result = (result * a) % p
        a = (a * a) % p
        e >>= 1
    return result


def _subset_rank_py(rows, masks, p):  # pragma: no cover - compiled
    n, m = rows.shape
    nb = masks.shape[0]
    ranks = np.zeros(nb, dtype=np.int64)
    work = np.empty((n, m), dtype=np.int64)
    for b in range(nb):
        mask = masks[b]
        k = 0
        for i in range(n):
            if (mask >> np.uint64(i)) & np.uint64(1):
                for j in range(m):
                    work[k, j] = rows[i, j]
                k += 1
        rank = 0
        for col in range(m):
            if rank == k:
                break
            piv = -1
            for i in range(rank, k):
                if work[i, col] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != rank:
                for j in range(m):
                    tmp = work[rank, j]
                    work[rank, j] = work[piv, j]
                    work[piv, j] = tmp
            inv = _powmod(work[rank, col], p - 2, p)
            for i in range(rank + 1, k):
                f = (work[i, col] * inv) % p
                if f != 0:
                    for j in range(col, m):
                        work[i, j] = (work[i, j] - f * work[rank, j]) % p
            rank += 1
        ranks[b] = rank
    return ranks


if HAVE_NUMBA:
    _powmod = numba.njit(cache=True)(_powmod)
    _subset_rank_numba = numba.njit(cache=True)(_subset_rank_py)
else:  # pragma: no cover
    _subset_rank_numba = None


def _inv_mod_vec(a: np.ndarray, p: int) -> np.ndarray:
    """Elementwise modular inverse by square-and-multiply (object-free)."""
    result = np.ones_like(a)
    base = a % p
    e = p - 2
    while e:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return result


def _subset_rank_numpy(rows, masks, p):
    n, m = rows.shape
    bits = ((masks[:, None] >> np.arange(n, dtype=np.uint64)[None, :]) & np.uint64(1)).astype(bool)
    ranks = np.zeros(masks.shape[0], dtype=np.int64)
    sizes = bits.sum(axis=1)
    for k in np.unique(sizes):
        sel = np.nonzero(sizes == k)[0]
        if k == 0:
            continue
        idx = np.nonzero(bits[sel])[1].reshape(len(sel), k)
        work = rows[idx].copy()  # (B, k, m)
        nb = len(sel)
        rank = np.zeros(nb, dtype=np.int64)
        ar = np.arange(nb)
        for col in range(m):
            active = rank < k
            if not active.any():
                break
            # pivot: first row >= rank with a nonzero entry in this column
            row_ids = np.arange(k)[None, :]
            cand = (work[:, :, col] != 0) & (row_ids >= rank[:, None])
            has = cand.any(axis=1) & active
            if not has.any():
                continue
            piv = np.argmax(cand, axis=1)
            hb = ar[has]
            r_h, p_h = rank[has], piv[has]
            tmp = work[hb, r_h, :].copy()
            work[hb, r_h, :] = work[hb, p_h, :]
            work[hb, p_h, :] = tmp
            inv = _inv_mod_vec(work[hb, r_h, col], p)
            pivrow = work[hb, r_h, :]  # (h, m)
            f = (work[hb, :, col] * inv[:, None]) % p  # (h, k)
            below = row_ids >= (r_h[:, None] + 1)
            f = np.where(below, f, 0)
            # (h, k, m) update; products stay below 2^62
            upd = (f[:, :, None] * pivrow[:, None, :]) % p
            work[hb] = (work[hb] - upd) % p
            rank[has] += 1
        ranks[sel] = rank
    return ranks


def subset_ranks_mod_p(rows_mod_p: np.ndarray, masks: np.ndarray, backend: str | None = None) -> np.ndarray:
    if rows_mod_p.shape[0] > 63:
        raise ValueError("at most 63 rows per subset mask")
    b = _resolve(backend)
    rows = np.ascontiguousarray(rows_mod_p, dtype=np.int64)
    ms = np.ascontiguousarray(masks, dtype=np.uint64)
    if b == "numba":
        return _subset_rank_numba(rows, ms, MODULUS)
    return _subset_rank_numpy(rows, ms, MODULUS)
