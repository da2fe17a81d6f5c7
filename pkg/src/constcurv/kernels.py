"""Floating-point inner loops, each with a numba and a numpy implementation.

The public wrappers dispatch on :func:`constcurv._jit.use_numba`.  Both
paths consume identical inputs (random draws happen outside), so their
integer outputs agree exactly and float outputs agree to rounding.
"""

from __future__ import annotations

import numpy as np

from ._jit import njit, use_numba

FW_OPEN_LOOP, FW_LINE_SEARCH, FW_AWAY = 0, 1, 2


# --------------------------------------------------------------------------
# Poincare-Hopf indices for a batch of vertex functions

@njit(cache=True)
def _ph_batch_numba(verts, sizes, w, g, out):
    for b in range(g.shape[0]):
        for s in range(verts.shape[0]):
            best = verts[s, 0]
            bv = g[b, best]
            for k in range(1, sizes[s]):
                u = verts[s, k]
                if g[b, u] > bv:
                    best = u
                    bv = g[b, u]
            out[b, best] += w[s]


def _ph_batch_numpy(verts, sizes, w, g, out, chunk=4096):
    n = g.shape[1]
    pad = verts < 0
    safe = np.where(pad, 0, verts)
    for lo in range(0, g.shape[0], chunk):
        gb = g[lo:lo + chunk]
        vals = gb[:, safe]
        vals[:, pad] = -np.inf
        am = np.argmax(vals, axis=2)
        top = np.take_along_axis(np.broadcast_to(safe, vals.shape), am[..., None], axis=2)[..., 0]
        rows = np.arange(gb.shape[0])[:, None] * n
        flat = (rows + top).ravel()
        acc = np.bincount(flat, weights=np.broadcast_to(w, top.shape).ravel(), minlength=gb.shape[0] * n)
        out[lo:lo + chunk] += np.rint(acc).astype(np.int64).reshape(gb.shape[0], n)


def ph_index_batch(verts: np.ndarray, sizes: np.ndarray, w: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Indices for each row of ``g``.

    ``verts`` is a ``(S, L)`` array of vertex positions padded with -1,
    ``sizes`` the simplex sizes and ``w`` the alternating weights.
    Returns a ``(B, n)`` int64 array.
    """
    out = np.zeros(g.shape, dtype=np.int64)
    if use_numba():
        _ph_batch_numba(verts, sizes, w, np.ascontiguousarray(g), out)
    else:
        _ph_batch_numpy(verts, sizes, w, g, out)
    return out


# --------------------------------------------------------------------------
# Frank-Wolfe on a product of simplices, objective (1/n) sum_v (K(v) - m)^2

@njit(cache=True)
def _fw_numba(bptr, bvert, bh, k0, m, x, tol, max_iter, mode):
    n = k0.shape[0]
    nb = bptr.shape[0] - 1
    N = x.shape[0]
    K = np.empty(n)
    Ks = np.empty(n)
    Ka = np.empty(n)
    dK = np.empty(n)
    grad = np.empty(N)
    s_idx = np.empty(nb, dtype=np.int64)
    a_idx = np.empty(nb, dtype=np.int64)
    it = 0
    gap = np.inf
    while True:
        # same summation order as k0 + bincount(...) in the numpy path
        for v in range(n):
            K[v] = 0.0
        for i in range(N):
            K[bvert[i]] += x[i] * bh[i]
        for v in range(n):
            K[v] = k0[v] + K[v]
        for i in range(N):
            grad[i] = 2.0 / n * (K[bvert[i]] - m) * bh[i]
        for v in range(n):
            Ks[v] = 0.0
            Ka[v] = 0.0
        fwgap = 0.0
        awgap = 0.0
        gmax = np.inf
        bdrop = -1
        for b in range(nb):
            lo = bptr[b]
            hi = bptr[b + 1]
            dot = 0.0
            smin = lo
            amax = -1
            for i in range(lo, hi):
                dot += grad[i] * x[i]
                if grad[i] < grad[smin]:
                    smin = i
                if x[i] > 0.0 and (amax < 0 or grad[i] > grad[amax]):
                    amax = i
            fwgap += dot - grad[smin]
            awgap += grad[amax] - dot
            Ks[bvert[smin]] += bh[smin]
            Ka[bvert[amax]] += bh[amax]
            s_idx[b] = smin
            a_idx[b] = amax
            xa = x[amax]
            if xa < 1.0:
                r = xa / (1.0 - xa)
                if r < gmax:
                    gmax = r
                    bdrop = b
        for v in range(n):
            Ks[v] = k0[v] + Ks[v]
            Ka[v] = k0[v] + Ka[v]
        gap = fwgap
        if gap <= tol or it >= max_iter:
            break
        away = mode == 2 and awgap > fwgap and bdrop >= 0
        if away:
            for v in range(n):
                dK[v] = K[v] - Ka[v]
            gamma_max = gmax
        else:
            for v in range(n):
                dK[v] = Ks[v] - K[v]
            gamma_max = 1.0
        if mode == 0:
            gamma = 2.0 / (it + 2.0)
        else:
            num = 0.0
            den = 0.0
            for v in range(n):
                num += (K[v] - m) * dK[v]
                den += dK[v] * dK[v]
            gamma = -num / den if den > 0.0 else 0.0
            if gamma < 0.0:
                gamma = 0.0
            if gamma > gamma_max:
                gamma = gamma_max
        if away:
            for i in range(N):
                x[i] *= 1.0 + gamma
            for b in range(nb):
                x[a_idx[b]] -= gamma
                if x[a_idx[b]] < 0.0:
                    x[a_idx[b]] = 0.0
            if gamma == gamma_max:
                x[a_idx[bdrop]] = 0.0
        else:
            for i in range(N):
                x[i] *= 1.0 - gamma
            for b in range(nb):
                x[s_idx[b]] += gamma
        it += 1
    var = 0.0
    for v in range(n):
        var += (K[v] - m) ** 2
    return it, gap, var / n


def _seqsum(a: np.ndarray) -> float:
    return float(np.cumsum(a)[-1]) if len(a) else 0.0


def _fw_numpy(bptr, bvert, bh, k0, m, x, tol, max_iter, mode):
    n = k0.shape[0]
    N = x.shape[0]
    starts = bptr[:-1]
    sizes = np.diff(bptr)
    block = np.repeat(np.arange(len(starts)), sizes)
    pos = np.arange(N)
    it = 0
    while True:
        K = k0 + np.bincount(bvert, weights=x * bh, minlength=n)
        grad = 2.0 / n * (K[bvert] - m) * bh
        dot = np.add.reduceat(grad * x, starts)
        gmin = np.minimum.reduceat(grad, starts)
        s = np.minimum.reduceat(np.where(grad == gmin[block], pos, N), starts)
        gm = np.where(x > 0.0, grad, -np.inf)
        gmx = np.maximum.reduceat(gm, starts)
        a = np.minimum.reduceat(np.where(gm == gmx[block], pos, N), starts)
        # sequential sums (cumsum) keep the numpy path bit-compatible with the loops above
        fwgap = _seqsum(dot - gmin)
        awgap = _seqsum(gmx - dot)
        gap = fwgap
        if gap <= tol or it >= max_iter:
            break
        xa = x[a]
        ratio = np.full(len(a), np.inf)
        movable = xa < 1.0
        ratio[movable] = xa[movable] / (1.0 - xa[movable])
        bdrop = int(np.argmin(ratio)) if movable.any() else -1
        away = mode == FW_AWAY and awgap > fwgap and bdrop >= 0
        if away:
            Ka = k0 + np.bincount(bvert[a], weights=bh[a], minlength=n)
            dK = K - Ka
            gamma_max = ratio[bdrop]
        else:
            Ks = k0 + np.bincount(bvert[s], weights=bh[s], minlength=n)
            dK = Ks - K
            gamma_max = 1.0
        if mode == FW_OPEN_LOOP:
            gamma = 2.0 / (it + 2.0)
        else:
            den = _seqsum(dK * dK)
            gamma = -_seqsum((K - m) * dK) / den if den > 0.0 else 0.0
            gamma = min(max(gamma, 0.0), gamma_max)
        if away:
            x *= 1.0 + gamma
            x[a] -= gamma
            np.maximum(x, 0.0, out=x)
            if gamma == gamma_max:
                x[a[bdrop]] = 0.0
        else:
            x *= 1.0 - gamma
            x[s] += gamma
        it += 1
    return it, gap, _seqsum((K - m) ** 2) / n


def frank_wolfe(bptr, bvert, bh, k0, m, x0, tol, max_iter, mode=FW_AWAY):
    """Run Frank-Wolfe from ``x0``; returns ``(x, iterations, gap, variance)``.

    Blocks ``bptr[b]:bptr[b+1]`` of the flat vector ``x`` are probability
    vectors; entry ``i`` sends energy ``bh[i]`` to vertex position
    ``bvert[i]``.  ``k0`` holds the fixed vertex energies.
    """
    x = np.array(x0, dtype=np.float64)
    args = (np.asarray(bptr, np.int64), np.asarray(bvert, np.int64), np.asarray(bh, np.float64),
            np.asarray(k0, np.float64), float(m), x, float(tol), int(max_iter), int(mode))
    if len(bptr) <= 1:
        K = args[3]
        return x, 0, 0.0, float(np.sum((K - m) ** 2) / max(len(K), 1))
    if use_numba():
        it, gap, var = _fw_numba(*args)
    else:
        it, gap, var = _fw_numpy(*args)
    return x, int(it), float(gap), float(var)


# --------------------------------------------------------------------------
# Euler characteristic of clique complexes for a batch of random graphs

@njit(cache=True)
def _chi_batch_numba(edges, n, out):
    adj = np.zeros(n, dtype=np.int64)
    stack_cand = np.zeros(n + 1, dtype=np.int64)
    stack_size = np.zeros(n + 1, dtype=np.int64)
    for b in range(edges.shape[0]):
        for v in range(n):
            adj[v] = 0
        k = 0
        for i in range(n):
            for j in range(i + 1, n):
                if edges[b, k]:
                    adj[i] |= np.int64(1) << j
                    adj[j] |= np.int64(1) << i
                k += 1
        chi = 0
        # depth-first over cliques, extending only by larger vertices
        top = 0
        stack_cand[0] = (np.int64(1) << n) - 1
        stack_size[0] = 0
        while top >= 0:
            cand = stack_cand[top]
            if cand == 0:
                top -= 1
                continue
            v = 0
            while not (cand >> v) & 1:
                v += 1
            stack_cand[top] = cand & ~(np.int64(1) << v)
            size = stack_size[top] + 1
            chi += 1 if size % 2 == 1 else -1
            higher = adj[v] & ~((np.int64(1) << (v + 1)) - 1)
            top += 1
            stack_cand[top] = cand & higher
            stack_size[top] = size
        out[b] = chi


def _chi_batch_numpy(edges, n, out):
    pair = {}
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            pair[i, j] = k
            k += 1
    out[:] = n
    for mask in range(1, 1 << n):
        vs = [v for v in range(n) if (mask >> v) & 1]
        if len(vs) < 2:
            continue
        cols = [pair[vs[a], vs[c]] for a in range(len(vs)) for c in range(a + 1, len(vs))]
        sign = 1 if len(vs) % 2 == 1 else -1
        out += sign * np.all(edges[:, cols], axis=1)


def clique_chi_batch(edges: np.ndarray, n: int) -> np.ndarray:
    """Euler characteristic of the clique complex of each sampled graph.

    ``edges`` is a boolean ``(B, n(n-1)/2)`` array in lexicographic pair order.
    """
    if n > 62:
        raise ValueError("batched Euler characteristic supports n <= 62")
    out = np.zeros(edges.shape[0], dtype=np.int64)
    if use_numba():
        _chi_batch_numba(np.ascontiguousarray(edges), n, out)
    elif n <= 16:
        _chi_batch_numpy(edges, n, out)
    else:
        from .complex import Graph, build_clique_complex, euler_characteristic
        idx = [(i, j) for i in range(n) for j in range(i + 1, n)]
        for b, row in enumerate(edges):
            g = Graph.from_edges(n, [idx[k] for k in np.flatnonzero(row)])
            out[b] = int(euler_characteristic(build_clique_complex(g)))
    return out
