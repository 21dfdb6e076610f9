"""Compiled inner loops over CSR adjacency arrays.

Every search here is vertex-weighted: stepping onto vertex ``v`` costs
``weights[v]`` (an arc costs the weight of its head).  Source sets are passed
flattened as ``src_ptr``/``src_ids``, chain ``i`` being
``src_ids[src_ptr[i]:src_ptr[i+1]]``; all members of a set start at distance
0, which plays the role of a dummy super-source wired to the whole set.

Ties break on ``(distance, vertex)`` unless a rank array says otherwise.
"""
import heapq

import numpy as np
from numba import njit

INF = np.inf


@njit(cache=True)
def all_pairs_bfs(indptr, indices):
    n = indptr.shape[0] - 1
    out = np.full((n, n), -1, dtype=np.int32)
    queue = np.empty(n, dtype=np.int64)
    for s in range(n):
        row = out[s]
        row[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            du = row[u] + 1
            for p in range(indptr[u], indptr[u + 1]):
                v = indices[p]
                if row[v] < 0:
                    row[v] = du
                    queue[tail] = v
                    tail += 1
    return out


@njit(cache=True)
def _sssp_into(indptr, indices, weights, rank, sources, dist, parent, heap, pos):
    """Dijkstra on an indexed binary heap ordered by ``(dist, rank)``.

    ``pos[v]`` is -1 before ``v`` is queued, its heap slot while queued and
    -2 once settled.  Sift loops are written out inline; numba does not
    inline small helpers reliably and the calls dominate otherwise.
    """
    n = dist.shape[0]
    for v in range(n):
        pos[v] = -1
    size = 0
    pops = 0
    for s in sources:
        if pos[s] == -1:
            dist[s] = 0.0
            i = size
            size += 1
            rs = rank[s]
            while i > 0:
                up = (i - 1) >> 1
                x = heap[up]
                if not (dist[x] > 0.0 or rank[x] > rs):
                    break
                heap[i] = x
                pos[x] = i
                i = up
            heap[i] = s
            pos[s] = i
    while size > 0:
        u = heap[0]
        size -= 1
        pos[u] = -2
        if size > 0:
            v = heap[size]
            kv = dist[v]
            rv = rank[v]
            i = 0
            while True:
                c = 2 * i + 1
                if c >= size:
                    break
                if c + 1 < size:
                    a = heap[c + 1]
                    b = heap[c]
                    if dist[a] < dist[b] or (dist[a] == dist[b] and rank[a] < rank[b]):
                        c += 1
                x = heap[c]
                if not (dist[x] < kv or (dist[x] == kv and rank[x] < rv)):
                    break
                heap[i] = x
                pos[x] = i
                i = c
            heap[i] = v
            pos[v] = i
        pops += 1
        d = dist[u]
        for p in range(indptr[u], indptr[u + 1]):
            v = indices[p]
            if pos[v] == -2:
                continue
            alt = d + weights[v]
            if alt < dist[v]:
                dist[v] = alt
                parent[v] = u
                if pos[v] == -1:
                    i = size
                    size += 1
                else:
                    i = pos[v]
                rv = rank[v]
                while i > 0:
                    up = (i - 1) >> 1
                    x = heap[up]
                    if not (alt < dist[x] or (alt == dist[x] and rv < rank[x])):
                        break
                    heap[i] = x
                    pos[x] = i
                    i = up
                heap[i] = v
                pos[v] = i
    return pops


@njit(cache=True)
def sssp_many(indptr, indices, weights, rank, src_ptr, src_ids):
    """One full Dijkstra per source set; returns ``(dist, parent, pops)``.

    Equal distances are settled in increasing ``rank`` order.
    """
    n = indptr.shape[0] - 1
    k = src_ptr.shape[0] - 1
    dist = np.full((k, n), INF)
    parent = np.full((k, n), -1, dtype=np.int64)
    heap = np.empty(n, dtype=np.int64)
    pos = np.empty(n, dtype=np.int64)
    row = np.empty(n)
    prow = np.empty(n, dtype=np.int64)
    pops = 0
    for i in range(k):
        # contiguous scratch rows: views of dist[i] compile to slower code
        row[:] = INF
        prow[:] = -1
        srcs = src_ids[src_ptr[i]:src_ptr[i + 1]].copy()
        pops += _sssp_into(indptr, indices, weights, rank, srcs, row, prow, heap, pos)
        dist[i, :] = row
        parent[i, :] = prow
    return dist, parent, pops


@njit(cache=True)
def multisource_dijkstra(indptr, indices, weights, src_ptr, src_ids):
    """Grow all shortest-path trees from one heap keyed ``(dist, vertex, source)``.

    Stops at the first vertex settled by every source.  Returns
    ``(winner, dist, parent, settled, pops)``; ``winner`` is -1 when no
    vertex is reachable from all sources.
    """
    n = indptr.shape[0] - 1
    k = src_ptr.shape[0] - 1
    dist = np.full((k, n), INF)
    parent = np.full((k, n), -1, dtype=np.int64)
    settled = np.zeros((k, n), dtype=np.bool_)
    count = np.zeros(n, dtype=np.int64)
    heap = [(0.0, np.int64(0), np.int64(0))]
    heap.pop()
    for i in range(k):
        for p in range(src_ptr[i], src_ptr[i + 1]):
            s = src_ids[p]
            if dist[i, s] != 0.0:
                dist[i, s] = 0.0
                heapq.heappush(heap, (0.0, np.int64(s), np.int64(i)))
    pops = 0
    while len(heap) > 0:
        d, u, i = heapq.heappop(heap)
        if settled[i, u]:
            continue
        settled[i, u] = True
        pops += 1
        count[u] += 1
        if count[u] == k:
            return u, dist, parent, settled, pops
        for p in range(indptr[u], indptr[u + 1]):
            v = indices[p]
            alt = d + weights[v]
            if alt < dist[i, v]:
                dist[i, v] = alt
                parent[i, v] = u
                heapq.heappush(heap, (alt, np.int64(v), i))
    return -1, dist, parent, settled, pops


@njit(cache=True)
def multisource_astar(indptr, indices, weights, src_ptr, src_ids, h):
    """Multisource A*: one queue entry per vertex, keyed by its best estimate.

    Each vertex carries ``min_est``/``min_src``, the smallest ``d(v,i)+h(v)``
    over sources that have not yet reached it.  Popping a vertex marks it
    reached for ``min_src`` only, then re-keys it on the next unreached
    source.  Stale heap entries are skipped lazily.  Returns
    ``(winner, dist, parent, reached, pops)``.
    """
    n = indptr.shape[0] - 1
    k = src_ptr.shape[0] - 1
    dist = np.full((k, n), INF)
    est = np.full((k, n), INF)
    parent = np.full((k, n), -1, dtype=np.int64)
    reached = np.zeros((k, n), dtype=np.bool_)
    count = np.zeros(n, dtype=np.int64)
    min_est = np.full(n, INF)
    min_src = np.full(n, -1, dtype=np.int64)
    heap = [(0.0, np.int64(0))]
    heap.pop()
    for i in range(k):
        for p in range(src_ptr[i], src_ptr[i + 1]):
            s = src_ids[p]
            dist[i, s] = 0.0
            est[i, s] = h[s]
            if est[i, s] < min_est[s]:
                min_est[s] = est[i, s]
                min_src[s] = i
    for v in range(n):
        if min_src[v] >= 0:
            heapq.heappush(heap, (min_est[v], np.int64(v)))
    pops = 0
    while len(heap) > 0:
        e, cv = heapq.heappop(heap)
        cs = min_src[cv]
        if cs < 0 or e != min_est[cv]:
            continue
        pops += 1
        reached[cs, cv] = True
        count[cv] += 1
        if count[cv] == k:
            return cv, dist, parent, reached, pops
        # re-key cv on its best unreached source
        best = INF
        nxt = -1
        for i in range(k):
            if not reached[i, cv] and est[i, cv] < best:
                best = est[i, cv]
                nxt = i
        min_est[cv] = best
        min_src[cv] = nxt
        if nxt >= 0:
            heapq.heappush(heap, (best, np.int64(cv)))
        dcv = dist[cs, cv]
        for p in range(indptr[cv], indptr[cv + 1]):
            v = indices[p]
            alt = dcv + weights[v]
            if alt < dist[cs, v] and not reached[cs, v]:
                dist[cs, v] = alt
                parent[cs, v] = cv
                est[cs, v] = alt + h[v]
                if est[cs, v] < min_est[v]:
                    min_est[v] = est[cs, v]
                    min_src[v] = cs
                    heapq.heappush(heap, (min_est[v], np.int64(v)))
    return -1, dist, parent, reached, pops
