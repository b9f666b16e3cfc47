# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled bounded-variable network simplex kernel.

Operation-for-operation transliteration of ``_pysimplex.simplex_kernel``:
identical scan orders, comparisons and tie-breaking, so pivot sequences
match the pure kernel exactly. The float path performs only additions,
subtractions and comparisons on doubles, in the same order as CPython,
so results are bit-identical to the pure kernel as well. The int64 path
is only called when the wrapper's magnitude bound rules out overflow.
"""

cimport cython

import numpy as np

OPTIMAL = 0
INFEASIBLE = 1
STALL = 2

cdef signed char _BASIC = 0, _LOWER = 1, _UPPER = 2, _FIXED = 3


ctypedef fused numeric:
    long long
    double


cdef int _rebuild_tree(int N, int A, int root,
                       int[::1] tail, int[::1] head, signed char[::1] state,
                       numeric[::1] ccur, numeric[::1] pot,
                       int[::1] parent, int[::1] parc, int[::1] depth,
                       int[::1] deg, int[::1] start, int[::1] slot,
                       int[::1] adj, int[::1] queue, unsigned char[::1] seen) except -1:
    # CSR adjacency over basic arcs; per-node arc lists stay in ascending
    # arc-id order because arcs are scanned ascending, tail before head.
    cdef int a, v, w, t, qi, qn, k, s
    for v in range(N):
        deg[v] = 0
        seen[v] = 0
    for a in range(A):
        if state[a] == _BASIC:
            deg[tail[a]] += 1
            deg[head[a]] += 1
    s = 0
    for v in range(N):
        start[v] = s
        slot[v] = s
        s += deg[v]
    for a in range(A):
        if state[a] == _BASIC:
            adj[slot[tail[a]]] = a
            slot[tail[a]] += 1
            adj[slot[head[a]]] = a
            slot[head[a]] += 1
    parent[root] = -1
    parc[root] = -1
    depth[root] = 0
    pot[root] = <numeric>0
    seen[root] = 1
    queue[0] = root
    qi = 0
    qn = 1
    while qi < qn:
        v = queue[qi]
        qi += 1
        for k in range(start[v], start[v] + deg[v]):
            a = adj[k]
            t = tail[a]
            w = head[a] if t == v else t
            if not seen[w]:
                seen[w] = 1
                parent[w] = v
                parc[w] = a
                depth[w] = depth[v] + 1
                # basic arcs have zero reduced cost: c - pot[tail] + pot[head] = 0
                if t == v:
                    pot[w] = pot[v] - ccur[a]
                else:
                    pot[w] = pot[v] + ccur[a]
                queue[qn] = w
                qn += 1
    if qn != N:
        raise AssertionError("basis does not span the network")
    return 0


cdef tuple _kernel(int m, int n,
                   numeric[::1] cost, numeric[::1] ucap, numeric[::1] flow,
                   numeric[::1] pot, numeric[::1] ccur,
                   numeric tolc, numeric tolf, bint is_float, bint phase1_only):
    cdef int mn = m * n
    cdef int A = mn + m + n
    cdef int N = m + n + 1
    cdef int root = m + n
    cdef int a, i, j, k

    tail_np = np.empty(A, dtype=np.intc)
    head_np = np.empty(A, dtype=np.intc)
    cdef int[::1] tail = tail_np
    cdef int[::1] head = head_np
    for a in range(mn):
        tail[a] = a // n
        head[a] = m + a % n
    for i in range(m):
        tail[mn + i] = i
        head[mn + i] = root
    for j in range(n):
        tail[mn + m + j] = root
        head[mn + m + j] = m + j

    state_np = np.empty(A, dtype=np.int8)
    cdef signed char[::1] state = state_np
    for a in range(mn):
        state[a] = _FIXED if ucap[a] == <numeric>0 else _LOWER
    for k in range(m + n):
        state[mn + k] = _BASIC

    parent_np = np.empty(N, dtype=np.intc)
    parc_np = np.empty(N, dtype=np.intc)
    depth_np = np.empty(N, dtype=np.intc)
    cdef int[::1] parent = parent_np
    cdef int[::1] parc = parc_np
    cdef int[::1] depth = depth_np

    deg_np = np.empty(N, dtype=np.intc)
    start_np = np.empty(N, dtype=np.intc)
    slot_np = np.empty(N, dtype=np.intc)
    adj_np = np.empty(2 * N, dtype=np.intc)  # N basic arcs, two endpoints each
    queue_np = np.empty(N, dtype=np.intc)
    seen_np = np.empty(N, dtype=np.uint8)
    cdef int[::1] deg = deg_np
    cdef int[::1] start = start_np
    cdef int[::1] slot = slot_np
    cdef int[::1] adj = adj_np
    cdef int[::1] queue = queue_np
    cdef unsigned char[::1] seen = seen_np

    cyc_a_np = np.empty(2 * N + 3, dtype=np.intc)
    cyc_s_np = np.empty(2 * N + 3, dtype=np.int8)
    cdef int[::1] cyc_a = cyc_a_np
    cdef signed char[::1] cyc_s = cyc_s_np

    # initial basis: all artificial arcs, a star around the root
    for i in range(m):
        parent[i] = root
        parc[i] = mn + i
        depth[i] = 1
    for j in range(n):
        parent[m + j] = root
        parc[m + j] = mn + m + j
        depth[m + j] = 1
    pot[root] = <numeric>0
    for i in range(m):
        pot[i] = <numeric>1   # arc X_i -> root: pot[X_i] = pot[root] + c = 1
    for j in range(n):
        pot[m + j] = <numeric>(-1)  # arc root -> Y_j: pot[Y_j] = pot[root] - c = -1

    cdef long long pivots = 0
    cdef long long degen_run = 0
    cdef bint bland = False
    cdef long long bland_at = m + n
    cdef long long stall_at = m + n + mn

    cdef int phase = 1
    cdef int enter, leave, st, te, he, u, w, nc, first, second
    cdef int leave_sgn
    cdef signed char s8
    cdef numeric best, r, v_, delta, res, art
    cdef bint degenerate, have_delta

    while True:
        # ---- pricing ----
        enter = -1
        best = <numeric>0
        for a in range(A):
            st = state[a]
            if st == _LOWER:
                r = ccur[a] - pot[tail[a]] + pot[head[a]]
                if r < -tolc:
                    if bland:
                        enter = a
                        break
                    v_ = -r
                    if v_ > best:
                        best = v_
                        enter = a
            elif st == _UPPER:
                r = ccur[a] - pot[tail[a]] + pot[head[a]]
                if r > tolc:
                    if bland:
                        enter = a
                        break
                    if r > best:
                        best = r
                        enter = a

        if enter < 0:
            if phase == 2:
                return (OPTIMAL, pivots)
            art = <numeric>0
            for a in range(mn, A):
                art = art + flow[a]
            if art > tolf:
                return (INFEASIBLE, pivots)
            if phase1_only:
                return (OPTIMAL, pivots)
            # transition: pin artificial arcs to [0, 0], switch costs
            for a in range(mn, A):
                flow[a] = <numeric>0  # zero any sub-tolerance residue
                ucap[a] = <numeric>0
                if state[a] != _BASIC:
                    state[a] = _FIXED
            for a in range(mn):
                ccur[a] = cost[a]
            for a in range(mn, A):
                ccur[a] = <numeric>0
            phase = 2
            degen_run = 0
            bland = False
            _rebuild_tree(N, A, root, tail, head, state, ccur, pot,
                          parent, parc, depth, deg, start, slot, adj, queue, seen)
            continue

        # ---- cycle around the entering arc ----
        st = state[enter]
        te = tail[enter]
        he = head[enter]
        nc = 0
        cyc_a[nc] = enter
        cyc_s[nc] = 1 if st == _LOWER else -1
        nc += 1
        if st == _LOWER:
            first = te    # flow leaves this node through `enter`
            second = he
        else:
            first = he
            second = te
        u = first
        w = second
        while depth[u] > depth[w]:
            a = parc[u]
            cyc_a[nc] = a
            cyc_s[nc] = 1 if tail[a] == parent[u] else -1  # flow runs parent -> u
            nc += 1
            u = parent[u]
        while depth[w] > depth[u]:
            a = parc[w]
            cyc_a[nc] = a
            cyc_s[nc] = 1 if tail[a] == w else -1          # flow runs w -> parent
            nc += 1
            w = parent[w]
        while u != w:
            a = parc[u]
            cyc_a[nc] = a
            cyc_s[nc] = 1 if tail[a] == parent[u] else -1
            nc += 1
            u = parent[u]
            a = parc[w]
            cyc_a[nc] = a
            cyc_s[nc] = 1 if tail[a] == w else -1
            nc += 1
            w = parent[w]

        # ---- ratio test: lowest arc id among the blocking arcs ----
        have_delta = False
        delta = <numeric>0
        leave = -1
        leave_sgn = 0
        for k in range(nc):
            a = cyc_a[k]
            s8 = cyc_s[k]
            if s8 > 0:
                res = ucap[a] - flow[a]
            else:
                res = flow[a]
            if (not have_delta) or res < delta or (res == delta and a < leave):
                have_delta = True
                delta = res
                leave = a
                leave_sgn = s8

        degenerate = delta <= tolf
        if delta != <numeric>0:
            for k in range(nc):
                a = cyc_a[k]
                if cyc_s[k] > 0:
                    flow[a] = flow[a] + delta
                else:
                    flow[a] = flow[a] - delta
        pivots += 1

        if leave == enter:
            if st == _LOWER:
                state[enter] = _UPPER
                flow[enter] = ucap[enter]
            else:
                state[enter] = _LOWER
                flow[enter] = <numeric>0
        else:
            if leave_sgn > 0:
                flow[leave] = ucap[leave]  # snap to the bound it hit
                state[leave] = _UPPER
            else:
                flow[leave] = <numeric>0
                state[leave] = _LOWER
            if phase == 2 and leave >= mn:
                state[leave] = _FIXED
            state[enter] = _BASIC
            _rebuild_tree(N, A, root, tail, head, state, ccur, pot,
                          parent, parc, depth, deg, start, slot, adj, queue, seen)

        if degenerate:
            degen_run += 1
            if not bland and degen_run >= bland_at:
                bland = True
            if is_float and bland and degen_run >= stall_at:
                return (STALL, pivots)
        else:
            degen_run = 0
            bland = False


def simplex_kernel_int64(int m, int n, cost, cap, sup, bint phase1_only=False):
    """Exact path; caller guarantees int64 magnitudes cannot overflow."""
    cdef int mn = m * n
    cdef int A = mn + m + n
    cdef int N1 = m + n + 1
    cost_arr = np.ascontiguousarray(cost, dtype=np.int64)
    ucap_arr = np.empty(A, dtype=np.int64)
    ucap_arr[:mn] = np.ascontiguousarray(cap, dtype=np.int64)
    sup_arr = np.ascontiguousarray(sup, dtype=np.int64)
    ucap_arr[mn:] = sup_arr
    flow_arr = np.zeros(A, dtype=np.int64)
    flow_arr[mn:] = sup_arr
    pot_arr = np.zeros(N1, dtype=np.int64)
    ccur_arr = np.zeros(A, dtype=np.int64)
    ccur_arr[mn:] = 1
    status, pivots = _kernel[cython.longlong](
        m, n, cost_arr, ucap_arr, flow_arr, pot_arr, ccur_arr,
        0, 0, False, phase1_only)
    return status, pivots, flow_arr, pot_arr


def simplex_kernel_float64(int m, int n, cost, cap, sup,
                           double tolc, double tolf, bint phase1_only=False):
    cdef int mn = m * n
    cdef int A = mn + m + n
    cdef int N1 = m + n + 1
    cost_arr = np.ascontiguousarray(cost, dtype=np.float64)
    ucap_arr = np.empty(A, dtype=np.float64)
    ucap_arr[:mn] = np.ascontiguousarray(cap, dtype=np.float64)
    sup_arr = np.ascontiguousarray(sup, dtype=np.float64)
    ucap_arr[mn:] = sup_arr
    flow_arr = np.zeros(A, dtype=np.float64)
    flow_arr[mn:] = sup_arr
    pot_arr = np.zeros(N1, dtype=np.float64)
    ccur_arr = np.zeros(A, dtype=np.float64)
    ccur_arr[mn:] = 1.0
    status, pivots = _kernel[cython.double](
        m, n, cost_arr, ucap_arr, flow_arr, pot_arr, ccur_arr,
        tolc, tolf, True, phase1_only)
    return status, pivots, flow_arr, pot_arr
