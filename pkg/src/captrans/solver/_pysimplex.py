"""Pure-Python bounded-variable network simplex kernel.

Reference implementation of the pivot loop; the compiled kernel in
``_kernel.pyx`` mirrors it operation for operation, so both backends
produce bit-identical pivot sequences. This version runs on plain Python
numbers, which makes it double as the arbitrary-precision path for exact
instances whose scaled integers might overflow 64 bits.

Graph layout (m sources X_i, n sinks Y_j, one root):

    node ids:  X_i = i,  Y_j = m + j,  root = m + n
    arc ids:   real (i, j)      -> a = i*n + j          tail X_i, head Y_j
               artificial X_i   -> a = m*n + i          tail X_i, head root
               artificial Y_j   -> a = m*n + m + j      tail root, head Y_j

Two phases: phase 1 prices artificial arcs at 1 and real arcs at 0 and
drives the artificial flow to its minimum (> 0 means infeasible); phase 2
pins artificial arcs to capacity 0, switches to the real costs, and
re-optimizes. The final phase-2 potentials certify the real LP.

Pivot rule: most-violating arc (Dantzig) with lowest-arc-id ties; after
m+n consecutive degenerate pivots, Bland's rule (lowest eligible arc id)
until the next nondegenerate pivot. Leaving arc: minimum ratio, lowest
arc id on ties. Float mode declares a stall after m*n further consecutive
degenerate pivots while in the Bland regime.

Statuses: 0 optimal, 1 infeasible, 2 stall (float only).
"""

OPTIMAL = 0
INFEASIBLE = 1
STALL = 2

_BASIC, _LOWER, _UPPER, _FIXED = 0, 1, 2, 3


def simplex_kernel(m, n, cost, cap, sup, tolc, tolf, is_float, phase1_only=False):
    """Run the two-phase loop.

    cost: real-arc costs, length m*n, row-major.
    cap:  real-arc capacities, length m*n.
    sup:  supplies f then demands g, length m+n (must balance exactly).
    tolc/tolf: pricing and flow tolerances (0 in exact mode).

    Returns (status, pivots, flow, pot): flow over all arcs (real ones
    first), node potentials for the phase the loop ended in.
    """
    mn = m * n
    A = mn + m + n
    N = m + n + 1
    root = m + n

    tail = [0] * A
    head = [0] * A
    for a in range(mn):
        tail[a] = a // n
        head[a] = m + a % n
    for i in range(m):
        tail[mn + i] = i
        head[mn + i] = root
    for j in range(n):
        tail[mn + m + j] = root
        head[mn + m + j] = m + j

    ucap = list(cap) + [sup[i] for i in range(m)] + [sup[m + j] for j in range(n)]
    flow = [0 * v for v in ucap]  # zeros of the value type
    state = [_LOWER] * A
    for a in range(mn):
        if ucap[a] == 0:
            state[a] = _FIXED  # can never carry flow
    for k in range(m + n):
        a = mn + k
        state[a] = _BASIC
        flow[a] = sup[k]

    parent = [-1] * N
    parc = [-1] * N
    depth = [0] * N
    pot = [0 * tolc] * N if is_float else [0] * N

    phase = 1
    zero_c = 0.0 if is_float else 0
    one_c = 1.0 if is_float else 1
    ccur = [zero_c] * A
    for a in range(mn, A):
        ccur[a] = one_c

    def rebuild_tree():
        # Recompute parents, depths and potentials from the basic arc set.
        adj = [[] for _ in range(N)]
        for a in range(A):
            if state[a] == _BASIC:
                adj[tail[a]].append(a)
                adj[head[a]].append(a)
        parent[root] = -1
        parc[root] = -1
        depth[root] = 0
        pot[root] = zero_c
        seen = [False] * N
        seen[root] = True
        queue = [root]
        qi = 0
        while qi < len(queue):
            v = queue[qi]
            qi += 1
            for a in adj[v]:
                t = tail[a]
                w = head[a] if t == v else t
                if not seen[w]:
                    seen[w] = True
                    parent[w] = v
                    parc[w] = a
                    depth[w] = depth[v] + 1
                    # basic arcs have zero reduced cost: c - pot[tail] + pot[head] = 0
                    pot[w] = pot[v] - ccur[a] if t == v else pot[v] + ccur[a]
                    queue.append(w)
        if qi != N:
            raise AssertionError("basis does not span the network")

    # initial basis: all artificial arcs, a star around the root
    for i in range(m):
        parent[i] = root
        parc[i] = mn + i
        depth[i] = 1
    for j in range(n):
        parent[m + j] = root
        parc[m + j] = mn + m + j
        depth[m + j] = 1
    pot[root] = zero_c
    for i in range(m):
        pot[i] = one_c   # arc X_i -> root: pot[X_i] = pot[root] + c = 1
    for j in range(n):
        pot[m + j] = -one_c  # arc root -> Y_j: pot[Y_j] = pot[root] - c = -1

    pivots = 0
    degen_run = 0
    bland = False
    bland_at = m + n
    stall_at = m + n + mn

    while True:
        # ---- pricing ----
        enter = -1
        best = zero_c
        for a in range(A):
            st = state[a]
            if st == _LOWER:
                r = ccur[a] - pot[tail[a]] + pot[head[a]]
                if r < -tolc:
                    if bland:
                        enter = a
                        break
                    v = -r
                    if v > best:
                        best = v
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
                return OPTIMAL, pivots, flow, pot
            art = sum(flow[a] for a in range(mn, A))
            if art > tolf:
                return INFEASIBLE, pivots, flow, pot
            if phase1_only:
                return OPTIMAL, pivots, flow, pot
            # transition: pin artificial arcs to [0, 0], switch costs
            for a in range(mn, A):
                flow[a] = 0 * flow[a]  # zero any sub-tolerance residue
                ucap[a] = 0 * ucap[a]
                if state[a] != _BASIC:
                    state[a] = _FIXED
            for a in range(mn):
                ccur[a] = cost[a]
            for a in range(mn, A):
                ccur[a] = zero_c
            phase = 2
            degen_run = 0
            bland = False
            rebuild_tree()
            continue

        # ---- cycle around the entering arc ----
        st = state[enter]
        te, he = tail[enter], head[enter]
        sgn_enter = 1 if st == _LOWER else -1
        first = te if st == _LOWER else he    # flow leaves this node through `enter`
        second = he if st == _LOWER else te
        cyc_a = [enter]
        cyc_s = [sgn_enter]
        u, w = first, second
        while depth[u] > depth[w]:
            a = parc[u]
            cyc_a.append(a)
            cyc_s.append(1 if tail[a] == parent[u] else -1)  # flow runs parent -> u
            u = parent[u]
        while depth[w] > depth[u]:
            a = parc[w]
            cyc_a.append(a)
            cyc_s.append(1 if tail[a] == w else -1)          # flow runs w -> parent
            w = parent[w]
        while u != w:
            a = parc[u]
            cyc_a.append(a)
            cyc_s.append(1 if tail[a] == parent[u] else -1)
            u = parent[u]
            a = parc[w]
            cyc_a.append(a)
            cyc_s.append(1 if tail[a] == w else -1)
            w = parent[w]

        # ---- ratio test: lowest arc id among the blocking arcs ----
        delta = None
        leave = -1
        leave_sgn = 0
        for a, s in zip(cyc_a, cyc_s):
            res = ucap[a] - flow[a] if s > 0 else flow[a]
            if delta is None or res < delta or (res == delta and a < leave):
                delta = res
                leave = a
                leave_sgn = s

        degenerate = delta <= tolf
        if delta != 0:
            for a, s in zip(cyc_a, cyc_s):
                flow[a] = flow[a] + delta if s > 0 else flow[a] - delta
        pivots += 1

        if leave == enter:
            state[enter] = _UPPER if st == _LOWER else _LOWER
            flow[enter] = ucap[enter] if st == _LOWER else 0 * flow[enter]
        else:
            if leave_sgn > 0:
                flow[leave] = ucap[leave]  # snap to the bound it hit
                state[leave] = _UPPER
            else:
                flow[leave] = 0 * flow[leave]
                state[leave] = _LOWER
            if phase == 2 and leave >= mn:
                state[leave] = _FIXED
            state[enter] = _BASIC
            rebuild_tree()

        if degenerate:
            degen_run += 1
            if not bland and degen_run >= bland_at:
                bland = True
            if is_float and bland and degen_run >= stall_at:
                return STALL, pivots, flow, pot
        else:
            degen_run = 0
            bland = False
