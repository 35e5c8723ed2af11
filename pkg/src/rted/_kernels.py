"""Compiled inner loops.

Conventions shared by every kernel:

* trees are :data:`TreeArrays` tuples, node ids are 0-based postorder ids;
* strategy codes are ``2 * kind + side`` with kind 0/1/2 = heavy/left/right
  and side 0/1 = path in the left-hand/right-hand tree, so that increasing
  code order is the candidate order heavy-F, heavy-G, left-F, left-G,
  right-F, right-G;
* a single-path function is always called as "path in tree ``A``, all
  subtrees of tree ``B``"; for the transposed call the caller passes the
  trees swapped, ``D.T``, ``R.T`` and insertion/deletion costs exchanged.
"""

from __future__ import annotations

from collections import namedtuple

import numpy as np
from numba import njit

TreeArrays = namedtuple(
    "TreeArrays",
    [
        "size", "parent", "depth", "first_child", "last_child", "heavy_child",
        "child_ptr", "child_idx", "pre", "preorder", "ident", "mirror_rank",
        "mirror_order", "keyroot_left", "keyroot_right", "full_count",
        "left_count", "right_count",
    ],
)

_OPTS = dict(cache=True, nogil=True)


def tree_arrays(ix) -> TreeArrays:
    return TreeArrays(
        ix.size, ix.parent, ix.depth, ix.first_child, ix.last_child, ix.heavy_child,
        ix.child_ptr, ix.child_idx, ix.pre, ix.preorder, np.arange(ix.n, dtype=np.int64),
        ix.mirror_rank, ix.mirror_order, ix.keyroot_left, ix.keyroot_right,
        ix.full_count, ix.left_count, ix.right_count,
    )


@njit(**_OPTS)
def _next_on_path(T, v, kind):
    if kind == 1:
        return T.first_child[v]
    if kind == 2:
        return T.last_child[v]
    return T.heavy_child[v]


@njit(**_OPTS)
def _grow(stack, need):
    if need <= stack.shape[0]:
        return stack
    bigger = np.empty((max(need, 2 * stack.shape[0]), stack.shape[1]), np.int64)
    bigger[: stack.shape[0]] = stack
    return bigger


# --------------------------------------------------------------------------
# strategies


@njit(**_OPTS)
def opt_strategy_kernel(F, G):
    """Optimal LRH strategy; returns (codes, cost, candidates of the root pair).

    The per-node cost-sum rows of the left-hand tree are kept per depth: a
    row is filled by the children of a node and consumed by the node itself,
    so only the rows of the current ancestors are alive at any time. Left,
    right and heavy sums are interleaved so that the inner loop streams
    through few arrays.
    """
    nf = F.size.shape[0]
    ng = G.size.shape[0]
    # per node of G: size, full, left, right, parent, and a bit mask telling
    # whether it is the first (1), last (2) or heavy (4) child of its parent
    gd = np.empty((ng, 6), np.int64)
    for w in range(ng):
        p = G.parent[w]
        gd[w, 0] = G.size[w]
        gd[w, 1] = G.full_count[w]
        gd[w, 2] = G.left_count[w]
        gd[w, 3] = G.right_count[w]
        gd[w, 4] = p
        m = 0
        if p >= 0:
            if G.first_child[p] == w:
                m |= 1
            if G.last_child[p] == w:
                m |= 2
            if G.heavy_child[p] == w:
                m |= 4
        gd[w, 5] = m
    strat = np.empty((nf, ng), np.int8)
    rows = F.depth.max() + 1
    sv_rows = np.zeros((rows, ng, 3), np.int64)  # [.., 0] left, 1 right, 2 heavy
    sw = np.zeros((ng, 3), np.int64)
    cand = np.zeros(6, np.int64)
    cmin = 0
    for v in range(nf):
        dv = F.depth[v]
        pv = F.parent[v]
        sv = F.size[v]
        fv_full = F.full_count[v]
        fv_left = F.left_count[v]
        fv_right = F.right_count[v]
        sw[:] = 0
        up = dv - 1
        has_parent = pv >= 0
        is_first = has_parent and v == F.first_child[pv]
        is_last = has_parent and v == F.last_child[pv]
        is_heavy = has_parent and v == F.heavy_child[pv]
        for w in range(ng):
            szw = gd[w, 0]
            hv = sv_rows[dv, w, 2]
            lv = sv_rows[dv, w, 0]
            rv = sv_rows[dv, w, 1]
            lw = sw[w, 0]
            rw = sw[w, 1]
            hw = sw[w, 2]
            # first minimum in the order heavy-F, heavy-G, left-F, left-G, right-F, right-G
            cmin = sv * gd[w, 1] + hv
            best = 0
            c = szw * fv_full + hw
            if c < cmin:
                cmin = c
                best = 1
            c = sv * gd[w, 2] + lv
            if c < cmin:
                cmin = c
                best = 2
            c = szw * fv_left + lw
            if c < cmin:
                cmin = c
                best = 3
            c = sv * gd[w, 3] + rv
            if c < cmin:
                cmin = c
                best = 4
            c = szw * fv_right + rw
            if c < cmin:
                cmin = c
                best = 5
            strat[v, w] = best
            if has_parent:
                sv_rows[up, w, 0] += lv if is_first else cmin
                sv_rows[up, w, 1] += rv if is_last else cmin
                sv_rows[up, w, 2] += hv if is_heavy else cmin
            pw = gd[w, 4]
            if pw >= 0:
                m = gd[w, 5]
                sw[pw, 0] += lw if m & 1 else cmin
                sw[pw, 1] += rw if m & 2 else cmin
                sw[pw, 2] += hw if m & 4 else cmin
            if v == nf - 1 and w == ng - 1:
                cand[0] = sv * gd[w, 1] + hv
                cand[1] = szw * fv_full + hw
                cand[2] = sv * gd[w, 2] + lv
                cand[3] = szw * fv_left + lw
                cand[4] = sv * gd[w, 3] + rv
                cand[5] = szw * fv_right + rw
        sv_rows[dv] = 0
    return strat, cmin, cand


@njit(**_OPTS)
def _single_path_cost(F, G, v, w, code):
    kind = code >> 1
    if code & 1 == 0:
        if kind == 0:
            return F.size[v] * G.full_count[w]
        if kind == 1:
            return F.size[v] * G.left_count[w]
        return F.size[v] * G.right_count[w]
    if kind == 0:
        return G.size[w] * F.full_count[v]
    if kind == 1:
        return G.size[w] * F.left_count[v]
    return G.size[w] * F.right_count[v]


@njit(**_OPTS)
def strategy_cost_kernel(F, G, strat):
    """Relevant subproblems of running ``strat``, memoized per subtree pair."""
    nf = F.size.shape[0]
    ng = G.size.shape[0]
    memo = np.full((nf, ng), -1, np.int64)
    stack = np.empty((64, 3), np.int64)
    stack[0, 0] = nf - 1
    stack[0, 1] = ng - 1
    stack[0, 2] = 0
    sp = 1
    while sp > 0:
        sp -= 1
        v = stack[sp, 0]
        w = stack[sp, 1]
        state = stack[sp, 2]
        if memo[v, w] >= 0:
            continue
        code = strat[v, w]
        kind = code >> 1
        side = code & 1
        T = F if side == 0 else G
        x = v if side == 0 else w
        if state == 0:
            stack = _grow(stack, sp + 1)
            stack[sp, 0] = v
            stack[sp, 1] = w
            stack[sp, 2] = 1
            sp += 1
        total = _single_path_cost(F, G, v, w, code)
        p = x
        while p >= 0:
            nxt = _next_on_path(T, p, kind)
            for ci in range(T.child_ptr[p], T.child_ptr[p + 1]):
                ch = T.child_idx[ci]
                if ch == nxt:
                    continue
                a = ch if side == 0 else v
                b = w if side == 0 else ch
                if state == 0:
                    if memo[a, b] < 0:
                        stack = _grow(stack, sp + 1)
                        stack[sp, 0] = a
                        stack[sp, 1] = b
                        stack[sp, 2] = 0
                        sp += 1
                else:
                    total += memo[a, b]
            p = nxt
        if state == 1:
            memo[v, w] = total
    return memo[nf - 1, ng - 1]


# --------------------------------------------------------------------------
# single-path functions


@njit(**_OPTS)
def side_need(A, v, B, w):
    return (A.size[v] + 1) * (B.size[w] + 1)


# No allocation happens below, so these kernels run without reference
# counting; that keeps the many tiny calls GTED makes cheap.
@njit(_nrt=False, **_OPTS)
def spf_side(A, v, B, w, right, D, dA, iB, R, labA, labB, check, fws):
    """Left-path (or, with ``right``, right-path) single-path function.

    Keyroot forest-distance tables: the only keyroot of the left-hand
    subtree is ``v`` itself; the keyroots of the right-hand subtree are its
    root and every node that is not a leftmost child. Runs in mirrored
    postorder for right paths. Returns the number of forest pairs computed.
    ``fws`` is scratch space of at least :func:`side_need` floats.
    """
    if right:
        ordA = A.mirror_order
        rankA = A.mirror_rank
        ordB = B.mirror_order
        rankB = B.mirror_rank
        krB = B.keyroot_right
    else:
        ordA = A.ident
        rankA = A.ident
        ordB = B.ident
        rankB = B.ident
        krB = B.keyroot_left
    nf = A.size[v]
    f0 = rankA[v] - nf + 1
    wi = rankB[w]
    g0 = wi - B.size[w] + 1
    fd = fws[: (nf + 1) * (B.size[w] + 1)].reshape((nf + 1, B.size[w] + 1))
    count = 0
    for kp in range(g0, wi + 1):
        k = ordB[kp]
        if kp != wi and not krB[k]:
            continue
        nk = B.size[k]
        k0 = kp - nk + 1
        fd[0, 0] = 0.0
        for a in range(1, nf + 1):
            fd[a, 0] = fd[a - 1, 0] + dA[ordA[f0 + a - 1]]
        for b in range(1, nk + 1):
            fd[0, b] = fd[0, b - 1] + iB[ordB[k0 + b - 1]]
        for a in range(1, nf + 1):
            ip = f0 + a - 1
            i = ordA[ip]
            ilo = ip - A.size[i] + 1
            di = dA[i]
            li = labA[i]
            for b in range(1, nk + 1):
                jp = k0 + b - 1
                j = ordB[jp]
                jlo = jp - B.size[j] + 1
                x1 = fd[a - 1, b] + di
                x2 = fd[a, b - 1] + iB[j]
                if ilo == f0 and jlo == k0:
                    x3 = fd[a - 1, b - 1] + R[li, labB[j]]
                    m = min(x1, x2, x3)
                    D[i, j] = m
                else:
                    dij = D[i, j]
                    if check and dij != dij:
                        raise ValueError("single-path precondition violated: missing subtree distance")
                    m = min(x1, x2, fd[ilo - f0, jlo - k0] + dij)
                fd[a, b] = m
        count += nf * nk
    return count


@njit(_nrt=False, **_OPTS)
def _family_lists(B, w, iws):
    """Subforests of the full decomposition of ``B_w``, grouped two ways.

    A subforest is identified by its leftmost root ``l`` and rightmost root
    ``r``; ``r`` is ``l`` or a node to the right of ``l``. Right families fix
    ``l`` (in decreasing preorder) and list ``l`` followed by the nodes to
    its right in postorder. Left families fix ``r`` (in increasing postorder)
    and list ``r`` followed by the nodes to its left in decreasing preorder.
    The lists are written into ``iws`` in the layout unpacked by
    :func:`spf_inner`.
    """
    ng = B.size[w]
    g0 = w - ng + 1
    full = B.full_count[w]
    rf_node = iws[:ng]
    rf_ptr = iws[ng: 2 * ng + 1]
    lf_ptr = iws[2 * ng + 1: 3 * ng + 2]
    rf_lst = iws[3 * ng + 2: 3 * ng + 2 + full]
    lf_lst = iws[3 * ng + 2 + full: 3 * ng + 2 + 2 * full]
    pw = B.pre[w]
    off = 0
    idx = 0
    for p in range(pw + ng - 1, pw - 1, -1):
        l = B.preorder[p]
        rf_node[idx] = l
        rf_ptr[idx] = off
        rf_lst[off] = l
        off += 1
        lo = l + 1
        a = l
        while a != w:
            a = B.parent[a]
            for u in range(lo, a):
                rf_lst[off] = u
                off += 1
            lo = a + 1
        idx += 1
    rf_ptr[ng] = off
    off = 0
    for r in range(g0, w + 1):
        lf_ptr[r - g0] = off
        lf_lst[off] = r
        off += 1
        hi = B.pre[r] - 1
        a = r
        while a != w:
            a = B.parent[a]
            for p in range(hi, B.pre[a], -1):
                lf_lst[off] = B.preorder[p]
                off += 1
            hi = B.pre[a] - 1
    lf_ptr[ng] = off


@njit(**_OPTS)
def inner_need(A, v, B, w):
    nfv = A.size[v]
    ng = B.size[w]
    return ng * ng + (nfv + 1) * (ng + 1) + ng * (nfv + 1) + 2 * ng + 1, 3 * ng + 2 + 2 * B.full_count[w]


@njit(_nrt=False, **_OPTS)
def spf_inner(A, v, path, B, w, D, dA, iB, PdA, PiB, R, labA, labB, check, fws, iws):
    """Single-path function for an arbitrary root-leaf ``path`` of ``A_v``.

    Walks the path bottom-up. For path node ``x`` with path child ``c`` the
    relevant subforests between ``A_c`` and ``A_x`` are built by adding the
    nodes right of the path in postorder, then the nodes left of it in
    reverse preorder, then ``x``; each of them is paired with every
    subforest of the full decomposition of ``B_w``. ``buf[l, r]`` holds the
    distances of the newest left-hand subforest to the subforest with
    leftmost root ``l`` and rightmost root ``r`` (offset by the first id of
    ``B_w``). ``PdA``/``PiB`` are prefix sums of ``dA``/``iB`` in postorder.
    ``fws``/``iws`` are scratch space sized by :func:`inner_need`.
    """
    ng = B.size[w]
    g0 = w - ng + 1
    nfv = A.size[v]
    _family_lists(B, w, iws)
    full = B.full_count[w]
    rf_node = iws[:ng]
    rf_ptr = iws[ng: 2 * ng + 1]
    lf_ptr = iws[2 * ng + 1: 3 * ng + 2]
    rf_lst = iws[3 * ng + 2: 3 * ng + 2 + full]
    lf_lst = iws[3 * ng + 2 + full: 3 * ng + 2 + 2 * full]
    o1 = ng * ng
    o2 = o1 + (nfv + 1) * (ng + 1)
    o3 = o2 + ng * (nfv + 1)
    buf = fws[:o1].reshape((ng, ng))
    tab = fws[o1:o2].reshape((nfv + 1, ng + 1))
    saved = fws[o2:o3].reshape((ng, nfv + 1))
    tree_prev = fws[o3: o3 + ng]
    ins_run = fws[o3 + ng: o3 + 2 * ng + 1]
    count = 0
    plen = path.shape[0]
    for pi in range(plen - 1, -1, -1):
        x = path[pi]
        first = pi == plen - 1
        if first:
            c = -1
            nright = 0
            nleft = 0
            del_c = 0.0
        else:
            c = path[pi + 1]
            nright = x - 1 - c
            nleft = (c - A.size[c] + 1) - (x - A.size[x] + 1)
            del_c = PdA[c + 1] - PdA[c - A.size[c] + 1]

        # nodes right of the path, added in postorder
        if nright > 0:
            for fi in range(ng):
                l = rf_node[fi]
                s0 = rf_ptr[fi]
                m = rf_ptr[fi + 1] - s0
                li = l - g0
                tab[0, 0] = del_c
                for j in range(1, m + 1):
                    tab[0, j] = buf[li, rf_lst[s0 + j - 1] - g0]
                lleaf = B.size[l] == 1
                for k in range(1, nright + 1):
                    rk = c + k
                    drk = dA[rk]
                    szr = A.size[rk]
                    tab[k, 0] = tab[k - 1, 0] + drk
                    for j in range(1, m + 1):
                        r = rf_lst[s0 + j - 1]
                        x1 = tab[k - 1, j] + drk
                        if j >= 2:
                            x2 = tab[k, j - 1] + iB[r]
                        elif lleaf:
                            x2 = tab[k, 0] + iB[r]
                        else:
                            x2 = saved[li, k] + iB[r]
                        back = 0 if j == 1 else j - B.size[r]
                        d = D[rk, r]
                        if check and d != d:
                            raise ValueError("single-path precondition violated: missing subtree distance")
                        x3 = d + tab[k - szr, back]
                        tab[k, j] = min(x1, x2, x3)
                count += nright * m
                for j in range(1, m + 1):
                    buf[li, rf_lst[s0 + j - 1] - g0] = tab[nright, j]
                if l != w:
                    p = B.parent[l]
                    if B.first_child[p] == l:
                        q = 1 + B.last_child[p] - l
                        for k in range(nright + 1):
                            saved[p - g0, k] = tab[k, q]

        # nodes left of the path, added in reverse preorder
        if nleft > 0:
            del_base = PdA[x] - PdA[c - A.size[c] + 1]
            prex = A.pre[x]
            for fi in range(ng):
                r = g0 + fi
                s0 = lf_ptr[fi]
                m = lf_ptr[fi + 1] - s0
                tab[0, 0] = del_base
                for j in range(1, m + 1):
                    tab[0, j] = buf[lf_lst[s0 + j - 1] - g0, fi]
                rleaf = B.size[r] == 1
                for mm in range(1, nleft + 1):
                    lm = A.preorder[prex + nleft - mm + 1]
                    dlm = dA[lm]
                    szl = A.size[lm]
                    tab[mm, 0] = tab[mm - 1, 0] + dlm
                    for j in range(1, m + 1):
                        l = lf_lst[s0 + j - 1]
                        x1 = tab[mm - 1, j] + dlm
                        if j >= 2:
                            x2 = tab[mm, j - 1] + iB[l]
                        elif rleaf:
                            x2 = tab[mm, 0] + iB[l]
                        else:
                            x2 = saved[fi, mm] + iB[l]
                        back = 0 if j == 1 else j - B.size[l]
                        d = D[lm, l]
                        if check and d != d:
                            raise ValueError("single-path precondition violated: missing subtree distance")
                        x3 = d + tab[mm - szl, back]
                        tab[mm, j] = min(x1, x2, x3)
                count += nleft * m
                for j in range(1, m + 1):
                    buf[lf_lst[s0 + j - 1] - g0, fi] = tab[nleft, j]
                if r != w:
                    p = B.parent[r]
                    if B.last_child[p] == r:
                        q = 1 + B.pre[r] - B.pre[B.first_child[p]]
                        for mm in range(nleft + 1):
                            saved[p - g0, mm] = tab[mm, q]

        # the subtree A_x itself
        dx = dA[x]
        del_x = PdA[x + 1] - PdA[x - A.size[x] + 1]
        lx = labA[x]
        for u in range(g0, w + 1):
            if B.size[u] > 1:
                if first:
                    tree_prev[u - g0] = PiB[u] - PiB[u - B.size[u] + 1]
                else:
                    tree_prev[u - g0] = buf[B.first_child[u] - g0, B.last_child[u] - g0]
        for fi in range(ng):
            l = rf_node[fi]
            s0 = rf_ptr[fi]
            m = rf_ptr[fi + 1] - s0
            li = l - g0
            for j in range(1, m + 1):
                r = rf_lst[s0 + j - 1]
                if j == 1:
                    ins_run[1] = PiB[l + 1] - PiB[l - B.size[l] + 1]
                else:
                    ins_run[j] = ins_run[j - 1] + iB[r]
                prev = ins_run[j] if first else buf[li, r - g0]
                x1 = prev + dx
                if j == 1:
                    if B.size[l] == 1:
                        x2 = del_x + iB[l]
                        x3 = del_x - dx + R[lx, labB[l]]
                    else:
                        x2 = buf[B.first_child[l] - g0, B.last_child[l] - g0] + iB[l]
                        x3 = tree_prev[li] + R[lx, labB[l]]
                    val = min(x1, x2, x3)
                    D[x, l] = val
                else:
                    x2 = buf[li, rf_lst[s0 + j - 2] - g0] + iB[r]
                    x3 = D[x, r] + ins_run[j - B.size[r]]
                    val = min(x1, x2, x3)
                buf[li, r - g0] = val
            count += m
    return count


# --------------------------------------------------------------------------
# GTED driver


@njit(**_OPTS)
def _prefix(costs):
    out = np.zeros(costs.shape[0] + 1)
    for i in range(costs.shape[0]):
        out[i + 1] = out[i] + costs[i]
    return out


@njit(**_OPTS)
def _grow_flat(ws, need):
    if need <= ws.shape[0]:
        return ws
    return np.empty(max(need, 2 * ws.shape[0]), ws.dtype)


@njit(**_OPTS)
def gted_kernel(F, G, strat, D, dF, iF, dG, iG, R, labF, labG, check):
    """Fill ``D`` with the distances of all subtree pairs under ``strat``.

    Returns the subproblem counts of the heavy, left and right single-path
    calls. Transposed calls reuse the same code on ``D.T``. Scratch space is
    shared by all single-path calls and grown on demand.
    """
    nf = F.size.shape[0]
    ng = G.size.shape[0]
    PdF = _prefix(dF)
    PiG = _prefix(iG)
    PiF = _prefix(iF)
    PdG = _prefix(dG)
    RT = R.T
    DT = D.T
    path = np.empty(max(nf, ng), np.int64)
    fws = np.empty(64)
    iws = np.empty(64, np.int64)
    counts = np.zeros(3, np.int64)
    stack = np.empty((64, 3), np.int64)
    stack[0, 0] = nf - 1
    stack[0, 1] = ng - 1
    stack[0, 2] = 0
    sp = 1
    while sp > 0:
        sp -= 1
        v = stack[sp, 0]
        w = stack[sp, 1]
        state = stack[sp, 2]
        code = strat[v, w]
        kind = code >> 1
        side = code & 1
        T = F if side == 0 else G
        if state == 0:
            stack = _grow(stack, sp + 1)
            stack[sp, 0] = v
            stack[sp, 1] = w
            stack[sp, 2] = 1
            sp += 1
            p = v if side == 0 else w
            while p >= 0:
                nxt = _next_on_path(T, p, kind)
                for ci in range(T.child_ptr[p], T.child_ptr[p + 1]):
                    ch = T.child_idx[ci]
                    if ch == nxt:
                        continue
                    stack = _grow(stack, sp + 1)
                    stack[sp, 0] = ch if side == 0 else v
                    stack[sp, 1] = w if side == 0 else ch
                    stack[sp, 2] = 0
                    sp += 1
                p = nxt
            continue
        if side == 0:
            A, a, B, b = F, v, G, w
        else:
            A, a, B, b = G, w, F, v
        if kind == 0:
            fneed, ineed = inner_need(A, a, B, b)
            fws = _grow_flat(fws, fneed)
            iws = _grow_flat(iws, ineed)
            n = 0
            p = a
            while p >= 0:
                path[n] = p
                n += 1
                p = A.heavy_child[p]
            if side == 0:
                counts[0] += spf_inner(F, v, path[:n], G, w, D, dF, iG, PdF, PiG, R, labF, labG, check, fws, iws)
            else:
                counts[0] += spf_inner(G, w, path[:n], F, v, DT, iG, dF, PiG, PdF, RT, labG, labF, check, fws, iws)
        else:
            fws = _grow_flat(fws, side_need(A, a, B, b))
            right = kind == 2
            if side == 0:
                counts[kind] += spf_side(F, v, G, w, right, D, dF, iG, R, labF, labG, check, fws)
            else:
                counts[kind] += spf_side(G, w, F, v, right, DT, iG, dF, RT, labG, labF, check, fws)
    return counts
