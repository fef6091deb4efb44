"""Ring perception: cycle basis from spanning-tree back-edges, refined to
a smallest-set-of-smallest-rings by size-ordered exchange."""

from __future__ import annotations


def _edge(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


def _fundamental_cycles(n_atoms, adjacency):
    """Cycle basis via BFS spanning forest; one cycle per back edge."""
    parent = [-1] * n_atoms
    depth = [0] * n_atoms
    visited = [False] * n_atoms
    tree_edges = set()
    back_edges = []
    for root in range(n_atoms):
        if visited[root]:
            continue
        visited[root] = True
        queue = [root]
        while queue:
            i = queue.pop(0)
            for j in adjacency[i]:
                e = _edge(i, j)
                if not visited[j]:
                    visited[j] = True
                    parent[j] = i
                    depth[j] = depth[i] + 1
                    tree_edges.add(e)
                    queue.append(j)
                elif e not in tree_edges and e not in back_edges:
                    back_edges.append(e)

    cycles = []
    for u, v in back_edges:
        # walk both endpoints up to their lowest common ancestor
        edges = {(u, v) if u < v else (v, u)}
        a, b = u, v
        while depth[a] > depth[b]:
            edges.add(_edge(a, parent[a]))
            a = parent[a]
        while depth[b] > depth[a]:
            edges.add(_edge(b, parent[b]))
            b = parent[b]
        while a != b:
            edges.add(_edge(a, parent[a]))
            edges.add(_edge(b, parent[b]))
            a, b = parent[a], parent[b]
        cycles.append(frozenset(edges))
    return cycles


def _is_simple_cycle(edges) -> bool:
    if not edges:
        return False
    degree: dict[int, int] = {}
    for i, j in edges:
        degree[i] = degree.get(i, 0) + 1
        degree[j] = degree.get(j, 0) + 1
    if any(d != 2 for d in degree.values()):
        return False
    # connectivity walk over the edge set
    adj: dict[int, list[int]] = {}
    for i, j in edges:
        adj.setdefault(i, []).append(j)
        adj.setdefault(j, []).append(i)
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        for n in adj[stack.pop()]:
            if n not in seen:
                seen.add(n)
                stack.append(n)
    return len(seen) == len(degree)


def _order_cycle(edges) -> tuple[int, ...]:
    adj: dict[int, list[int]] = {}
    for i, j in edges:
        adj.setdefault(i, []).append(j)
        adj.setdefault(j, []).append(i)
    start = min(adj)
    prev, cur = None, start
    path = [start]
    while True:
        nxt = [n for n in sorted(adj[cur]) if n != prev]
        step = nxt[0]
        if step == start:
            break
        path.append(step)
        prev, cur = cur, step
    # canonical direction: second element is the smaller neighbour of start
    if len(path) > 2 and path[1] > path[-1]:
        path = [path[0]] + path[:0:-1]
    return tuple(path)


def perceive_rings(n_atoms, bonds) -> tuple[tuple[int, ...], ...]:
    """Return SSSR rings as atom-index cycles, deterministically ordered."""
    adjacency: list[list[int]] = [[] for _ in range(n_atoms)]
    for a1, a2 in bonds:
        adjacency[a1].append(a2)
        adjacency[a2].append(a1)
    for nbrs in adjacency:
        nbrs.sort()

    basis = _fundamental_cycles(n_atoms, adjacency)
    if not basis:
        return ()

    # size-ordered exchange: shrink any basis cycle that the XOR with a
    # smaller one turns into a smaller simple cycle, until stable
    changed = True
    while changed:
        changed = False
        basis.sort(key=lambda c: (len(c), sorted(c)))
        for i in range(len(basis) - 1, 0, -1):
            for j in range(i):
                candidate = basis[i] ^ basis[j]
                if candidate and len(candidate) < len(basis[i]) and _is_simple_cycle(candidate):
                    basis[i] = candidate
                    changed = True
                    break
            if changed:
                break

    rings = [_order_cycle(c) for c in basis]
    rings.sort(key=lambda r: (len(r), r))
    return tuple(rings)
