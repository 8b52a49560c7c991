"""Dinic max-flow on integer capacities, with residual-cut extraction.

The networks built here are tiny three-level DAGs (source, bottom layer,
image layer, sink), so the classic implementation is more than fast enough.
Capacities are Python ints, hence exact; both canonical min cuts are
available: the minimal one (source side = residual-reachable from s) and the
maximal one (source side = complement of the nodes that still reach t).
"""

from __future__ import annotations

from collections import deque

__all__ = ["FlowNetwork"]


class FlowNetwork:
    def __init__(self, n: int) -> None:
        self.n = n
        # adjacency of [to, remaining_capacity, index_of_reverse_edge]
        self.graph: list[list[list[int]]] = [[] for _ in range(n)]

    def add_edge(self, u: int, v: int, cap: int) -> None:
        if cap < 0:
            raise ValueError("capacities must be non-negative")
        self.graph[u].append([v, cap, len(self.graph[v])])
        self.graph[v].append([u, 0, len(self.graph[u]) - 1])

    def _bfs_levels(self, s: int, t: int) -> list[int] | None:
        level = [-1] * self.n
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v, cap, _ in self.graph[u]:
                if cap > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level if level[t] >= 0 else None

    def _dfs_block(self, u: int, t: int, pushed: int, level, iters) -> int:
        if u == t:
            return pushed
        while iters[u] < len(self.graph[u]):
            edge = self.graph[u][iters[u]]
            v, cap, rev = edge
            if cap > 0 and level[v] == level[u] + 1:
                got = self._dfs_block(v, t, min(pushed, cap), level, iters)
                if got > 0:
                    edge[1] -= got
                    self.graph[v][rev][1] += got
                    return got
            iters[u] += 1
        return 0

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        while True:
            level = self._bfs_levels(s, t)
            if level is None:
                return flow
            iters = [0] * self.n
            while True:
                pushed = self._dfs_block(s, t, 1 << 62, level, iters)
                if pushed == 0:
                    break
                flow += pushed

    def residual_reaches_sink(self, t: int) -> set[int]:
        """Nodes with a residual path to t (t included); call after max_flow."""
        seen = {t}
        queue = deque([t])
        while queue:
            y = queue.popleft()
            for x, _, rev in self.graph[y]:
                # residual edge x -> y exists iff the paired edge at x has
                # remaining capacity
                if self.graph[x][rev][1] > 0 and x not in seen:
                    seen.add(x)
                    queue.append(x)
        return seen
