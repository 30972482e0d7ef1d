"""Dynamic hypergraph orientation with bounded head slack (HOP).

Maintains, for a fixed load estimate d_tilde, an assignment of one head
vertex per hyperedge such that the head's in-degree never exceeds any
member's in-degree by more than the slack eta.  Inserts and deletes
trigger chains of head rotations; stale knowledge of neighbor loads is
refreshed lazily, a few edges per update, round-robin.

Supporting structures per vertex:

* a circular list of edges headed here, with a persistent cursor
  (drives both violation probing and lazy informing);
* a set of edges containing the vertex but headed elsewhere, paired
  with a lazy max-heap keyed by the locally-known head load (heap
  entries are created on demand from a dirty set and stale ones are
  discarded when popped);
* locally-known ("mirror") load values for the members of those edges.
  All members of an edge are informed together, so one mirror cell per
  (edge, member) serves every observer.

A global degree->vertices bucket index supplies the max load and the
level sets used by the subset query.
"""

from __future__ import annotations

import heapq
import math
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Set, Tuple

from .model import EdgeVerts, log2c


class _RoundRobin:
    """Circular sequence of edge handles with a persistent cursor.

    O(1) append/remove/advance via doubly linked structure in dicts.
    New handles enter just behind the cursor, i.e. last in scan order.
    """

    __slots__ = ("_next", "_prev", "cursor")

    def __init__(self) -> None:
        self._next: Dict[int, int] = {}
        self._prev: Dict[int, int] = {}
        self.cursor: Optional[int] = None

    def __len__(self) -> int:
        return len(self._next)

    def __contains__(self, h: int) -> bool:
        return h in self._next

    def append(self, h: int) -> None:
        if self.cursor is None:
            self._next[h] = self._prev[h] = h
            self.cursor = h
        else:
            tail = self._prev[self.cursor]
            self._next[tail] = h
            self._prev[h] = tail
            self._next[h] = self.cursor
            self._prev[self.cursor] = h

    def remove(self, h: int) -> None:
        nxt = self._next.pop(h)
        prv = self._prev.pop(h)
        if nxt == h:
            self.cursor = None
            return
        self._next[prv] = nxt
        self._prev[nxt] = prv
        if self.cursor == h:
            self.cursor = nxt

    def advance(self) -> int:
        """Return the handle at the cursor and step the cursor forward."""
        h = self.cursor
        assert h is not None
        self.cursor = self._next[h]
        return h

    def items(self) -> List[int]:
        out = []
        h = self.cursor
        for _ in range(len(self._next)):
            assert h is not None
            out.append(h)
            h = self._next[h]
        return out


class _DegreeBuckets:
    """Multiset of per-vertex in-degrees with O(1) max tracking.

    Degrees change by +-1 only, which keeps the max current without a
    search tree; level sets are enumerated by walking buckets downward.
    """

    def __init__(self, n: int) -> None:
        self.deg = [0] * n
        self.buckets: Dict[int, Set[int]] = {0: set(range(n))}
        self.max_deg = 0

    def shift(self, v: int, delta: int) -> None:
        old = self.deg[v]
        new = old + delta
        self.deg[v] = new
        b = self.buckets[old]
        b.discard(v)
        if not b and old != 0:
            del self.buckets[old]
        self.buckets.setdefault(new, set()).add(v)
        if new > self.max_deg:
            self.max_deg = new
        elif old == self.max_deg and old not in self.buckets:
            self.max_deg = old - 1 if new < old else new

    def at_least(self, threshold: float) -> Set[int]:
        out: Set[int] = set()
        d = self.max_deg
        while d >= threshold and d >= 0:
            out |= self.buckets.get(d, set())
            d -= 1
        return out

    def count_at_least(self, threshold: float) -> int:
        total = 0
        d = self.max_deg
        while d >= threshold and d >= 0:
            total += len(self.buckets.get(d, ()))
            d -= 1
        return total


class Hop:
    """Orientation maintainer for one load-estimate guess d_tilde.

    eta defaults to epsilon^2 * d_tilde / (32 log2 n); callers that need
    integral loads below that formula's validity range (or tests pinning
    exact slack) pass eta_override.  Inserting requires eta >= 1.
    """

    def __init__(
        self,
        n: int,
        epsilon: float,
        d_tilde: float,
        eta_override: Optional[float] = None,
    ) -> None:
        if n <= 0:
            raise ValueError("vertex count must be positive")
        if not 0 < epsilon < 1:
            raise ValueError(f"epsilon must be in (0,1), got {epsilon}")
        if d_tilde <= 0:
            raise ValueError("d_tilde must be positive")
        self.n = n
        self.epsilon = epsilon
        self.d_tilde = d_tilde
        if eta_override is not None:
            if eta_override <= 0:
                raise ValueError("eta_override must be positive")
            self.eta = float(eta_override)
        else:
            self.eta = epsilon * epsilon * d_tilde / (32.0 * log2c(n))

        self._verts: Dict[int, EdgeVerts] = {}
        self._head: Dict[int, int] = {}
        self._in: List[_RoundRobin] = [_RoundRobin() for _ in range(n)]
        self._out: List[Set[int]] = [set() for _ in range(n)]
        self._heap: List[List[Tuple[int, int]]] = [[] for _ in range(n)]
        # edges of Out(v) whose key changed since their last heap push
        self._dirty: List[Set[int]] = [set() for _ in range(n)]
        # With eta <= 4 the informing budget ceil(4 d / eta) covers all of
        # In(v) at every load change, so mirrors would always equal the true
        # loads.  In that regime informing is skipped and out-edge probes
        # read true loads directly; the lazy machinery below only runs for
        # larger slack values.
        self._fresh = self.eta <= 4.0
        # _mir[h][z] = d_in(z) as last told to the members of edge h
        self._mir: Dict[int, Dict[int, int]] = {}
        self._degs = _DegreeBuckets(n)
        self.last_rotations = 0

    # -- basic views ---------------------------------------------------

    def __len__(self) -> int:
        return len(self._verts)

    def __contains__(self, handle: int) -> bool:
        return handle in self._verts

    def head_of(self, handle: int) -> int:
        return self._head[handle]

    def verts_of(self, handle: int) -> EdgeVerts:
        return self._verts[handle]

    def d_in(self, v: int) -> int:
        return self._degs.deg[v]

    def max_in_degree(self) -> int:
        return self._degs.max_deg

    def edges(self) -> Iterable[Tuple[int, EdgeVerts]]:
        return self._verts.items()

    # -- internal helpers ----------------------------------------------

    def _argmin_vertex(self, verts: EdgeVerts) -> int:
        # verts is sorted and the comparison strict, so ties resolve to
        # the smallest vertex id
        deg = self._degs.deg
        best = verts[0]
        bd = deg[best]
        for u in verts[1:]:
            d = deg[u]
            if d < bd:
                best, bd = u, d
        return best

    def _probe_count(self, v: int) -> int:
        d = self._degs.deg[v]
        if d == 0:
            return 0
        return min(len(self._in[v]), math.ceil(4.0 * d / self.eta))

    def _attach(self, handle: int, verts: EdgeVerts, head: int) -> None:
        """Register edge under `head`, refreshing mirrors to true loads."""
        deg = self._degs.deg
        self._head[handle] = head
        self._in[head].append(handle)
        self._mir[handle] = {z: deg[z] for z in verts}
        out = self._out
        if self._fresh:
            for u in verts:
                if u != head:
                    out[u].add(handle)
            return
        dirty = self._dirty
        for u in verts:
            if u != head:
                out[u].add(handle)
                dirty[u].add(handle)

    def _detach(self, handle: int) -> None:
        head = self._head.pop(handle)
        verts = self._verts[handle]
        self._in[head].remove(handle)
        for u in verts:
            if u != head:
                self._out[u].discard(handle)
        del self._mir[handle]

    def _rotate(self, handle: int, v: int) -> None:
        verts = self._verts[handle]
        assert v in verts and v != self._head[handle]
        self._detach(handle)
        self._attach(handle, verts, v)
        self.last_rotations += 1

    def _tight_in_edge(self, v: int) -> Optional[int]:
        """Probe the next few edges headed at v for a slack violation risk.

        Returns the first probed edge whose min-load member sits at
        least eta/2 below d_in(v); the cursor moves past everything
        probed.  The violation test uses true loads; in lazy mode every
        probed edge is also informed of v's current load, so probe
        passes never starve the round-robin inform schedule.
        """
        deg = self._degs.deg
        deg_v = deg[v]
        limit = deg_v - self.eta / 2.0
        rr = self._in[v]
        verts_map = self._verts
        count = self._probe_count(v)
        if self._fresh:
            if count == len(rr):
                # covering probe: any order works, skip the cursor walk
                for h in rr._next:
                    vs = verts_map[h]
                    bd = deg[vs[0]]
                    for u in vs[1:]:
                        d = deg[u]
                        if d < bd:
                            bd = d
                    if bd <= limit:
                        return h
                return None
            for _ in range(count):
                h = rr.advance()
                vs = verts_map[h]
                bd = deg[vs[0]]
                for u in vs[1:]:
                    d = deg[u]
                    if d < bd:
                        bd = d
                if bd <= limit:
                    return h
            return None
        mir = self._mir
        dirty = self._dirty
        for _ in range(count):
            h = rr.advance()
            mir[h][v] = deg_v
            vs = verts_map[h]
            bd = deg_v
            for u in vs:
                if u != v:
                    dirty[u].add(h)
                    d = deg[u]
                    if d < bd:
                        bd = d
            if bd <= limit:
                return h
        return None

    def _tight_out_edge(self, v: int) -> Optional[int]:
        """Peek the max-mirror-key edge of Out(v); lazily drops stale entries.

        Edges whose key changed since their last push sit in the dirty
        set and get (re)pushed here, so informs stay O(1) per observer.
        """
        out = self._out[v]
        head = self._head
        if self._fresh:
            # mirrors are definitionally current: argmax over true loads
            deg = self._degs.deg
            best_h = None
            best = -1
            for h in out:
                k = deg[head[h]]
                if k > best:
                    best, best_h = k, h
            if best_h is not None and best >= deg[v] + self.eta / 2.0:
                return best_h
            return None
        heap = self._heap[v]
        dirty = self._dirty[v]
        mir = self._mir
        if dirty:
            for h in dirty:
                if h in out:
                    heapq.heappush(heap, (-mir[h][head[h]], h))
            dirty.clear()
            self._maybe_compact(v)
            heap = self._heap[v]
        while heap:
            negkey, h = heap[0]
            if h not in out:
                heapq.heappop(heap)
                continue
            cur = mir[h][head[h]]
            if -negkey != cur:
                heapq.heappop(heap)
                continue
            if cur >= self._degs.deg[v] + self.eta / 2.0:
                return h
            return None
        return None

    def _inform(self, v: int) -> None:
        """Push v's new load to the members of the next few In(v) edges."""
        if self._fresh:
            return
        deg_v = self._degs.deg[v]
        rr = self._in[v]
        count = min(len(rr), math.ceil(4.0 * max(deg_v, 1) / self.eta))
        dirty = self._dirty
        mir = self._mir
        verts_map = self._verts
        if count == len(rr):
            for h in rr._next:
                mir[h][v] = deg_v
                for u in verts_map[h]:
                    if u != v:
                        dirty[u].add(h)
            return
        for _ in range(count):
            h = rr.advance()
            mir[h][v] = deg_v
            for u in verts_map[h]:
                if u != v:
                    dirty[u].add(h)

    def _maybe_compact(self, v: int) -> None:
        heap = self._heap[v]
        out = self._out[v]
        if len(heap) > 4 * len(out) + 16:
            mir = self._mir
            head = self._head
            self._heap[v] = [(-mir[h][head[h]], h) for h in out]
            heapq.heapify(self._heap[v])
            self._dirty[v].clear()

    def _increment(self, v: int) -> None:
        self._degs.shift(v, +1)
        self._inform(v)

    def _decrement(self, v: int) -> None:
        if self._degs.deg[v] < 1:
            raise AssertionError(f"decrement of vertex {v} at in-degree 0")
        self._degs.shift(v, -1)
        self._inform(v)

    # -- public operations ---------------------------------------------

    def insert(self, handle: int, verts: EdgeVerts) -> None:
        if self.eta < 1.0:
            raise ValueError(
                f"eta={self.eta:.4g} < 1: integral loads need more slack "
                "(duplicate edges or pass eta_override)"
            )
        if handle in self._verts:
            raise ValueError(f"duplicate edge handle {handle}")
        self.last_rotations = 0
        self._verts[handle] = verts
        v = self._argmin_vertex(verts)
        self._attach(handle, verts, v)
        while True:
            f = self._tight_in_edge(v)
            if f is None:
                break
            v = self._argmin_vertex(self._verts[f])
            self._rotate(f, v)
        self._increment(v)

    def delete(self, handle: int) -> None:
        if handle not in self._verts:
            raise ValueError(f"unknown edge handle {handle}")
        self.last_rotations = 0
        v = self._head[handle]
        self._detach(handle)
        del self._verts[handle]
        while True:
            f = self._tight_out_edge(v)
            if f is None:
                break
            w = self._head[f]
            self._rotate(f, v)
            v = w
        self._decrement(v)

    # -- queries -------------------------------------------------------

    def query_density(self) -> float:
        """Max load discounted by (1 - eps/2); 0 on the empty structure."""
        return self._degs.max_deg * (1.0 - self.epsilon / 2.0)

    def query_subset(self, mode: str = "theory") -> Set[int]:
        if not self._verts:
            raise ValueError("subset query on an empty structure")
        d_hat = self._degs.max_deg
        eta = self.eta
        if mode == "theory":
            gamma = math.sqrt(2.0 * eta * log2c(self.n) / d_hat)
            level = float(d_hat)
            a = self._degs.at_least(level)
            b = self._degs.at_least(level - eta)
            while len(b) >= (1.0 + gamma) * len(a):
                level -= eta
                a = b
                b = self._degs.at_least(level - eta)
            return b
        if mode == "best-of-levels":
            best: Optional[Set[int]] = None
            best_num, best_den = 0, 1
            seen_sizes = set()
            for i in range(int(math.ceil(d_hat / eta)) + 2):
                s = self._degs.at_least(d_hat - eta * i)
                if not s or len(s) in seen_sizes:
                    continue
                seen_sizes.add(len(s))
                num = sum(1 for verts in self._verts.values() if s.issuperset(verts))
                if best is None or num * best_den > best_num * len(s):
                    best, best_num, best_den = s, num, len(s)
            assert best is not None
            return best
        raise ValueError(f"unknown subset query mode {mode!r}")

    def subset_density(self, subset: Set[int]) -> Fraction:
        """Exact unweighted density of `subset` in the stored multiset."""
        if not subset:
            raise ValueError("empty subset")
        num = sum(1 for verts in self._verts.values() if subset.issuperset(verts))
        return Fraction(num, len(subset))

    # -- invariant checks (test support) -------------------------------

    def check_slack(self) -> None:
        """Full scan of the local condition d_in(head) <= d_in(u) + eta."""
        deg = self._degs.deg
        for h, verts in self._verts.items():
            v = self._head[h]
            for u in verts:
                if u != v and deg[v] > deg[u] + self.eta + 1e-9:
                    raise AssertionError(
                        f"slack violated on edge {h}: d_in({v})={deg[v]} > "
                        f"d_in({u})={deg[u]} + {self.eta}"
                    )

    def check_staleness(self) -> None:
        """Mirrors of every head's load must be within eta/4 of the truth."""
        if self._fresh:
            # every load change informs all of In(v), so the effective
            # mirrors are the true loads: staleness is identically zero
            return
        deg = self._degs.deg
        bound = self.eta / 4.0 + 1e-9
        for h, verts in self._verts.items():
            v = self._head[h]
            believed = self._mir[h][v]
            if len(verts) > 1 and abs(deg[v] - believed) > bound:
                raise AssertionError(
                    f"stale mirror on edge {h}: true d_in({v})={deg[v]}, "
                    f"members believe {believed}, bound {self.eta / 4}"
                )

    def check_consistency(self) -> None:
        """Membership and degree bookkeeping agree with a fresh rebuild."""
        counts = [0] * self.n
        for h, verts in self._verts.items():
            v = self._head[h]
            assert v in verts, f"head of {h} not a member"
            counts[v] += 1
            assert h in self._in[v], f"edge {h} missing from In({v})"
            for u in verts:
                if u != v:
                    assert h in self._out[u], f"edge {h} missing from Out({u})"
        assert counts == self._degs.deg, "in-degree counters diverged"
        assert sum(counts) == len(self._verts)
        for v in range(self.n):
            assert len(self._in[v]) == counts[v]
            for h in self._out[v]:
                assert h in self._verts and self._head[h] != v
