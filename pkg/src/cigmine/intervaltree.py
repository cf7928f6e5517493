"""Red-black interval tree with subtree-max augmentation.

Insertion and all-overlaps search only; intervals are closed. Nodes are keyed
on the interval's low end, equal keys going right.
"""

from __future__ import annotations

from typing import Any, Iterator

RED = True
BLACK = False


class Node:
    __slots__ = ("lo", "hi", "max", "payload", "color", "left", "right", "parent")

    def __init__(self, lo: float, hi: float, payload: Any):
        self.lo = lo
        self.hi = hi
        self.max = hi
        self.payload = payload
        self.color = RED
        self.left: Node | None = None
        self.right: Node | None = None
        self.parent: Node | None = None

    def __repr__(self):
        return f"Node([{self.lo}, {self.hi}], max={self.max}, {'R' if self.color else 'B'})"


def _fix_max(x: Node) -> None:
    m = x.hi
    if x.left is not None and x.left.max > m:
        m = x.left.max
    if x.right is not None and x.right.max > m:
        m = x.right.max
    x.max = m


class IntervalTree:
    """Balanced store of ``(lo, hi, payload)`` triples.

    >>> t = IntervalTree()
    >>> for lo, hi in [(8, 12), (5, 7), (14, 20)]:
    ...     t.insert(lo, hi, (lo, hi))
    >>> sorted(p for _, _, p in t.search_all(6, 9))
    [(5, 7), (8, 12)]
    """

    def __init__(self):
        self.root: Node | None = None
        self.size = 0

    def __len__(self) -> int:
        return self.size

    def _rotate_left(self, x: Node) -> None:
        y = x.right
        x.right = y.left
        if y.left is not None:
            y.left.parent = x
        y.parent = x.parent
        if x.parent is None:
            self.root = y
        elif x is x.parent.left:
            x.parent.left = y
        else:
            x.parent.right = y
        y.left = x
        x.parent = y
        # y takes over x's subtree, so its max is x's old max
        y.max = x.max
        _fix_max(x)

    def _rotate_right(self, x: Node) -> None:
        y = x.left
        x.left = y.right
        if y.right is not None:
            y.right.parent = x
        y.parent = x.parent
        if x.parent is None:
            self.root = y
        elif x is x.parent.right:
            x.parent.right = y
        else:
            x.parent.left = y
        y.right = x
        x.parent = y
        y.max = x.max
        _fix_max(x)

    def insert(self, lo: float, hi: float, payload: Any = None) -> Node:
        if lo > hi:
            raise ValueError(f"interval lo {lo} > hi {hi}")
        z = Node(lo, hi, payload)
        parent = None
        x = self.root
        while x is not None:
            parent = x
            if hi > x.max:
                x.max = hi
            x = x.left if lo < x.lo else x.right
        z.parent = parent
        if parent is None:
            self.root = z
        elif lo < parent.lo:
            parent.left = z
        else:
            parent.right = z
        self.size += 1
        self._insert_fixup(z)
        return z

    def _insert_fixup(self, z: Node) -> None:
        while z.parent is not None and z.parent.color is RED:
            p = z.parent
            g = p.parent
            if p is g.left:
                uncle = g.right
                if uncle is not None and uncle.color is RED:
                    p.color = BLACK
                    uncle.color = BLACK
                    g.color = RED
                    z = g
                    continue
                if z is p.right:
                    z = p
                    self._rotate_left(z)
                    p = z.parent
                p.color = BLACK
                g.color = RED
                self._rotate_right(g)
            else:
                uncle = g.left
                if uncle is not None and uncle.color is RED:
                    p.color = BLACK
                    uncle.color = BLACK
                    g.color = RED
                    z = g
                    continue
                if z is p.left:
                    z = p
                    self._rotate_right(z)
                    p = z.parent
                p.color = BLACK
                g.color = RED
                self._rotate_left(g)
        self.root.color = BLACK

    def search_all(self, lo: float, hi: float) -> list[tuple[float, float, Any]]:
        """Every stored interval intersecting the closed query ``[lo, hi]``."""
        out = []
        stack = [self.root] if self.root is not None else []
        while stack:
            x = stack.pop()
            # right pushed first so the left branch is reported first
            if x.right is not None and x.lo <= hi:
                stack.append(x.right)
            if not (hi < x.lo or x.hi < lo):
                out.append((x.lo, x.hi, x.payload))
            if x.left is not None and x.left.max >= lo:
                stack.append(x.left)
        return out

    def search_first(self, lo: float, hi: float) -> Node | None:
        """Single-overlap walk: descend left while its max reaches ``lo``."""
        x = self.root
        while x is not None and (hi < x.lo or x.hi < lo):
            x = x.left if x.left is not None and x.left.max >= lo else x.right
        return x

    def __iter__(self) -> Iterator[Node]:
        """In-order traversal of nodes."""
        stack: list[Node] = []
        x = self.root
        while stack or x is not None:
            while x is not None:
                stack.append(x)
                x = x.left
            x = stack.pop()
            yield x
            x = x.right

    def height(self) -> int:
        def h(x):
            return 0 if x is None else 1 + max(h(x.left), h(x.right))
        return h(self.root)
