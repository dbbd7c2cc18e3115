"""Star trees: a root with cyclically ordered full binary subtrees.

A binary tree is either the leaf marker ``"L"`` or a pair
``(left, right)`` of binary trees; a star tree is a nonempty tuple of
such trees ("beads") hanging counterclockwise off a common root.  Two
star trees are the same object of study when one is a cyclic rotation of
the other, which is what ``tree_key`` quotients by.

Star trees with n leaves are in bijection with triangulations of the
once-punctured n-gon up to rotation and tag inversion: ``star_tree_of``
is the dual-tree construction (tree edges cross every triangulation side
except the radii) and ``triangulation_of`` rebuilds a triangulation from
a star tree.  Three local moves on star trees match diagonal flips:
``split_bead``, ``merge_beads`` and ``rotate_inner_edge``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Union

from .errors import BoundExceededError
from .polygon import (
    NOTCHED,
    PLAIN,
    Arc,
    Diagonal,
    Radius,
    Triangulation,
    span,
)

LEAF = "L"

BinaryTree = Union[str, tuple]
StarTree = tuple  # nonempty tuple of BinaryTree beads

__all__ = [
    "LEAF",
    "BinaryTree",
    "StarTree",
    "apply_tree_move",
    "canonical_star",
    "enumerate_star_trees",
    "leaf_count",
    "leaf_star",
    "merge_beads",
    "rotate_inner_edge",
    "split_bead",
    "star_from_json_obj",
    "star_to_json_obj",
    "star_tree_classes",
    "star_tree_of",
    "tree_key",
    "tree_move_for_flip",
    "triangulation_of",
]


def leaf_count(tree: BinaryTree) -> int:
    if tree == LEAF:
        return 1
    return leaf_count(tree[0]) + leaf_count(tree[1])


def leaf_star(n: int) -> StarTree:
    """The star tree of n bare leaf beads; the dual tree of the plain fan."""
    if n < 1:
        raise ValueError(f"need n >= 1 leaves, got {n}")
    return (LEAF,) * n


def _check_bead(tree: BinaryTree) -> None:
    if tree == LEAF:
        return
    if isinstance(tree, tuple) and len(tree) == 2:
        _check_bead(tree[0])
        _check_bead(tree[1])
        return
    raise ValueError(f"not a full binary tree: {tree!r}")


def _serialize_bead(tree: BinaryTree) -> bytes:
    if tree == LEAF:
        return b"L"
    return b"(" + _serialize_bead(tree[0]) + _serialize_bead(tree[1]) + b")"


def _serialize_star(star: StarTree) -> bytes:
    return b"[" + b",".join(_serialize_bead(bead) for bead in star) + b"]"


def canonical_star(star: StarTree) -> StarTree:
    """The cyclic rotation of ``star`` with the smallest serialization."""
    if not star:
        raise ValueError("star tree needs at least one bead")
    k = len(star)
    return min(
        (star[i:] + star[:i] for i in range(k)), key=_serialize_star
    )


def tree_key(star: StarTree) -> bytes:
    """Byte string equal for two star trees iff they are rotations of each other."""
    return _serialize_star(canonical_star(star))


# -- enumeration -------------------------------------------------------------


@lru_cache(maxsize=None)
def _binary_trees(m: int) -> tuple[BinaryTree, ...]:
    """All full binary trees with m leaves (there are catalan(m-1) of them)."""
    if m == 1:
        return (LEAF,)
    out = []
    for left_leaves in range(1, m):
        for left in _binary_trees(left_leaves):
            for right in _binary_trees(m - left_leaves):
                out.append((left, right))
    return tuple(out)


def _bead_sequences(total: int) -> Iterator[StarTree]:
    if total == 0:
        yield ()
        return
    for first_leaves in range(1, total + 1):
        for bead in _binary_trees(first_leaves):
            for rest in _bead_sequences(total - first_leaves):
                yield (bead,) + rest


def star_tree_classes(n: int, *, max_n: int = 16) -> dict[bytes, StarTree]:
    """Rotation classes of star trees with n leaves, keyed by tree_key.

    The stored representative is the canonical rotation, so iteration
    order and contents are deterministic.
    """
    if n < 1:
        raise ValueError(f"need n >= 1 leaves, got {n}")
    if n > max_n:
        raise BoundExceededError(
            f"star tree enumeration supports n <= {max_n}, got {n}"
        )
    classes: dict[bytes, StarTree] = {}
    for star in _bead_sequences(n):
        rep = canonical_star(star)
        classes.setdefault(_serialize_star(rep), rep)
    return dict(sorted(classes.items()))


def enumerate_star_trees(n: int, *, max_n: int = 16) -> set[bytes]:
    """Keys of all rotation classes of star trees with n leaves."""
    return set(star_tree_classes(n, max_n=max_n))


# -- the dual star tree of a triangulation -----------------------------------
#
# Tree edges cross the arcs of the triangulation (and, in config B, the
# loop around the puncture) but never a radius; the regions touching the
# puncture merge into the root.  In config A each segment between two
# cyclically consecutive radii contributes one bead, the dual binary tree
# of the segment's arc triangulation, in counterclockwise segment order
# starting at the smallest radius base.  In config B the whole outside of
# the loop is a single bead rooted at the loop crossing.


def _segment_walls(t: Triangulation) -> list[tuple[int, int]]:
    """Absolute (start, end) windows of the puncture-adjacent regions."""
    if t.config == "A":
        bases = list(t.radius_bases)
        m = len(bases)
        return [
            (bases[i], bases[i + 1] if i + 1 < m else bases[0] + t.n)
            for i in range(m)
        ]
    a = t.radius_bases[0]
    return [(a, a + t.n)]


def _dual_tree_builder(t: Triangulation):
    n = t.n
    arcs = {(d.a, d.b) for d in t.diagonals if isinstance(d, Arc)}

    def side_exists(u: int, v: int) -> bool:
        return v - u == 1 or (u % n, v % n) in arcs

    def build(u: int, v: int) -> BinaryTree:
        if v - u == 1:
            return LEAF
        for w in range(u + 1, v):
            if side_exists(u, w) and side_exists(w, v):
                return (build(u, w), build(w, v))
        raise AssertionError(f"no apex between {u} and {v}")

    return build


def star_tree_of(t: Triangulation) -> StarTree:
    """Dual star tree of a triangulation; rotation/tag inversion invariant."""
    build = _dual_tree_builder(t)
    if t.config == "A":
        return tuple(build(u, v) for u, v in _segment_walls(t))
    (a, end), = _segment_walls(t)
    bead = build(a, end)
    if bead == LEAF:
        raise AssertionError("loop region of a config-B triangulation is degenerate")
    return (bead,)


def triangulation_of(star: StarTree, n: int) -> Triangulation:
    """Triangulation whose dual star tree is ``star`` (n leaves in total).

    With k >= 2 beads the result has plain radii at the bead boundaries
    starting from vertex 0; a single bead yields the opposite-tag radius
    pair at vertex 0.  Any other representative of the same classes
    differs only by rotation/tag inversion.
    """
    if not star:
        raise ValueError("star tree needs at least one bead")
    for bead in star:
        _check_bead(bead)
    counts = [leaf_count(bead) for bead in star]
    if sum(counts) != n:
        raise ValueError(f"star tree has {sum(counts)} leaves, expected {n}")

    diagonals: list[Diagonal] = []

    def unfold(u: int, v: int, tree: BinaryTree) -> None:
        """Emit the arcs strictly inside the region below side (u, v)."""
        if tree == LEAF:
            return
        w = u + leaf_count(tree[0])
        if w - u >= 2:
            diagonals.append(Arc(u % n, w % n))
        if v - w >= 2:
            diagonals.append(Arc(w % n, v % n))
        unfold(u, w, tree[0])
        unfold(w, v, tree[1])

    if len(star) == 1:
        diagonals.append(Radius(0, PLAIN))
        diagonals.append(Radius(0, NOTCHED))
        bead = star[0]
        if bead == LEAF:
            raise ValueError("a single leaf bead does not define a triangulation")
        unfold(0, n, bead)
    else:
        pos = 0
        for bead, c in zip(star, counts):
            diagonals.append(Radius(pos % n, PLAIN))
            if c >= 2:
                diagonals.append(Arc(pos % n, (pos + c) % n))
            unfold(pos, pos + c, bead)
            pos += c
    return Triangulation(n, diagonals)


# -- bead mutations -----------------------------------------------------------


def split_bead(star: StarTree, i: int) -> StarTree:
    """Replace bead i by its two subtrees; bead count grows by one.

    Matches flipping the arc at the base of the i-th puncture-adjacent
    triangle (config A) or flipping either tagged radius (single bead).
    """
    bead = star[i]
    if bead == LEAF:
        raise ValueError("a leaf bead sits on a border edge and cannot be split")
    return star[:i] + (bead[0], bead[1]) + star[i + 1 :]


def merge_beads(star: StarTree, i: int) -> StarTree:
    """Join beads i and i+1 (cyclically) into one; bead count drops by one.

    Matches flipping the radius separating the two adjacent segments.
    """
    k = len(star)
    if k < 2:
        raise ValueError("need at least two beads to merge")
    j = (i + 1) % k
    if j == 0:
        return ((star[i], star[0]),) + star[1:i]
    return star[:i] + ((star[i], star[j]),) + star[j + 1 :]


def rotate_inner_edge(star: StarTree, i: int, path: str) -> StarTree:
    """Re-associate at an inner edge of bead i; bead count is unchanged.

    ``path`` is a string of "L"/"R" steps from the bead root to the lower
    endpoint of the edge, which must be an internal node.  The move swaps
    (x, (y, z)) with ((x, y), z), matching the flip of the arc the edge
    crosses.
    """
    if not path:
        raise ValueError("the empty path names the bead's root edge; use split/merge")

    def go(node: BinaryTree, steps: str) -> BinaryTree:
        if node == LEAF:
            raise ValueError(f"path {path!r} runs past a leaf")
        step, rest = steps[0], steps[1:]
        if step not in "LR":
            raise ValueError(f"bad step {step!r} in path {path!r}")
        child = node[0] if step == "L" else node[1]
        if rest:
            replaced = go(child, rest)
            return (replaced, node[1]) if step == "L" else (node[0], replaced)
        if child == LEAF:
            raise ValueError(f"path {path!r} ends at a leaf edge")
        if step == "R":
            x, (y, z) = node[0], child
            return ((x, y), z)
        (y, z), x = child, node[1]
        return (y, (z, x))

    return star[:i] + (go(star[i], path),) + star[i + 1 :]


# -- matching tree move for a diagonal flip ----------------------------------


def tree_move_for_flip(t: Triangulation, d: Diagonal) -> tuple:
    """The bead move matching a flip of ``d``, against star_tree_of(t).

    Returns ("split", i), ("merge", i) or ("rotate", i, path), with bead
    indices in the segment order used by star_tree_of.
    """
    if d not in t.diagonals:
        raise ValueError(f"{d} is not a diagonal of the triangulation")
    n = t.n
    walls = _segment_walls(t)

    if isinstance(d, Radius):
        if t.config == "B":
            return ("split", 0)
        j = list(t.radius_bases).index(d.a)
        return ("merge", (j - 1) % len(walls))

    if t.config == "A":
        bases = t.radius_bases
        for i, (u, v) in enumerate(walls):
            if d.a == u % n and d.b == v % n:
                return ("split", i)

    star = star_tree_of(t)
    for i, (u, v) in enumerate(walls):
        offset = (d.a - u) % n
        s, e = u + offset, u + offset + span(d, n)
        if e > v:
            continue
        path = ""
        node, lo, hi = star[i], u, v
        while True:
            w = lo + leaf_count(node[0])
            if (s, e) == (lo, w):
                return ("rotate", i, path + "L")
            if (s, e) == (w, hi):
                return ("rotate", i, path + "R")
            if e <= w:
                path += "L"
                node, hi = node[0], w
            elif s >= w:
                path += "R"
                node, lo = node[1], w
            else:
                raise AssertionError(f"{d} straddles the apex of its region")
    raise AssertionError(f"{d} not located in any segment")


def apply_tree_move(star: StarTree, move: tuple) -> StarTree:
    kind = move[0]
    if kind == "split":
        return split_bead(star, move[1])
    if kind == "merge":
        return merge_beads(star, move[1])
    if kind == "rotate":
        return rotate_inner_edge(star, move[1], move[2])
    raise ValueError(f"unknown tree move: {move!r}")


# -- JSON --------------------------------------------------------------------


def _bead_to_json(tree: BinaryTree):
    if tree == LEAF:
        return LEAF
    return [_bead_to_json(tree[0]), _bead_to_json(tree[1])]


def _bead_from_json(obj) -> BinaryTree:
    if obj == LEAF:
        return LEAF
    if isinstance(obj, list) and len(obj) == 2:
        return (_bead_from_json(obj[0]), _bead_from_json(obj[1]))
    raise ValueError(f"not a binary tree: {obj!r}")


def star_to_json_obj(star: StarTree) -> dict:
    return {"beads": [_bead_to_json(bead) for bead in star]}


def star_from_json_obj(obj: dict) -> StarTree:
    if not isinstance(obj, dict) or "beads" not in obj:
        raise ValueError('expected an object with "beads"')
    beads = obj["beads"]
    if not isinstance(beads, list) or not beads:
        raise ValueError("star tree needs a nonempty list of beads")
    return tuple(_bead_from_json(bead) for bead in beads)
