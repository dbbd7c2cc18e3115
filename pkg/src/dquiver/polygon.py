"""Tagged-edge model of the once-punctured n-gon.

Conventions used throughout:

* Border vertices are 0..n-1 in counterclockwise order; the puncture sits
  in the interior.
* ``Arc(a, b)`` is the homotopy class of an edge from a to b that is
  homotopic to the counterclockwise border walk from a to b.  Its span
  ``(b - a) mod n`` lies in 2..n-1, and ``Arc(a, b)`` and ``Arc(b, a)``
  are different, mutually compatible diagonals (they pass the puncture on
  opposite sides).
* ``Radius(a, tag)`` joins the puncture to border vertex a and carries a
  tag, ``"plain"`` or ``"notched"``.
* Crossing numbers: two radii cross once iff their base vertices differ
  and their tags differ.  A radius crosses an arc once iff its base lies
  strictly inside the arc's counterclockwise interval.  Two arcs are
  lifted to centrally symmetric chord pairs of a 2n-gon (the double cover
  branched at the puncture) and the crossing number is half the number of
  strictly interleaving chord pairs.

A triangulation is a maximal set of pairwise non-crossing diagonals and
always has exactly n of them.  Its radii come in one of two shapes:
config "A" (two or more radii with the same tag at distinct vertices) or
config "B" (exactly two radii at one vertex with opposite tags).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .errors import BoundExceededError
from .quiver import Quiver

PLAIN = "plain"
NOTCHED = "notched"
_TAGS = (PLAIN, NOTCHED)

__all__ = [
    "PLAIN",
    "NOTCHED",
    "Arc",
    "Radius",
    "Diagonal",
    "ChordLift",
    "Triangulation",
    "all_diagonals",
    "chord_lift",
    "class_key",
    "close_to_border",
    "crossing_number",
    "diagonal_sort_key",
    "enumerate_triangulations",
    "factor_out",
    "fan_triangulation",
    "flip",
    "invert_tags",
    "is_triangulation",
    "mu",
    "opposite_tag",
    "quiver_of",
    "quiver_vertex",
    "radius_arc_crossings_via_lift",
    "rotate",
    "serialize_triangulation",
    "span",
    "tau",
    "triangulation_from_json_obj",
    "triangulation_to_json_obj",
    "triangulations_by_flips",
]


@dataclass(frozen=True)
class Arc:
    a: int
    b: int


@dataclass(frozen=True)
class Radius:
    a: int
    tag: str


Diagonal = Union[Arc, Radius]


def opposite_tag(tag: str) -> str:
    return NOTCHED if tag == PLAIN else PLAIN


def check_diagonal(d: Diagonal, n: int) -> None:
    """Raise ValueError unless ``d`` is a valid diagonal of the n-gon."""
    if n < 3:
        raise ValueError(f"punctured polygon needs n >= 3, got {n}")
    if isinstance(d, Arc):
        if not (0 <= d.a < n and 0 <= d.b < n):
            raise ValueError(f"{d} endpoints out of range for n={n}")
        if not 2 <= (d.b - d.a) % n <= n - 1:
            raise ValueError(f"{d} is not a valid arc for n={n}")
    elif isinstance(d, Radius):
        if not 0 <= d.a < n:
            raise ValueError(f"{d} base out of range for n={n}")
        if d.tag not in _TAGS:
            raise ValueError(f"{d} has unknown tag")
    else:
        raise TypeError(f"not a diagonal: {d!r}")


def span(d: Arc, n: int) -> int:
    """Counterclockwise span (b - a) mod n of an arc; lies in 2..n-1."""
    return (d.b - d.a) % n


def diagonal_sort_key(d: Diagonal) -> tuple[int, int, int]:
    """Deterministic order: arcs before radii, then indices, then tag."""
    if isinstance(d, Arc):
        return (0, d.a, d.b)
    return (1, d.a, 0 if d.tag == PLAIN else 1)


# -- crossing numbers --------------------------------------------------------


@dataclass(frozen=True)
class ChordLift:
    """Lift of a diagonal to the 2n-gon double cover.

    Arcs lift to a centrally symmetric pair of chords; radii lift to a
    single diameter remembering the tag as its color.
    """

    chords: tuple[tuple[int, int], ...]
    color: str | None = None


def chord_lift(d: Diagonal, n: int) -> ChordLift:
    check_diagonal(d, n)
    if isinstance(d, Radius):
        return ChordLift(((d.a, d.a + n),), d.tag)
    k = span(d, n)
    return ChordLift(((d.a, (d.a + k) % (2 * n)), ((d.a + n) % (2 * n), (d.a + k + n) % (2 * n))))


def _strictly_inside(c: int, a: int, b: int, m: int) -> bool:
    """Is c strictly inside the ccw interval (a, b) of Z_m?"""
    return 0 < (c - a) % m < (b - a) % m


def _chords_cross(c1: tuple[int, int], c2: tuple[int, int], m: int) -> bool:
    p, q = c1
    r, s = c2
    if p in (r, s) or q in (r, s):
        return False
    return _strictly_inside(r, p, q, m) != _strictly_inside(s, p, q, m)


def _arc_arc_crossing(d1: Arc, d2: Arc, n: int) -> int:
    m = 2 * n
    lifts1 = chord_lift(d1, n).chords
    lifts2 = chord_lift(d2, n).chords
    count = sum(_chords_cross(c1, c2, m) for c1 in lifts1 for c2 in lifts2)
    if count % 2:
        raise AssertionError(f"odd chord crossing count for {d1}, {d2}")
    return count // 2


def radius_arc_crossings_via_lift(r: Radius, arc: Arc, n: int) -> int:
    """Radius-arc crossing number computed from chord lifts.

    Alternative route to the interval rule used by crossing_number; the
    two must agree everywhere.
    """
    check_diagonal(r, n)
    check_diagonal(arc, n)
    m = 2 * n
    diameter = (r.a, r.a + n)
    count = sum(_chords_cross(diameter, c, m) for c in chord_lift(arc, n).chords)
    if count % 2:
        raise AssertionError(f"odd diameter crossing count for {r}, {arc}")
    return count // 2


def crossing_number(d1: Diagonal, d2: Diagonal, n: int) -> int:
    """Minimal number of interior intersections of representatives.

    Zero means the diagonals are compatible; symmetric in its arguments.
    """
    check_diagonal(d1, n)
    check_diagonal(d2, n)
    if isinstance(d1, Radius) and isinstance(d2, Radius):
        return int(d1.a != d2.a and d1.tag != d2.tag)
    if isinstance(d1, Radius):
        return int(_strictly_inside(d1.a, d2.a, d2.b, n))
    if isinstance(d2, Radius):
        return int(_strictly_inside(d2.a, d1.a, d1.b, n))
    return _arc_arc_crossing(d1, d2, n)


def all_diagonals(n: int) -> list[Diagonal]:
    """Every diagonal of the punctured n-gon: n(n-2) arcs plus 2n radii."""
    if n < 3:
        raise ValueError(f"punctured polygon needs n >= 3, got {n}")
    out: list[Diagonal] = [
        Arc(a, (a + k) % n) for a in range(n) for k in range(2, n)
    ]
    out.extend(Radius(a, tag) for a in range(n) for tag in _TAGS)
    out.sort(key=diagonal_sort_key)
    return out


# -- triangulations ----------------------------------------------------------


def _tag_config(n: int, diagonals) -> tuple[str, tuple[int, ...]]:
    """Return ("A", sorted bases) or ("B", (base,)); raise if malformed."""
    radii = [d for d in diagonals if isinstance(d, Radius)]
    bases = sorted({r.a for r in radii})
    if len(radii) == 2 and len(bases) == 1:
        if radii[0].tag == radii[1].tag:
            raise ValueError("two radii at one vertex must carry opposite tags")
        return ("B", tuple(bases))
    if len(radii) >= 2 and len(bases) == len(radii) and len({r.tag for r in radii}) == 1:
        return ("A", tuple(bases))
    raise ValueError(
        "radii must form either a same-tag fan at >= 2 vertices or an "
        "opposite-tag pair at one vertex"
    )


class Triangulation:
    """A maximal set of n pairwise non-crossing diagonals.

    Instances are immutable by convention; equality and hashing use the
    diagonal set.  Construction validates cardinality, pairwise
    compatibility and the radius tag structure.
    """

    __slots__ = ("n", "diagonals", "sorted_diagonals", "config", "radius_bases")

    def __init__(self, n: int, diagonals: Iterable[Diagonal]):
        ds = frozenset(diagonals)
        for d in ds:
            check_diagonal(d, n)
        if len(ds) != n:
            raise ValueError(f"a triangulation of the {n}-gon needs {n} diagonals, got {len(ds)}")
        lst = sorted(ds, key=diagonal_sort_key)
        for i in range(n):
            for j in range(i + 1, n):
                if crossing_number(lst[i], lst[j], n):
                    raise ValueError(f"diagonals cross: {lst[i]} and {lst[j]}")
        config, bases = _tag_config(n, lst)
        self.n = n
        self.diagonals = ds
        self.sorted_diagonals = tuple(lst)
        self.config = config
        self.radius_bases = bases

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Triangulation)
            and self.n == other.n
            and self.diagonals == other.diagonals
        )

    def __hash__(self) -> int:
        return hash((self.n, self.diagonals))

    def __repr__(self) -> str:
        inner = ", ".join(repr(d) for d in self.sorted_diagonals)
        return f"Triangulation({self.n}, [{inner}])"


def serialize_triangulation(t: Triangulation) -> bytes:
    parts = []
    for d in t.sorted_diagonals:
        if isinstance(d, Arc):
            parts.append(f"A{d.a},{d.b}")
        else:
            parts.append(f"R{d.a},{'p' if d.tag == PLAIN else 'n'}")
    return f"{t.n}|{';'.join(parts)}".encode()


def triangulation_to_json_obj(t: Triangulation) -> dict:
    out = []
    for d in t.sorted_diagonals:
        if isinstance(d, Arc):
            out.append({"arc": [d.a, d.b]})
        else:
            out.append({"radius": d.a, "tag": d.tag})
    return {"n": t.n, "diagonals": out}


def triangulation_from_json_obj(obj: dict) -> Triangulation:
    if not isinstance(obj, dict) or "n" not in obj or "diagonals" not in obj:
        raise ValueError('expected an object with "n" and "diagonals"')
    n = obj["n"]
    ds: list[Diagonal] = []
    for item in obj["diagonals"]:
        if "arc" in item:
            a, b = item["arc"]
            ds.append(Arc(a, b))
        elif "radius" in item:
            ds.append(Radius(item["radius"], item["tag"]))
        else:
            raise ValueError(f"unrecognized diagonal entry: {item!r}")
    return Triangulation(n, ds)


def fan_triangulation(n: int, tag: str = PLAIN) -> Triangulation:
    """The fan of n same-tag radii; its quiver is the oriented n-cycle."""
    return Triangulation(n, (Radius(a, tag) for a in range(n)))


def is_triangulation(n: int, ds: Iterable[Diagonal]) -> bool:
    """True iff ``ds`` has n elements and all pairs are non-crossing."""
    lst = list(ds)
    for d in lst:
        check_diagonal(d, n)
    if len(set(lst)) != n or len(lst) != n:
        return False
    return all(
        crossing_number(lst[i], lst[j], n) == 0
        for i in range(n)
        for j in range(i + 1, n)
    )


def enumerate_triangulations(n: int, *, max_n: int = 8) -> set[Triangulation]:
    """All triangulations of the punctured n-gon, by clique search.

    Backtracks over the compatibility graph of all diagonals, looking for
    size-n sets of pairwise compatible diagonals (every such set is
    maximal, hence a triangulation).
    """
    if not 3 <= n <= max_n:
        raise BoundExceededError(
            f"triangulation enumeration supports 3 <= n <= {max_n}, got {n}"
        )
    diags = all_diagonals(n)
    m = len(diags)
    compat = [0] * m
    for i in range(m):
        for j in range(i + 1, m):
            if crossing_number(diags[i], diags[j], n) == 0:
                compat[i] |= 1 << j
                compat[j] |= 1 << i
    result: set[Triangulation] = set()
    chosen: list[int] = []

    def extend(cand: int, need: int) -> None:
        if need == 0:
            result.add(Triangulation(n, (diags[i] for i in chosen)))
            return
        if cand.bit_count() < need:
            return
        rest = cand
        while rest:
            i = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            if rest.bit_count() + 1 < need:
                return
            chosen.append(i)
            extend(rest & compat[i], need - 1)
            chosen.pop()

    extend((1 << m) - 1, n)
    return result


def flip(t: Triangulation, d: Diagonal) -> Triangulation:
    """Exchange ``d`` for the unique other diagonal completing t - {d}.

    Scans every diagonal of the polygon for compatibility with the
    remaining set; exactly two candidates must turn up (``d`` and its
    replacement), anything else signals a defect in the crossing rules.
    """
    if d not in t.diagonals:
        raise ValueError(f"{d} is not a diagonal of the triangulation")
    rest = t.diagonals - {d}
    candidates = [
        x
        for x in all_diagonals(t.n)
        if x not in rest and all(crossing_number(x, y, t.n) == 0 for y in rest)
    ]
    if len(candidates) != 2 or d not in candidates:
        raise AssertionError(
            f"flip expected exactly two completions of t - {{{d}}}, got {candidates}"
        )
    other = candidates[0] if candidates[1] == d else candidates[1]
    return Triangulation(t.n, rest | {other})


def triangulations_by_flips(n: int, *, max_n: int = 8) -> set[Triangulation]:
    """Flip-closure of the plain fan; independent route to all of them."""
    if not 3 <= n <= max_n:
        raise BoundExceededError(
            f"flip closure supports 3 <= n <= {max_n}, got {n}"
        )
    start = fan_triangulation(n)
    seen = {start}
    frontier = [start]
    while frontier:
        t = frontier.pop()
        for d in t.sorted_diagonals:
            t2 = flip(t, d)
            if t2 not in seen:
                seen.add(t2)
                frontier.append(t2)
    return seen


# -- symmetries --------------------------------------------------------------


def rotate(t: Triangulation, i: int) -> Triangulation:
    """Rotate ``i`` steps clockwise: border index a becomes (a - i) mod n."""
    n = t.n
    moved: list[Diagonal] = []
    for d in t.sorted_diagonals:
        if isinstance(d, Arc):
            moved.append(Arc((d.a - i) % n, (d.b - i) % n))
        else:
            moved.append(Radius((d.a - i) % n, d.tag))
    return Triangulation(n, moved)


def invert_tags(t: Triangulation) -> Triangulation:
    """Flip the tag of every radius; an involution."""
    moved: list[Diagonal] = []
    for d in t.sorted_diagonals:
        if isinstance(d, Radius):
            moved.append(Radius(d.a, opposite_tag(d.tag)))
        else:
            moved.append(d)
    return Triangulation(t.n, moved)


def class_key(t: Triangulation) -> bytes:
    """Minimal serialization over all rotations and the tag inversion.

    Two triangulations get equal keys iff one is carried to the other by
    some rotation, possibly composed with inverting all tags.
    """
    best = None
    for base in (t, invert_tags(t)):
        for i in range(t.n):
            cand = serialize_triangulation(rotate(base, i))
            if best is None or cand < best:
                best = cand
    assert best is not None
    return best


def tau(d: Diagonal, n: int) -> Diagonal:
    """Clockwise rotation by one step; radii also flip their tag."""
    check_diagonal(d, n)
    if isinstance(d, Arc):
        return Arc((d.a - 1) % n, (d.b - 1) % n)
    return Radius((d.a - 1) % n, opposite_tag(d.tag))


def mu(d: Diagonal) -> Diagonal:
    """Flip the tag of a radius; arcs are untouched.  An involution."""
    if isinstance(d, Radius):
        return Radius(d.a, opposite_tag(d.tag))
    return d


def close_to_border(d: Diagonal, n: int) -> bool:
    """True iff ``d`` is an arc of span 2 (it cuts off a single vertex)."""
    return isinstance(d, Arc) and span(d, n) == 2


def factor_out(t: Triangulation, d: Diagonal) -> Triangulation:
    """Turn a close-to-border arc into a border edge.

    Removes ``d = Arc(a, a+2)`` together with the border vertex a+1 it
    cuts off (no other diagonal can touch that vertex) and renumbers the
    remaining vertices, producing a triangulation of the (n-1)-gon.
    """
    n = t.n
    if d not in t.diagonals:
        raise ValueError(f"{d} is not a diagonal of the triangulation")
    if not close_to_border(d, n):
        raise ValueError(f"{d} is not close to the border")
    if n < 4:
        raise ValueError("factoring out needs n >= 4")
    removed = (d.a + 1) % n

    def relabel(v: int) -> int:
        return v if v < removed else v - 1

    moved: list[Diagonal] = []
    for x in t.sorted_diagonals:
        if x == d:
            continue
        if isinstance(x, Arc):
            moved.append(Arc(relabel(x.a), relabel(x.b)))
        else:
            moved.append(Radius(relabel(x.a), x.tag))
    return Triangulation(n - 1, moved)


# -- the quiver of a triangulation -------------------------------------------
#
# Each triangle is traversed with its sides in counterclockwise order; a side
# points an arrow at its cyclic predecessor, which realizes "rotate the
# diagonal counterclockwise about the shared corner" (border edges are not
# vertices and are skipped).  With this convention the plain fan maps to the
# cycle 0 -> 1 -> ... -> n-1 -> 0.  Opposite arrows cancel in the matrix,
# which is exactly the required deletion of oriented 2-cycles.
#
# In config B the two tagged radii bound separate copies of the triangle
# outside their loop, so each radius picks up its own arrows against the two
# outer sides, but the arrow between the outer sides themselves exists only
# once (they bound a single region).


def _arrow_pairs(t: Triangulation) -> list[tuple[Diagonal, Diagonal]]:
    """Arrows of the adjacency quiver as (source, target) diagonal pairs."""
    n = t.n
    arcs = {(d.a, d.b): d for d in t.sorted_diagonals if isinstance(d, Arc)}
    radii = {(d.a, d.tag): d for d in t.sorted_diagonals if isinstance(d, Radius)}
    pairs: list[tuple[Diagonal, Diagonal]] = []

    def side(u: int, v: int) -> Diagonal | None:
        """Side between absolute positions u < v; None marks a border edge."""
        if v - u == 1:
            return None
        arc = arcs.get((u % n, v % n))
        if arc is None:
            raise AssertionError(f"missing side between {u} and {v}")
        return arc

    def side_exists(u: int, v: int) -> bool:
        return v - u == 1 or (u % n, v % n) in arcs

    def apex(u: int, v: int) -> int:
        for w in range(u + 1, v):
            if side_exists(u, w) and side_exists(w, v):
                return w
        raise AssertionError(f"no apex between {u} and {v}")

    def emit(tri: tuple[Diagonal | None, ...]) -> None:
        for pos in range(3):
            s, pred = tri[pos], tri[pos - 1]
            if s is not None and pred is not None:
                pairs.append((s, pred))

    def fill_region(u: int, v: int) -> None:
        if v - u == 1:
            return
        w = apex(u, v)
        emit((side(u, w), side(w, v), side(u, v)))
        fill_region(u, w)
        fill_region(w, v)

    if t.config == "A":
        bases = list(t.radius_bases)
        tag = next(iter(radii))[1]
        m = len(bases)
        for i in range(m):
            u = bases[i]
            v = bases[(i + 1) % m] if i + 1 < m else bases[0] + n
            emit((radii[(u % n, tag)], side(u, v), radii[(v % n, tag)]))
            fill_region(u, v)
    else:
        a = t.radius_bases[0]
        w = apex(a, a + n)
        before, after = side(a, w), side(w, a + n)
        for tag in _TAGS:
            # ccw triple is (before, after, radius); the (after -> before)
            # arrow is shared by the two copies and added once below
            r = radii[(a, tag)]
            if before is not None:
                pairs.append((before, r))
            if after is not None:
                pairs.append((r, after))
        if before is not None and after is not None:
            pairs.append((after, before))
        fill_region(a, w)
        fill_region(w, a + n)
    return pairs


def quiver_of(t: Triangulation) -> Quiver:
    """Adjacency quiver of a triangulation.

    One vertex per diagonal, in the order of ``t.sorted_diagonals``.  Two
    sides of a common triangle contribute an arrow oriented by rotating
    counterclockwise about their shared corner; oriented 2-cycles cancel.
    """
    n = t.n
    index = {d: i for i, d in enumerate(t.sorted_diagonals)}
    b = [[0] * n for _ in range(n)]
    for s, target in _arrow_pairs(t):
        b[index[s]][index[target]] += 1
        b[index[target]][index[s]] -= 1
    if any(abs(e) > 1 for row in b for e in row):
        raise AssertionError("triangulation quiver acquired a multiple arrow")
    return Quiver(n, tuple(tuple(row) for row in b))


def quiver_vertex(t: Triangulation, d: Diagonal) -> int:
    """Vertex index of diagonal ``d`` in quiver_of(t)."""
    return t.sorted_diagonals.index(d)
