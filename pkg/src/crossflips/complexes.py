"""Value-semantic simplicial complexes stored by their facet antichains.

Vertices are string tokens.  Plain digit strings ("0", "1", ...) and
"v"-prefixed digit strings ("v0", "v1", ...) form interleaved pairs used
throughout the cross-polytope constructions; any other token is an opaque
label.  The total order on tokens is "0" < "v0" < "1" < "v1" < ... with
opaque labels after all paired tokens, lexicographically.

All values are immutable after construction and all operations are pure
functions, so any value may be shared freely across threads.  Face caches
are filled lazily; a concurrent recomputation produces the identical value,
so readers always observe a consistent result.
"""

from __future__ import annotations

import itertools
import json
import math
from enum import Enum


class ComplexError(Exception):
    """Base class for errors raised by complex operations."""


class FaceNotPresent(ComplexError):
    pass


class VertexCollision(ComplexError):
    pass


class NotPure(ComplexError):
    pass


class NotSubcomplex(ComplexError):
    pass


# ---------------------------------------------------------------------------
# vertex tokens


def base(i: int) -> str:
    """Token for the plain vertex with index *i*."""
    return str(i)


def sub(i: int) -> str:
    """Token for the subdivision partner of index *i* (rendered "v<i>")."""
    return "v%d" % i


def pair_index(v: str) -> int | None:
    """Index i when *v* is one of the paired tokens "<i>"/"v<i>", else None."""
    if v.isdigit():
        return int(v)
    if v[:1] == "v" and v[1:].isdigit():
        return int(v[1:])
    return None


def is_sub(v: str) -> bool:
    return v[:1] == "v" and v[1:].isdigit()


def partner(v: str) -> str:
    """The other member of a token pair: "<i>" <-> "v<i>"."""
    i = pair_index(v)
    if i is None:
        raise ValueError("vertex %r has no pair partner" % (v,))
    return base(i) if is_sub(v) else sub(i)


def vertex_key(v: str):
    """Sort key realizing the total vertex order."""
    i = pair_index(v)
    if i is not None:
        return (0, 2 * i + (1 if is_sub(v) else 0), "")
    return (1, 0, v)


def face(*vertices) -> frozenset:
    """Build a face from vertex tokens; integers are coerced to base tokens."""
    return frozenset(str(v) if isinstance(v, int) else v for v in vertices)


def _as_face(f) -> frozenset:
    if isinstance(f, frozenset):
        return f
    return frozenset(str(v) if isinstance(v, int) else v for v in f)


def sorted_face(f) -> tuple:
    return tuple(sorted(f, key=vertex_key))


# ---------------------------------------------------------------------------
# the complex itself


class Complex:
    """A simplicial complex held as the antichain of its maximal faces.

    The empty complex (no faces at all) and the void-face complex ``{()}``
    (single empty facet, dimension -1) are distinct values.  Equality and
    hashing use the facet set only.
    """

    __slots__ = ("_facets", "_all_faces", "_faces_by_dim", "_vertices")

    def __init__(self, facets=()):
        fs = frozenset(_as_face(f) for f in facets)
        sizes = {len(f) for f in fs}
        if len(sizes) > 1:
            # mixed dimensions: verify no facet swallows another
            by_size = sorted(fs, key=len)
            for i, small in enumerate(by_size):
                for big in by_size[i + 1 :]:
                    if len(small) < len(big) and small < big:
                        raise ValueError(
                            "facet list is not an antichain: %r is contained in %r"
                            % (sorted_face(small), sorted_face(big))
                        )
        self._facets = fs
        self._all_faces = None
        self._faces_by_dim = {}
        self._vertices = None

    @classmethod
    def generated_by(cls, faces) -> "Complex":
        """Smallest complex containing the given faces."""
        fs = sorted({_as_face(f) for f in faces}, key=len, reverse=True)
        maximal: list[frozenset] = []
        for f in fs:
            if not any(f <= g for g in maximal):
                maximal.append(f)
        c = cls.__new__(cls)
        c._facets = frozenset(maximal)
        c._all_faces = None
        c._faces_by_dim = {}
        c._vertices = None
        return c

    @classmethod
    def empty(cls) -> "Complex":
        return cls(())

    @classmethod
    def void(cls) -> "Complex":
        """The complex whose only face is the empty face; dimension -1."""
        return cls((frozenset(),))

    @property
    def facets(self) -> frozenset:
        return self._facets

    @property
    def dimension(self) -> int | None:
        """Max facet dimension; None for the empty complex."""
        if not self._facets:
            return None
        return max(len(f) for f in self._facets) - 1

    @property
    def vertices(self) -> frozenset:
        if self._vertices is None:
            out = set()
            for f in self._facets:
                out.update(f)
            self._vertices = frozenset(out)
        return self._vertices

    @property
    def is_pure(self) -> bool:
        return len({len(f) for f in self._facets}) <= 1

    @property
    def n_facets(self) -> int:
        return len(self._facets)

    def all_faces(self) -> frozenset:
        """Every face, the empty face included (for a nonempty complex)."""
        if self._all_faces is None:
            out = set()
            for f in self._facets:
                vs = tuple(f)
                for r in range(len(vs) + 1):
                    out.update(frozenset(c) for c in itertools.combinations(vs, r))
            self._all_faces = frozenset(out)
        return self._all_faces

    def faces(self, k: int) -> frozenset:
        """All k-dimensional faces (k = -1 yields the empty face if present)."""
        if k not in self._faces_by_dim:
            self._faces_by_dim[k] = frozenset(
                f for f in self.all_faces() if len(f) == k + 1
            )
        return self._faces_by_dim[k]

    def has_face(self, f) -> bool:
        f = _as_face(f)
        return any(f <= g for g in self._facets)

    def euler_characteristic(self) -> int:
        d = self.dimension
        if d is None:
            return 0
        return sum((-1) ** k * len(self.faces(k)) for k in range(0, d + 1))

    def is_subcomplex_of(self, other: "Complex") -> bool:
        return all(other.has_face(f) for f in self._facets)

    def canonical_facets(self) -> list[tuple]:
        """Facets as sorted tuples, in the canonical outer order."""
        return sorted(
            (sorted_face(f) for f in self._facets),
            key=lambda t: tuple(vertex_key(v) for v in t),
        )

    def __eq__(self, other):
        return isinstance(other, Complex) and self._facets == other._facets

    def __hash__(self):
        return hash(self._facets)

    def __repr__(self):
        d = self.dimension
        return "Complex(dim=%s, facets=%d)" % (d, len(self._facets))


# ---------------------------------------------------------------------------
# local and composite constructions


def faces(c: Complex, k: int) -> frozenset:
    return c.faces(k)


def link(c: Complex, f) -> Complex:
    """Faces G disjoint from f with f | G in the complex."""
    f = _as_face(f)
    if not c.has_face(f):
        raise FaceNotPresent("face %r is not in the complex" % (sorted_face(f),))
    return Complex.generated_by(g - f for g in c.facets if f <= g)


def star(c: Complex, f) -> Complex:
    f = _as_face(f)
    if not c.has_face(f):
        raise FaceNotPresent("face %r is not in the complex" % (sorted_face(f),))
    return Complex(g for g in c.facets if f <= g)


def delete_face(c: Complex, f) -> Complex:
    """All faces of c not containing f."""
    f = _as_face(f)
    if not c.has_face(f):
        raise FaceNotPresent("face %r is not in the complex" % (sorted_face(f),))
    keep = []
    for g in c.facets:
        if f <= g:
            keep.extend(g - {x} for x in f)
        else:
            keep.append(g)
    return Complex.generated_by(keep)


def delete_subcomplex(c: Complex, subc: Complex) -> Complex:
    """Complex generated by the facets of c that are not facets of subc."""
    return Complex(c.facets - subc.facets)


def join(a: Complex, b: Complex) -> Complex:
    """Join of complexes on disjoint vertex sets."""
    shared = a.vertices & b.vertices
    if shared:
        raise VertexCollision("join requires disjoint vertex sets; shared: %r"
                              % sorted(shared, key=vertex_key))
    return Complex(fa | fb for fa in a.facets for fb in b.facets)


def boundary_complex(c: Complex) -> Complex:
    """Complex generated by the ridges lying in exactly one facet."""
    if not c.is_pure or not c.facets:
        raise NotPure("boundary complex requires a pure nonempty complex")
    d = c.dimension
    if d < 1:
        raise NotPure("boundary complex requires dimension at least 1")
    count: dict[frozenset, int] = {}
    for g in c.facets:
        for x in g:
            r = g - {x}
            count[r] = count.get(r, 0) + 1
    rim = [r for r, n in count.items() if n == 1]
    if not rim:
        return Complex.empty()
    return Complex(rim)


def f_vector(c: Complex) -> tuple:
    """(f_-1, f_0, ..., f_d); requires a pure complex."""
    if not c.facets:
        raise NotPure("the empty complex has no f-vector")
    if not c.is_pure:
        raise NotPure("f-vector requires a pure complex")
    d = c.dimension
    return tuple([1] + [len(c.faces(k)) for k in range(0, d + 1)])


def _binom(n: int, k: int) -> int:
    if k == 0:
        return 1
    if k < 0 or n < k:
        return 0
    return math.comb(n, k)


def h_vector(c: Complex) -> tuple:
    """(h_0, ..., h_{d+1}) via the alternating binomial transform of f."""
    fv = f_vector(c)
    d = c.dimension
    out = []
    for j in range(d + 2):
        out.append(
            sum(
                (-1) ** (j - i) * _binom(d + 1 - i, d + 1 - j) * fv[i]
                for i in range(j + 1)
            )
        )
    return tuple(out)


def is_induced(c: Complex, subc: Complex) -> bool:
    """True when every face of c spanned by the sub's vertices lies in it."""
    if not subc.is_subcomplex_of(c):
        raise NotSubcomplex("second argument is not a subcomplex of the first")
    vs = subc.vertices
    sub_faces = subc.all_faces()
    return all(f in sub_faces for f in c.all_faces() if f <= vs)


def relabel(c: Complex, mapping: dict) -> Complex:
    """Apply a vertex relabeling; unmapped vertices keep their tokens."""
    out = []
    for f in c.facets:
        g = frozenset(mapping.get(v, v) for v in f)
        if len(g) != len(f):
            raise VertexCollision("relabeling collapses a facet")
        out.append(g)
    return Complex(out)


def is_connected(c: Complex) -> bool:
    verts = list(c.vertices)
    if len(verts) <= 1:
        return True
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in c.facets:
        it = iter(g)
        try:
            first = next(it)
        except StopIteration:
            continue
        r = find(first)
        for v in it:
            parent[find(v)] = r
    roots = {find(v) for v in verts}
    return len(roots) == 1


# ---------------------------------------------------------------------------
# colorings


def is_proper_coloring(c: Complex, coloring: dict, m: int) -> bool:
    """No vertex uncolored, all colors in range(m), no monochromatic edge."""
    for v in c.vertices:
        col = coloring.get(v)
        if col is None or not (0 <= col < m):
            return False
    for e in c.faces(1):
        u, v = tuple(e)
        if coloring[u] == coloring[v]:
            return False
    return True


def find_balanced_coloring(c: Complex) -> dict | None:
    """Exact backtracking search for a proper (dim+1)-coloring.

    Returns the first coloring in canonical vertex order, or None when no
    proper coloring with dim+1 colors exists.
    """
    d = c.dimension
    if d is None:
        return {}
    m = d + 1
    verts = sorted(c.vertices, key=vertex_key)
    adj: dict[str, set] = {v: set() for v in verts}
    for e in c.faces(1):
        u, v = tuple(e)
        adj[u].add(v)
        adj[v].add(u)
    coloring: dict[str, int] = {}

    def attempt(i: int) -> bool:
        if i == len(verts):
            return True
        v = verts[i]
        used = {coloring[w] for w in adj[v] if w in coloring}
        for col in range(m):
            if col not in used:
                coloring[v] = col
                if attempt(i + 1):
                    return True
                del coloring[v]
        return False

    return dict(coloring) if attempt(0) else None


# ---------------------------------------------------------------------------
# isomorphism


def _vertex_invariant(c: Complex, v: str) -> tuple:
    counts = [0] * ((c.dimension or 0) + 1)
    for f in c.all_faces():
        if v in f:
            counts[len(f) - 1] += 1
    lk = Complex.generated_by(g - {v} for g in c.facets if v in g)
    lk_counts = tuple(
        sum(1 for f in lk.all_faces() if len(f) == k + 1)
        for k in range((lk.dimension if lk.dimension is not None else -1) + 1)
    )
    return (tuple(counts), lk_counts)


def are_isomorphic(a: Complex, b: Complex, respect_colors=None, fixed=None):
    """Search for a vertex bijection inducing a facet bijection.

    Returns the first map found in the deterministic backtracking order, or
    None.  With ``respect_colors=(ka, kb)`` the map must preserve colors;
    ``fixed`` pre-assigns part of the map (used for locus-fixing checks).
    """
    if len(a.vertices) != len(b.vertices) or len(a.facets) != len(b.facets):
        return None
    if sorted(len(f) for f in a.facets) != sorted(len(f) for f in b.facets):
        return None

    inv_a = {v: _vertex_invariant(a, v) for v in a.vertices}
    inv_b = {v: _vertex_invariant(b, v) for v in b.vertices}
    if sorted(inv_a.values()) != sorted(inv_b.values()):
        return None

    ka, kb = respect_colors if respect_colors is not None else (None, None)

    adj_a = {v: set() for v in a.vertices}
    for e in a.faces(1):
        u, v = tuple(e)
        adj_a[u].add(v)
        adj_a[v].add(u)
    adj_b = {v: set() for v in b.vertices}
    for e in b.faces(1):
        u, v = tuple(e)
        adj_b[u].add(v)
        adj_b[v].add(u)

    mapping: dict[str, str] = {}
    used: set[str] = set()
    if fixed:
        for u, w in fixed.items():
            if u not in a.vertices or w not in b.vertices:
                return None
            if inv_a[u] != inv_b[w] or w in used:
                return None
            mapping[u] = w
            used.add(w)

    def compatible(u: str, w: str) -> bool:
        if inv_a[u] != inv_b[w]:
            return False
        if ka is not None and ka.get(u) != kb.get(w):
            return False
        for u2, w2 in mapping.items():
            if (u2 in adj_a[u]) != (w2 in adj_b[w]):
                return False
        return True

    order = sorted((v for v in a.vertices if v not in mapping), key=vertex_key)
    b_sorted = sorted(b.vertices, key=vertex_key)

    def attempt(i: int) -> bool:
        if i == len(order):
            image = frozenset(frozenset(mapping[v] for v in f) for f in a.facets)
            return image == b.facets
        u = order[i]
        for w in b_sorted:
            if w in used or not compatible(u, w):
                continue
            mapping[u] = w
            used.add(w)
            if attempt(i + 1):
                return True
            del mapping[u]
            used.discard(w)
        return False

    if attempt(0):
        return dict(mapping)
    return None


# ---------------------------------------------------------------------------
# manifold recognition (exact up to ambient dimension 3)


class ManifoldVerdict(Enum):
    CLOSED = "closed"
    WITH_BOUNDARY = "with-boundary"
    NO = "no"
    UNDECIDED = "undecided"


def _classify_dim0(c: Complex) -> str | None:
    n = len(c.vertices)
    if n == 2:
        return "sphere"
    if n == 1:
        return "ball"
    return None


def _classify_dim1(c: Complex) -> str | None:
    if c.dimension != 1 or not c.is_pure or not is_connected(c):
        return None
    deg = {v: 0 for v in c.vertices}
    for e in c.facets:
        for v in e:
            deg[v] += 1
    ones = sum(1 for d in deg.values() if d == 1)
    if any(d > 2 for d in deg.values()):
        return None
    if ones == 0:
        return "sphere"
    if ones == 2:
        return "ball"
    return None


def _classify_dim2(c: Complex) -> str | None:
    if c.dimension != 2 or not c.is_pure or not is_connected(c):
        return None
    edge_count: dict[frozenset, int] = {}
    for g in c.facets:
        for x in g:
            e = g - {x}
            edge_count[e] = edge_count.get(e, 0) + 1
    if any(n > 2 for n in edge_count.values()):
        return None
    has_boundary = any(n == 1 for n in edge_count.values())
    for v in c.vertices:
        lk = Complex.generated_by(g - {v} for g in c.facets if v in g)
        kind = _classify_dim1(lk)
        if kind is None:
            return None
        if kind == "sphere" and has_boundary:
            continue
        if kind == "ball" and not has_boundary:
            return None
    chi = c.euler_characteristic()
    if not has_boundary:
        return "sphere" if chi == 2 else None
    # compact connected surface with boundary and chi = 1 is a disc
    return "ball" if chi == 1 else None


_LINK_CLASSIFIERS = {0: _classify_dim0, 1: _classify_dim1, 2: _classify_dim2}


def is_combinatorial_manifold(c: Complex) -> ManifoldVerdict:
    """Exact verdict for dimension <= 3; Undecided above that.

    Vertex links are classified recursively: one-dimensional links must be
    single cycles or paths, two-dimensional links closed or bounded surfaces
    with Euler characteristic 2 or 1 and all of their own vertex links
    cycles or paths.
    """
    if not c.is_pure or not c.facets:
        raise NotPure("manifold check requires a pure nonempty complex")
    d = c.dimension
    if d >= 4:
        return ManifoldVerdict.UNDECIDED
    if not is_connected(c):
        return ManifoldVerdict.NO
    if d == 0:
        return ManifoldVerdict.CLOSED if len(c.vertices) == 1 else ManifoldVerdict.NO
    classify = _LINK_CLASSIFIERS[d - 1]
    saw_ball = False
    for v in sorted(c.vertices, key=vertex_key):
        lk = Complex.generated_by(g - {v} for g in c.facets if v in g)
        kind = classify(lk)
        if kind is None:
            return ManifoldVerdict.NO
        if kind == "ball":
            saw_ball = True
    return ManifoldVerdict.WITH_BOUNDARY if saw_ball else ManifoldVerdict.CLOSED


# ---------------------------------------------------------------------------
# JSON interchange
#
# {"facets": [["0", "1", "v2"], ...], "coloring": {"0": 0, ...}}
# Facet arrays are sorted in the canonical vertex order and the outer list
# lexicographically; readers reject facet lists that are not antichains.


def complex_to_doc(c: Complex, coloring: dict | None = None) -> dict:
    doc = {"facets": [list(t) for t in c.canonical_facets()]}
    if coloring is not None:
        doc["coloring"] = {
            v: coloring[v] for v in sorted(coloring, key=vertex_key)
        }
    return doc


def complex_from_doc(doc: dict):
    """Parse the interchange dict; returns (complex, coloring-or-None)."""
    if not isinstance(doc, dict) or "facets" not in doc:
        raise ValueError("expected an object with a 'facets' list")
    facets = doc["facets"]
    if not isinstance(facets, list) or not all(isinstance(f, list) for f in facets):
        raise ValueError("'facets' must be a list of vertex-token lists")
    for f in facets:
        if len(set(f)) != len(f):
            raise ValueError("facet %r has repeated vertices" % (f,))
    c = Complex(facets)  # raises ValueError on non-antichain input
    coloring = doc.get("coloring")
    if coloring is not None:
        if not isinstance(coloring, dict):
            raise ValueError("'coloring' must be an object")
        coloring = {str(k): int(v) for k, v in coloring.items()}
    return c, coloring


def dumps(c: Complex, coloring: dict | None = None) -> str:
    return json.dumps(complex_to_doc(c, coloring), indent=2) + "\n"


def loads(text: str):
    return complex_from_doc(json.loads(text))
