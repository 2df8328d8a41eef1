"""The four local moves: stellar subdivision/weld, bistellar flips,
elementary and inverse shellings, and cross-flips.

A cross-flip replaces an induced, shellable, co-shellable copy of a diamond
complex by the complement of that complex in the cross-polytope boundary.
Both shellability conditions are re-verified by exhaustive search on every
application rather than trusted from the catalog.  Fresh vertices created
by subdivisions and cross-flips are labeled "w<k>" by a monotone counter
namespaced per complex.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import diamond as _diamond
from .complexes import (
    Complex,
    ComplexError,
    FaceNotPresent,
    _as_face,
    boundary_complex,
    delete_subcomplex,
    is_induced,
    is_proper_coloring,
    link,
    partner,
    pair_index,
    sorted_face,
    vertex_key,
)
from .shelling import find_shelling


class NotWeldable(ComplexError):
    pass


class NotApplicable(ComplexError):
    pass


class ConditionViolated(ComplexError):
    """A named elementary-shelling condition (1), (2) or (3) failed."""

    def __init__(self, condition: int, message: str):
        super().__init__("condition (%d): %s" % (condition, message))
        self.condition = condition


class NotInduced(ComplexError):
    pass


class NotShellable(ComplexError):
    pass


class NotCoShellable(ComplexError):
    pass


class EmbeddingNotInjective(ComplexError):
    pass


class NotApplicableOnBoundary(ComplexError):
    pass


# ---------------------------------------------------------------------------
# move records


@dataclass(frozen=True)
class BistellarFlip:
    """Exchange of the cone over the boundary of B with the cone over A."""

    A: frozenset
    B: frozenset


@dataclass(frozen=True)
class CrossFlip:
    """A diamond-complex index set plus an embedding into the ambient complex."""

    d: int
    spec: tuple
    embedding: dict = field(hash=False)

    def image_facets(self) -> frozenset:
        abstract = _diamond.diamond_closed_form(self.d, self.spec)
        return frozenset(
            frozenset(self.embedding[v] for v in f) for f in abstract.facets
        )


@dataclass(frozen=True)
class ShellingMove:
    """A facet together with its interior/boundary decomposition A, R."""

    facet: frozenset
    A: frozenset
    R: frozenset


@dataclass(frozen=True)
class CrossFlipResult:
    complex: Complex
    vertex_map: dict = field(hash=False)
    fresh_vertices: tuple = ()
    complement_induced: bool = True


def fresh_vertices(c: Complex, count: int) -> list:
    """Next *count* unused "w<k>" labels for the given complex."""
    top = -1
    for v in c.vertices:
        if v[:1] == "w" and v[1:].isdigit():
            top = max(top, int(v[1:]))
    return ["w%d" % (top + 1 + i) for i in range(count)]


# ---------------------------------------------------------------------------
# stellar moves


def stellar_subdivide(c: Complex, f, new_vertex: str | None = None) -> Complex:
    """Replace the star of f by the cone over its boundary joined with the
    link, introducing one new vertex."""
    f = _as_face(f)
    if not f:
        raise FaceNotPresent("cannot subdivide the empty face")
    if not c.has_face(f):
        raise FaceNotPresent("face %r is not in the complex" % (sorted_face(f),))
    if new_vertex is None:
        new_vertex = fresh_vertices(c, 1)[0]
    if new_vertex in c.vertices:
        raise ValueError("replacement vertex %r already present" % (new_vertex,))
    out = []
    for h in c.facets:
        if f <= h:
            out.extend((h - {x}) | {new_vertex} for x in f)
        else:
            out.append(h)
    return Complex.generated_by(out)


def stellar_weld(c: Complex, v: str, face_hint=None) -> Complex:
    """Invert a prior subdivision at the vertex v, when reconstructible.

    Searches for a face whose subdivision produced v; a reconstruction is
    accepted only if re-subdividing reproduces the input exactly.  When the
    link of v admits several join decompositions the subdivided face is not
    determined by the complex; pass ``face_hint`` to name it, otherwise the
    first valid candidate in canonical order is used.
    """
    if v not in c.vertices:
        raise FaceNotPresent("vertex %r is not in the complex" % (v,))
    lk_v = link(c, frozenset([v]))
    pool = sorted(lk_v.vertices, key=vertex_key)
    outside = [h for h in c.facets if v not in h]
    if face_hint is not None:
        hinted = sorted_face(_as_face(face_hint))
        candidates = [hinted] if set(hinted) <= set(pool) else []
    else:
        candidates = [
            cand
            for size in range(2, len(pool) + 1)
            for cand in itertools.combinations(pool, size)
        ]
    for cand in candidates:
        fprime = frozenset(cand)
        if c.has_face(fprime):
            continue
        ridge = fprime - {cand[0]}
        if not lk_v.has_face(ridge):
            continue
        rest = link(lk_v, ridge)
        if rest.vertices & fprime:
            continue
        welded = Complex.generated_by(outside + [fprime | g for g in rest.facets])
        if v in welded.vertices or not welded.has_face(fprime):
            continue
        try:
            again = stellar_subdivide(welded, fprime, new_vertex=v)
        except (FaceNotPresent, ValueError):
            continue
        if again == c:
            return welded
    raise NotWeldable("no face reconstructs vertex %r" % (v,))


# ---------------------------------------------------------------------------
# bistellar flips


def _boundary_of_simplex(b: frozenset) -> Complex:
    if len(b) == 1:
        return Complex.void()
    return Complex(b - {x} for x in b)


def apply_bistellar(c: Complex, flip: BistellarFlip) -> Complex:
    """Swap the cone A * boundary(B) for boundary(A) * B."""
    a, b = _as_face(flip.A), _as_face(flip.B)
    if not a or not b:
        raise NotApplicable("both faces of a flip must be nonempty")
    if a & b:
        raise NotApplicable("flip faces must be disjoint")
    if not c.has_face(a):
        raise NotApplicable("face %r is not in the complex" % (sorted_face(a),))
    if c.has_face(b):
        raise NotApplicable("face %r is already present" % (sorted_face(b),))
    if link(c, a) != _boundary_of_simplex(b):
        raise NotApplicable("link of %r is not the boundary of %r"
                            % (sorted_face(a), sorted_face(b)))
    removed = {a | (b - {x}) for x in b} if len(b) > 1 else {a}
    added = {(a - {x}) | b for x in a}
    if not removed <= c.facets:
        raise NotApplicable("flip region is not a union of facets")
    return Complex((c.facets - removed) | added)


def inverse_flip(flip: BistellarFlip) -> BistellarFlip:
    return BistellarFlip(A=flip.B, B=flip.A)


def list_bistellar(c: Complex) -> list:
    """All applicable flips, in a deterministic order.

    Candidates for B are the vertex set of the link of A (when it spans a
    missing simplex boundary) plus one fresh vertex for the facet
    subdivision case.
    """
    d = c.dimension
    if d is None:
        return []
    fresh = fresh_vertices(c, 1)[0]
    out = []
    all_faces = sorted(
        (f for f in c.all_faces() if f),
        key=lambda f: (len(f), sorted_face(f)),
    )
    for a in all_faces:
        lk_a = link(c, a)
        if lk_a == Complex.void():
            out.append(BistellarFlip(A=a, B=frozenset([fresh])))
            continue
        bverts = frozenset(lk_a.vertices)
        if len(bverts) != d + 2 - len(a):
            continue
        if c.has_face(bverts):
            continue
        if lk_a == _boundary_of_simplex(bverts):
            out.append(BistellarFlip(A=a, B=bverts))
    return out


# ---------------------------------------------------------------------------
# elementary shellings


def _check_shelling_conditions(c: Complex, f, a, r) -> None:
    f, a, r = _as_face(f), _as_face(a), _as_face(r)
    if not a or not r:
        raise ConditionViolated(1, "both parts must be nonempty")
    if a | r != f or a & r:
        raise ConditionViolated(1, "facet must split as a disjoint union A | R")
    if f not in c.facets:
        raise ConditionViolated(1, "%r is not a facet" % (sorted_face(f),))
    bd = boundary_complex(c)
    bd_faces = bd.all_faces() if bd.facets else frozenset()
    if not c.has_face(a) or a in bd_faces:
        raise ConditionViolated(2, "A must be a face interior to the complex")
    for x in a:
        piece = (a - {x}) | r
        if piece not in bd_faces:
            raise ConditionViolated(
                3, "%r is not in the boundary" % (sorted_face(piece),)
            )


def shelling_move(c: Complex, f, a, r) -> Complex:
    """Remove a facet whose decomposition satisfies the three conditions."""
    _check_shelling_conditions(c, f, a, r)
    return Complex(c.facets - {_as_face(f)})


def find_shelling_decomposition(c: Complex, f):
    """First interior/boundary split (A, R) legalizing the removal of f,
    or None when no elementary shelling removes it."""
    f = _as_face(f)
    for size in range(1, len(f)):
        for a_tuple in itertools.combinations(sorted_face(f), size):
            a = frozenset(a_tuple)
            r = f - a
            try:
                _check_shelling_conditions(c, f, a, r)
            except ConditionViolated:
                continue
            return a, r
    return None


def inverse_shelling(c: Complex, f_new, a, r) -> Complex:
    """Add a facet; the post-state must satisfy the removal conditions."""
    f_new = _as_face(f_new)
    if c.has_face(f_new):
        raise ConditionViolated(1, "facet %r already present" % (sorted_face(f_new),))
    grown = Complex.generated_by(list(c.facets) + [f_new])
    _check_shelling_conditions(grown, f_new, a, r)
    return grown


# ---------------------------------------------------------------------------
# cross-flips


def apply_cross_flip(c: Complex, flip: CrossFlip, budget: int = 24) -> Complex:
    return apply_cross_flip_detailed(c, flip, budget=budget).complex


def apply_cross_flip_detailed(c: Complex, flip: CrossFlip, budget: int = 24) -> CrossFlipResult:
    """Replace the embedded diamond complex by its cross-polytope complement.

    Checks, in order: the embedding is injective and covers the abstract
    vertices, the image is an induced subcomplex, the abstract complex
    shells, and its complement shells.  The returned record carries the
    total map from abstract cross-polytope vertices to ambient labels and
    whether the glued complement sits induced in the result.
    """
    d = flip.d
    spec = _diamond._check_index_set(d, flip.spec, d)
    abstract = _diamond.diamond_closed_form(d, spec)
    emb = dict(flip.embedding)
    missing = abstract.vertices - set(emb)
    if missing:
        raise EmbeddingNotInjective(
            "embedding does not cover %r" % sorted(missing, key=vertex_key)
        )
    image_of = {v: emb[v] for v in abstract.vertices}
    if len(set(image_of.values())) != len(image_of):
        raise EmbeddingNotInjective("embedding identifies two vertices")

    image = Complex(frozenset(image_of[v] for v in f) for f in abstract.facets)
    if not image.is_subcomplex_of(c):
        raise NotInduced("embedded complex is not a subcomplex of the ambient")
    if not is_induced(c, image):
        raise NotInduced("embedded complex is not induced in the ambient")
    if find_shelling(abstract, budget=budget) is None:
        raise NotShellable("the removed complex does not shell")
    complement = delete_subcomplex(_diamond.cross_polytope(d), abstract)
    if find_shelling(complement, budget=budget) is None:
        raise NotCoShellable("the cross-polytope complement does not shell")

    total = dict(image_of)
    unseen = sorted(complement.vertices - abstract.vertices, key=vertex_key)
    for v, w in zip(unseen, fresh_vertices(c, len(unseen))):
        total[v] = w
    glued = Complex(frozenset(total[v] for v in f) for f in complement.facets)
    result = Complex(delete_subcomplex(c, image).facets | glued.facets)
    return CrossFlipResult(
        complex=result,
        vertex_map=total,
        fresh_vertices=tuple(total[v] for v in unseen),
        complement_induced=is_induced(result, glued),
    )


def extend_coloring_after_cross_flip(coloring: dict, result: CrossFlipResult) -> dict:
    """Colors for the glued complement: each fresh vertex inherits the color
    of its pair partner's image.  Stale entries for vertices no longer in
    the complex are dropped, since their labels may be reused later."""
    fresh = set(result.fresh_vertices)
    out = {v: col for v, col in coloring.items()
           if v in result.complex.vertices and v not in fresh}
    for v, w in result.vertex_map.items():
        if w in fresh:
            out[w] = coloring[result.vertex_map[partner(v)]]
    return out


def find_cross_flip_sites(c: Complex, coloring: dict, indices) -> list:
    """All color-consistent induced embeddings of the diamond complex of the
    given index set, deduplicated by image, in a deterministic order."""
    d = c.dimension
    if d is None:
        return []
    try:
        spec = _diamond._check_index_set(d, indices, d)
    except ValueError:
        return []
    abstract = _diamond.diamond_closed_form(d, spec)
    if abstract.dimension != d:
        return []

    afacets = sorted(abstract.facets, key=sorted_face)
    root = afacets[0]
    # spanning walk over the dual graph of the abstract complex
    walk: list[tuple[frozenset, frozenset, frozenset]] = []  # (new, via, from)
    placed = {root}
    frontier = [root]
    while frontier:
        cur = frontier.pop(0)
        for nxt in afacets:
            if nxt in placed:
                continue
            shared = cur & nxt
            if len(shared) == d:
                walk.append((nxt, shared, cur))
                placed.add(nxt)
                frontier.append(nxt)
    if len(placed) != len(afacets):
        raise ValueError("abstract flip complex is not ridge-connected")

    facet_index: dict[frozenset, list] = {}
    for h in c.facets:
        for x in h:
            facet_index.setdefault(h - {x}, []).append(h)

    sites: list[CrossFlip] = []
    seen_images: set[frozenset] = set()
    root_sorted = sorted_face(root)
    for target in sorted(c.facets, key=sorted_face):
        for perm in itertools.permutations(sorted_face(target)):
            emb = dict(zip(root_sorted, perm))
            fmap = {root: target}
            ok = True
            for new, shared, origin in walk:
                img_ridge = frozenset(emb[v] for v in shared)
                img_origin = fmap[origin]
                cands = [
                    h for h in facet_index.get(img_ridge, []) if h != img_origin
                ]
                if len(cands) != 1:
                    ok = False
                    break
                (x_new,) = tuple(new - shared)
                (w_new,) = tuple(cands[0] - img_ridge)
                if x_new in emb:
                    if emb[x_new] != w_new:
                        ok = False
                        break
                elif w_new in emb.values():
                    ok = False
                    break
                else:
                    emb[x_new] = w_new
                fmap[new] = cands[0]
            if not ok:
                continue
            image = frozenset(fmap.values())
            if image in seen_images:
                continue
            if len(fmap) != len(set(fmap.values())):
                continue
            if not _color_consistent(coloring, emb):
                continue
            image_complex = Complex(image)
            if not is_induced(c, image_complex):
                continue
            seen_images.add(image)
            sites.append(CrossFlip(d=d, spec=spec, embedding=emb))
    return sites


def _color_consistent(coloring: dict, emb: dict) -> bool:
    pair_color: dict[int, int] = {}
    for v, w in emb.items():
        col = coloring.get(w)
        if col is None:
            return False
        i = pair_index(v)
        if i in pair_color and pair_color[i] != col:
            return False
        pair_color[i] = col
    return len(set(pair_color.values())) == len(pair_color)


# ---------------------------------------------------------------------------
# balancedness


def preserves_balancedness(c: Complex, coloring: dict, move) -> bool:
    """Whether the move keeps every edge bichromatic under the canonical
    color extension (fresh vertices forced, existing vertices unchanged)."""
    d = c.dimension
    m = d + 1
    if isinstance(move, ShellingMove):
        if c.has_face(move.facet) and move.facet in c.facets:
            shelling_move(c, move.facet, move.A, move.R)
            return True
        after = inverse_shelling(c, move.facet, move.A, move.R)
        extended = _greedy_extend(coloring, after, m)
        return extended is not None and is_proper_coloring(after, extended, m)
    if isinstance(move, BistellarFlip):
        after = apply_bistellar(c, move)
        extended = _greedy_extend(coloring, after, m)
        return extended is not None and is_proper_coloring(after, extended, m)
    if isinstance(move, CrossFlip):
        res = apply_cross_flip_detailed(c, move)
        extended = extend_coloring_after_cross_flip(coloring, res)
        return is_proper_coloring(res.complex, extended, m)
    raise NotApplicable("unknown move type %r" % type(move).__name__)


def _greedy_extend(coloring: dict, after: Complex, m: int):
    out = dict(coloring)
    adj: dict[str, set] = {v: set() for v in after.vertices}
    for e in after.faces(1):
        u, v = tuple(e)
        adj[u].add(v)
        adj[v].add(u)
    for v in sorted(after.vertices, key=vertex_key):
        if v in out:
            continue
        used = {out[w] for w in adj[v] if w in out}
        free = [col for col in range(m) if col not in used]
        if not free:
            return None
        out[v] = free[0]
    return out


# ---------------------------------------------------------------------------
# boundary realization of a bistellar flip


def boundary_bistellar_realization(c: Complex, a, b) -> Complex:
    """Add or remove the facet A | B so that the boundary of the result is
    exactly the flipped boundary of the input."""
    from .complexes import ManifoldVerdict, is_combinatorial_manifold

    a, b = _as_face(a), _as_face(b)
    if is_combinatorial_manifold(c) != ManifoldVerdict.WITH_BOUNDARY:
        raise NotApplicableOnBoundary("ambient must be a manifold with boundary")
    bd = boundary_complex(c)
    if not bd.has_face(a):
        raise NotApplicableOnBoundary("face is not on the boundary")
    if bd.has_face(b):
        raise NotApplicableOnBoundary("target face already on the boundary")
    if link(bd, a) != _boundary_of_simplex(b):
        raise NotApplicableOnBoundary("boundary link does not match")
    f_full = a | b
    if c.has_face(f_full):
        if f_full not in c.facets:
            raise NotApplicableOnBoundary("flip region is not a single facet")
        result = Complex(c.facets - {f_full})
    else:
        result = Complex.generated_by(list(c.facets) + [f_full])
    want = apply_bistellar(bd, BistellarFlip(A=a, B=b))
    got = boundary_complex(result)
    if got != want:
        raise NotApplicableOnBoundary("result boundary is not the flipped boundary")
    return result
