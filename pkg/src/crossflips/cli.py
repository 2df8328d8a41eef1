"""Command-line surface: generation, checking, move scripts, random walks,
the flip catalog, and the verification suites.

Exit codes are a contract: 0 pass, 1 fail, 2 undecided or dimension cap,
3 usage error.  All outputs are byte-stable for fixed inputs and seeds.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import random
import sys
from dataclasses import dataclass, field

from . import catalog as _catalog
from . import moves as _moves
from .complexes import (
    Complex,
    ComplexError,
    ManifoldVerdict,
    base,
    complex_from_doc,
    complex_to_doc,
    find_balanced_coloring,
    is_combinatorial_manifold,
    is_induced,
    is_proper_coloring,
    sorted_face,
    sub,
)
from .diamond import (
    cross_polytope,
    diamond_closed_form,
    simplex_boundary,
    standard_coloring,
)
from .shelling import (
    NotAPermutation,
    RelativeComplex,
    is_relative_shelling,
    is_shelling,
)


class UsageError(Exception):
    pass


class StepFailed(Exception):
    def __init__(self, step, reason):
        super().__init__("step %s: %s" % (step, reason))
        self.step = step
        self.reason = reason


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _read_doc(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _dump_doc(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _parse_face(text: str) -> frozenset:
    items = [t for t in text.split(",") if t]
    return frozenset(items)


def _parse_index(text: str) -> tuple:
    try:
        return tuple(sorted({int(t) for t in text.split(",") if t != ""}))
    except ValueError:
        raise UsageError("--index wants a comma list of integers")


# ---------------------------------------------------------------------------
# gen


def cmd_gen(args) -> int:
    kind = args.kind
    d = args.dim
    if d is None:
        raise UsageError("gen requires --dim")
    if kind == "cross-polytope":
        c = cross_polytope(d)
        coloring = standard_coloring(d)
    elif kind == "simplex-boundary":
        c = simplex_boundary(d)
        coloring = None
    elif kind == "diamond":
        if args.index is None:
            raise UsageError("gen diamond requires --index")
        c = diamond_closed_form(d, args.index)
        full = standard_coloring(d)
        coloring = {v: full[v] for v in c.vertices}
    elif kind == "stacked":
        copies = args.copies if args.copies is not None else 1
        c, coloring = _catalog.stacked_cross_sphere_colored(copies, d)
    elif kind == "barycentric":
        c, coloring = _catalog.barycentric_sphere(d)
    else:
        raise UsageError("unknown generator %r" % (kind,))
    _write_text(args.out, _dump_doc(complex_to_doc(c, coloring)))
    return 0


# ---------------------------------------------------------------------------
# check


def cmd_check(args) -> int:
    doc = _read_doc(args.file)
    what = args.what
    if what == "manifold":
        c, _ = complex_from_doc(doc)
        verdict = is_combinatorial_manifold(c)
        print("manifold: %s" % verdict.value)
        if verdict in (ManifoldVerdict.CLOSED, ManifoldVerdict.WITH_BOUNDARY):
            return 0
        if verdict is ManifoldVerdict.UNDECIDED:
            return 2
        return 1
    if what == "balanced":
        c, coloring = complex_from_doc(doc)
        m = (c.dimension or 0) + 1
        if coloring is not None:
            ok = is_proper_coloring(c, coloring, m)
            print("balanced: %s (stored coloring, %d colors)" % (ok, m))
            return 0 if ok else 1
        found = find_balanced_coloring(c)
        print("balanced: %s (coloring search, %d colors)" % (found is not None, m))
        return 0 if found is not None else 1
    if what == "induced":
        if "complex" not in doc or "sub" not in doc:
            raise UsageError("induced check wants {\"complex\": ..., \"sub\": ...}")
        c, _ = complex_from_doc(doc["complex"])
        s, _ = complex_from_doc(doc["sub"])
        ok = is_induced(c, s)
        print("induced: %s" % ok)
        return 0 if ok else 1
    if what == "shelling-order":
        if "complex" not in doc or "order" not in doc:
            raise UsageError(
                "shelling-order check wants {\"complex\": ..., \"order\": ...,"
                " \"removed\"?: ..., \"restrictions\"?: ..., \"mode\"?: ...}"
            )
        c, _ = complex_from_doc(doc["complex"])
        order = [frozenset(f) for f in doc["order"]]
        if doc.get("mode") == "removal":
            return _check_removal_order(c, order)
        try:
            if "removed" in doc and doc["removed"] is not None:
                removed, _ = complex_from_doc(doc["removed"])
                verdict = is_relative_shelling(RelativeComplex(c, removed), order)
            else:
                verdict = is_shelling(c, order)
        except NotAPermutation as exc:
            print("FAIL: %s" % exc)
            return 1
        if not verdict.ok:
            offending = ", ".join(str(list(sorted_face(f))) for f in verdict.minimal_new_faces)
            print("FAIL at facet %d: minimal new faces %s"
                  % (verdict.failing_index + 1, offending))
            return 1
        if "restrictions" in doc and doc["restrictions"] is not None:
            want = tuple(frozenset(f) for f in doc["restrictions"])
            if want != verdict.restrictions:
                print("FAIL: restriction faces do not match")
                return 1
        print("PASS: shelling of %d facets" % len(order))
        return 0
    raise UsageError("unknown check %r" % (what,))


def _check_removal_order(c: Complex, order) -> int:
    """Validate a sequence of elementary shelling removals facet by facet.

    Reports the first facet admitting no interior/boundary decomposition,
    together with its intersection with the current boundary.
    """
    from .complexes import boundary_complex

    cur = c
    for pos, f in enumerate(order, start=1):
        if f not in cur.facets:
            print("FAIL at facet %d: not a facet of the current complex" % pos)
            return 1
        split = _moves.find_shelling_decomposition(cur, f)
        if split is None:
            bd = boundary_complex(cur)
            inter = [g for g in bd.all_faces() if g and g <= f]
            maxi = [g for g in inter if not any(g < h for h in inter)]
            desc = ", ".join(str(list(sorted_face(g))) for g in sorted(maxi, key=sorted_face))
            print(
                "FAIL at facet %d: no elementary shelling decomposition; "
                "boundary intersection is %s" % (pos, desc)
            )
            return 1
        a, r = split
        cur = _moves.shelling_move(cur, f, a, r)
    print("PASS: %d elementary shellings" % len(order))
    return 0


# ---------------------------------------------------------------------------
# flip scripts


def _anchor_embedding(c: Complex, spec: tuple, anchor: tuple) -> dict:
    """Embedding determined by the images of the entry facet of the first
    block, extended facet-by-facet across shared ridges."""
    d = c.dimension
    abstract = diamond_closed_form(d, spec)
    i1 = min(spec)
    if i1 == d + 1:
        entry = frozenset(base(t) for t in range(d + 1))
    else:
        entry = frozenset(
            [base(t) for t in range(i1)]
            + [sub(t) for t in range(i1, d + 1)]
        )
    entry_sorted = sorted_face(entry)
    if len(anchor) != len(entry_sorted):
        raise StepFailed("?", "anchor needs %d vertices" % len(entry_sorted))
    emb = dict(zip(entry_sorted, anchor))
    fmap = {entry: frozenset(anchor)}
    facet_index: dict[frozenset, list] = {}
    for h in c.facets:
        for x in h:
            facet_index.setdefault(h - {x}, []).append(h)
    placed = [entry]
    pending = [f for f in sorted(abstract.facets, key=sorted_face) if f != entry]
    while pending:
        progressed = False
        for f in list(pending):
            share = None
            for g in placed:
                if len(f & g) == d:
                    share = g
                    break
            if share is None:
                continue
            ridge = frozenset(emb[v] for v in (f & share))
            cands = [h for h in facet_index.get(ridge, []) if h != fmap[share]]
            if len(cands) != 1:
                raise StepFailed("?", "anchor does not extend across a ridge")
            (x_new,) = tuple(f - share)
            (w_new,) = tuple(cands[0] - ridge)
            if x_new in emb:
                if emb[x_new] != w_new:
                    raise StepFailed("?", "anchor extension is inconsistent")
            else:
                emb[x_new] = w_new
            fmap[f] = cands[0]
            placed.append(f)
            pending.remove(f)
            progressed = True
        if not progressed:
            raise StepFailed("?", "anchor does not determine the flip site")
    return emb


def _parse_assignments(parts):
    out = {}
    for part in parts:
        if "=" not in part:
            raise ValueError("expected key=value, got %r" % (part,))
        key, val = part.split("=", 1)
        out[key] = val
    return out


def apply_script_line(c: Complex, line: str, budget: int = 24):
    """One move-script line applied to a complex; returns the new complex."""
    parts = line.split()
    op, kv = parts[0], _parse_assignments(parts[1:])
    if op == "crossflip":
        spec = tuple(int(t) for t in kv["I"].split(","))
        anchor = tuple(t for t in kv["anchor"].split(",") if t)
        emb = _anchor_embedding(c, spec, anchor)
        flip = _moves.CrossFlip(d=c.dimension, spec=spec, embedding=emb)
        return _moves.apply_cross_flip(c, flip, budget=budget)
    if op == "bistellar":
        flip = _moves.BistellarFlip(A=_parse_face(kv["A"]), B=_parse_face(kv["B"]))
        return _moves.apply_bistellar(c, flip)
    if op == "shell":
        return _moves.shelling_move(c, _parse_face(kv["F"]), _parse_face(kv["A"]), _parse_face(kv["R"]))
    if op == "inverse-shell":
        return _moves.inverse_shelling(c, _parse_face(kv["F"]), _parse_face(kv["A"]), _parse_face(kv["R"]))
    raise ValueError("unknown move %r" % (op,))


def cmd_flip(args) -> int:
    if args.script is None:
        raise UsageError("flip requires --script")
    c, coloring = complex_from_doc(_read_doc(args.file))
    with open(args.script, "r", encoding="utf-8") as fh:
        lines = fh.readlines()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            c = apply_script_line(c, line, budget=args.budget or 24)
        except (ComplexError, ValueError, KeyError, StepFailed) as exc:
            print("FAIL at line %d: %s" % (lineno, exc))
            return 1
    _write_text(args.out, _dump_doc(complex_to_doc(c, None)))
    return 0


# ---------------------------------------------------------------------------
# random walks


@dataclass
class WalkConfig:
    steps: int
    seed: int
    dimension: int
    allowed_flips: list = field(default_factory=list)
    start: Complex | None = None
    start_coloring: dict | None = None
    budget: int = 24


def run_walk(config: WalkConfig):
    """Seeded random cross-flip walk.

    Each step picks uniformly among the allowed flip classes that have at
    least one site, then uniformly from that class's deterministic site
    list.  Returns (complex, coloring, stats rows).
    """
    d = config.dimension
    cur = config.start if config.start is not None else cross_polytope(d)
    coloring = (
        dict(config.start_coloring)
        if config.start_coloring is not None
        else standard_coloring(d)
    )
    allowed = config.allowed_flips or [
        fc.canonical_index for fc in _catalog.enumerate_basic_flips(d)
    ]
    rng = random.Random(config.seed)
    rows = []
    for step in range(1, config.steps + 1):
        per_class = []
        for spec in allowed:
            sites = _moves.find_cross_flip_sites(cur, coloring, spec)
            if sites:
                per_class.append((spec, sites))
        if not per_class:
            raise StepFailed(step, "no applicable flip site")
        spec, sites = per_class[rng.randrange(len(per_class))]
        site = sites[rng.randrange(len(sites))]
        res = _moves.apply_cross_flip_detailed(cur, site, budget=config.budget)
        coloring = _moves.extend_coloring_after_cross_flip(coloring, res)
        cur = res.complex
        rows.append(
            {
                "step": step,
                "flip_index": "-".join(str(i) for i in spec),
                "facets": cur.n_facets,
                "vertices": len(cur.vertices),
                "euler": cur.euler_characteristic(),
                "balanced": is_proper_coloring(cur, coloring, d + 1),
            }
        )
    return cur, coloring, rows


def _stats_path(out: str) -> str:
    root, _ext = os.path.splitext(out)
    return root + ".stats.csv"


def cmd_walk(args) -> int:
    if args.out is None:
        raise UsageError("walk requires --out")
    if args.dim is None:
        raise UsageError("walk requires --dim")
    start = None
    start_coloring = None
    if args.file is not None:
        start, start_coloring = complex_from_doc(_read_doc(args.file))
    config = WalkConfig(
        steps=args.steps if args.steps is not None else 100,
        seed=args.seed if args.seed is not None else 0,
        dimension=args.dim,
        allowed_flips=[tuple(i) for i in (args.index or [])],
        start=start,
        start_coloring=start_coloring,
        budget=args.budget if args.budget is not None else 24,
    )
    try:
        final, coloring, rows = run_walk(config)
    except StepFailed as exc:
        print("FAIL: %s" % exc)
        return 1
    _write_text(args.out, _dump_doc(complex_to_doc(final, coloring)))
    with open(_stats_path(args.out), "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(
            fh,
            fieldnames=["step", "flip_index", "facets", "vertices", "euler", "balanced"],
            lineterminator="\n",
        )
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    return 0


# ---------------------------------------------------------------------------
# catalog and verify


def cmd_catalog(args) -> int:
    if args.dim is None:
        raise UsageError("catalog requires --dim or a positional dimension")
    classes = _catalog.enumerate_basic_flips(args.dim)
    if args.out is not None:
        _write_text(args.out, json.dumps([fc.to_doc() for fc in classes], indent=2) + "\n")
        return 0
    header = ("index", "facets", "h", "complement", "sufficient")
    rows = [
        (
            ",".join(str(i) for i in fc.canonical_index),
            str(fc.facet_count),
            "(" + ",".join(str(x) for x in fc.h) + ")",
            ",".join(str(i) for i in fc.complement_class),
            "yes" if fc.sufficient else "no",
        )
        for fc in classes
    ]
    widths = [max(len(r[i]) for r in rows + [header]) for i in range(len(header))]
    fmt = "  ".join("%%-%ds" % w for w in widths)
    print(fmt % header)
    for r in rows:
        print(fmt % r)
    print("%d classes (expected %d)" % (len(classes), 2 ** (args.dim + 1) - 1))
    return 0


_VERIFY_TARGETS = (
    "count",
    "hvector",
    "complement",
    "shelling-theorem",
    "reducibility",
    "pentagon",
    "matroid",
)


def run_verify(target: str, d: int):
    if target == "count":
        return _catalog.verify_count(d)
    if target == "hvector":
        return _catalog.verify_hvector(d)
    if target == "complement":
        return _catalog.verify_complement(d)
    if target == "shelling-theorem":
        return _catalog.verify_shelling_theorem(d)
    if target == "reducibility":
        return _catalog.verify_reducibility(d)
    if target == "pentagon":
        return _catalog.verify_pentagon()
    if target == "matroid":
        return _catalog.verify_matroid()
    raise UsageError("unknown verify target %r" % (target,))


def cmd_verify(args) -> int:
    d = args.dim if args.dim is not None else 2
    try:
        ok, lines = run_verify(args.target, d)
    except _catalog.DimensionCapExceeded as exc:
        print("UNDECIDED: %s" % exc)
        return 2
    for line in lines:
        print(line)
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> _Parser:
    p = _Parser(prog="crossflips", description=__doc__)
    subs = p.add_subparsers(dest="command", required=True)

    g = subs.add_parser("gen", help="generate a complex")
    g.add_argument("kind", choices=["cross-polytope", "simplex-boundary", "diamond", "stacked", "barycentric"])
    g.add_argument("--dim", type=int)
    g.add_argument("--index", type=_parse_index)
    g.add_argument("--copies", type=int)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    c = subs.add_parser("check", help="check a property of a complex file")
    c.add_argument("file")
    c.add_argument("what", choices=["manifold", "balanced", "induced", "shelling-order"])
    c.set_defaults(func=cmd_check)

    f = subs.add_parser("flip", help="apply a move script")
    f.add_argument("file")
    f.add_argument("--script")
    f.add_argument("--out")
    f.add_argument("--budget", type=int)
    f.set_defaults(func=cmd_flip)

    w = subs.add_parser("walk", help="seeded random cross-flip walk")
    w.add_argument("file", nargs="?")
    w.add_argument("--dim", type=int)
    w.add_argument("--steps", type=int)
    w.add_argument("--seed", type=int)
    w.add_argument("--index", type=_parse_index, action="append")
    w.add_argument("--out")
    w.add_argument("--budget", type=int)
    w.set_defaults(func=cmd_walk)

    k = subs.add_parser("catalog", help="table of basic flip classes")
    k.add_argument("dim", type=int, nargs="?")
    k.add_argument("--dim", dest="dim_flag", type=int)
    k.add_argument("--out")
    k.set_defaults(func=cmd_catalog)

    v = subs.add_parser("verify", help="run a verification suite")
    v.add_argument("target", choices=_VERIFY_TARGETS)
    v.add_argument("dim", type=int, nargs="?")
    v.add_argument("--dim", dest="dim_flag", type=int)
    v.set_defaults(func=cmd_verify)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "dim_flag", None) is not None:
            args.dim = args.dim_flag
        return args.func(args)
    except UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return 3
    except FileNotFoundError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return 3
    except json.JSONDecodeError as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return 1
    except (ComplexError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
