"""McNaughton functions as explicit cell complexes.

A :class:`PLFunction` is a list of convex cells, each carrying one affine
piece with integer coefficients.  Pieces are plain integer tuples
``(a_1, ..., a_n, c)`` standing for ``a.x + c``.  Compilation from terms
starts on the whole cube; restriction to a smaller polyhedron is a
separate step.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .geometry import ConvexCell, Polyhedron, affine_eval, point, project
from .geometry.polyhedron import prune_redundant
from .terms import Neg, Oplus, Term, Var, min_arity

Piece = tuple  # integer tuple (a_1, ..., a_n, c)


class PLFunction:
    """Continuous piecewise-affine map on a rational polyhedron of [0,1]^arity.

    ``domain`` is None when the function lives on the whole cube.
    """

    __slots__ = ("arity", "cells", "_domain")

    def __init__(self, arity: int, cells: Iterable, domain: Polyhedron | None = None):
        self.arity = arity
        self.cells = tuple((c, tuple(int(x) for x in p)) for c, p in cells)
        for c, p in self.cells:
            if len(p) != arity + 1 or c.ambient_dim != arity:
                raise ValueError("cell or piece of the wrong dimension")
        if domain is not None and domain.dim != arity:
            raise ValueError("domain of the wrong dimension")
        self._domain = domain

    @classmethod
    def _raw(cls, arity, cells, domain=None) -> "PLFunction":
        f = cls.__new__(cls)
        f.arity = arity
        f.cells = tuple(cells)
        f._domain = domain
        return f

    @property
    def on_cube(self) -> bool:
        return self._domain is None

    @property
    def domain(self) -> Polyhedron:
        return Polyhedron.cube(self.arity) if self._domain is None else self._domain

    def __call__(self, p) -> Fraction:
        return pl_eval(self, p)

    def __repr__(self):
        where = "cube" if self.on_cube else repr(self._domain)
        return f"PLFunction(arity={self.arity}, cells={len(self.cells)}, domain={where})"


def constant(n: int, value: int) -> PLFunction:
    if value not in (0, 1):
        raise ValueError("McNaughton constants are 0 or 1")
    return PLFunction._raw(n, [(ConvexCell.cube(n), (0,) * n + (value,))])


def coordinate(n: int, i: int) -> PLFunction:
    if not 0 <= i < n:
        raise ValueError(f"x{i} is not a coordinate of [0,1]^{n}")
    piece = [0] * (n + 1)
    piece[i] = 1
    return PLFunction._raw(n, [(ConvexCell.cube(n), tuple(piece))])


def pl_eval(f: PLFunction, p) -> Fraction:
    p = point(p)
    if len(p) != f.arity:
        raise ValueError(f"expected a point of dimension {f.arity}")
    if f._domain is not None and not f._domain.contains(p):
        raise ValueError(f"point {tuple(map(str, p))} is outside the domain")
    for cell, piece in f.cells:
        if cell.contains(p):
            return affine_eval(piece, p)
    raise ValueError(f"point {tuple(map(str, p))} is outside the domain")


# ---------------------------------------------------------------------------
# common refinement

def _meet(a: ConvexCell, b: ConvexCell) -> ConvexCell | None:
    """``a & b`` if it has dimension ``min(dim a, dim b)``, else None.

    Dropping lower-dimensional overlaps is safe: the kept pieces of each
    cell are closed and their union is the whole cell.
    """
    if not a.overlaps_bbox(b):
        return None
    target = min(a.dim, b.dim)
    cur = a
    for h in b.constraints:
        cur = cur.halfspace(h)
        if cur is None or cur.dim < target:
            return None
    return cur


def refine(f: PLFunction, g: PLFunction) -> list[tuple[ConvexCell, Piece, Piece]]:
    if f.arity != g.arity:
        raise ValueError(f"arity mismatch: {f.arity} vs {g.arity}")
    if len(g.cells) == 1 and g.on_cube:
        (gc, gp), = g.cells
        return [(c, p, gp) for c, p in f.cells]
    if len(f.cells) == 1 and f.on_cube:
        (fc, fp), = f.cells
        return [(c, fp, p) for c, p in g.cells]
    out = []
    for a, pa in f.cells:
        for b, pb in g.cells:
            c = _meet(a, b)
            if c is not None:
                out.append((c, pa, pb))
    return out


def _joint(funcs: Sequence[PLFunction], n: int) -> list[tuple[ConvexCell, list]]:
    cells = [(ConvexCell.cube(n), [])]
    for f in funcs:
        nxt = []
        for a, pieces in cells:
            for b, pb in f.cells:
                c = _meet(a, b)
                if c is not None:
                    nxt.append((c, pieces + [pb]))
        cells = nxt
    return cells


def _sub(p: Piece, q: Piece) -> Piece:
    return tuple(a - b for a, b in zip(p, q))


def _add(p: Piece, q: Piece) -> Piece:
    return tuple(a + b for a, b in zip(p, q))


def _neg_piece(p: Piece) -> Piece:
    return tuple(-a for a in p[:-1]) + (1 - p[-1],)


def _unit(n: int, value: int) -> Piece:
    return (0,) * n + (value,)


def _rule_oplus(pf, pg):
    s = _add(pf, pg)
    return _sub(s, _unit(len(pf) - 1, 1)), s, _unit(len(pf) - 1, 1)


def _rule_odot(pf, pg):
    h = _sub(_add(pf, pg), _unit(len(pf) - 1, 1))
    return h, _unit(len(pf) - 1, 0), h


def _rule_vee(pf, pg):
    return _sub(pf, pg), pg, pf


def _rule_wedge(pf, pg):
    return _sub(pf, pg), pf, pg


_RULES: dict[str, Callable] = {
    "oplus": _rule_oplus, "odot": _rule_odot, "vee": _rule_vee, "wedge": _rule_wedge,
}
_ALIASES = {"⊕": "oplus", "⊙": "odot", "∨": "vee", "∧": "wedge", "¬": "neg",
            "(+)": "oplus", "&": "odot", "\\/": "vee", "/\\": "wedge", "~": "neg"}


def _combine(f: PLFunction, g: PLFunction, rule) -> PLFunction:
    out = []
    for cell, pf, pg in refine(f, g):
        h, low, high = rule(pf, pg)
        vals = [affine_eval(h, v) for v in cell.vertices]
        if all(v <= 0 for v in vals):
            out.append((cell, low))
        elif all(v >= 0 for v in vals):
            out.append((cell, high))
        else:
            lo, hi = cell.split(h, vals)
            out += [(lo, low), (hi, high)]
    return PLFunction._raw(f.arity, out, f._domain)


def pl_neg(f: PLFunction) -> PLFunction:
    return PLFunction._raw(f.arity, [(c, _neg_piece(p)) for c, p in f.cells], f._domain)


def pl_op(op: str, f: PLFunction, g: PLFunction | None = None) -> PLFunction:
    """Pointwise MV operation; ``op`` is a name (oplus, odot, vee, wedge, neg) or symbol."""
    op = _ALIASES.get(op, op)
    if op == "neg":
        return pl_neg(f)
    if g is None:
        raise ValueError(f"{op} is binary")
    if f.arity != g.arity:
        raise ValueError(f"arity mismatch: {f.arity} vs {g.arity}")
    if (f._domain is None) != (g._domain is None):
        raise ValueError("functions live on different domains")
    return _combine(f, g, _RULES[op])


def compile_term(t: Term, n: int | None = None) -> PLFunction:
    """McNaughton function of ``t`` on [0,1]^n, by structural recursion."""
    need = min_arity(t)
    if n is None:
        n = need
    if need > n:
        raise ValueError(f"term uses x{need - 1}, which is beyond arity {n}")
    memo: dict[Term, PLFunction] = {}
    cube = ConvexCell.cube(n)

    def go(u: Term) -> PLFunction:
        r = memo.get(u)
        if r is not None:
            return r
        if isinstance(u, Var):
            piece = [0] * (n + 1)
            piece[u.index] = 1
            r = PLFunction._raw(n, [(cube, tuple(piece))])
        elif isinstance(u, Neg):
            r = pl_neg(go(u.arg))
        elif isinstance(u, Oplus):
            r = _combine(go(u.left), go(u.right), _rule_oplus)
        else:
            r = PLFunction._raw(n, [(cube, _unit(n, 0))])
        memo[u] = r
        return r

    return go(t)


def restrict(f: PLFunction, domain: Polyhedron) -> PLFunction:
    """Restriction of ``f`` to a polyhedron contained in its domain."""
    if domain.dim != f.arity:
        raise ValueError("domain of the wrong dimension")
    out = []
    for s in domain.cells():
        for c, p in f.cells:
            m = _meet(s, c)
            if m is not None:
                out.append((m, p))
    return PLFunction._raw(f.arity, out, domain)


def _on_domain(f: PLFunction, g: PLFunction) -> tuple[PLFunction, PLFunction]:
    if f._domain is None and g._domain is not None:
        f = restrict(f, g._domain)
    elif g._domain is None and f._domain is not None:
        g = restrict(g, f._domain)
    return f, g


def pl_equal(f: PLFunction, g: PLFunction) -> bool:
    """Exact pointwise equality on the common refinement.

    When only one side carries a proper domain the other is restricted to it.
    """
    if f.arity != g.arity:
        raise ValueError(f"arity mismatch: {f.arity} vs {g.arity}")
    f, g = _on_domain(f, g)
    for cell, pf, pg in refine(f, g):
        if pf == pg:
            continue
        if any(affine_eval(pf, v) != affine_eval(pg, v) for v in cell.vertices):
            return False
    return True


def _level_set(f: PLFunction, level: int) -> Polyhedron:
    simps = []
    for cell, piece in f.cells:
        h = piece[:-1] + (piece[-1] - level,)
        mask = 0
        for i, v in enumerate(cell.vertices):
            if affine_eval(h, v) == 0:
                mask |= 1 << i
        if not mask:
            continue
        if mask == (1 << len(cell.vertices)) - 1:
            simps += cell.triangulate()
        else:
            simps += cell._face(mask, (h, tuple(-x for x in h))).triangulate()
    return Polyhedron._raw(f.arity, prune_redundant(simps))


def zero_set(f: PLFunction) -> Polyhedron:
    """``{p : f(p) = 0}``; on each cell this is the face where the piece vanishes."""
    return _level_set(f, 0)


def one_set(f: PLFunction) -> Polyhedron:
    return _level_set(f, 1)


def used_variables(f: PLFunction) -> set[int]:
    return {i for _, p in f.cells for i, a in enumerate(p[:-1]) if a}


def check_mcnaughton(f: PLFunction) -> list[str]:
    """Structural checks: integer pieces, range [0,1] at vertices, continuity.

    Returns a list of violations (empty when the function is well formed).
    """
    problems = []
    for k, (cell, piece) in enumerate(f.cells):
        if not all(isinstance(a, int) for a in piece):
            problems.append(f"cell {k}: non-integer piece {piece}")
        for v in cell.vertices:
            val = affine_eval(piece, v)
            if not 0 <= val <= 1:
                problems.append(f"cell {k}: value {val} outside [0,1]")
    # continuity: pieces of overlapping cells agree on the overlap
    for i in range(len(f.cells)):
        ci, pi = f.cells[i]
        for j in range(i + 1, len(f.cells)):
            cj, pj = f.cells[j]
            if pi == pj or not ci.overlaps_bbox(cj):
                continue
            m = ci.intersect(cj)
            if m is None:
                continue
            if any(affine_eval(pi, v) != affine_eval(pj, v) for v in m.vertices):
                problems.append(f"cells {i},{j}: pieces disagree on shared face")
    return problems


# ---------------------------------------------------------------------------
# Z-maps

class ZMap:
    """Tuple of McNaughton functions on [0,1]^source_dim, restricted to ``domain``.

    Components are kept on the whole cube so that the coefficient scan in
    :func:`factor` sees the defining formulas; ``domain`` records where the
    map is actually considered.
    """

    __slots__ = ("source_dim", "components", "domain")

    def __init__(self, source_dim: int, components: Sequence[PLFunction], domain: Polyhedron | None = None):
        for c in components:
            if c.arity != source_dim or not c.on_cube:
                raise ValueError("components must be cube functions of the source dimension")
        self.source_dim = source_dim
        self.components = tuple(components)
        self.domain = Polyhedron.cube(source_dim) if domain is None else domain
        if self.domain.dim != source_dim:
            raise ValueError("domain of the wrong dimension")

    @property
    def target_dim(self) -> int:
        return len(self.components)

    def __call__(self, p) -> tuple:
        p = point(p)
        if not self.domain.contains(p):
            raise ValueError("point outside the domain")
        return tuple(pl_eval(c, p) for c in self.components)

    def restricted(self) -> list[PLFunction]:
        return [restrict(c, self.domain) for c in self.components]

    def __repr__(self):
        return f"ZMap({self.source_dim} -> {self.target_dim}, domain={self.domain!r})"


def identity_zmap(m: int, domain: Polyhedron | None = None) -> ZMap:
    return ZMap(m, [coordinate(m, i) for i in range(m)], domain)


def projection_zmap(m: int, coords: Sequence[int], domain: Polyhedron | None = None) -> ZMap:
    return ZMap(m, [coordinate(m, i) for i in coords], domain)


def compose(g: ZMap, f: ZMap) -> ZMap:
    """``g`` after ``f``, computed by pulling the cells of ``g`` back through ``f``."""
    if f.target_dim != g.source_dim:
        raise ValueError(f"cannot compose: {f.target_dim} outputs into {g.source_dim} inputs")
    k, m = f.source_dim, g.source_dim
    joint = _joint(f.components, k)
    comps = []
    for gj in g.components:
        out = []
        for a, pieces in joint:
            # affine map x -> M x + c with rows = pieces
            img = [tuple(affine_eval(p, v) for p in pieces) for v in a.vertices]
            lo = tuple(map(min, zip(*img))) if m else ()
            hi = tuple(map(max, zip(*img))) if m else ()
            for b, pb in gj.cells:
                blo, bhi = b.bbox
                if any(x > bh or y < bl for x, y, bl, bh in zip(lo, hi, blo, bhi)):
                    continue
                cur = a
                for h in b.constraints:
                    cur = cur.halfspace(_pull(h, pieces, k))
                    if cur is None or cur.dim < a.dim:
                        break
                else:
                    out.append((cur, _pull(pb, pieces, k)))
        comps.append(PLFunction._raw(k, out))
    return ZMap(k, comps, f.domain)


def _pull(h: Piece, pieces: Sequence[Piece], k: int) -> Piece:
    coeffs = [0] * k
    const = h[-1]
    for b, p in zip(h, pieces):
        if b:
            for i in range(k):
                coeffs[i] += b * p[i]
            const += b * p[-1]
    return tuple(coeffs) + (const,)


def zmap_equal(f: ZMap, g: ZMap) -> bool:
    """Componentwise equality on ``f``'s domain."""
    if f.source_dim != g.source_dim or f.target_dim != g.target_dim:
        return False
    fr, gr = f.restricted(), g.restricted()
    return all(pl_equal(a, b) for a, b in zip(fr, gr))


def factor(eta: ZMap, components: Sequence[int]) -> tuple[list[int], ZMap]:
    """Factor the selected components through the coordinates they use.

    Returns ``(I, xi)`` with ``pi_J . eta = xi . pi_I`` where ``I`` collects
    every variable with a nonzero coefficient in a selected component.
    """
    used: set[int] = set()
    for j in components:
        used |= used_variables(eta.components[j])
    idx = sorted(used)
    d = len(idx)
    embed = ZMap(d, [coordinate(d, idx.index(i)) if i in used else constant(d, 0)
                     for i in range(eta.source_dim)])
    picked = ZMap(eta.source_dim, [eta.components[j] for j in components])
    xi = compose(picked, embed)
    if d:
        dom = project(eta.domain, idx)
    else:
        dom = Polyhedron._raw(0, [((),)] if not eta.domain.is_empty() else [])
    return idx, ZMap(d, xi.components, dom)


def verify_factorization(eta: ZMap, components: Sequence[int], idx: Sequence[int], xi: ZMap) -> bool:
    lhs = ZMap(eta.source_dim, [eta.components[j] for j in components], eta.domain)
    rhs = compose(xi, projection_zmap(eta.source_dim, idx, eta.domain))
    return zmap_equal(lhs, rhs)
