"""Exact rational polyhedral geometry in the unit cube."""
from .cells import ConvexCell, affine_eval, normalize_affine
from .linalg import as_fraction, point
from .polyhedron import (
    Polyhedron,
    affine_independent,
    barycentric,
    poly_equal,
    poly_intersect,
    poly_subset,
    poly_union,
    product,
    project,
    simplex_contains,
)


def split_cell(cell: ConvexCell, h):
    """``(C & {h <= 0}, C & {h >= 0})`` with empty pieces reported as None.

    ``h`` is ``(coeffs, const)`` with rational entries.
    """
    coeffs, const = h
    return cell.split(normalize_affine(coeffs, const))


def triangulate(cell: ConvexCell) -> list:
    return cell.triangulate()


__all__ = [
    "ConvexCell", "Polyhedron", "affine_eval", "affine_independent", "as_fraction",
    "barycentric", "normalize_affine", "point", "poly_equal", "poly_intersect",
    "poly_subset", "poly_union", "product", "project", "simplex_contains",
    "split_cell", "triangulate",
]
