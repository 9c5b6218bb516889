"""Dual graphs of resolutions of a single normal surface singularity.

A graph is a list of exceptional curves (self-intersection, arithmetic
genus) plus the symmetric matrix of pairwise intersections.  Everything
here is a linear solve against that negative definite matrix.

Sign convention: adjunction is taken as ``K.E = 2 p_a(E) - 2 - E^2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import AsymmetricAdjacency, InvalidPair, NotNegativeDefinite
from .exact import QMatrix, QVector, first_non_negative_minor, solve_symmetric


@dataclass(frozen=True)
class ExceptionalCurve:
    label: str
    self_intersection: int
    arithmetic_genus: int = 0


@dataclass(frozen=True)
class ResolutionGraph:
    curves: tuple
    adjacency: tuple  # full symmetric matrix, diagonal = self-intersections

    @classmethod
    def from_triples(cls, curves: Sequence[ExceptionalCurve], triples: Sequence[Sequence[int]] = ()) -> "ResolutionGraph":
        """Build from curves and sparse ``(i, j, E_i.E_j)`` triples (i != j).

        Each unordered pair may be given once or in both orders; conflicting
        values are kept as given so :func:`validate` can flag them.
        """
        n = len(curves)
        m = [[0] * n for _ in range(n)]
        for i, c in enumerate(curves):
            m[i][i] = c.self_intersection
        seen = set()
        for i, j, v in triples:
            if i == j:
                raise AsymmetricAdjacency(f"diagonal triple ({i}, {j}); use self_int instead")
            m[i][j] = v
            if (j, i) not in seen:
                m[j][i] = v
            seen.add((i, j))
        return cls(tuple(curves), tuple(tuple(r) for r in m))

    @classmethod
    def chain(cls, self_intersections: Sequence[int], labels: Sequence[str] | None = None) -> "ResolutionGraph":
        """A chain of smooth rational curves meeting transversally."""
        labels = labels or [f"E{i + 1}" for i in range(len(self_intersections))]
        curves = [ExceptionalCurve(lb, int(b), 0) for lb, b in zip(labels, self_intersections)]
        return cls.from_triples(curves, [(i, i + 1, 1) for i in range(len(curves) - 1)])

    def __len__(self):
        return len(self.curves)

    @property
    def gram(self) -> QMatrix:
        return QMatrix(self.adjacency)

    def canonical_degrees(self) -> list[int]:
        """K.E_j for every curve, from adjunction."""
        return [2 * c.arithmetic_genus - 2 - c.self_intersection for c in self.curves]

    def pairing(self, cycle, j: int) -> Fraction:
        """<cycle, E_j> for a cycle given by its coefficients."""
        return sum((Fraction(c) * self.adjacency[i][j] for i, c in enumerate(cycle)), Fraction(0))

    def self_pairing(self, cycle) -> Fraction:
        return self.gram.bilinear(cycle, cycle)

    def to_dict(self) -> dict:
        n = len(self.curves)
        return {
            "curves": [
                {"label": c.label, "self_int": c.self_intersection, "genus": c.arithmetic_genus}
                for c in self.curves
            ],
            "adjacency": [[i, j, self.adjacency[i][j]] for i in range(n) for j in range(i + 1, n) if self.adjacency[i][j]],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ResolutionGraph":
        curves = [ExceptionalCurve(str(c["label"]), int(c["self_int"]), int(c.get("genus", 0))) for c in data["curves"]]
        return cls.from_triples(curves, [tuple(int(x) for x in t) for t in data.get("adjacency", [])])


def validate(graph: ResolutionGraph) -> None:
    """Raise unless the intersection matrix is symmetric, has non-negative
    off-diagonal entries and is negative definite."""
    a = graph.adjacency
    n = len(a)
    for i in range(n):
        for j in range(n):
            if a[i][j] != a[j][i]:
                raise AsymmetricAdjacency(f"E{i}.E{j} = {a[i][j]} but E{j}.E{i} = {a[j][i]}")
            if i != j and a[i][j] < 0:
                raise AsymmetricAdjacency(f"negative intersection E{i}.E{j} = {a[i][j]}")
    if n == 0:
        return
    k = first_non_negative_minor(graph.gram)
    if k is not None:
        raise NotNegativeDefinite(k)


def relative_c1(graph: ResolutionGraph, degrees: Sequence[int]) -> QVector:
    """The exceptional Q-cycle c with c.E_j = degrees[j] for every j.

    For a vector bundle this is the first relative Chern class, read off
    from the degrees of the bundle on the exceptional curves.
    """
    validate(graph)
    if len(degrees) != len(graph):
        raise InvalidPair(f"{len(degrees)} degrees for {len(graph)} curves")
    if not graph.curves:
        return QVector()
    return solve_symmetric(graph.gram, QVector(degrees))


def discrepancies(graph: ResolutionGraph) -> QVector:
    """Coefficients a_i with K_{X~} = f^*K_X + sum a_i E_i."""
    return relative_c1(graph, graph.canonical_degrees())


def local_defect(graph: ResolutionGraph, c1_rel, c2_rel=Fraction(0), rank: int = 1,
                 chi_rel=0, chi_rel_structure=0) -> Fraction:
    """The local Riemann-Roch correction a(f, F) of a bundle on the resolution.

    ``c1_rel`` is the relative first Chern class (an exceptional Q-cycle),
    ``chi_rel`` the relative Euler characteristic of F and
    ``chi_rel_structure`` that of the structure sheaf (0 for rational
    singularities).  The canonical class enters only through K.E_j.
    """
    c1 = QVector(c1_rel)
    kdeg = graph.canonical_degrees()
    c1_sq = graph.self_pairing(c1) if len(c1) else Fraction(0)
    c1_k = sum((c * k for c, k in zip(c1, kdeg)), Fraction(0))
    return (Fraction(chi_rel) - rank * Fraction(chi_rel_structure)
            + Fraction(1, 2) * (c1_sq - c1_k) - Fraction(c2_rel))


def hj_expand(n: int, q: int) -> list[int]:
    """Hirzebruch-Jung continued fraction n/q = b1 - 1/(b2 - 1/(... - 1/bk))."""
    if not (isinstance(n, int) and isinstance(q, int)) or not 0 < q < n or gcd(n, q) != 1:
        # n = 1 would be a smooth point; q must be a unit mod n
        raise InvalidPair(f"need 0 < q < n with gcd(n, q) = 1, got ({n}, {q})")
    out = []
    while q > 0:
        b = -(-n // q)
        out.append(b)
        n, q = q, b * q - n
    return out


def hj_value(bs: Sequence[int]) -> Fraction:
    """Evaluate b1 - 1/(b2 - 1/(...)) exactly."""
    val = Fraction(bs[-1])
    for b in reversed(bs[:-1]):
        val = b - 1 / val
    return val


def graph_from_hj(n: int, q: int) -> ResolutionGraph:
    """Resolution chain of the cyclic quotient singularity 1/n(1, q)."""
    return ResolutionGraph.chain([-b for b in hj_expand(n, q)])
