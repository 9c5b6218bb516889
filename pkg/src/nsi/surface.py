"""Normal proper surfaces presented through a resolution.

A :class:`NormalSurfaceModel` is the intersection lattice of a resolution
``X~ -> X``: a spanning set of divisor classes on ``X~`` with an integral
Gram matrix, the exceptional curves grouped by singular point, and the
canonical class of ``X~``.  Weil divisors on ``X`` are given by their strict
transforms in that basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, lcm
from typing import Sequence

from .errors import DimensionMismatch, NotNegativeDefinite, NotSymmetric, UnsupportedModel
from .exact import QMatrix, QVector, as_rat, det, first_non_negative_minor, signature, solve_symmetric


@dataclass(frozen=True, eq=False)
class NormalSurfaceModel:
    basis: tuple
    gram: QMatrix
    exceptional_groups: tuple  # tuple of tuples of basis indices
    canonical: QVector
    toric_derived: bool = False
    chi_O: Fraction | None = None
    # basis indices of the strict transforms of the fan rays, for toric exports
    source_rays: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(str(b) for b in self.basis))
        gram = self.gram if isinstance(self.gram, QMatrix) else QMatrix(self.gram)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "exceptional_groups", tuple(tuple(int(i) for i in g) for g in self.exceptional_groups))
        object.__setattr__(self, "canonical", QVector(self.canonical))
        if self.chi_O is not None:
            object.__setattr__(self, "chi_O", as_rat(self.chi_O))
        if self.source_rays is not None:
            object.__setattr__(self, "source_rays", tuple(int(i) for i in self.source_rays))
        self.validate()

    def validate(self) -> None:
        n = len(self.basis)
        if (self.gram.rows, self.gram.cols) != (n, n):
            raise DimensionMismatch(f"gram is {self.gram.rows}x{self.gram.cols} for {n} basis classes")
        if not self.gram.is_symmetric():
            raise NotSymmetric("model gram matrix is not symmetric")
        if not self.gram.is_integral():
            raise DimensionMismatch("model gram matrix must be integral")
        if len(self.canonical) != n:
            raise DimensionMismatch("canonical class has the wrong length")
        seen = set()
        for g in self.exceptional_groups:
            for i in g:
                if not 0 <= i < n:
                    raise DimensionMismatch(f"exceptional index {i} out of range")
                if i in seen:
                    raise DimensionMismatch(f"exceptional index {i} appears in two groups")
                seen.add(i)
            k = first_non_negative_minor(self.gram.submatrix(g))
            if k is not None:
                raise NotNegativeDefinite(k, f"exceptional group {list(g)}: leading minor {k} has the wrong sign")

    def __len__(self):
        return len(self.basis)

    def __eq__(self, other):
        if not isinstance(other, NormalSurfaceModel):
            return NotImplemented
        return (self.basis, self.gram, self.exceptional_groups, self.canonical, self.toric_derived,
                self.chi_O, self.source_rays) == (other.basis, other.gram, other.exceptional_groups,
                                                  other.canonical, other.toric_derived, other.chi_O,
                                                  other.source_rays)

    @property
    def exceptional_indices(self) -> list[int]:
        return [i for g in self.exceptional_groups for i in g]

    def group_gram(self, g: int) -> QMatrix:
        idx = self.exceptional_groups[g]
        return self.gram.submatrix(idx)

    def inner(self, x, y) -> Fraction:
        return self.gram.bilinear(x, y)

    def weil(self, coefficients: Sequence[int]) -> QVector:
        """Strict-transform class from coefficients on the original fan rays.

        Only meaningful for toric exports; for other models pass the class
        in the model basis directly.
        """
        if self.source_rays is None:
            raise UnsupportedModel("model has no ray correspondence; give classes in the model basis")
        if len(coefficients) != len(self.source_rays):
            raise DimensionMismatch(f"{len(coefficients)} coefficients for {len(self.source_rays)} rays")
        v = [0] * len(self.basis)
        for idx, c in zip(self.source_rays, coefficients):
            v[idx] = int(c)
        return QVector(v)

    def to_dict(self) -> dict:
        from .exact import format_rat

        out = {
            "basis": list(self.basis),
            "gram": [[format_rat(x) for x in r] for r in self.gram.entries],
            "exceptional_groups": [list(g) for g in self.exceptional_groups],
            "canonical": [format_rat(x) for x in self.canonical],
            "toric_derived": self.toric_derived,
        }
        if self.chi_O is not None:
            out["chi_O"] = format_rat(self.chi_O)
        if self.source_rays is not None:
            out["source_rays"] = list(self.source_rays)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "NormalSurfaceModel":
        return cls(
            basis=data["basis"],
            gram=QMatrix([[as_rat(x) for x in r] for r in data["gram"]]),
            exceptional_groups=data.get("exceptional_groups", []),
            canonical=[as_rat(x) for x in data["canonical"]],
            toric_derived=bool(data.get("toric_derived", False)),
            chi_O=as_rat(data["chi_O"]) if data.get("chi_O") is not None else None,
            source_rays=data.get("source_rays"),
        )


def _weil(model: NormalSurfaceModel, D) -> QVector:
    v = D if isinstance(D, QVector) else QVector(D)
    if len(v) != len(model):
        raise DimensionMismatch(f"class of length {len(v)} on a model with {len(model)} basis classes")
    return v


def _exceptional_correction(model: NormalSurfaceModel, v: QVector) -> list[tuple[tuple, QVector]]:
    """Per group: the coefficients lambda with Gram_E lambda = -<v, E_j>."""
    out = []
    for g in model.exceptional_groups:
        rhs = QVector(-model.inner(v, QVector.unit(len(model), j)) for j in g)
        out.append((g, solve_symmetric(model.gram.submatrix(g), rhs)))
    return out


def mumford_pullback(model: NormalSurfaceModel, D) -> QVector:
    """f^*D: the strict transform plus the unique exceptional Q-cycle making
    the class orthogonal to every exceptional curve."""
    v = _weil(model, D)
    out = list(v)
    for g, lam in _exceptional_correction(model, v):
        for i, c in zip(g, lam):
            out[i] += c
    return QVector(out)


def pair(model: NormalSurfaceModel, D1, D2) -> Fraction:
    """Mumford's Q-valued intersection number D1.D2."""
    return model.inner(mumford_pullback(model, D1), mumford_pullback(model, D2))


def sharp_pullback(model: NormalSurfaceModel, D) -> QVector:
    """Rounding pullback: exceptional coefficients of f^*D rounded up.

    Only defined for models exported from fans, where the rounding agrees
    with the reflexive pullback of O(-D).
    """
    if not model.toric_derived:
        raise UnsupportedModel("sharp_pullback needs a toric-derived model")
    pb = list(mumford_pullback(model, D))
    for i in model.exceptional_indices:
        pb[i] = Fraction(ceil(pb[i]))
    return QVector(pb)


def cartier_index(model: NormalSurfaceModel, D) -> int:
    """lcm of the denominators of the Mumford pullback of D."""
    return mumford_pullback(model, D).denominator()


def discrepancy_cycle(model: NormalSurfaceModel) -> QVector:
    """sum a_i E_i with K_{X~} = f^*K_X + sum a_i E_i, in the model basis.

    K.E_j is read from the model's canonical class."""
    n = len(model)
    out = [Fraction(0)] * n
    for g in model.exceptional_groups:
        rhs = QVector(model.inner(model.canonical, QVector.unit(n, j)) for j in g)
        for i, a in zip(g, solve_symmetric(model.gram.submatrix(g), rhs)):
            out[i] = a
    return QVector(out)


def canonical_pullback(model: NormalSurfaceModel) -> QVector:
    """f^*K_X = K_{X~} - discrepancy cycle."""
    return model.canonical - discrepancy_cycle(model)


def pair_with_canonical(model: NormalSurfaceModel, D) -> Fraction:
    """D.K_X computed on the resolution."""
    return model.inner(mumford_pullback(model, D), canonical_pullback(model))


def pairing_denominator(model: NormalSurfaceModel) -> int:
    """An N with every pairing in (1/N)Z: the product of |det| of the
    exceptional Gram blocks."""
    N = 1
    for g in range(len(model.exceptional_groups)):
        N *= abs(det(model.group_gram(g))).numerator
    return N


def numerical_lattice(model: NormalSurfaceModel, classes: Sequence) -> tuple[QMatrix, tuple[int, int, int]]:
    """Gram matrix [D_i.D_j] of the given Weil classes and its signature.

    The zero count is the rank of the radical; the remaining (pos, neg)
    is the signature of the induced non-degenerate form on N(X).
    """
    if not classes:
        raise DimensionMismatch("numerical_lattice needs at least one class")
    pbs = [mumford_pullback(model, D) for D in classes]
    G = QMatrix([[model.inner(a, b) for b in pbs] for a in pbs])
    return G, signature(G)
