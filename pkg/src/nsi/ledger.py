"""Chern data of reflexive sheaves on a normal surface model.

Ranks, first Chern classes (Weil classes in the model basis) and second
Chern numbers split into a smooth-model part and local corrections at the
singular points.  Local corrections of higher-rank sheaves are input data;
rank-1 sheaves carry none.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb
from typing import Mapping, Sequence

from .errors import DimensionMismatch, MissingChiO, ModelMismatch, NSIError
from .exact import QVector, as_rat
from .surface import NormalSurfaceModel, pair, pair_with_canonical, mumford_pullback
from .toric import Fan, chi, export_surface_model, resolve_fan_2d, singular_cones, validate_fan


def _num(x):
    """Rational when possible; floats are accepted for local terms."""
    if isinstance(x, float):
        return x
    return as_rat(x)


@dataclass(frozen=True)
class SheafData:
    rank: int
    c1: QVector
    local_c2: Mapping = field(default_factory=dict)
    smooth_c2: Fraction = Fraction(0)

    def __post_init__(self):
        if int(self.rank) < 1:
            raise ModelMismatch(f"rank must be positive, got {self.rank}")
        object.__setattr__(self, "rank", int(self.rank))
        object.__setattr__(self, "c1", QVector(self.c1))
        object.__setattr__(self, "local_c2", {int(k): _num(v) for k, v in dict(self.local_c2).items()})
        object.__setattr__(self, "smooth_c2", as_rat(self.smooth_c2))
        if self.rank == 1 and any(v != 0 for v in self.local_c2.values()):
            raise ModelMismatch("rank-1 sheaves have no local c2 terms")

    def __hash__(self):
        return hash((self.rank, self.c1, tuple(sorted(self.local_c2.items())), self.smooth_c2))


@dataclass(frozen=True)
class DefectReport:
    total_defect: Fraction
    per_point: Mapping

    def __post_init__(self):
        if self.per_point and sum(self.per_point.values(), Fraction(0)) != self.total_defect:
            raise NSIError(f"per-point defects {dict(self.per_point)} do not add up to {self.total_defect}")


def line_bundle(model: NormalSurfaceModel, D) -> SheafData:
    """O_X(D) for a Weil class D in the model basis."""
    return SheafData(1, D)


def _check(data: SheafData, model: NormalSurfaceModel) -> None:
    if len(data.c1) != len(model):
        raise ModelMismatch(f"c1 has {len(data.c1)} entries, model has {len(model)} basis classes")
    groups = len(model.exceptional_groups)
    for k in data.local_c2:
        if not 0 <= k < groups:
            raise ModelMismatch(f"local term for group {k}, model has {groups} singular points")


def int_c2(data: SheafData, model: NormalSurfaceModel):
    _check(data, model)
    return data.smooth_c2 - sum(data.local_c2.values(), Fraction(0))


def ch2(data: SheafData, model: NormalSurfaceModel):
    return pair(model, data.c1, data.c1) / 2 - int_c2(data, model)


def delta(data: SheafData, model: NormalSurfaceModel):
    r = data.rank
    return 2 * r * int_c2(data, model) - (r - 1) * pair(model, data.c1, data.c1)


def twist(data: SheafData, L, model: NormalSurfaceModel) -> SheafData:
    """E (x) L for a rank-1 Weil class L, by the splitting principle."""
    _check(data, model)
    L = QVector(L)
    r = data.rank
    c2 = data.smooth_c2 + (r - 1) * pair(model, data.c1, L) + comb(r, 2) * pair(model, L, L)
    return SheafData(r, data.c1 + L * r, data.local_c2, c2)


def direct_sum(d1: SheafData, d2: SheafData, model: NormalSurfaceModel) -> SheafData:
    _check(d1, model)
    _check(d2, model)
    local = dict(d1.local_c2)
    for k, v in d2.local_c2.items():
        local[k] = local.get(k, 0) + v
    c2 = d1.smooth_c2 + d2.smooth_c2 + pair(model, d1.c1, d2.c1)
    return SheafData(d1.rank + d2.rank, d1.c1 + d2.c1, local, c2)


def frobenius_scale(data: SheafData, p: int, m: int) -> SheafData:
    """Chern data of the m-th reflexive Frobenius pullback."""
    if m < 0:
        raise DimensionMismatch("Frobenius exponent must be non-negative")
    q = p ** m
    return SheafData(data.rank, data.c1 * q, {k: v * q * q for k, v in data.local_c2.items()},
                     data.smooth_c2 * q * q)


def bogomolov_check(data: SheafData, model: NormalSurfaceModel) -> bool:
    return delta(data, model) >= 0


def riemann_roch(data: SheafData, model: NormalSurfaceModel, defects: DefectReport | None = None):
    """Predicted chi(X, E) from the Chern data and the local defects."""
    if model.chi_O is None:
        raise MissingChiO("model does not record chi(O_X)")
    c1 = data.c1
    total = defects.total_defect if defects is not None else Fraction(0)
    return ((pair(model, c1, c1) - pair_with_canonical(model, c1)) / 2 - int_c2(data, model)
            + data.rank * model.chi_O + total)


# ----------------------------------------------------------- toric defects

def _total_defect(fan: Fan, D: Sequence[int], model: NormalSurfaceModel | None = None) -> Fraction:
    model = model or export_surface_model(fan)
    v = model.weil(D)
    return chi(fan, D).chi - riemann_roch(line_bundle(model, v), model)


def rr_defect(fan: Fan, D: Sequence[int]) -> DefectReport:
    """Riemann-Roch defect of O(D) on a toric surface, split by singular point.

    The share of a singular point is the defect on the partial resolution
    that keeps only that point singular, where D is replaced by the
    round-down of its pullback over the other points.  Those replacements
    are Cartier away from the kept point, so the local class is unchanged.
    """
    validate_fan(fan)
    if fan.lattice_rank != 2:
        raise DimensionMismatch("rr_defect needs a rank-2 fan")
    D = tuple(int(x) for x in D)
    model = export_surface_model(fan)
    total = _total_defect(fan, D, model)
    sing = singular_cones(fan)
    if len(sing) <= 1:
        return DefectReport(total, {g: total for g in range(len(sing))})
    full = mumford_pullback(model, model.weil(D))
    per_point = {}
    for g, c in enumerate(sing):
        res = resolve_fan_2d(fan, only=[x for x in sing if x != c])
        # coefficient on each ray of the partial resolution
        full_res = resolve_fan_2d(fan)
        coeff = dict(zip(full_res.fan.rays, full))
        G = []
        for ray, (kind, j) in zip(res.fan.rays, res.provenance):
            G.append(D[j] if kind == "ray" else coeff[ray].__floor__())
        per_point[g] = _total_defect(res.fan, G)
    return DefectReport(total, per_point)


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("NSI_THREADS", "1")))
    except ValueError:
        return 1


def defect_values(fan: Fan, bound: int, workers: int | None = None) -> frozenset:
    """Set of total defects over all divisors with |d_rho| <= bound."""
    validate_fan(fan)
    if bound < 0:
        raise DimensionMismatch("coefficient bound must be non-negative")
    model = export_surface_model(fan)
    k = len(fan.rays)
    # D^2 and D.K_X are a quadratic and a linear form in the ray coefficients
    basis = [model.weil(tuple(int(i == j) for j in range(k))) for i in range(k)]
    A = [[pair(model, a, b) for b in basis] for a in basis]
    kv = [pair_with_canonical(model, a) for a in basis]

    def task(D):
        sq = sum(D[i] * A[i][j] * D[j] for i in range(k) for j in range(k) if D[i] and D[j])
        dk = sum(d * x for d, x in zip(D, kv))
        return chi(fan, D).chi - ((sq - dk) / 2 + model.chi_O)

    divisors = list(product(range(-bound, bound + 1), repeat=k))
    workers = workers or _workers()
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return frozenset(pool.map(task, divisors))
    return frozenset(map(task, divisors))


def defect_sweep(fan: Fan, bound: int, workers: int | None = None) -> tuple[Fraction, Fraction]:
    vals = defect_values(fan, bound, workers)
    return min(vals), max(vals)
