"""Exact intersection theory on normal surfaces and simplicial toric varieties."""

from .errors import NSIError
from .exact import QMatrix, QVector, Rat, det, format_rat, parse_rat, signature, solve
from .resolution import ExceptionalCurve, ResolutionGraph, discrepancies, graph_from_hj, hj_expand, local_defect
from .surface import NormalSurfaceModel, mumford_pullback, pair, pair_with_canonical, sharp_pullback
from .toric import Fan, chi, export_surface_model, resolve_fan_2d, sublattice_cover
from .ktheory import FormalClass, c1_apply, chi_formal, frobenius_ch2_limit, pair_limit, self_pair_limit
from .ledger import SheafData, DefectReport, riemann_roch, rr_defect

__version__ = "0.1.0"
