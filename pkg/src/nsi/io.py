"""JSON file formats and CSV tables.

Fan files: ``{"rank", "rays", "cones"}``.  Model files: the dictionary of
:meth:`NormalSurfaceModel.to_dict`.  Graph files: ``{"curves", "adjacency"}``.
Sheaf files: ``{"rank", "c1", "local_c2", "smooth_c2"}``.  Rationals are
written as "num/den" strings so a round trip is exact.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import IO

from .exact import as_rat, format_rat
from .ktheory import LimitResult
from .ledger import DefectReport, SheafData
from .resolution import ResolutionGraph
from .surface import NormalSurfaceModel
from .toric import Fan


def read_json(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def dumps(data: dict) -> str:
    # fixed key order and separators keep repeated runs byte-identical
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def write_json(path, data: dict) -> None:
    Path(path).write_text(dumps(data), encoding="utf-8")


def kind_of(data: dict) -> str:
    if "rays" in data:
        return "fan"
    if "gram" in data:
        return "model"
    if "curves" in data:
        return "graph"
    if "smooth_c2" in data or "c1" in data:
        return "sheaf"
    raise KeyError("unrecognized file: expected a fan, model, graph or sheaf")


def load_fan(path) -> Fan:
    return Fan.from_dict(read_json(path))


def load_model(path) -> NormalSurfaceModel:
    return NormalSurfaceModel.from_dict(read_json(path))


def load_graph(path) -> ResolutionGraph:
    return ResolutionGraph.from_dict(read_json(path))


def sheaf_to_dict(data: SheafData) -> dict:
    def fmt(v):
        return repr(v) if isinstance(v, float) else format_rat(v)

    return {
        "rank": data.rank,
        "c1": [format_rat(x) for x in data.c1],
        "local_c2": {str(k): fmt(v) for k, v in sorted(data.local_c2.items())},
        "smooth_c2": format_rat(data.smooth_c2),
    }


def sheaf_from_dict(d: dict) -> SheafData:
    def parse(v):
        if isinstance(v, float):
            return v
        try:
            return as_rat(v)
        except (ValueError, TypeError):
            return float(v)

    return SheafData(
        rank=int(d["rank"]),
        c1=[as_rat(x) for x in d["c1"]],
        local_c2={int(k): parse(v) for k, v in d.get("local_c2", {}).items()},
        smooth_c2=as_rat(d.get("smooth_c2", 0)),
    )


def load_sheaf(path) -> SheafData:
    return sheaf_from_dict(read_json(path))


def write_convergence_csv(result: LimitResult, sink: IO[str]) -> None:
    w = csv.writer(sink, lineterminator="\n")
    w.writerow(["m", "chi", "two_chi_over_m2"])
    for m, c, ratio in result.convergents():
        w.writerow([m, c, format_rat(ratio, always_den=True)])
    w.writerow(["limit", format_rat(result.value, always_den=True)])


def write_defect_csv(report: DefectReport, sink: IO[str]) -> None:
    w = csv.writer(sink, lineterminator="\n")
    w.writerow(["group", "defect"])
    for g in sorted(report.per_point):
        w.writerow([g, format_rat(report.per_point[g], always_den=True)])
    w.writerow(["total", format_rat(report.total_defect, always_den=True)])
