"""One entry point per named measure, with engine caps in one place."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .core import DEFAULT_ARITY_CAP, BooleanFunction, CapExceeded, ProductMeasure, degree
from .dtree import DEFAULT_DTREE_CAP, det_depth, dist_cost
from .localwit import DEFAULT_LP_CAP, local_witness_complexity
from .partialinfo import PK_CAP
from .pointwise import deterministic_measures, distributional_measures
from .subcube import DEFAULT_SUBCUBE_CAP, sc_det, sc_dist

DISTRIBUTIONAL = ("s", "b", "w", "l", "sc", "a")
DETERMINISTIC = ("sD", "bD", "wD", "scD", "aD", "deg")
ALL_MEASURES = DISTRIBUTIONAL + DETERMINISTIC


@dataclass(frozen=True)
class Caps:
    arity: int = DEFAULT_ARITY_CAP
    pointwise: int = 12
    dtree: int = DEFAULT_DTREE_CAP
    subcube: int = DEFAULT_SUBCUBE_CAP
    lp: int = DEFAULT_LP_CAP
    partial: int = PK_CAP

    def override(self, **kw) -> "Caps":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


def _pointwise_cap(f: BooleanFunction, caps: Caps):
    if f.arity > caps.pointwise:
        raise CapExceeded(f"pointwise measures refuse arity {f.arity} > cap {caps.pointwise}")


def measure(f: BooleanFunction, name: str, m: ProductMeasure | None = None, caps: Caps = Caps()):
    """Value of one measure; distributional ones need m."""
    if name in DISTRIBUTIONAL and m is None:
        raise ValueError(f"measure {name} needs a product measure")
    if name in ("s", "b", "w"):
        _pointwise_cap(f, caps)
        return getattr(distributional_measures(f, m), name)
    if name in ("sD", "bD", "wD"):
        _pointwise_cap(f, caps)
        return getattr(deterministic_measures(f), name[0] + "_D")
    if name == "l":
        return local_witness_complexity(f, m, cap=caps.lp)
    if name == "sc":
        return sc_dist(f, m, cap=caps.subcube)
    if name == "scD":
        return Fraction(sc_det(f, cap=caps.subcube))
    if name == "a":
        return dist_cost(f, m, cap=caps.dtree)
    if name == "aD":
        return Fraction(det_depth(f, cap=caps.dtree))
    if name == "deg":
        return Fraction(degree(f))
    raise ValueError(f"unknown measure {name!r}; choose from {', '.join(ALL_MEASURES)}")


@dataclass
class MeasureReport:
    values: dict[str, Fraction] = field(default_factory=dict)
    skipped: dict[str, str] = field(default_factory=dict)


def measure_all(f: BooleanFunction, names, m: ProductMeasure | None, caps: Caps = Caps()) -> MeasureReport:
    rep = MeasureReport()
    for name in names:
        try:
            rep.values[name] = Fraction(measure(f, name, m, caps))
        except CapExceeded as exc:
            rep.skipped[name] = str(exc)
    return rep
