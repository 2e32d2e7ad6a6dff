"""Finite hypergeometric sums and machine checks of their transformation laws."""

from .analytic import f21, pochhammer, verify_series_identity
from .covers import (
    RelationSpec,
    Variant,
    catalog_relations,
    dioph_chain,
    dioph_points,
    ramification_profile,
    verify_relation,
)
from .fields import additive_char, char_value, make_field
from .gauss import GaussTable, JacobiSpec, gauss_sum, jacobi_motive
from .hypsum import HGMParams, TwistSpec, hyp_sum, point_count_H, trace_at_one, twist_value
from .kummer import kummer_entry, transform_group, verify_kummer
from .maps import RationalMap
from .monodromy import local_data, params_from_local_data
from .report import Report, write_report
from .values import CycValue, RationalMod1, cyc_equal, cyc_root_of_unity, ratmod1

__version__ = "0.1.0"

__all__ = [
    "CycValue",
    "GaussTable",
    "HGMParams",
    "JacobiSpec",
    "RationalMap",
    "RationalMod1",
    "RelationSpec",
    "Report",
    "TwistSpec",
    "Variant",
    "additive_char",
    "catalog_relations",
    "char_value",
    "cyc_equal",
    "cyc_root_of_unity",
    "dioph_chain",
    "dioph_points",
    "f21",
    "gauss_sum",
    "hyp_sum",
    "jacobi_motive",
    "kummer_entry",
    "local_data",
    "make_field",
    "params_from_local_data",
    "pochhammer",
    "point_count_H",
    "ramification_profile",
    "ratmod1",
    "trace_at_one",
    "transform_group",
    "twist_value",
    "verify_kummer",
    "verify_relation",
    "verify_series_identity",
    "write_report",
]
