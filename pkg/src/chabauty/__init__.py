"""Spaces of subgroups of countable abelian groups: invariants, classification, rank functions, oracle."""
from .groupdsl import GroupDesc, Element, parse, to_text
from .classifier import SpaceType, classify, cb_rank_of_space, homeo_equal
from .subgroup_calc import SubgroupDesc, subgroup, rank_report

__all__ = ["GroupDesc", "Element", "parse", "to_text", "SpaceType", "classify", "cb_rank_of_space",
           "homeo_equal", "SubgroupDesc", "subgroup", "rank_report"]
