"""Chain groups of fusion rings and the centers of finite groups."""
from .chaingroup import chain_classes_bl, chain_group_snf, compare_chain_groups, truncated_chain_group
from .charmod import character_table_mod_p
from .fusion import FusionRing, fusion_from_character_table, fusion_from_json, su2_fusion_oracle
from .groups import FiniteGroup, group_from_spec, make_named_group
from .pipeline import analysis_report, analyze_group, analyze_ring, run_verification

__version__ = "0.1.0"

__all__ = [
    "FiniteGroup", "FusionRing", "analysis_report", "analyze_group", "analyze_ring",
    "chain_classes_bl", "chain_group_snf", "character_table_mod_p", "compare_chain_groups",
    "fusion_from_character_table", "fusion_from_json", "group_from_spec", "make_named_group",
    "run_verification", "su2_fusion_oracle", "truncated_chain_group",
]
