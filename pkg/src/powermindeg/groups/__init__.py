"""Finite group backends, the nonabelian catalog, and nilpotent-group structure."""

from .catalog import CATALOG, catalog_group, symmetric3
from .finite import CyclicGroup, FiniteGroup, ProductGroup, TableGroup
from .nilpotent import (
    AbelianSpec,
    CyclicSubgroup,
    NilpotencyReport,
    NilpotentGroup,
    SylowDecomposition,
    center,
    count_containing_maximal,
    count_containing_maximal_in_support,
    cyclic_subgroup,
    element_order,
    is_cyclic,
    is_nilpotent,
    make_group,
    maximal_cyclic_subgroups,
    min_order_max_cyclic,
    support_subgroup,
    sylow_decompose,
)

__all__ = [
    "AbelianSpec", "CATALOG", "CyclicGroup", "CyclicSubgroup", "FiniteGroup", "NilpotencyReport",
    "NilpotentGroup", "ProductGroup", "SylowDecomposition", "TableGroup", "catalog_group", "center",
    "count_containing_maximal", "count_containing_maximal_in_support", "cyclic_subgroup",
    "element_order", "is_cyclic", "is_nilpotent", "make_group", "maximal_cyclic_subgroups",
    "min_order_max_cyclic", "support_subgroup", "sylow_decompose", "symmetric3",
]
