"""Finite-group toolkit for h-F-norms, their ascending series and generalized hypercentres."""

from normlab.classes import (
    ABELIAN,
    ALL,
    ALL_PRIMES,
    NILPOTENT,
    ONE,
    SOLVABLE,
    SUPERSOLVABLE,
    PrimeSet,
    is_member,
    parse_class,
    radical,
    residual,
)
from normlab.corpus import builtin_catalog, builtin_corpus, builtin_group, load_corpus, parse_manifest
from normlab.group import FiniteGroup, Subgroup, direct_product, semidirect_product
from normlab.lattice import enumerate_lattice, normal_subgroups
from normlab.norms import hf_norm, int_x, norm_infinity, norm_series
from normlab.series import chief_series, hypercentre, is_F_central

__version__ = "0.1.0"

__all__ = [
    "ABELIAN", "ALL", "ALL_PRIMES", "FiniteGroup", "NILPOTENT", "ONE", "PrimeSet", "SOLVABLE",
    "SUPERSOLVABLE", "Subgroup", "builtin_catalog", "builtin_corpus", "builtin_group", "chief_series",
    "direct_product", "enumerate_lattice", "hf_norm", "hypercentre", "int_x", "is_F_central", "is_member",
    "load_corpus", "norm_infinity", "norm_series", "normal_subgroups", "parse_class", "parse_manifest",
    "radical", "residual", "semidirect_product",
]
