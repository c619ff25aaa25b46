"""Idempotents of P-local Burnside and representation rings, and the norms they admit."""

from .burnside import (
    BurnsideElement,
    BurnsideRing,
    TableOfMarks,
    all_dress_idempotents,
    burnside_ring,
    dress_idempotent,
    norm_coinduce,
    restrict,
    split_cyc_ker,
    table_of_marks,
    transfer,
)
from .charfun import ClassFunction, inner_product, lin, tensor_induct
from .chartable import CharacterTable, character_table
from .cyclotomic import CycNumber
from .groups import FiniteGroup, Permutation, builtin_group, group_from_generators, parse_group_text
from .idempotents import classify_idempotents_R, verify_primitive
from .lattice import subgroup_classes
from .norms import equivalence_audit, indexing_system, indexing_system_cyc, splitting_audit
from .primes import PrimeSet

__version__ = "0.1.0"

__all__ = [
    "BurnsideElement",
    "BurnsideRing",
    "CharacterTable",
    "ClassFunction",
    "CycNumber",
    "FiniteGroup",
    "Permutation",
    "PrimeSet",
    "TableOfMarks",
    "all_dress_idempotents",
    "builtin_group",
    "burnside_ring",
    "character_table",
    "classify_idempotents_R",
    "dress_idempotent",
    "equivalence_audit",
    "group_from_generators",
    "indexing_system",
    "indexing_system_cyc",
    "inner_product",
    "lin",
    "norm_coinduce",
    "parse_group_text",
    "restrict",
    "split_cyc_ker",
    "splitting_audit",
    "subgroup_classes",
    "table_of_marks",
    "tensor_induct",
    "transfer",
    "verify_primitive",
]
