"""Exact root discriminants, ramification filtrations and enumeration of
abelian number fields, with fields represented by groups of Dirichlet
characters."""

from rdlab.arith import Bound, Factorization, RootDiscriminant, factor, valuation
from rdlab.characters import DirichletCharacter, UnitGroupStructure, unit_group_structure
from rdlab.enumerator import EnumerationParams, enumerate_abelian_fields
from rdlab.fields import (
    AbelianField,
    cyclotomic_field,
    discriminant,
    quadratic_field,
    rational_field,
    root_discriminant,
)
from rdlab.fieldspec import parse_field_spec

__all__ = [
    "AbelianField",
    "Bound",
    "DirichletCharacter",
    "EnumerationParams",
    "Factorization",
    "RootDiscriminant",
    "UnitGroupStructure",
    "cyclotomic_field",
    "discriminant",
    "enumerate_abelian_fields",
    "factor",
    "parse_field_spec",
    "quadratic_field",
    "rational_field",
    "root_discriminant",
    "unit_group_structure",
    "valuation",
]

__version__ = "0.1.0"
