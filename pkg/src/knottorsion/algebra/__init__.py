"""Coefficient fields, Laurent polynomials, determinants and resultants."""

from .fields import (
    QQ,
    BigComplexField,
    Field,
    FieldError,
    QuotientExtension,
    RationalField,
    RationalFunctionField,
    field_from_description,
)
from .laurent import LaurentPolynomial, LaurentRing, NotDivisible, parse_laurent
from .matrix import SquareMatrix
from .resultant import resultant_with_cyclotomic, root_of_unity_product, r_m

__all__ = [
    "QQ",
    "BigComplexField",
    "Field",
    "FieldError",
    "LaurentPolynomial",
    "LaurentRing",
    "NotDivisible",
    "QuotientExtension",
    "RationalField",
    "RationalFunctionField",
    "SquareMatrix",
    "field_from_description",
    "parse_laurent",
    "r_m",
    "resultant_with_cyclotomic",
    "root_of_unity_product",
]
