"""An imperative language with exceptions, compiled to decorated terms."""

from .ast import (
    Add,
    AExp,
    And,
    Assign,
    BExp,
    BFalse,
    BTrue,
    Clause,
    Command,
    Eq,
    If,
    Le,
    Lit,
    Loc,
    Mul,
    Not,
    Seq,
    Skip,
    Sub,
    Throw,
    TryCatch,
    While,
    print_aexp,
    print_bexp,
    print_command,
)
from .elaborate import (
    BOOL_T,
    FUEL_EXCEPTION,
    ElaborationError,
    UndeclaredException,
    UndeclaredLocation,
    build_imp_theory,
    carrier_sizes,
    default_carriers,
    elaborate,
)
from .equiv import FUEL_EXHAUSTED, NOT_EQUAL, STRONG, WEAK, Verdict, check_equiv
from .parser import parse_aexp, parse_bexp, parse_command

__all__ = [
    "AExp",
    "Add",
    "And",
    "Assign",
    "BExp",
    "BFalse",
    "BOOL_T",
    "BTrue",
    "Clause",
    "Command",
    "ElaborationError",
    "Eq",
    "FUEL_EXCEPTION",
    "FUEL_EXHAUSTED",
    "If",
    "Le",
    "Lit",
    "Loc",
    "Mul",
    "NOT_EQUAL",
    "Not",
    "STRONG",
    "Seq",
    "Skip",
    "Sub",
    "Throw",
    "TryCatch",
    "UndeclaredException",
    "UndeclaredLocation",
    "Verdict",
    "WEAK",
    "While",
    "build_imp_theory",
    "carrier_sizes",
    "check_equiv",
    "default_carriers",
    "elaborate",
    "parse_aexp",
    "parse_bexp",
    "parse_command",
    "print_aexp",
    "print_bexp",
    "print_command",
]
