"""Exceptional points of non-Hermitian Bloch Hamiltonians.

Symmetry-reduced constraint sets, grid scans for degeneracies and a
dispersion classifier for EP3s and EP4s.
"""

from .basis import BasisFamily, basis_matrices, decompose, gamma, gell_mann, pauli, reconstruct
from .charpoly import char_poly, constraints, discriminant, roots_closed, roots_numeric
from .config import ConfigError, load_config, parse_config
from .dispersion import EPClass, ScalingFit, classify, predicted_dispersion, scaling_exponents
from .epfinder import DegeneracyReport, ScanConfig, ScanResult, analyse_point, scan
from .estimators import DispersionClassifier, ExceptionalPointFinder, SymmetryProjector
from .expr import ExpressionError, compile_expr, evaluate, parse
from .fields import HamiltonianField, from_coefficients, from_entries
from .models import MODELS, get_model
from .symmetry import SymmetryKind, SymmetryOperator, check_symmetry, symmetrize, vanishing_pattern

__version__ = "0.1.0"

__all__ = [
    "BasisFamily",
    "basis_matrices",
    "decompose",
    "gamma",
    "gell_mann",
    "pauli",
    "reconstruct",
    "char_poly",
    "constraints",
    "discriminant",
    "roots_closed",
    "roots_numeric",
    "ConfigError",
    "load_config",
    "parse_config",
    "EPClass",
    "ScalingFit",
    "classify",
    "predicted_dispersion",
    "scaling_exponents",
    "DegeneracyReport",
    "ScanConfig",
    "ScanResult",
    "analyse_point",
    "scan",
    "DispersionClassifier",
    "ExceptionalPointFinder",
    "SymmetryProjector",
    "ExpressionError",
    "compile_expr",
    "evaluate",
    "parse",
    "HamiltonianField",
    "from_coefficients",
    "from_entries",
    "MODELS",
    "get_model",
    "SymmetryKind",
    "SymmetryOperator",
    "check_symmetry",
    "symmetrize",
    "vanishing_pattern",
]
