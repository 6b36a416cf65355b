#!/usr/bin/python3

"""Arithmetic circuits over discrete factors"""

from .circuits import Variable, Indicator, Parameter, Sum, Product, Circuit, CircuitBuilder
from .factors import Factor, FactorSet

__version__ = "1.0.0"
__author__  = "Eric Niklas Wolf"
__email__   = "eric_niklas.wolf@mailbox.tu-dresden.de"
__all__ = (
    "Variable",
    "Indicator",
    "Parameter",
    "Sum",
    "Product",
    "Circuit",
    "CircuitBuilder",
    "Factor",
    "FactorSet",
    "analysis",
    "circuits",
    "compilation",
    "config",
    "errors",
    "factors",
    "formats",
    "generate",
    "nnf",
    "oracle",
    "query",
    "reduction",
    "transform",
    "visitors"
)
