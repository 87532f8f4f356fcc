"""Exact computational toolkit for finite-dimensional Lie 2-algebras."""
from .exactlin import KERNEL, FinSpace, LinMap, MultiTensor, Q
from .lie2core import (AxiomReport, Hom2, Lie2Algebra, TwoMorphism, compose, invert,
                       skeletalize, verify_2mor, verify_hom, verify_l2a)

__all__ = ["KERNEL", "FinSpace", "LinMap", "MultiTensor", "Q", "AxiomReport", "Hom2",
           "Lie2Algebra", "TwoMorphism", "compose", "invert", "skeletalize",
           "verify_2mor", "verify_hom", "verify_l2a"]
__version__ = "0.1.0"
