"""Representations and cohomology of transporter categories G∝P over F_p.

Modules, in dependency order: ``linfield`` (exact linear algebra), ``groups``,
``gposet``, ``transporter`` (finite categories and functors), ``algebra``
(category algebras, radicals, blocks, idempotents), ``rep`` (functor
modules), ``homology`` (resolutions, Ext, products, complexity), ``quillen``
(Quillen pairs and dimension certificates), ``catalog`` and ``cli``.
"""

from .algebra import blocks, build_algebra, primitive_idempotents
from .gposet import GPoset, build_sp_poset, chain_poset, discrete_poset, point_poset
from .groups import FiniteGroup, Subgroup, cyclic_group, direct_product
from .homology import complexity, ext_dims, ext_table, minimal_resolution, yoneda_and_cup
from .quillen import enumerate_quillen_pairs, stratification_report, variety_dimension
from .rep import FunctorModule, constant_module, regular_representation, trivial_module
from .transporter import FiniteCategory, TransporterCategory, build_transporter

__version__ = "0.1.0"

__all__ = [
    "FiniteGroup",
    "Subgroup",
    "cyclic_group",
    "direct_product",
    "GPoset",
    "point_poset",
    "chain_poset",
    "discrete_poset",
    "build_sp_poset",
    "FiniteCategory",
    "TransporterCategory",
    "build_transporter",
    "build_algebra",
    "blocks",
    "primitive_idempotents",
    "FunctorModule",
    "trivial_module",
    "constant_module",
    "regular_representation",
    "minimal_resolution",
    "ext_dims",
    "ext_table",
    "yoneda_and_cup",
    "complexity",
    "enumerate_quillen_pairs",
    "variety_dimension",
    "stratification_report",
]
