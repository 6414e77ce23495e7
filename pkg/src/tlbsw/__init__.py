"""Exact engine for the type-B Temperley-Lieb category and its U_q(sl2) functor.

Submodules:

* :mod:`tlbsw.qfield` - Laurent polynomials and rational functions in ``s = q^{1/2}`` and ``Q``;
* :mod:`tlbsw.diagrams` - marked planar diagrams, composition, enumeration;
* :mod:`tlbsw.tlb` - the algebras ``TLB_n(q, Q)`` and their presentation;
* :mod:`tlbsw.cellular` - cell modules, Gram matrices, semisimplicity;
* :mod:`tlbsw.uqsl2` - weight modules, coproduct and R-matrices;
* :mod:`tlbsw.duality` - the functor to ``End(M(ell) ⊗ V^{⊗r})`` and certificates;
* :mod:`tlbsw.cli` - the ``tlbsw`` command.
"""

from __future__ import annotations

from .diagrams import DiagramError, DiagramSum, MarkedDiagram, Rules, compose, enumerate_diagrams
from .qfield import GaussRat, LaurentPoly, RatFunc, as_ratfunc, parse, render

__version__ = "0.1.0"

__all__ = [
    "DiagramError",
    "DiagramSum",
    "GaussRat",
    "LaurentPoly",
    "MarkedDiagram",
    "RatFunc",
    "Rules",
    "as_ratfunc",
    "compose",
    "enumerate_diagrams",
    "parse",
    "render",
]
