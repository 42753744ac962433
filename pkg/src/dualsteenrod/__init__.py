"""Exact mod-p computations in the dual Steenrod algebra and its comodules.

Subpackage map:

* ``fparith``     -- scalar arithmetic over F_p (binomials, digit criteria);
* ``milnor``      -- the dual Steenrod algebra: elements, coproduct, antipode;
* ``series``      -- graded formal (Laurent) series with algebra coefficients;
* ``dyerlashof``  -- Newton primitives and Dyer-Lashof operations on A_*;
* ``steenrod``    -- dual-basis operations, pairings, right actions, cyclic
  classifying-space coactions;
* ``freedl``      -- the free Dyer-Lashof algebra on one class: admissible
  words, Adem normalization, coactions, and the comodule splitting;
* ``cli``         -- command-line interface;
* ``verify``      -- named verification suites backing the acceptance tests.
"""

from ._backend import BACKEND_NAME

__version__ = "0.1.0"
__all__ = ["BACKEND_NAME", "__version__"]
