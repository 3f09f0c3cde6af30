"""Invariant objects of the binary Segre variety S_(m)(2).

Submodules: ``field`` (GF(4) arithmetic), ``space`` (tensors, points, lines,
subspaces), ``forms`` (symplectic, quadratic, Hermitian forms), ``varieties``
(Segre, quadric, invariant basis, tangents, spread), ``orbits`` (stabiliser
generators and orbit closure), ``checks`` and ``cli``.
"""

from .field import ONE, W, W2, ZERO
from .forms import hermitian_form, polar_complement, quadratic_form, symplectic_form
from .orbits import (
    classify_point,
    induced_index_action,
    point_orbits,
    sgn2,
    spread_line_orbits,
    stabiliser_generators,
)
from .space import E, U, Line, Subspace, Tensor, decomposable, line, span_subspace
from .varieties import (
    base_lines,
    distinguished_tangent,
    hermitian_points,
    hermitian_substructure,
    invariant_basis,
    line_spread,
    quadric_points,
    segre_points,
)

__version__ = "0.1.0"
