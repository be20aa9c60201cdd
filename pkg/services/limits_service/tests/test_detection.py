import math

import numpy as np
import pytest

from services.limits_service.app.core import detection
from services.shared.bh_utilities.errors import SpanningFailureError
from services.surface_service.app.core.curves import basic_curves
from services.surface_service.app.models.lamination import ClosedLeaf
from services.surface_service.app.models.surface import SurfaceType, get_surface


class TestDetection:
    """Test class for projective detection on length tables"""

    def test_default_l_max_uses_piece_dimension(self):
        """Test the bound for a pants falls back to dimension 2"""
        pants = SurfaceType(genus=0, punctures=1, boundaries=2)
        sphere = SurfaceType(genus=0, punctures=5)

        assert detection.default_l_max(pants) == pytest.approx(4 * math.acosh(3))
        assert detection.default_l_max(sphere) == pytest.approx(2 * 4 * math.acosh(3))

    def test_constant_table_is_bounded(self):
        """Test lengths that never move and stay under the bound are bounded"""
        values = np.tile([1.5, 2.0, 3.0], (6, 1))

        assert detection.growth(values) == 0.0
        assert detection.is_bounded(values, 3.5)

    def test_length_exactly_at_bound_is_bounded(self):
        """Test a candidate reaching L_max exactly still counts as bounded"""
        values = np.array([[1.0, 2.0], [1.0, 4.0], [1.0, 3.0]])

        assert detection.is_bounded(values, 4.0)
        assert not detection.is_bounded(values, 4.0 - 1e-12)

    def test_flat_table_above_bound_is_not_bounded(self):
        """Test lengths that never move but sit above L_max are not bounded"""
        values = np.tile([12.0, 2.0], (8, 1))

        assert detection.growth(values) == 0.0
        assert not detection.is_bounded(values, 10.0)

    def test_modest_growth_past_bound_is_not_bounded(self):
        """Test short curves that grow a little past L_max are not bounded"""
        values = np.outer(np.arange(1, 7), [0.5, 2.0])

        assert detection.growth(values) == pytest.approx(10.0)
        assert not detection.is_bounded(values, 11.0)
        assert detection.is_bounded(values[:5], 11.0)

    def test_linear_growth_is_not_bounded(self):
        """Test growth past the bound is reported"""
        values = np.outer(np.arange(10), [1.0, 2.0])

        assert detection.growth(values) == pytest.approx(18.0)
        assert not detection.is_bounded(values, 10.0)

    def test_direction_of_linear_growth(self):
        """Test increments of (i, 2i, 0) give the direction (1/2, 1, 0)"""
        values = np.outer(np.arange(8), [1.0, 2.0, 0.0]) + np.array([3.0, 1.0, 2.0])

        direction = detection.detect_direction(values, max_modulus=3, tolerance=1e-9)

        assert (direction.modulus, direction.residue) == (1, 0)
        np.testing.assert_allclose(direction.vector, [0.5, 1.0, 0.0])
        assert direction.convergence == pytest.approx(0.0, abs=1e-12)

    def test_alternating_table_needs_modulus_two(self):
        """Test a table alternating between two directions converges on the even rows"""
        rows = [[k, 0.0] if k % 2 == 0 else [0.0, k] for k in range(10)]

        direction = detection.detect_direction(np.asarray(rows, dtype=float), max_modulus=2, tolerance=1e-9)

        assert (direction.modulus, direction.residue) == (2, 0)
        np.testing.assert_allclose(direction.vector, [1.0, 0.0])
        assert direction.positions == (0, 2, 4, 6, 8)

    def test_tail_window_sees_earlier_rows(self):
        """Test a direction that wobbles inside the tail is refused even when the last two rows agree"""
        increments = np.array([[1.0, 0.5], [1.0, 0.9], [1.0, 0.5], [1.0, 0.5]])
        values = np.vstack([np.zeros(2), np.cumsum(increments, axis=0)])

        narrow = detection.detect_direction(values, max_modulus=1, tolerance=1e-9, window=2)
        wide = detection.detect_direction(values, max_modulus=1, tolerance=1e-9, window=3)

        assert narrow.convergence == pytest.approx(0.0)
        assert wide.convergence == pytest.approx(0.4)

    @pytest.mark.parametrize("window,expected", [(2, 0.0), (3, 0.25), (10, 0.5)])
    def test_tail_distance(self, window, expected):
        """Test the distance of the tail rows to the last row"""
        rows = np.array([[1.0, 0.0], [1.0, 0.25], [1.0, 0.5], [1.0, 0.5]])

        assert detection.tail_distance(rows, window) == pytest.approx(expected)

    def test_short_table_has_no_direction(self):
        """Test fewer than three rows give no direction"""
        assert detection.detect_direction(np.zeros((2, 3)), max_modulus=2, tolerance=1e-3) is None


class TestReconstruction:
    """Test class for matching a direction against components"""

    def setup_method(self):
        self.torus = get_surface(1, 1)
        self.a, self.b, self.c = basic_curves(self.torus)
        self.candidates = [ClosedLeaf(x) for x in (self.a, self.b, self.c)]

    def test_single_curve_is_recovered(self):
        """Test the direction (0, 1, 1) is the curve a with unit weight"""
        components = [ClosedLeaf(x) for x in (self.a, self.b, self.c)]

        found = detection.reconstruct(self.torus, [0.0, 1.0, 1.0], components, self.candidates, 1e-6)

        (leaf,) = found.components
        assert leaf.curve.weights == self.a.weights
        assert leaf.weight == pytest.approx(1.0)
        assert found.residual == pytest.approx(0.0, abs=1e-12)

    def test_unmatched_direction_gives_nothing(self):
        """Test a direction positive on every curve has no closed reconstruction"""
        components = [ClosedLeaf(x) for x in (self.a, self.b, self.c)]

        assert detection.reconstruct(self.torus, [1.0, 0.3, 0.7], components, self.candidates, 1e-6) is None

    def test_indistinguishable_components_raise(self):
        """Test two curves with the same intersections against the candidates are refused"""
        with pytest.raises(SpanningFailureError, match="do not separate"):
            detection.reconstruct(
                self.torus, [1.0], [ClosedLeaf(self.a), ClosedLeaf(self.b)], [ClosedLeaf(self.c)], 1e-6
            )
