from itertools import combinations

import numpy as np
import pytest
from unittest.mock import Mock

from services.boundary_service.app.core import invariants
from services.boundary_service.app.core.poset import AdherencePoset, invariant_universe
from services.boundary_service.app.models.end_invariant import EndInvariant, Ending
from services.limits_service.app.core.candidates import frontier_arcs
from services.metrics_service.app.models.mapping_class import MappingClass
from services.metrics_service.app.services.mapping_class_service import MappingClassService
from services.shared.bh_utilities.errors import NotUml0Error, OverlapError, SurfaceMismatchError
from services.shared.bh_utilities.settings import EnumerationSettings, StableSettings
from services.surface_service.app.core.cutting import cut_along
from services.surface_service.app.core.named import round_curve
from services.surface_service.app.models.curve import MultiCurve
from services.surface_service.app.models.lamination import ClosedLeaf
from services.surface_service.app.models.subsurface import Subsurface
from services.surface_service.app.models.surface import get_surface
from services.surface_service.app.services.enumeration_service import EnumerationService


def sphere_ending(sphere):
    """stable(f) for f = T_c01 T_c12^-1, supported on the four-holed sphere bounded by c34."""
    c01, c12 = round_curve(sphere, [0, 1]), round_curve(sphere, [1, 2])
    universe = EnumerationService(Mock(), EnumerationSettings()).universe(sphere).curves
    f = MappingClass(sphere.id, ((c01, 1), (c12, -1)), "f")
    leaf = MappingClassService(Mock(), StableSettings()).stable_lamination(sphere, f, universe)
    return f, leaf


class TestUml0:
    """Test class for membership in UML0 and the bijection with boundary points"""

    def setup_method(self):
        """Set up S(0,5) with the ending stable(f) bounded by c34"""
        self.sphere = get_surface(0, 5)
        self.c01 = round_curve(self.sphere, [0, 1])
        self.c34 = round_curve(self.sphere, [3, 4])
        self.c12 = round_curve(self.sphere, [1, 2])
        self.f, self.leaf = sphere_ending(self.sphere)

    def test_support_is_bounded_by_c34(self):
        """Test the minimal supporting surface of stable(f) has frontier c34"""
        assert [c.weights for c in self.leaf.support.frontier] == [self.c34.weights]

    def test_multicurve_is_in_uml0(self):
        """Test every multicurve lies in UML0"""
        assert invariants.is_uml0(self.sphere, [ClosedLeaf(self.c01), ClosedLeaf(self.c34)])

    def test_ending_with_its_frontier_is_in_uml0(self):
        """Test an ending lamination together with its frontier curve lies in UML0"""
        assert invariants.is_uml0(self.sphere, [self.leaf, ClosedLeaf(self.c34)])

    def test_ending_without_its_frontier_is_not_in_uml0(self):
        """Test an ending lamination alone misses its frontier curve"""
        assert not invariants.is_uml0(self.sphere, [self.leaf])

    def test_arc_components_are_never_in_uml0(self):
        """Test a lamination with an arc component is outside UML0"""
        cut = cut_along(self.sphere, [self.c01, self.c34])
        middle = Subsurface.from_piece(cut, next(p for p in cut.pieces if p.punctures == (2,)))
        arc = frontier_arcs(self.sphere, middle, ())[0]

        assert not invariants.is_uml0(self.sphere, [arc, ClosedLeaf(self.c01), ClosedLeaf(self.c34)])

    def test_crossing_components_raise_overlap(self):
        """Test intersecting components do not form a lamination"""
        with pytest.raises(OverlapError, match="crosses"):
            invariants.is_uml0(self.sphere, [ClosedLeaf(self.c01), ClosedLeaf(self.c12)])

    def test_round_trip_through_points(self):
        """Test e(invariant_to_point(L)) gives back the components of L"""
        leaves = [ClosedLeaf(self.c34), self.leaf]

        point = invariants.invariant_to_point(self.sphere, leaves)

        assert [leaf.key for leaf in invariants.e_invariant(self.sphere, point)] == sorted(
            leaf.key for leaf in leaves
        )
        assert not point.is_regular

    def test_invariant_to_point_reports_missing_frontier(self):
        """Test the missing frontier curve is named in the error details"""
        with pytest.raises(NotUml0Error, match="not in UML0") as info:
            invariants.invariant_to_point(self.sphere, [self.leaf])

        assert info.value.details["missing"] == {self.leaf.key: [list(self.c34.weights)]}

    def test_validate_rejects_non_parabolic_frontier(self):
        """Test an end invariant whose ending frontier is not parabolic is rejected"""
        invariant = EndInvariant(
            self.sphere.id, MultiCurve.of(self.sphere.id, []), (Ending(self.leaf, self.leaf.support),)
        )

        with pytest.raises(NotUml0Error, match="not parabolic"):
            invariants.validate(self.sphere, invariant)

    def test_validate_rejects_other_surface(self):
        """Test an invariant from another surface is rejected"""
        invariant = EndInvariant("S(0,6)", MultiCurve.of("S(0,6)", []))

        with pytest.raises(SurfaceMismatchError):
            invariants.validate(self.sphere, invariant)


class TestIota:
    """Test class for the embedding of multicurves as regular points"""

    def setup_method(self):
        self.sphere = get_surface(0, 5)
        self.c01 = round_curve(self.sphere, [0, 1])
        self.c34 = round_curve(self.sphere, [3, 4])
        self.c12 = round_curve(self.sphere, [1, 2])

    def test_iota_is_regular(self):
        """Test iota gives a point with no endings and the multicurve as parabolics"""
        point = invariants.iota(self.sphere, [self.c34, self.c01])

        assert point.is_regular
        assert point.parabolics == MultiCurve.of(self.sphere.id, [self.c01, self.c34])

    def test_iota_rejects_crossing_curves(self):
        """Test crossing curves are not a multicurve"""
        with pytest.raises(OverlapError, match="multicurve"):
            invariants.iota(self.sphere, [self.c01, self.c12])

    def test_iota_rejects_repeated_curves(self):
        """Test a repeated curve is not a multicurve"""
        with pytest.raises(OverlapError):
            invariants.iota(self.sphere, [self.c01, self.c01])

    def test_bigger_multicurve_adheres_to_smaller(self):
        """Test iota(c01 + c34) adheres to iota(c01) and not conversely"""
        single = invariants.iota(self.sphere, [self.c01])
        pair = invariants.iota(self.sphere, [self.c01, self.c34])

        assert invariants.unilaterally_adherent(pair, single)
        assert not invariants.unilaterally_adherent(single, pair)

    def test_adherence_across_surfaces_is_rejected(self):
        """Test points of different surfaces are not compared"""
        other = get_surface(0, 6)

        with pytest.raises(SurfaceMismatchError):
            invariants.unilaterally_adherent(
                invariants.iota(self.sphere, [self.c01]), invariants.iota(other, [round_curve(other, [0, 1])])
            )


class TestAdherencePreorder:
    """Property tests for unilateral adherence on regular points of S(0,6)"""

    def setup_method(self):
        self.sphere = get_surface(0, 6)
        self.pants = [
            round_curve(self.sphere, [0, 1]),
            round_curve(self.sphere, [0, 1, 2]),
            round_curve(self.sphere, [4, 5]),
        ]

    def _point(self, chosen):
        return invariants.iota(self.sphere, [self.pants[i] for i in sorted(chosen)])

    def test_adherence_is_a_preorder(self):
        """Test adherence is reflexive and transitive on every triple of the seven points"""
        subsets = [set(s) for k in (1, 2, 3) for s in combinations(range(3), k)]
        points = [self._point(s) for s in subsets]

        for pa in points:
            assert invariants.unilaterally_adherent(pa, pa)
            for pb in points:
                for pc in points:
                    if invariants.unilaterally_adherent(pb, pa) and invariants.unilaterally_adherent(pc, pb):
                        assert invariants.unilaterally_adherent(pc, pa)

    def test_adherence_is_containment(self):
        """Test iota(B) adheres to iota(A) exactly when A is contained in B, for every pair"""
        subsets = [set(s) for k in (1, 2, 3) for s in combinations(range(3), k)]

        for a in subsets:
            for b in subsets:
                assert invariants.unilaterally_adherent(self._point(b), self._point(a)) == (a <= b)


class TestAdherenceOnTheUniverse:
    """Test class for adherence on every pair of enumerated invariants of S(0,5), endings included"""

    @classmethod
    def setup_class(cls):
        sphere = get_surface(0, 5)
        _, leaf = sphere_ending(sphere)
        universe = EnumerationService(Mock(), EnumerationSettings()).universe(sphere)
        cls.points = invariant_universe(sphere, universe, [Ending(leaf, leaf.support)])
        n = len(cls.points)
        # below[i, j]: points[j] adheres to points[i]
        cls.below = np.array(
            [[invariants.unilaterally_adherent(cls.points[j], cls.points[i]) for j in range(n)] for i in range(n)],
            dtype=bool,
        )

    def test_enough_pairs_are_checked(self):
        """Test the universe yields at least ten thousand ordered pairs with an ending among them"""
        assert len(self.points) ** 2 >= 10 ** 4
        assert any(point.endings for point in self.points)

    def test_reflexive(self):
        """Test every point adheres to itself"""
        assert self.below.diagonal().all()

    def test_transitive(self):
        """Test a <= b <= c implies a <= c for every triple"""
        steps = self.below.astype(np.int64)
        composed = (steps @ steps) > 0

        assert not (composed & ~self.below).any()

    def test_antisymmetric_on_classes(self):
        """Test mutual adherence holds exactly between points with the same laminations"""
        keys = [point.keys() for point in self.points]
        same = np.array([[a == b for b in keys] for a in keys], dtype=bool)

        assert np.array_equal(self.below & self.below.T, same)

    def test_poset_matrix_agrees(self):
        """Test the stored order of the merged poset is the adherence relation"""
        poset = AdherencePoset(self.points)

        for i, a in enumerate(self.points):
            for j, b in enumerate(self.points):
                assert poset.leq[poset.index(a), poset.index(b)] == self.below[i, j]


class TestQcDim:
    """Test class for the quasi-conformal dimension and the height formula"""

    def setup_method(self):
        self.sphere = get_surface(0, 5)
        self.c01 = round_curve(self.sphere, [0, 1])
        self.c34 = round_curve(self.sphere, [3, 4])
        self.f, self.leaf = sphere_ending(self.sphere)

    def test_single_curve(self):
        """Test cutting S(0,5) along c34 leaves a four-holed sphere and a pants"""
        point = invariants.iota(self.sphere, [self.c34])

        assert invariants.qc_dim(self.sphere, point) == 2
        assert invariants.formula_height(self.sphere, point) == 1

    def test_pants_decomposition(self):
        """Test a pants decomposition leaves nothing to deform"""
        point = invariants.iota(self.sphere, [self.c01, self.c34])

        assert invariants.qc_dim(self.sphere, point) == 0
        assert invariants.formula_height(self.sphere, point) == 0

    def test_ending_removes_its_support(self):
        """Test the four-holed sphere filled by stable(f) contributes nothing"""
        point = invariants.invariant_to_point(self.sphere, [ClosedLeaf(self.c34), self.leaf])

        assert invariants.qc_dim(self.sphere, point) == 0

    @pytest.mark.parametrize(
        "genus,punctures,expected",
        [
            (0, 5, 1),
            (1, 2, 1),
            (0, 6, 2),
            (0, 7, 3),
            (1, 1, 0),
        ],
    )
    def test_max_height(self, genus, punctures, expected):
        """Test single curves sit at height dim/2 - 1"""
        assert invariants.max_height(get_surface(genus, punctures)) == expected
