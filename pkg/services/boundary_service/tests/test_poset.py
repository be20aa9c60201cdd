import numpy as np
import pytest
from unittest.mock import Mock

from services.boundary_service.app.core import invariants
from services.boundary_service.app.core.poset import AdherencePoset, invariant_universe
from services.boundary_service.app.models.end_invariant import Ending
from services.boundary_service.tests.test_invariants import sphere_ending
from services.shared.bh_utilities.errors import EnumerationBudgetExceededError
from services.shared.bh_utilities.settings import EnumerationSettings
from services.surface_service.app.core.named import round_curve
from services.surface_service.app.models.surface import get_surface
from services.surface_service.app.services.enumeration_service import EnumerationService


def _poset(surface, endings=()):
    universe = EnumerationService(Mock(), EnumerationSettings()).universe(surface)
    return AdherencePoset(invariant_universe(surface, universe, endings)), universe


class TestAdherencePoset:
    """Test class for the adherence order on three regular points of S(0,5)"""

    def setup_method(self):
        """Set up {c01} and {c34} below the pants decomposition {c01, c34}"""
        self.sphere = get_surface(0, 5)
        self.c01 = round_curve(self.sphere, [0, 1])
        self.c34 = round_curve(self.sphere, [3, 4])
        self.a = invariants.iota(self.sphere, [self.c01])
        self.b = invariants.iota(self.sphere, [self.c34])
        self.top = invariants.iota(self.sphere, [self.c01, self.c34])
        self.poset = AdherencePoset([self.top, self.a, self.b, self.a])

    def test_duplicates_are_merged(self):
        """Test equal invariants appear once"""
        assert len(self.poset) == 3

    def test_smaller_laminations_come_first(self):
        """Test invariants are ordered by number of components"""
        assert self.poset.index(self.top) == 2

    def test_order_is_containment(self):
        """Test leq holds on the diagonal and from each curve to the pair"""
        i, j, k = self.poset.index(self.a), self.poset.index(self.b), self.poset.index(self.top)

        assert self.poset.leq[i, i] and self.poset.leq[i, k] and self.poset.leq[j, k]
        assert not self.poset.leq[k, i]
        assert not self.poset.leq[i, j]
        assert not self.poset.lt[i, i]

    def test_heights(self):
        """Test single curves sit one step below the pants decomposition"""
        assert self.poset.height(self.a) == 1
        assert self.poset.height(self.top) == 0
        assert self.poset.height(invariants.iota(self.sphere, [round_curve(self.sphere, [1, 2])])) is None

    def test_towers(self):
        """Test the only tower from {c01} ends at the pants decomposition"""
        towers = self.poset.towers(self.a)

        assert towers == [(self.a, self.top)]
        assert self.poset.towers(invariants.iota(self.sphere, [round_curve(self.sphere, [1, 2])])) == []

    def test_chain_length(self):
        """Test chain lengths follow adherence and are None against it"""
        assert self.poset.chain_length(self.a, self.top) == 1
        assert self.poset.chain_length(self.a, self.a) == 0
        assert self.poset.chain_length(self.top, self.a) is None
        assert self.poset.chain_length(self.a, self.b) is None

    def test_covers(self):
        """Test the Hasse diagram has one edge from each curve to the pair"""
        cover = self.poset.covers()

        assert int(cover.sum()) == 2
        assert cover[self.poset.index(self.a), self.poset.index(self.top)]

    def test_dot_draws_hasse_diagram_bottom_to_top(self):
        """Test the DOT output is directed, bottom to top, with one edge per cover"""
        dot = self.poset.to_dot(["a", "b", "top"])

        assert dot.startswith("digraph")
        assert "rankdir=BT" in dot
        assert dot.count("->") == 2
        assert '"top"' in dot


class TestBruteForceHeights:
    """Test class for tower-search heights against the quasi-conformal formula"""

    @pytest.mark.parametrize("genus,punctures", [(0, 5), (1, 2)])
    def test_brute_force_matches_formula(self, genus, punctures):
        """Test every regular point with one or two curves has the formula height"""
        surface = get_surface(genus, punctures)
        poset, _ = _poset(surface)

        for invariant in poset.invariants:
            if len(invariant.parabolics) in (1, 2):
                assert poset.height(invariant) == invariants.formula_height(surface, invariant), invariant.name()

    @pytest.mark.parametrize("genus,punctures", [(0, 5), (1, 2), (0, 6)])
    def test_single_curves_reach_max_height(self, genus, punctures):
        """Test single curves are the highest points"""
        surface = get_surface(genus, punctures)
        poset, universe = _poset(surface)

        singles = [poset.height(invariants.iota(surface, [c])) for c in universe.curves]

        assert max(singles) == invariants.max_height(surface)
        assert int(np.max(poset.heights)) == invariants.max_height(surface)

    def test_ending_point_is_minimal(self):
        """Test stable(f) with its frontier c34 has height 0 and adheres to iota(c34)"""
        sphere = get_surface(0, 5)
        _, leaf = sphere_ending(sphere)
        c34 = round_curve(sphere, [3, 4])
        poset, _ = _poset(sphere, [Ending(leaf, leaf.support)])
        ending = next(inv for inv in poset.invariants if inv.endings and len(inv.parabolics) == 1)

        assert [c.weights for c in ending.parabolics] == [c34.weights]
        assert poset.height(ending) == 0 == invariants.formula_height(sphere, ending)
        assert poset.chain_length(invariants.iota(sphere, [c34]), ending) == 1

    def test_budget_is_enforced(self):
        """Test enumerating past the budget raises"""
        sphere = get_surface(0, 5)
        universe = EnumerationService(Mock(), EnumerationSettings()).universe(sphere)

        with pytest.raises(EnumerationBudgetExceededError, match="more than 2"):
            invariant_universe(sphere, universe, (), budget=2)
