from services.limits_service.app.core.candidates import frontier_arcs
from services.mlt_service.app.core import unions
from services.mlt_service.app.core.layering import removals
from services.mlt_service.app.models.mlt import Layer
from services.surface_service.app.core.cutting import cut_along
from services.surface_service.app.core.named import round_curve
from services.surface_service.app.models.lamination import ClosedLeaf, IrrationalLeaf
from services.surface_service.app.models.subsurface import Subsurface
from services.surface_service.app.models.surface import get_surface


def _piece(surface, curves, predicate):
    cut = cut_along(surface, curves)
    return Subsurface.from_piece(cut, next(p for p in cut.pieces if predicate(p)))


class TestUnions:
    """Test class for core, intermediate and extended unions on S(0,5)"""

    def setup_method(self):
        """Set up a closed first layer and an arc second layer"""
        self.sphere = get_surface(0, 5)
        self.c01 = round_curve(self.sphere, [0, 1])
        self.c34 = round_curve(self.sphere, [3, 4])
        self.c12 = round_curve(self.sphere, [1, 2])
        self.middle = _piece(self.sphere, [self.c01, self.c34], lambda p: p.punctures == (2,))
        arcs = frontier_arcs(self.sphere, self.middle, ())
        self.loop = next(
            a for a in arcs if a.arc.is_loop and a.arc.holes[a.arc.start][1][0] == self.c34.weights
        )
        self.first = Layer(depth=1, pieces=(), components=(ClosedLeaf(self.c01),), cut=(self.c01.key(),))
        self.second = Layer(
            depth=2, pieces=(), components=(self.loop,), supports=((self.loop.key, self.middle),)
        )
        self.layers = (self.first, self.second)

    def test_middle_pants_carries_three_arcs(self):
        """Test the pants between c01 and c34 has two loops and one edge on its frontier"""
        arcs = frontier_arcs(self.sphere, self.middle, ())

        assert len(arcs) == 3
        assert sum(1 for a in arcs if a.arc.is_loop) == 2

    def test_core_drops_later_arcs(self):
        """Test arcs found after the first layer stay out of the core"""
        assert unions.keys(unions.core_union(self.layers)) == ("curve:" + self.c01.key(),)

    def test_intermediate_without_irrational_supports_is_core(self):
        """Test only irrational components add frontier curves to the intermediate union"""
        assert unions.intermediate_union(self.layers) == unions.core_union(self.layers)

    def test_extended_adds_arc_frontier(self):
        """Test the frontier of the arc's pants joins the extended union"""
        extended = unions.keys(unions.extended_union(self.sphere, self.layers))

        assert extended == tuple(sorted(["curve:" + self.c01.key(), "curve:" + self.c34.key()]))

    def test_extended_skips_frontier_crossing_a_component(self):
        """Test an arc-support frontier curve crossing a layer component is left out"""
        crossing = Layer(depth=3, pieces=(), components=(ClosedLeaf(round_curve(self.sphere, [2, 3])),))

        extended = unions.keys(unions.extended_union(self.sphere, self.layers + (crossing,)))

        assert "curve:" + self.c34.key() not in extended

    def test_intermediate_adds_irrational_frontier(self):
        """Test the frontier of a lamination's support joins the intermediate union"""
        support = _piece(self.sphere, [self.c12], lambda p: len(p.punctures) == 3)
        leaf = IrrationalLeaf(
            surface_id=self.sphere.id,
            provenance="stable(g)",
            dilatation=5.8,
            cone_basis=(),
            cone_coordinates=(),
            approximant=self.c34,
            support=support,
        )
        layers = (Layer(depth=1, pieces=(), components=(leaf,), supports=((leaf.key, support),)),)

        assert unions.keys(unions.core_union(layers)) == ("lamination:stable(g)",)
        assert unions.keys(unions.intermediate_union(layers)) == (
            "curve:" + self.c12.key(),
            "lamination:stable(g)",
        )

    def test_merge_keeps_first_and_sorts(self):
        """Test merge keeps one leaf per key in key order"""
        heavy = ClosedLeaf(self.c01, weight=2.0)

        merged = unions.merge([heavy], [ClosedLeaf(self.c01), ClosedLeaf(self.c34)])

        assert [leaf.key for leaf in merged] == sorted(["curve:" + self.c01.key(), "curve:" + self.c34.key()])
        assert next(leaf for leaf in merged if leaf.key == heavy.key).weight == 2.0


class TestSandwich:
    """Test class for the intermediate <= target <= extended check"""

    def setup_method(self):
        self.sphere = get_surface(0, 5)
        self.c01 = ClosedLeaf(round_curve(self.sphere, [0, 1]))
        self.c34 = ClosedLeaf(round_curve(self.sphere, [3, 4]))
        self.c12 = ClosedLeaf(round_curve(self.sphere, [1, 2]))
        self.intermediate = (self.c01,)
        self.extended = (self.c01, self.c34)

    def test_both_bounds_hold(self):
        """Test targets between the two unions pass"""
        assert unions.sandwich(self.intermediate, self.extended, [self.c01]).passed
        assert unions.sandwich(self.intermediate, self.extended, [self.c01, self.c34]).passed

    def test_missing_component_breaks_lower_bound(self):
        """Test a target without an intermediate component fails below"""
        verdict = unions.sandwich(self.intermediate, self.extended, [self.c34])

        assert not verdict.lower_ok
        assert verdict.upper_ok
        assert verdict.missing == (self.c01.key,)

    def test_extra_component_breaks_upper_bound(self):
        """Test a target reaching outside the extended union fails above"""
        verdict = unions.sandwich(self.intermediate, self.extended, [self.c01, self.c12])

        assert verdict.lower_ok
        assert not verdict.upper_ok
        assert verdict.extra == (self.c12.key,)

    def test_weights_do_not_matter(self):
        """Test components compare by class, not by weight"""
        heavy = ClosedLeaf(self.c01.curve, weight=3.0)

        assert unions.sandwich(self.intermediate, self.extended, [heavy]).passed


class TestRemovals:
    """Test class for what a layer removes"""

    def setup_method(self):
        self.sphere = get_surface(0, 5)
        self.c01 = round_curve(self.sphere, [0, 1])
        self.c34 = round_curve(self.sphere, [3, 4])
        self.middle = _piece(self.sphere, [self.c01, self.c34], lambda p: p.punctures == (2,))
        self.loop = frontier_arcs(self.sphere, self.middle, ())[0]

    def test_arc_support_is_its_pants(self):
        """Test an arc component removes the pants that carries it"""
        supports, cut = removals(self.sphere, [(self.loop, self.middle)], [])

        assert [(key, sub.key) for key, sub in supports] == [(self.loop.key, self.middle.key)]
        assert cut == []

    def test_closed_curve_on_support_frontier_is_not_cut(self):
        """Test a closed component bounding a same-layer support is removed with the support"""
        _, cut = removals(self.sphere, [(self.loop, self.middle), (ClosedLeaf(self.c01), None)], [])

        assert cut == []

    def test_closed_curve_elsewhere_is_cut(self):
        """Test a closed component with no support is cut"""
        c12 = round_curve(self.sphere, [1, 2])

        supports, cut = removals(self.sphere, [(ClosedLeaf(c12), None)], [])

        assert supports == []
        assert cut == [c12]
