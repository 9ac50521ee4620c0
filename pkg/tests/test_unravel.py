import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atlstit.cgs import load_cgs, random_cgs
from atlstit.unravel import UnravelSizeError, export_fragment, unravel, verify_frame

# Two-agent model with a deliberate transition collision at w0:
# profiles (x,c) and (y,c) both move to w1.
COLLIDE = {
    "agents": ["a", "b"],
    "states": ["w0", "w1"],
    "actions": {
        "w0": {"a": ["x", "y"], "b": ["c"]},
        "w1": {"a": ["x"], "b": ["c"]},
    },
    "delta": [
        {"state": "w0", "profile": {"a": "x", "b": "c"}, "next": "w1"},
        {"state": "w0", "profile": {"a": "y", "b": "c"}, "next": "w1"},
        {"state": "w1", "profile": {"a": "x", "b": "c"}, "next": "w1"},
    ],
    "valuation": {"p": ["w1"]},
}

# Same shape without the collision: (y,c) loops back to w0.
SPLIT = {
    "agents": ["a", "b"],
    "states": ["w0", "w1"],
    "actions": {
        "w0": {"a": ["x", "y"], "b": ["c"]},
        "w1": {"a": ["x"], "b": ["c"]},
    },
    "delta": [
        {"state": "w0", "profile": {"a": "x", "b": "c"}, "next": "w1"},
        {"state": "w0", "profile": {"a": "y", "b": "c"}, "next": "w0"},
        {"state": "w1", "profile": {"a": "x", "b": "c"}, "next": "w1"},
    ],
    "valuation": {"p": ["w1"]},
}


def _conditions(violations):
    return {line.split(":", 1)[0] for line in violations}


def _paths(g, w, length):
    if length == 0:
        return {(w,)}
    out = set()
    for path in _paths(g, w, length - 1):
        for profile in g.profiles(path[-1]):
            out.add(path + (g.step(path[-1], profile),))
    return out


class TestUnravel:
    def test_toy1_depth_1(self, toy1):
        fragment = unravel(toy1, "w0", 1)
        assert set(fragment.moments) == {("w0",), ("w0", "w0"), ("w0", "w1")}

    def test_toy1_depth_2(self, toy1):
        fragment = unravel(toy1, "w0", 2)
        assert set(fragment.moments) == {
            ("w0",),
            ("w0", "w0"),
            ("w0", "w1"),
            ("w0", "w0", "w0"),
            ("w0", "w0", "w1"),
            ("w0", "w1", "w1"),
        }

    def test_single_chain_without_branching(self):
        g = random_cgs(1, 1, 1, 1, 5)
        fragment = unravel(g, "w0", 3)
        assert fragment.moments == [
            ("w0",),
            ("w0", "w0"),
            ("w0", "w0", "w0"),
            ("w0", "w0", "w0", "w0"),
        ]

    def test_size_guard(self):
        g = random_cgs(4, 2, 3, 1, 3)
        with pytest.raises(UnravelSizeError):
            unravel(g, "w0", 3, max_moments=2)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10_000))
    def test_moment_count_matches_path_enumeration(self, seed):
        g = random_cgs(3, 2, 2, 1, seed)
        fragment = unravel(g, g.states[0], 3)
        for depth in range(4):
            expected = _paths(g, g.states[0], depth)
            got = {m for m in fragment.moments if len(m) == depth + 1}
            assert got == expected

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10_000))
    def test_cells_partition_with_one_cell_per_action(self, seed):
        g = random_cgs(3, 2, 2, 1, seed)
        fragment = unravel(g, g.states[0], 2)
        for moment in fragment.non_leaves():
            profiles = set(g.profiles(moment[-1]))
            for agent in g.agents:
                cells = fragment.cells[(moment, agent)]
                assert len(cells) == len(g.menu(moment[-1], agent))
                union = set().union(*(group for _, group in cells))
                assert union == profiles
                total = sum(len(group) for _, group in cells)
                assert total == len(profiles)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10_000))
    def test_same_last_state_same_branches(self, seed):
        # the branch correspondence between equal-last-state moments is the
        # identity on outgoing profiles
        g = random_cgs(3, 2, 2, 1, seed)
        fragment = unravel(g, g.states[0], 3)
        non_leaves = list(fragment.non_leaves())
        for m1 in non_leaves:
            for m2 in non_leaves:
                if m1[-1] == m2[-1]:
                    assert fragment.branches(m1) == fragment.branches(m2)

    def test_grand_coalition_cells_deterministic(self, toy2):
        fragment = unravel(toy2, "w0", 2)
        for moment in fragment.non_leaves():
            for profile in g_profiles(toy2, moment[-1]):
                grand = set(g_profiles(toy2, moment[-1]))
                for agent in toy2.agents:
                    cell = next(
                        group
                        for _, group in fragment.cells[(moment, agent)]
                        if profile in group
                    )
                    grand &= cell
                targets = {fragment.succ[(moment, other)] for other in grand}
                assert len(targets) == 1


def g_profiles(g, w):
    return tuple(g.profiles(w))


class TestVerifyFrame:
    def test_toy1_passes(self, toy1):
        assert verify_frame(unravel(toy1, "w0", 2)) == []

    def test_collision_model_passes(self):
        g = load_cgs(json.dumps(COLLIDE))
        assert verify_frame(unravel(g, "w0", 3)) == []

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 10_000))
    def test_random_models_pass(self, seed):
        g = random_cgs(3, 2, 2, 1, seed)
        for w in g.states:
            assert verify_frame(unravel(g, w, 2)) == []

    def test_le_fault_detected(self, toy1):
        fragment = unravel(toy1, "w0", 2)
        moment = ("w0",)
        cells = fragment.cells[(moment, "a")]
        fragment.cells[(moment, "a")] = [("s2", cells[0][1]), cells[1]]
        assert "LE" in _conditions(verify_frame(fragment))

    def test_el_fault_detected(self, toy1):
        fragment = unravel(toy1, "w0", 2)
        moment = ("w0",)
        a, b = (moment, "a", "s1"), (moment, "a", "s2")
        fragment.exe[a], fragment.exe[b] = fragment.exe[b], fragment.exe[a]
        assert "EL" in _conditions(verify_frame(fragment))

    def test_td_fault_detected(self, toy1):
        fragment = unravel(toy1, "w0", 2)
        fragment.moments.remove(("w0", "w1", "w1"))
        assert "TD" in _conditions(verify_frame(fragment))

    def test_order_fault_detected(self, toy1):
        fragment = unravel(toy1, "w0", 2)
        fragment.moments.remove(("w0", "w1"))
        assert "order" in _conditions(verify_frame(fragment))

    def test_nc_fault_detected(self):
        # duplicate a branch into a second cell of the same agent; the two
        # branches collide in delta, so determinism stays silent
        g = load_cgs(json.dumps(COLLIDE))
        fragment = unravel(g, "w0", 2)
        moment = ("w0",)
        xc, yc = ("x", "c"), ("y", "c")
        fragment.cells[(moment, "a")] = [
            ("x", frozenset({xc})),
            ("y", frozenset({xc, yc})),
        ]
        fragment.exe[(moment, "a", "y")] = frozenset({xc, yc})
        conditions = _conditions(verify_frame(fragment))
        assert conditions == {"NC"}

    def test_determinism_fault_detected(self):
        # merge both of agent a's cells; the branches step to different states
        g = load_cgs(json.dumps(SPLIT))
        fragment = unravel(g, "w0", 2)
        moment = ("w0",)
        xc, yc = ("x", "c"), ("y", "c")
        fragment.cells[(moment, "a")] = [("x", frozenset({xc, yc}))]
        fragment.exe[(moment, "a", "x")] = frozenset({xc, yc})
        del fragment.exe[(moment, "a", "y")]
        conditions = _conditions(verify_frame(fragment))
        assert "determinism" in conditions

    def test_ia_fault_detected(self):
        g = load_cgs(json.dumps(SPLIT))
        fragment = unravel(g, "w0", 2)
        moment = ("w0",)
        xc, yc = ("x", "c"), ("y", "c")
        fragment.cells[(moment, "a")] = [
            ("x", frozenset()),
            ("y", frozenset({yc})),
        ]
        fragment.cells[(moment, "b")] = [("c", frozenset({yc}))]
        fragment.exe[(moment, "a", "x")] = frozenset()
        fragment.exe[(moment, "b", "c")] = frozenset({yc})
        assert "IA" in _conditions(verify_frame(fragment))


class TestExport:
    def test_toy1_golden(self, toy1):
        dump = export_fragment(unravel(toy1, "w0", 2))
        assert dump == (
            "w0  a: s1->{s1} s2->{s2}\n"
            "w0>w0  a: s1->{s1} s2->{s2}\n"
            "w0>w1  a: s1->{s1}\n"
            "w0>w0>w0\n"
            "w0>w0>w1\n"
            "w0>w1>w1\n"
        )

    def test_deterministic(self, toy2):
        one = export_fragment(unravel(toy2, "w0", 3))
        two = export_fragment(unravel(toy2, "w0", 3))
        assert one == two
