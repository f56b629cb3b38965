"""
Unit Tests for core
有向グラフ・飽和行列・θ アルゴリズムのテスト
"""

import numpy as np
import pytest

from stable_index.core import (
    INFINITE,
    Digraph,
    SaturatingMatrix,
    Theta,
    adjacency,
    bitset_stable_index,
    digraph_from_arcs,
    encode_rows,
    explain,
    format_edge_list,
    is_cycle_graph,
    is_strongly_connected,
    oracle_stable_index,
    parse_edge_list,
    s_max,
    sat_multiply,
    stable_index,
    stable_index_bounded,
    stable_index_cycle_detect,
    strong_components,
    walk_count_oracle,
)
from stable_index.errors import (
    BudgetExceeded,
    DimensionMismatch,
    DuplicateArc,
    IndexOutOfRange,
    ParameterOutOfRange,
    ParseError,
)
from stable_index.families import build_L, build_complete, build_cycle, build_g

ALGORITHMS = ("bounded", "cycle", "bitset")


class TestDigraph:
    """Digraph 型のテスト"""

    def test_three_cycle(self):
        D = digraph_from_arcs(3, [(0, 1), (1, 2), (2, 0)])
        assert D.order == 3
        assert D.sorted_arcs() == [(0, 1), (1, 2), (2, 0)]
        assert D.successors() == [[1], [2], [0]]

    def test_single_loop(self):
        D = digraph_from_arcs(1, [(0, 0)])
        assert D.arcs == frozenset({(0, 0)})

    def test_duplicate_arc_rejected(self):
        with pytest.raises(DuplicateArc):
            digraph_from_arcs(2, [(0, 1), (0, 1)])

    def test_endpoint_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            digraph_from_arcs(2, [(0, 2)])
        with pytest.raises(IndexOutOfRange):
            Digraph(2, frozenset({(-1, 0)}))

    def test_order_must_be_positive(self):
        with pytest.raises(ParameterOutOfRange):
            digraph_from_arcs(0, [])

    def test_row_masks(self):
        D = digraph_from_arcs(3, [(0, 1), (0, 2), (2, 2)])
        assert D.row_masks() == [0b110, 0, 0b100]


class TestSaturatingMatrix:
    """飽和行列のテスト"""

    def test_adjacency_is_zero_one(self):
        A = adjacency(build_complete(3))
        assert A.is_zero_one()
        assert A.dim == 3

    def test_entries_are_read_only(self):
        A = adjacency(build_cycle(3))
        with pytest.raises(ValueError):
            A.entries[0, 0] = 1

    def test_rejects_entries_above_two(self):
        with pytest.raises(ParameterOutOfRange):
            SaturatingMatrix(np.array([[3]]))

    def test_rejects_non_square(self):
        with pytest.raises(DimensionMismatch):
            SaturatingMatrix(np.zeros((2, 3), dtype=np.uint8))

    def test_multiply_saturates(self):
        A = adjacency(build_complete(3))
        M = sat_multiply(A, A)
        assert int(M.entries.max()) == 2
        assert not M.is_zero_one()

    def test_multiply_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            sat_multiply(SaturatingMatrix.identity(2), SaturatingMatrix.identity(3))

    def test_identity_is_neutral(self):
        A = adjacency(build_g(2, 2, 3))
        assert sat_multiply(SaturatingMatrix.identity(A.dim), A) == A

    def test_equal_matrices_hash_alike(self):
        a = SaturatingMatrix(np.eye(3, dtype=np.uint8))
        b = SaturatingMatrix.identity(3)
        assert a == b
        assert len({a, b}) == 1


class TestTheta:
    """Theta 値のテスト"""

    def test_parse(self):
        assert Theta.parse("inf") == INFINITE
        assert Theta.parse(" 12 ") == Theta.finite(12)

    @pytest.mark.parametrize("text", ["0", "-3", "abc", ""])
    def test_parse_rejects(self, text):
        with pytest.raises(ParseError):
            Theta.parse(text)

    def test_finite_rejects_zero(self):
        with pytest.raises(ParameterOutOfRange):
            Theta.finite(0)

    def test_str_and_order(self):
        values = [INFINITE, Theta.finite(3), Theta.finite(1)]
        assert [str(t) for t in sorted(values, key=Theta.sort_key)] == ["1", "3", "inf"]
        assert not INFINITE.is_finite


class TestSMax:
    """s(n) のテスト"""

    @pytest.mark.parametrize(
        "n,expected",
        [(1, 0), (2, 1), (3, 3), (4, 4), (5, 6), (6, 7), (7, 12), (8, 15),
         (9, 20), (10, 21), (11, 30), (12, 35), (13, 42), (14, 45)],
    )
    def test_values(self, n, expected):
        assert s_max(n) == expected

    def test_rejects_zero(self):
        with pytest.raises(ParameterOutOfRange):
            s_max(0)


class TestNamedValues:
    """既知の θ の再現（全アルゴリズム一致）"""

    @pytest.mark.parametrize("algorithm", ALGORITHMS)
    @pytest.mark.parametrize("n", range(2, 7))
    def test_complete(self, n, algorithm):
        assert stable_index(build_complete(n), algorithm) == Theta.finite(1)

    @pytest.mark.parametrize("algorithm", ALGORITHMS)
    @pytest.mark.parametrize("n", range(1, 13))
    def test_cycle(self, n, algorithm):
        assert stable_index(build_cycle(n), algorithm) == INFINITE

    @pytest.mark.parametrize("algorithm", ALGORITHMS)
    @pytest.mark.parametrize("n", range(3, 11))
    def test_lollipop(self, n, algorithm):
        assert stable_index(build_L(n), algorithm) == Theta.finite(n)

    @pytest.mark.parametrize("algorithm", ALGORITHMS)
    @pytest.mark.parametrize(
        "p,k,q,expected",
        [(1, 2, 2, 2), (2, 2, 3, 6), (2, 3, 3, 7), (2, 4, 3, 8)],
    )
    def test_dumbbells(self, p, k, q, expected, algorithm):
        assert stable_index(build_g(p, k, q), algorithm) == Theta.finite(expected)

    def test_empty_digraph_is_infinite(self):
        assert stable_index_bounded(Digraph(4)) == INFINITE
        assert stable_index_cycle_detect(Digraph(4)) == INFINITE

    def test_loop_on_single_vertex(self):
        assert stable_index_bounded(digraph_from_arcs(1, [(0, 0)])) == INFINITE

    def test_unknown_algorithm(self):
        with pytest.raises(ParameterOutOfRange):
            stable_index(build_cycle(3), "guess")


class TestCycleDetect:
    """上界を使わない反復のテスト"""

    def test_long_period_disjoint_cycles(self):
        # C_3 ∪ C_4 ∪ C_5: 0-1 冪の周期 60 は s(12) を超える
        arcs = (
            [(i, (i + 1) % 3) for i in range(3)]
            + [(3 + i, 3 + (i + 1) % 4) for i in range(4)]
            + [(7 + i, 7 + (i + 1) % 5) for i in range(5)]
        )
        D = digraph_from_arcs(12, arcs)
        assert stable_index_cycle_detect(D) == INFINITE

    def test_max_states_budget(self):
        with pytest.raises(BudgetExceeded):
            stable_index_cycle_detect(build_cycle(9), max_states=3)


class TestExplain:
    """最初の重複歩道の位置"""

    def test_complete_two(self):
        e = explain(build_complete(2))
        assert (e.theta, e.u, e.v, e.length) == (Theta.finite(1), 0, 0, 2)

    def test_lollipop_three(self):
        e = explain(build_L(3))
        assert (e.theta, e.u, e.v, e.length) == (Theta.finite(3), 0, 2, 4)

    def test_infinite_has_no_pair(self):
        e = explain(build_cycle(4))
        assert e.theta == INFINITE
        assert e.u is None and e.length is None


class TestBitsetKernel:
    """行ビットマスクのカーネル"""

    def test_encode_rows(self):
        # C_2: 0→1, 1→0
        assert encode_rows([0b10, 0b01], 2) == 6

    def test_complete_two(self):
        assert bitset_stable_index(2, 0b1111) == Theta.finite(1)

    def test_empty(self):
        assert bitset_stable_index(3, 0) == INFINITE


class TestWalkOracle:
    """歩道の直接列挙"""

    def test_counts_on_complete(self):
        # K_3 の長さ 2 の 0→0 歩道は 3 本
        assert walk_count_oracle(build_complete(3), 0, 0, 2) == 3

    def test_length_zero(self):
        D = build_cycle(3)
        assert walk_count_oracle(D, 1, 1, 0) == 1
        assert walk_count_oracle(D, 1, 2, 0) == 0

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            walk_count_oracle(build_complete(4), 0, 0, 12, budget=100)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ParameterOutOfRange):
            walk_count_oracle(build_cycle(3), 0, 0, -1)
        with pytest.raises(IndexOutOfRange):
            walk_count_oracle(build_cycle(3), 0, 5, 1)

    def test_oracle_stable_index(self):
        assert oracle_stable_index(build_g(2, 2, 3), max_length=8) == Theta.finite(6)
        assert oracle_stable_index(build_cycle(4), max_length=8) == INFINITE

    def test_oracle_default_covers_upper_bound(self):
        # g(5,2,6): 位数 11, θ = 30 は s(11)+1 = 31 までの走査で見つかる
        assert oracle_stable_index(build_g(5, 2, 6)) == Theta.finite(30)
        assert oracle_stable_index(build_cycle(5)) == INFINITE

    def test_oracle_short_cap_is_not_infinite(self):
        with pytest.raises(BudgetExceeded):
            oracle_stable_index(build_g(5, 2, 6), max_length=24)
        with pytest.raises(BudgetExceeded):
            oracle_stable_index(build_cycle(5), max_length=4)

    def test_oracle_cap_above_bound_is_clamped(self):
        assert oracle_stable_index(build_cycle(3), max_length=100) == INFINITE


class TestConnectivity:
    """強連結成分"""

    def test_components_of_dumbbell(self):
        comps = strong_components(build_g(2, 3, 3))
        assert comps == [frozenset({0, 1}), frozenset({2}), frozenset({3, 4, 5})]

    def test_strongly_connected(self):
        assert is_strongly_connected(build_L(5))
        assert not is_strongly_connected(build_g(2, 2, 3))

    def test_cycle_graph(self):
        assert is_cycle_graph(build_cycle(5))
        assert not is_cycle_graph(build_L(5))
        assert not is_cycle_graph(Digraph(1))


class TestEdgeList:
    """辺リスト形式"""

    def test_parse(self):
        D = parse_edge_list("# lollipop\nn 3\n0 1\n1 2\n\n2 0\n0 2\n")
        assert D == build_L(3)

    def test_round_trip(self):
        D = build_g(2, 3, 3)
        assert parse_edge_list(format_edge_list(D, comment="g:2,3,3")) == D

    def test_missing_header(self):
        with pytest.raises(ParseError, match="missing header"):
            parse_edge_list("# nothing\n")

    def test_bad_header_line_number(self):
        with pytest.raises(ParseError) as exc_info:
            parse_edge_list("# c\nm 3\n")
        assert exc_info.value.line == 2
        assert exc_info.value.message.startswith("line 2:")

    def test_endpoint_outside_order(self):
        with pytest.raises(ParseError) as exc_info:
            parse_edge_list("n 2\n0 1\n1 2\n")
        assert exc_info.value.line == 3

    def test_duplicate_arc_reports_both_lines(self):
        with pytest.raises(ParseError, match="first seen on line 2") as exc_info:
            parse_edge_list("n 2\n0 1\n1 0\n0 1\n")
        assert exc_info.value.line == 4

    def test_non_integer(self):
        with pytest.raises(ParseError):
            parse_edge_list("n 2\n0 x\n")
