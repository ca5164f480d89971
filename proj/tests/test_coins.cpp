#include <cmath>
#include <map>
#include <string>

#include <doctest.h>

#include "toruswalk/coins.hpp"

using namespace toruswalk;

namespace {

const cplx I{0.0, 1.0};
const double S2 = std::sqrt(2.0);

bool satisfies(const CMat& coin, const ReflectionMask& m) {
    const int nch = 1 << m.dim;
    for (int r = 0; r < nch; ++r)
        for (int c = 0; c < nch; ++c)
            if (!m.at(r, c) && coin(r, c) != cplx{}) return false;
    return true;
}

}  // namespace

TEST_SUITE("coins") {

TEST_CASE("named coins") {
    CHECK(max_abs_diff(named_coin("hadamard_minus"),
                       CMat{{1 / S2, 1 / S2}, {-1 / S2, 1 / S2}}) < 1e-15);
    CHECK(max_abs_diff(named_coin("balanced_complex"),
                       CMat{{0.5 + 0.5 * I, 0.5 - 0.5 * I}, {0.5 - 0.5 * I, 0.5 + 0.5 * I}}) <
          1e-15);
    const CMat h = named_coin("hadamard_minus");
    CHECK(max_abs_diff(named_coin("coin_2d_bulk"), h.kron(h)) < 1e-15);
    CHECK(max_abs_diff(named_coin("coin_conflict_node_4x4"),
                       CMat{{1 / S2, 0, 0, 1 / S2},
                            {0, 1 / S2, 1 / S2, 0},
                            {0, 1 / S2, -1 / S2, 0},
                            {1 / S2, 0, 0, -1 / S2}}) < 1e-15);
    for (const char* name : {"hadamard_minus", "balanced_complex", "coin_2d_bulk",
                             "coin_conflict_node_4x4", "U2", "U4", "U6", "U8"})
        CHECK(named_coin(name).unitarity_residual() <= 1e-10);
    // the transcribed border matrices are reference constants and are not
    // unitary as printed (adjacent columns have inner product +-i); they are
    // constants for reference, never installed in a coin field
    CHECK(named_coin("coin_2d_above").unitarity_residual() ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(named_coin("coin_2d_below").unitarity_residual() ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(named_coin("nope"), std::invalid_argument);

    // transcribed border coins: row LL of "above" is (0,0,0,1), column RR is e1
    const CMat above = named_coin("coin_2d_above");
    CHECK(above(0, 0) == cplx{});
    CHECK(above(0, 3) == cplx{1.0});
    CHECK(above(1, 3) == cplx{});
    CHECK(above(3, 3) == cplx{});
}

TEST_CASE("block library") {
    const BlockLibrary lib = BlockLibrary::standard();
    for (int size = 1; size <= 8; ++size) {
        CHECK(lib.of(size).rows() == static_cast<std::size_t>(size));
        CHECK(lib.of(size).unitarity_residual() <= 1e-10);
    }
    CHECK(max_abs_diff(lib.of(8), lib.of(4).kron(lib.of(2))) < 1e-15);
    CHECK_THROWS_AS(lib.of(9), std::invalid_argument);
    CHECK_THROWS_AS(lib.of(0), std::invalid_argument);
}

TEST_CASE("reflection mask zero pattern at a double-conflict node") {
    const Geometry g(3, 5);
    const ReflectionMask m = reflection_mask(g, node_from_external(g, {1, 2, 3}));
    const char* expected[8] = {"*0*0****", "*0*0****", "*0*0****", "*0*0****",
                               "0*0*0000", "*0*0****", "0*0*0000", "*0*0****"};
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) CHECK(m.at(r, c) == (expected[r][c] == '*'));
    const std::string grid = mask_grid(m);
    CHECK(grid.substr(0, 15) == "* 0 * 0 * * * *");
}

TEST_CASE("bulk and D=2 masks") {
    const Geometry g(2, 11);
    const ReflectionMask bulk = reflection_mask(g, node_from_external(g, {4, 7, 1}));
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) CHECK(bulk.at(r, c));

    // (4,6): conflict source channel LR (1), conflict dest channel RL (2)
    const ReflectionMask b = reflection_mask(g, node_from_external(g, {4, 6, 1}));
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            const bool allowed = (r == 2 && c == 1) || (r != 2 && c != 1);
            CHECK(b.at(r, c) == allowed);
        }
    CHECK_THROWS_AS(reflection_mask(Geometry(1, 5), Node(0)), std::invalid_argument);
}

TEST_CASE("mask blocks are square") {
    for (int dim : {2, 3})
        for (int n = 3; n <= 9; ++n) {
            const Geometry g(dim, n);
            for (int r = 0; r < g.node_count(); ++r) {
                const ConflictAdjacency a = conflict_adjacency(g, node_from_rank(g, r));
                CHECK(a.source_conflict_channels.size() == a.dest_conflict_channels.size());
            }
        }
}

TEST_CASE("build_reflection_coin") {
    const BlockLibrary lib = BlockLibrary::standard();
    const Geometry g(3, 5);
    const Node v = node_from_external(g, {1, 2, 3});
    const CMat coin = build_reflection_coin(g, v, lib);
    CHECK(coin.unitarity_residual() <= 1e-10);
    CHECK(satisfies(coin, reflection_mask(g, v)));
    // k=2: the conflict block is U2 at rows {RLL,RRL} x cols {LLR,LRR}
    CHECK(std::abs(coin(4, 1) - 1.0 / S2) < 1e-15);
    CHECK(std::abs(coin(6, 3) + 1.0 / S2) < 1e-15);

    // bulk node: U8 placed directly. A node with no conflict neighbor needs
    // all three pairwise cyclic gaps >= 3 (a gap of 2 collapses under one
    // +-1 step per axis), so the smallest example lives on N = 9.
    const Geometry g9(3, 9);
    const Node bulk = node_from_external(g9, {1, 4, 7});
    CHECK(conflict_adjacency(g9, bulk).k == 0);
    CHECK(max_abs_diff(build_reflection_coin(g9, bulk, lib), lib.of(8)) == 0.0);
}

TEST_CASE("reflection fields are unitary and mask-compliant") {
    const BlockLibrary lib = BlockLibrary::standard();
    for (int n = 5; n <= 8; ++n) {
        const Geometry g(3, n);
        const CoinField f = build_reflection_field(g, lib);
        for (int r = 0; r < g.node_count(); ++r) {
            CHECK(f.coin(r).unitarity_residual() <= 1e-10);
            CHECK(satisfies(f.coin(r), reflection_mask(g, node_from_rank(g, r))));
        }
    }
    // D=2 bulk nodes carry the tensor coin
    const Geometry g2(2, 11);
    const CoinField f2 = build_reflection_field(g2, lib);
    const int bulk_rank = node_rank(g2, node_from_external(g2, {4, 7, 1}));
    CHECK(max_abs_diff(f2.coin(bulk_rank), named_coin("coin_2d_bulk")) == 0.0);
}

TEST_CASE("observed block sizes for D=3") {
    for (int n = 5; n <= 9; ++n) {
        const Geometry g(3, n);
        for (int r = 0; r < g.node_count(); ++r) {
            const int k = conflict_adjacency(g, node_from_rank(g, r)).k;
            CHECK((k == 0 || k == 2 || k == 4 || k == 6 || k == 8));
        }
    }
}

TEST_CASE("induced flow never crosses classes") {
    const BlockLibrary lib = BlockLibrary::standard();
    for (int n : {5, 6, 9}) {
        const Geometry g(2, n);
        const CoinField f = build_reflection_field(g, lib);
        for (int rank = 0; rank < g.node_count(); ++rank) {
            const Node v = node_from_rank(g, rank);
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) {
                    if (f.coin(rank)(r, c) == cplx{}) continue;
                    const Node src = add_offset(g, v, channel_source_offset(c, 2), +1);
                    const Node dst = add_offset(g, v, channel_source_offset(r, 2), -1);
                    CHECK(is_conflict_node(g, src) == is_conflict_node(g, dst));
                }
        }
    }
}

TEST_CASE("conflict node field") {
    const Geometry g(2, 11);
    const CoinField f = build_conflict_node_field(g);
    const int diag = node_rank(g, node_from_external(g, {3, 3, 1}));
    CHECK(max_abs_diff(f.coin(diag), named_coin("coin_conflict_node_4x4")) == 0.0);
    const int off = node_rank(g, node_from_external(g, {3, 4, 1}));
    CHECK(max_abs_diff(f.coin(off), named_coin("coin_2d_bulk")) == 0.0);
    CHECK_THROWS_AS(build_conflict_node_field(Geometry(3, 5)), std::invalid_argument);
}

TEST_CASE("coin groups") {
    // distinct mask signatures over non-conflict nodes
    CHECK(enumerate_coin_groups(Geometry(3, 5)).size() == 12);
    CHECK(enumerate_coin_groups(Geometry(3, 6)).size() == 7);
    for (int n = 7; n <= 11; ++n) CHECK(enumerate_coin_groups(Geometry(3, n)).size() == 13);

    // nodes of one difference group share a signature
    for (int n : {5, 7}) {
        const Geometry g(3, n);
        std::map<std::pair<int, int>, std::string> sig_of;
        for (int r = 0; r < g.node_count(); ++r) {
            const Node v = node_from_rank(g, r);
            const DifferenceGroup dg = difference_group(g, v);
            const std::string sig = coin_group_of(g, v);
            auto [it, inserted] = sig_of.emplace(std::make_pair(dg.l, dg.m), sig);
            CHECK(it->second == sig);
        }
    }

    // the all-allowed bulk signature is among them
    const Geometry g(3, 7);
    const std::string bulk(64, '1');
    CHECK(enumerate_coin_groups(g).count(bulk) == 1);
}

TEST_CASE("uniform non-conflict inner vector") {
    const Geometry g(3, 5);
    const Node v = node_from_external(g, {1, 2, 3});
    CHECK(nonconflict_source_channels(g, v) == std::vector<int>{0, 2, 4, 5, 6, 7});
    const auto inner = uniform_nonconflict_inner(g, v);
    CHECK(std::abs(inner[0] - 1.0 / std::sqrt(6.0)) < 1e-15);
    CHECK(inner[1] == cplx{});
    CHECK(inner[3] == cplx{});
}

TEST_CASE("transcribed 2D border coins vs masks") {
    const Geometry g(2, 11);
    const ReflectionMask upper = reflection_mask(g, node_from_external(g, {3, 5, 1}));
    const ReflectionMask lower = reflection_mask(g, node_from_external(g, {5, 3, 1}));
    // unadapted matrices violate both masks under this channel convention
    CHECK_FALSE(satisfies(named_coin("coin_2d_above"), upper));
    CHECK_FALSE(satisfies(named_coin("coin_2d_above"), lower));
    CHECK_FALSE(satisfies(named_coin("coin_2d_below"), upper));
    CHECK_FALSE(satisfies(named_coin("coin_2d_below"), lower));

    const TranscribedCoinAdaptation adapted = adapt_transcribed_2d_coins();
    CHECK_FALSE(adapted.report.empty());
    if (adapted.found) {
        const ReflectionMask& ma = adapted.above_is_upper_border ? upper : lower;
        const ReflectionMask& mb = adapted.above_is_upper_border ? lower : upper;
        CHECK(satisfies(adapted.above, ma));
        CHECK(satisfies(adapted.below, mb));
        // the as-printed matrices are not unitary, so even a mask-compatible
        // relabeling cannot make them usable coins; the generic builder stays
        // normative
        CHECK(adapted.above.unitarity_residual() > 1e-10);
    }
}

}  // TEST_SUITE
