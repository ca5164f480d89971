#include <cmath>
#include <random>

#include <doctest.h>

#include "toruswalk/state.hpp"

using namespace toruswalk;

namespace {

const cplx I{0.0, 1.0};
const double S2 = std::sqrt(2.0);

WalkState random_1d(int n, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    WalkState s{Geometry(1, n)};
    for (auto& a : s.amps) a = cplx(u(eng), u(eng));
    s.normalize();
    return s;
}

}  // namespace

TEST_SUITE("state") {

TEST_CASE("basis state") {
    const Geometry g(2, 11);
    const std::vector<cplx> inner{I / 2.0, 0.5, -0.5, I / 2.0};
    const WalkState s = basis_state(g, node_from_external(g, {2, 8, 1}), inner);
    CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-12));
    const int rank = node_rank(g, node_from_external(g, {2, 8, 1}));
    CHECK(std::abs(s.at(rank, 0) - I / 2.0) < 1e-15);
    CHECK(std::abs(s.at(rank, 2) + 0.5) < 1e-15);

    const Geometry g1(1, 3);
    const std::vector<cplx> lonly{1.0, 0.0};
    const WalkState b = basis_state(g1, Node(1), lonly);
    CHECK(std::abs(b.at(1, 0) - 1.0) < 1e-15);

    const std::vector<cplx> zero{0.0, 0.0};
    CHECK_THROWS_AS(basis_state(g1, Node(0), zero), std::invalid_argument);
    const std::vector<cplx> off{0.9, 0.0};  // norm 0.9, beyond the 1e-6 window
    CHECK_THROWS_AS(basis_state(g1, Node(0), off), std::invalid_argument);
}

TEST_CASE("position distribution") {
    const Geometry g(1, 5);
    WalkState s{g};
    s.at(0, 0) = 1.0 / S2;
    s.at(2, 1) = 1.0 / S2;
    const auto p = position_distribution(s);
    CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p[2] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p[1] == 0.0);
}

TEST_CASE("tensor join") {
    const Geometry g1(1, 3);
    const std::vector<cplx> l{1.0, 0.0}, r{0.0, 1.0};
    const WalkState a = basis_state(g1, Node(0), l);
    const WalkState b = basis_state(g1, Node(2), r);
    const WalkState j = tensor_join(a, b);
    CHECK(j.geom.dim == 2);
    CHECK(std::abs(j.at(0 * 3 + 2, 0 * 2 + 1) - 1.0) < 1e-15);  // channel LR
    CHECK(j.norm() == doctest::Approx(1.0).epsilon(1e-12));

    // inner expansion at one node: [a,b] (x) [c,d] -> (ac, ad, bc, bd)
    const cplx pa = 0.6, pb = cplx(0.0, 0.8), pc = cplx(0.28, 0.96) / 1.0, pd = 0.0;
    const std::vector<cplx> i1{pa, pb}, i2{pc / std::abs(pc), pd};
    const WalkState x = basis_state(g1, Node(0), i1);
    const WalkState y = basis_state(g1, Node(0), i2);
    const WalkState t = tensor_join(x, y);
    CHECK(std::abs(t.at(0, 0) - x.at(0, 0) * y.at(0, 0)) < 1e-15);
    CHECK(std::abs(t.at(0, 2) - x.at(0, 1) * y.at(0, 0)) < 1e-15);

    // p_join(x,y) = p_a(x) p_b(y)
    const WalkState ra = random_1d(5, 11), rb = random_1d(5, 22);
    const auto pj = position_distribution(tensor_join(ra, rb));
    const auto paa = position_distribution(ra), pbb = position_distribution(rb);
    for (int u = 0; u < 5; ++u)
        for (int v = 0; v < 5; ++v)
            CHECK(pj[u * 5 + v] == doctest::Approx(paa[u] * pbb[v]).epsilon(1e-12));
}

TEST_CASE("antisymmetrize") {
    const Geometry g1(1, 7);
    const std::vector<cplx> i1{0.6, 0.8}, i2{1.0 / S2, I / S2};
    const WalkState a = basis_state(g1, Node(1), i1);
    const WalkState b = basis_state(g1, Node(4), i2);
    const WalkState f = antisymmetrize(a, b);
    CHECK(f.norm() == doctest::Approx(1.0).epsilon(1e-12));
    // joint antisymmetry: amp((x,ja),(y,jb)) = -amp((y,jb),(x,ja))
    for (int x = 0; x < 7; ++x)
        for (int y = 0; y < 7; ++y)
            for (int ja = 0; ja < 2; ++ja)
                for (int jb = 0; jb < 2; ++jb)
                    CHECK(std::abs(f.at(x * 7 + y, ja * 2 + jb) +
                                   f.at(y * 7 + x, jb * 2 + ja)) < 1e-15);
    // exact diagonal zeros
    for (int x = 0; x < 7; ++x)
        for (int c : {0, 3}) CHECK(f.at(x * 7 + x, c) == cplx{});

    CHECK_THROWS_AS(antisymmetrize(a, a), std::invalid_argument);

    // single-node rig: proportional to (0, ad-bc, bc-ad, 0)
    const WalkState u = basis_state(g1, Node(2), i1);
    const WalkState v = basis_state(g1, Node(2), i2);
    const WalkState w = antisymmetrize(u, v);
    const cplx det = i1[0] * i2[1] - i1[1] * i2[0];
    CHECK(w.at(2 * 7 + 2, 0) == cplx{});
    CHECK(w.at(2 * 7 + 2, 3) == cplx{});
    CHECK(std::abs(w.at(2 * 7 + 2, 1) / w.at(2 * 7 + 2, 2) + 1.0) < 1e-12);
    CHECK(std::arg(w.at(2 * 7 + 2, 1) / det) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("symmetric combination via sign flag") {
    const Geometry g1(1, 5);
    const std::vector<cplx> i1{1.0, 0.0}, i2{0.0, 1.0};
    const WalkState a = basis_state(g1, Node(0), i1);
    const WalkState b = basis_state(g1, Node(2), i2);
    const WalkState s = antisymmetrize(a, b, +1);
    const WalkState f = swap_full(s);
    for (std::size_t i = 0; i < s.amps.size(); ++i)
        CHECK(std::abs(f.amps[i] - s.amps[i]) < 1e-15);
}

TEST_CASE("mirror_1d") {
    const Geometry g(1, 3);
    WalkState s{g};
    const cplx a1 = 0.1, b1 = cplx(0, 0.2), a2 = 0.3, b2 = 0.4, a3 = cplx(0.5, 0.1),
               b3 = 0.2;
    s.at(0, 0) = a1; s.at(0, 1) = b1;
    s.at(1, 0) = a2; s.at(1, 1) = b2;
    s.at(2, 0) = a3; s.at(2, 1) = b3;
    const WalkState m = mirror_1d(s, 1);  // reflection center x* = 1 maps position i to 2-i mod 3
    CHECK(m.at(0, 0) == b3); CHECK(m.at(0, 1) == a3);
    CHECK(m.at(1, 0) == b2); CHECK(m.at(1, 1) == a2);
    CHECK(m.at(2, 0) == b1); CHECK(m.at(2, 1) == a1);

    const WalkState twice = mirror_1d(m, 1);
    for (std::size_t i = 0; i < s.amps.size(); ++i) CHECK(twice.amps[i] == s.amps[i]);

    // N=11, x*=1 (internal 0): node 2 -> 11, node 8 -> 5 (external)
    const Geometry g11(1, 11);
    const std::vector<cplx> inner{1.0 / S2, I / S2};
    const WalkState p = mirror_1d(basis_state(g11, node_from_external(g11, {2, 1, 1}), inner), 0);
    CHECK(std::abs(p.at(10, 0)) + std::abs(p.at(10, 1)) > 0.99);  // external node 11
    const WalkState q = mirror_1d(basis_state(g11, node_from_external(g11, {8, 1, 1}), inner), 0);
    CHECK(std::abs(q.at(4, 0)) + std::abs(q.at(4, 1)) > 0.99);  // external node 5
}

TEST_CASE("mirrored_antisymmetric zeroes the mirror center") {
    const Geometry g(1, 11);
    const std::vector<cplx> ia{1.0 / S2, I / S2}, ib{I / S2, 1.0 / S2};
    const WalkState a = basis_state(g, node_from_external(g, {2, 1, 1}), ia);
    const WalkState b = basis_state(g, node_from_external(g, {8, 1, 1}), ib);
    const WalkState m = mirrored_antisymmetric(a, b, 0);
    CHECK(m.norm() == doctest::Approx(1.0).epsilon(1e-12));
    for (int c = 0; c < 4; ++c) CHECK(std::abs(m.at(0 * 11 + 0, c)) <= 1e-15);

    // generic pair, x* = 3 (internal 2)
    const WalkState ra = random_1d(11, 5), rb = random_1d(11, 6);
    const WalkState rm = mirrored_antisymmetric(ra, rb, 2);
    for (int c = 0; c < 4; ++c) CHECK(std::abs(rm.at(2 * 11 + 2, c)) <= 1e-15);
}

TEST_CASE("swap operators") {
    const WalkState a = random_1d(3, 1), b = random_1d(3, 2);
    const WalkState j = tensor_join(a, b);

    const WalkState sp = swap_positions(j);
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            for (int c = 0; c < 4; ++c) CHECK(sp.at(x * 3 + y, c) == j.at(y * 3 + x, c));

    const WalkState sf = swap_full(swap_full(j));
    for (std::size_t i = 0; i < j.amps.size(); ++i) CHECK(sf.amps[i] == j.amps[i]);

    const WalkState f = antisymmetrize(a, b);
    const WalkState nf = swap_full(f);
    for (std::size_t i = 0; i < f.amps.size(); ++i)
        CHECK(std::abs(nf.amps[i] + f.amps[i]) < 1e-12);

    const Geometry g1(1, 3);
    WalkState one{g1};
    one.at(0, 0) = 1.0;
    CHECK_THROWS_AS(swap_positions(one), std::invalid_argument);
}

}  // TEST_SUITE
