#include "toruswalk/coins.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace toruswalk {

namespace {

const cplx I{0.0, 1.0};

CMat dft_unitary(int n) {
    CMat m(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double ang = 2.0 * std::numbers::pi * i * j / n;
            m(i, j) = scale * cplx(std::cos(ang), std::sin(ang));
        }
    return m;
}

CMat u2() {
    const double s = 1.0 / std::sqrt(2.0);
    return CMat{{s, s}, {s, -s}};
}

CMat u4() {
    CMat m{{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}};
    return m * cplx(0.5);
}

CMat u6() {
    const double r2 = std::sqrt(2.0);
    CMat a{{-r2 * I, 1, I}, {r2, -I, 1}, {0, r2, -r2 * I}};
    return (a * cplx(0.5)).kron(u2());
}

CMat u8() { return u4().kron(u2()); }

}  // namespace

CMat named_coin(const std::string& name) {
    const double s = 1.0 / std::sqrt(2.0);
    if (name == "hadamard_minus") return CMat{{s, s}, {-s, s}};
    if (name == "balanced_complex") {
        return CMat{{0.5 + 0.5 * I, 0.5 - 0.5 * I}, {0.5 - 0.5 * I, 0.5 + 0.5 * I}};
    }
    if (name == "coin_2d_bulk") {
        const CMat h = named_coin("hadamard_minus");
        return h.kron(h);
    }
    if (name == "coin_2d_above") {
        return CMat{{0, 0, 0, 1},
                    {-I * s, 0.5, 0.5 * I, 0},
                    {s, -0.5 * I, 0.5, 0},
                    {0, s, I * s, 0}};
    }
    if (name == "coin_2d_below") {
        return CMat{{0, -I * s, 0.5, 0.5 * I},
                    {0, s, -0.5 * I, 0.5},
                    {0, 0, s, I * s},
                    {1, 0, 0, 0}};
    }
    if (name == "coin_conflict_node_4x4") {
        CMat m{{1, 0, 0, 1}, {0, 1, 1, 0}, {0, 1, -1, 0}, {1, 0, 0, -1}};
        return m * cplx(s);
    }
    if (name == "U2") return u2();
    if (name == "U4") return u4();
    if (name == "U6") return u6();
    if (name == "U8") return u8();
    throw std::invalid_argument("named_coin: unknown name '" + name + "'");
}

ReflectionMask reflection_mask(const Geometry& g, const Node& v) {
    if (g.dim < 2) throw std::invalid_argument("reflection_mask: dim must be >= 2");
    check_node(g, v);
    const int nch = g.channel_count();
    ReflectionMask m{v, g.dim, std::vector<std::uint8_t>(static_cast<std::size_t>(nch) * nch)};
    std::vector<bool> src_conflict(nch), dst_conflict(nch);
    for (int c = 0; c < nch; ++c) {
        const auto e = channel_source_offset(c, g.dim);
        src_conflict[c] = is_conflict_node(g, add_offset(g, v, e, +1));
        dst_conflict[c] = is_conflict_node(g, add_offset(g, v, e, -1));
    }
    for (int r = 0; r < nch; ++r)
        for (int c = 0; c < nch; ++c)
            m.allowed[static_cast<std::size_t>(r) * nch + c] = dst_conflict[r] == src_conflict[c] ? 1 : 0;
    return m;
}

std::string mask_grid(const ReflectionMask& m) {
    const int nch = 1 << m.dim;
    std::string out;
    for (int r = 0; r < nch; ++r) {
        for (int c = 0; c < nch; ++c) {
            if (c) out += ' ';
            out += m.at(r, c) ? '*' : '0';
        }
        out += '\n';
    }
    return out;
}

BlockLibrary BlockLibrary::standard() {
    BlockLibrary lib;
    lib.blocks[1] = CMat{{1}};
    lib.blocks[2] = u2();
    lib.blocks[3] = dft_unitary(3);
    lib.blocks[4] = u4();
    lib.blocks[5] = dft_unitary(5);
    lib.blocks[6] = u6();
    lib.blocks[7] = dft_unitary(7);
    lib.blocks[8] = u8();
    return lib;
}

const CMat& BlockLibrary::of(int size) const {
    if (size < 1 || size > 8 || blocks[size].rows() == 0)
        throw std::invalid_argument("BlockLibrary: no block of size " + std::to_string(size));
    return blocks[size];
}

CMat build_reflection_coin(const Geometry& g, const Node& v, const BlockLibrary& lib) {
    if (g.dim < 2) throw std::invalid_argument("build_reflection_coin: dim must be >= 2");
    const int nch = g.channel_count();
    const ConflictAdjacency adj = conflict_adjacency(g, v);
    const int k = adj.k;

    // rows sorted conflict-dest-first, columns conflict-source-first,
    // ascending channel code within each class
    std::vector<int> rows = adj.dest_conflict_channels;
    std::vector<int> cols = adj.source_conflict_channels;
    for (int c = 0; c < nch; ++c) {
        if (std::find(rows.begin(), rows.end(), c) == rows.end()) rows.push_back(c);
        if (std::find(cols.begin(), cols.end(), c) == cols.end()) cols.push_back(c);
    }

    CMat coin(nch, nch);
    if (k > 0) {
        const CMat& b = lib.of(k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) coin(rows[i], cols[j]) = b(i, j);
    }
    if (k < nch) {
        const CMat& b = lib.of(nch - k);
        for (int i = 0; i < nch - k; ++i)
            for (int j = 0; j < nch - k; ++j) coin(rows[k + i], cols[k + j]) = b(i, j);
    }
    return coin;
}

CoinField build_reflection_field(const Geometry& g, const BlockLibrary& lib,
                                 const std::optional<CMat>& bulk) {
    if (g.dim < 2) throw std::invalid_argument("build_reflection_field: dim must be >= 2");
    const CMat bulk_coin = bulk ? *bulk : (g.dim == 2 ? named_coin("coin_2d_bulk") : named_coin("U8"));
    std::vector<CMat> coins;
    coins.reserve(g.node_count());
    for (int r = 0; r < g.node_count(); ++r) {
        const Node v = node_from_rank(g, r);
        const ConflictAdjacency adj = conflict_adjacency(g, v);
        if (adj.k == 0 && !is_conflict_node(g, v)) coins.push_back(bulk_coin);
        else coins.push_back(build_reflection_coin(g, v, lib));
    }
    return CoinField(g, std::move(coins));
}

CoinField build_conflict_node_field(const Geometry& g, const std::optional<CMat>& bulk) {
    if (g.dim != 2) throw std::invalid_argument("build_conflict_node_field: dim must be 2");
    const CMat bulk_coin = bulk ? *bulk : named_coin("coin_2d_bulk");
    const CMat conflict_coin = named_coin("coin_conflict_node_4x4");
    std::vector<CMat> coins;
    coins.reserve(g.node_count());
    for (int r = 0; r < g.node_count(); ++r) {
        const Node v = node_from_rank(g, r);
        coins.push_back(v.x[0] == v.x[1] ? conflict_coin : bulk_coin);
    }
    return CoinField(g, std::move(coins));
}

std::string coin_group_of(const Geometry& g, const Node& v) {
    if (g.dim != 3) throw std::invalid_argument("coin_group_of: dim must be 3");
    const ReflectionMask m = reflection_mask(g, v);
    std::string sig;
    sig.reserve(m.allowed.size());
    for (auto b : m.allowed) sig += b ? '1' : '0';
    return sig;
}

std::set<std::string> enumerate_coin_groups(const Geometry& g) {
    if (g.dim != 3) throw std::invalid_argument("enumerate_coin_groups: dim must be 3");
    std::set<std::string> sigs;
    for (int r = 0; r < g.node_count(); ++r) {
        const Node v = node_from_rank(g, r);
        if (!is_conflict_node(g, v)) sigs.insert(coin_group_of(g, v));
    }
    return sigs;
}

std::vector<int> nonconflict_source_channels(const Geometry& g, const Node& v) {
    std::vector<int> out;
    for (int c = 0; c < g.channel_count(); ++c) {
        const auto e = channel_source_offset(c, g.dim);
        if (!is_conflict_node(g, add_offset(g, v, e, +1))) out.push_back(c);
    }
    return out;
}

std::vector<cplx> uniform_nonconflict_inner(const Geometry& g, const Node& v) {
    const auto channels = nonconflict_source_channels(g, v);
    if (channels.empty())
        throw std::invalid_argument("uniform_nonconflict_inner: every neighbor is a conflict node");
    std::vector<cplx> inner(g.channel_count());
    const double a = 1.0 / std::sqrt(static_cast<double>(channels.size()));
    for (int c : channels) inner[c] = a;
    return inner;
}

namespace {

bool satisfies_mask(const CMat& coin, const ReflectionMask& m) {
    const int nch = 1 << m.dim;
    for (int r = 0; r < nch; ++r)
        for (int c = 0; c < nch; ++c)
            if (!m.at(r, c) && coin(r, c) != cplx{}) return false;
    return true;
}

CMat relabel(const CMat& coin, const std::array<int, 4>& p) {
    CMat out(4, 4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out(p[r], p[c]) = coin(r, c);
    return out;
}

}  // namespace

TranscribedCoinAdaptation adapt_transcribed_2d_coins() {
    TranscribedCoinAdaptation result;
    result.above = named_coin("coin_2d_above");
    result.below = named_coin("coin_2d_below");

    const Geometry g(2, 11);
    const ReflectionMask upper = reflection_mask(g, node_from_external(g, {3, 5, 0}));  // (i, i+2)
    const ReflectionMask lower = reflection_mask(g, node_from_external(g, {5, 3, 0}));  // (i, i-2)

    std::ostringstream report;
    for (int flip_a = 0; flip_a < 2; ++flip_a)
        for (int flip_b = 0; flip_b < 2; ++flip_b)
            for (int exch = 0; exch < 2; ++exch) {
                std::array<int, 4> p{};
                for (int c = 0; c < 4; ++c) {
                    int ja = (c >> 1) ^ flip_a, jb = (c & 1) ^ flip_b;
                    if (exch) std::swap(ja, jb);
                    p[c] = ja * 2 + jb;
                }
                const CMat above = relabel(result.above, p);
                const CMat below = relabel(result.below, p);
                for (bool above_upper : {true, false}) {
                    const ReflectionMask& ma = above_upper ? upper : lower;
                    const ReflectionMask& mb = above_upper ? lower : upper;
                    if (satisfies_mask(above, ma) && satisfies_mask(below, mb)) {
                        result.found = true;
                        result.relabeling = p;
                        result.above_is_upper_border = above_upper;
                        result.above = above;
                        result.below = below;
                        report << "relabeling (" << p[0] << p[1] << p[2] << p[3]
                               << ") reconciles the transcribed border coins with the masks";
                        result.report = report.str();
                        return result;
                    }
                }
            }
    result.report =
        "no channel relabeling reconciles the transcribed border coins with the "
        "reflection masks; the generic mask/block builder remains normative";
    return result;
}

}  // namespace toruswalk
