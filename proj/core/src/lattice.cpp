#include "toruswalk/lattice.hpp"

#include <stdexcept>

namespace toruswalk {

Geometry::Geometry(int dim_, int size_) : dim(dim_), size(size_) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("Geometry: dim must be 1, 2, or 3");
    // N=2 collapses the +1 and -1 neighbors onto each other.
    if (size < 3) throw std::invalid_argument("Geometry: size must be >= 3");
}

int Geometry::node_count() const {
    int n = 1;
    for (int a = 0; a < dim; ++a) n *= size;
    return n;
}

int node_rank(const Geometry& g, const Node& v) {
    check_node(g, v);
    int r = 0;
    for (int a = 0; a < g.dim; ++a) r = r * g.size + v.x[a];
    return r;
}

Node node_from_rank(const Geometry& g, int rank) {
    if (rank < 0 || rank >= g.node_count()) throw std::invalid_argument("node_from_rank: out of range");
    Node v;
    for (int a = g.dim - 1; a >= 0; --a) {
        v.x[a] = rank % g.size;
        rank /= g.size;
    }
    return v;
}

Node node_from_external(const Geometry& g, const std::array<int, 3>& labels) {
    Node v;
    for (int a = 0; a < g.dim; ++a) {
        if (labels[a] < 1 || labels[a] > g.size)
            throw std::invalid_argument("node label out of range [1, N]");
        v.x[a] = labels[a] - 1;
    }
    return v;
}

std::array<int, 3> external_labels(const Geometry& g, const Node& v) {
    check_node(g, v);
    std::array<int, 3> out{0, 0, 0};
    for (int a = 0; a < g.dim; ++a) out[a] = v.x[a] + 1;
    return out;
}

void check_node(const Geometry& g, const Node& v) {
    for (int a = 0; a < g.dim; ++a)
        if (v.x[a] < 0 || v.x[a] >= g.size)
            throw std::invalid_argument("node coordinates out of range");
}

std::array<int, 3> channel_source_offset(int channel, int dim) {
    if (channel < 0 || channel >= (1 << dim))
        throw std::invalid_argument("channel code out of range");
    std::array<int, 3> e{0, 0, 0};
    for (int a = 0; a < dim; ++a)
        e[a] = ((channel >> (dim - 1 - a)) & 1) == 0 ? +1 : -1;
    return e;
}

std::string channel_name(int channel, int dim) {
    if (channel < 0 || channel >= (1 << dim))
        throw std::invalid_argument("channel code out of range");
    std::string s;
    for (int a = 0; a < dim; ++a)
        s += ((channel >> (dim - 1 - a)) & 1) == 0 ? 'L' : 'R';
    return s;
}

Node add_offset(const Geometry& g, const Node& v, const std::array<int, 3>& off, int sign) {
    Node w = v;
    for (int a = 0; a < g.dim; ++a)
        w.x[a] = ((w.x[a] + sign * off[a]) % g.size + g.size) % g.size;
    return w;
}

bool is_conflict_node(const Geometry& g, const Node& v) {
    check_node(g, v);
    for (int a = 0; a < g.dim; ++a)
        for (int b = a + 1; b < g.dim; ++b)
            if (v.x[a] == v.x[b]) return true;
    return false;
}

ConflictAdjacency conflict_adjacency(const Geometry& g, const Node& v) {
    if (g.dim < 2) throw std::invalid_argument("conflict_adjacency: dim must be >= 2");
    check_node(g, v);
    ConflictAdjacency adj;
    for (int c = 0; c < g.channel_count(); ++c) {
        const auto e = channel_source_offset(c, g.dim);
        if (is_conflict_node(g, add_offset(g, v, e, +1))) adj.source_conflict_channels.push_back(c);
        if (is_conflict_node(g, add_offset(g, v, e, -1))) adj.dest_conflict_channels.push_back(c);
    }
    adj.k = static_cast<int>(adj.source_conflict_channels.size());
    return adj;
}

DifferenceGroup difference_group(const Geometry& g, const Node& v) {
    if (g.dim != 3) throw std::invalid_argument("difference_group: dim must be 3");
    check_node(g, v);
    const int n = g.size;
    return DifferenceGroup{((v.x[1] - v.x[0]) % n + n) % n, ((v.x[2] - v.x[1]) % n + n) % n};
}

bool is_conflict_group(int n, const DifferenceGroup& dg) {
    return dg.l == 0 || dg.m == 0 || (dg.l + dg.m) % n == 0;
}

const std::vector<std::pair<int, int>>& group_transitions() {
    static const std::vector<std::pair<int, int>> shifts = [] {
        std::vector<std::pair<int, int>> out;
        for (int s1 : {+1, -1})
            for (int s2 : {+1, -1})
                for (int s3 : {+1, -1}) {
                    std::pair<int, int> d{s2 - s1, s3 - s2};
                    bool seen = false;
                    for (const auto& e : out) seen = seen || e == d;
                    if (!seen) out.push_back(d);
                }
        return out;
    }();
    return shifts;
}

}  // namespace toruswalk
