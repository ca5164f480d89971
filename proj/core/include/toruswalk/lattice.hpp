#ifndef TORUSWALK_LATTICE_HPP
#define TORUSWALK_LATTICE_HPP

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace toruswalk {

/// N-cycle torus of dimension D in {1,2,3}. Nodes are indexed internally by
/// 0-based residues mod N; all file and CLI I/O uses 1-based labels.
struct Geometry {
    int dim;
    int size;

    Geometry(int dim_, int size_);

    int node_count() const;
    int channel_count() const { return 1 << dim; }
    std::size_t state_length() const { return static_cast<std::size_t>(node_count()) * channel_count(); }

    bool operator==(const Geometry&) const = default;
};

/// Internal (0-based) coordinates; entries beyond dim are unused.
struct Node {
    std::array<int, 3> x{0, 0, 0};

    Node() = default;
    Node(int a) : x{a, 0, 0} {}
    Node(int a, int b) : x{a, b, 0} {}
    Node(int a, int b, int c) : x{a, b, c} {}

    bool operator==(const Node&) const = default;
};

/// Row-major rank over axes (axis 0 most significant).
int node_rank(const Geometry& g, const Node& v);
Node node_from_rank(const Geometry& g, int rank);

/// 1-based external labels <-> internal residues.
Node node_from_external(const Geometry& g, const std::array<int, 3>& labels);
std::array<int, 3> external_labels(const Geometry& g, const Node& v);

void check_node(const Geometry& g, const Node& v);

/// Per-axis offset e(c): +1 for L, -1 for R. The channel c present at node v
/// arrived from v + e(c); the departure target of channel c is v - e(c).
std::array<int, 3> channel_source_offset(int channel, int dim);

/// Channel name in axis-0-major order, e.g. "LLR" for dim 3.
std::string channel_name(int channel, int dim);

Node add_offset(const Geometry& g, const Node& v, const std::array<int, 3>& off, int sign = +1);

/// True iff any two coordinates of v coincide (always false for dim 1).
bool is_conflict_node(const Geometry& g, const Node& v);

struct ConflictAdjacency {
    std::vector<int> source_conflict_channels;  // channels whose source node is conflict
    std::vector<int> dest_conflict_channels;    // channels whose destination node is conflict
    int k = 0;
};

ConflictAdjacency conflict_adjacency(const Geometry& g, const Node& v);

/// <l, m> with l = (j-i) mod N, m = (k-j) mod N; residue 0 stands for the
/// external label N.
struct DifferenceGroup {
    int l = 0;
    int m = 0;
    bool operator==(const DifferenceGroup&) const = default;
};

DifferenceGroup difference_group(const Geometry& g, const Node& v);
bool is_conflict_group(int n, const DifferenceGroup& dg);

/// The image of the 8 node shifts in {+1,-1}^3 under
/// (dl, dm) = (s2 - s1, s3 - s2); exactly 7 distinct values.
const std::vector<std::pair<int, int>>& group_transitions();

}  // namespace toruswalk

#endif
