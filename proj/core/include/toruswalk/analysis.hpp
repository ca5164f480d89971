#ifndef TORUSWALK_ANALYSIS_HPP
#define TORUSWALK_ANALYSIS_HPP

#include <string>
#include <vector>

#include "toruswalk/coins.hpp"
#include "toruswalk/operators.hpp"
#include "toruswalk/state.hpp"

namespace toruswalk {

/// Time-averaged observation probabilities, mean of p_t over t = 0..T-1.
struct AverageDistribution {
    Geometry geom;
    int steps;
    std::vector<double> p;  // per node rank
};

AverageDistribution average_distribution(const WalkState& s0, const CoinField& f, int steps);

/// Sum of the average probability over conflict nodes (dim >= 2).
double conflict_probability(const AverageDistribution& d);

enum class NodeClass { NonConflict, Conflict };

struct SubnetworkComponent {
    std::vector<int> members;  // node ranks (node level) or l*N+m (group level)
    NodeClass cls;
    int representative;  // smallest member
};

struct SubnetworkReport {
    std::string level;  // "node" or "group"
    int n;
    std::vector<SubnetworkComponent> components;

    std::vector<std::pair<int, NodeClass>> sorted_sizes() const;
};

/// Connected components of the class-preserving support graph on nodes:
/// u -- v when some structurally nonzero coin entry at u moves same-class
/// amplitude from a same-class source onto v.
SubnetworkReport node_subnetworks(const CoinField& f);

/// Components of the difference-group graph: vertices <l,m>, edges via the 7
/// group transitions restricted to same-class endpoints.
SubnetworkReport group_subnetworks(int n);

/// Closed-form subnetwork sizes for dim-3 reflection fields.
struct ClosedFormSizes {
    int n;
    bool validated_range;  // n >= 5
    std::vector<std::pair<int, NodeClass>> sizes;  // sorted (size, class)
    int nonconflict_total;  // N(N-1)(N-2)
    int conflict_total;     // 3N^2 - 2N
};

ClosedFormSizes closed_form_sizes(int n);

/// Equal-amplitude superposition over the lexicographically smallest node of
/// each non-conflict component, inner state uniform over the node's
/// non-conflict-source channels.
WalkState seed_superposition(const CoinField& f);

std::string subnetwork_report_json(const SubnetworkReport& r, const ClosedFormSizes* expected);

}  // namespace toruswalk

#endif
