#include "toruswalk/analysis.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace toruswalk {

AverageDistribution average_distribution(const WalkState& s0, const CoinField& f, int steps) {
    if (steps < 1) throw std::invalid_argument("average_distribution: steps must be >= 1");
    AverageDistribution d{s0.geom, steps, std::vector<double>(s0.geom.node_count(), 0.0)};
    // mean over t = 0..T-1
    evolve_visit(s0, f, steps - 1, [&](int, const WalkState& s) {
        const auto p = position_distribution(s);
        for (std::size_t i = 0; i < p.size(); ++i) d.p[i] += p[i];
    });
    for (auto& v : d.p) v /= steps;
    return d;
}

double conflict_probability(const AverageDistribution& d) {
    if (d.geom.dim < 2) throw std::invalid_argument("conflict_probability: dim must be >= 2");
    double total = 0.0;
    for (int r = 0; r < d.geom.node_count(); ++r)
        if (is_conflict_node(d.geom, node_from_rank(d.geom, r))) total += d.p[r];
    return total;
}

namespace {

std::vector<SubnetworkComponent> connected_components(int count,
                                                      const std::vector<std::vector<int>>& adj,
                                                      const std::vector<NodeClass>& cls) {
    std::vector<int> comp_of(count, -1);
    std::vector<SubnetworkComponent> comps;
    for (int start = 0; start < count; ++start) {
        if (comp_of[start] >= 0) continue;
        SubnetworkComponent comp;
        comp.cls = cls[start];
        std::vector<int> stack{start};
        comp_of[start] = static_cast<int>(comps.size());
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            comp.members.push_back(u);
            for (int w : adj[u])
                if (comp_of[w] < 0) {
                    comp_of[w] = comp_of[start];
                    stack.push_back(w);
                }
        }
        std::sort(comp.members.begin(), comp.members.end());
        comp.representative = comp.members.front();
        comps.push_back(std::move(comp));
    }
    return comps;
}

}  // namespace

SubnetworkReport node_subnetworks(const CoinField& f) {
    const Geometry& g = f.geom;
    const int nch = g.channel_count();
    std::vector<std::vector<int>> adj(g.node_count());
    std::vector<NodeClass> cls(g.node_count());
    for (int rank = 0; rank < g.node_count(); ++rank) {
        const Node v = node_from_rank(g, rank);
        const bool vc = is_conflict_node(g, v);
        cls[rank] = vc ? NodeClass::Conflict : NodeClass::NonConflict;
        const CMat& coin = f.coin(rank);
        for (int r = 0; r < nch; ++r) {
            const Node dst = add_offset(g, v, channel_source_offset(r, g.dim), -1);
            if (is_conflict_node(g, dst) != vc) continue;
            // same-class flow only: the input channel must also originate from
            // a node of v's class
            bool connected = false;
            for (int c = 0; c < nch && !connected; ++c) {
                if (coin(r, c) == cplx{}) continue;
                const Node src = add_offset(g, v, channel_source_offset(c, g.dim), +1);
                connected = is_conflict_node(g, src) == vc;
            }
            if (connected) {
                adj[rank].push_back(node_rank(g, dst));
                adj[node_rank(g, dst)].push_back(rank);
            }
        }
    }
    SubnetworkReport report{"node", g.size, connected_components(g.node_count(), adj, cls)};
    return report;
}

SubnetworkReport group_subnetworks(int n) {
    if (n < 3) throw std::invalid_argument("group_subnetworks: n must be >= 3");
    const int count = n * n;
    std::vector<std::vector<int>> adj(count);
    std::vector<NodeClass> cls(count);
    auto conflict = [n](int l, int m) { return l == 0 || m == 0 || (l + m) % n == 0; };
    for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m) {
            const int id = l * n + m;
            cls[id] = conflict(l, m) ? NodeClass::Conflict : NodeClass::NonConflict;
            for (const auto& [dl, dm] : group_transitions()) {
                const int tl = ((l + dl) % n + n) % n;
                const int tm = ((m + dm) % n + n) % n;
                if (conflict(tl, tm) == conflict(l, m)) {
                    adj[id].push_back(tl * n + tm);
                    adj[tl * n + tm].push_back(id);
                }
            }
        }
    SubnetworkReport report{"group", n, connected_components(count, adj, cls)};
    return report;
}

std::vector<std::pair<int, NodeClass>> SubnetworkReport::sorted_sizes() const {
    std::vector<std::pair<int, NodeClass>> out;
    for (const auto& c : components) out.emplace_back(static_cast<int>(c.members.size()), c.cls);
    std::sort(out.begin(), out.end());
    return out;
}

ClosedFormSizes closed_form_sizes(int n) {
    if (n < 3) throw std::invalid_argument("closed_form_sizes: n must be >= 3");
    ClosedFormSizes cf;
    cf.n = n;
    cf.validated_range = n >= 5;
    cf.nonconflict_total = n * (n - 1) * (n - 2);
    cf.conflict_total = 3 * n * n - 2 * n;
    if (n % 2 == 1) {
        const int half = n * (n - 1) * (n - 2) / 2;
        cf.sizes = {{half, NodeClass::NonConflict},
                    {half, NodeClass::NonConflict},
                    {cf.conflict_total, NodeClass::Conflict}};
    } else {
        const int small_nc = n * (n - 2) * (n - 4) / 8;
        const int large_nc = n * n * n / 4 - n * n / 2;
        const int large_cf = 3 * n * n / 2 - 2 * n;
        const int small_cf = n * n / 2;
        cf.sizes = {{small_nc, NodeClass::NonConflict}, {small_nc, NodeClass::NonConflict},
                    {large_nc, NodeClass::NonConflict}, {large_nc, NodeClass::NonConflict},
                    {large_nc, NodeClass::NonConflict}, {large_cf, NodeClass::Conflict},
                    {small_cf, NodeClass::Conflict},    {small_cf, NodeClass::Conflict},
                    {small_cf, NodeClass::Conflict}};
    }
    std::sort(cf.sizes.begin(), cf.sizes.end());
    return cf;
}

WalkState seed_superposition(const CoinField& f) {
    const SubnetworkReport report = node_subnetworks(f);
    std::vector<int> seeds;
    for (const auto& comp : report.components)
        if (comp.cls == NodeClass::NonConflict) seeds.push_back(comp.representative);
    if (seeds.empty())
        throw std::invalid_argument("seed_superposition: no non-conflict component");
    std::sort(seeds.begin(), seeds.end());
    WalkState s(f.geom);
    const double w = 1.0 / std::sqrt(static_cast<double>(seeds.size()));
    for (int rank : seeds) {
        const Node v = node_from_rank(f.geom, rank);
        const auto inner = uniform_nonconflict_inner(f.geom, v);
        for (int c = 0; c < f.geom.channel_count(); ++c) s.at(rank, c) = w * inner[c];
    }
    return s;
}

std::string subnetwork_report_json(const SubnetworkReport& r, const ClosedFormSizes* expected) {
    nlohmann::json j;
    j["level"] = r.level;
    j["n"] = r.n;
    j["components"] = nlohmann::json::array();
    for (const auto& c : r.components) {
        nlohmann::json e;
        e["size"] = c.members.size();
        e["class"] = c.cls == NodeClass::Conflict ? "conflict" : "non-conflict";
        e["representative"] = c.representative;
        j["components"].push_back(e);
    }
    if (expected) {
        nlohmann::json ex;
        ex["n"] = expected->n;
        ex["validated_range"] = expected->validated_range;
        ex["nonconflict_total"] = expected->nonconflict_total;
        ex["conflict_total"] = expected->conflict_total;
        ex["sizes"] = nlohmann::json::array();
        for (const auto& [size, cls] : expected->sizes)
            ex["sizes"].push_back({{"size", size},
                                   {"class", cls == NodeClass::Conflict ? "conflict" : "non-conflict"}});
        j["expected"] = ex;
        j["match"] = r.sorted_sizes() == expected->sizes;
        if (!expected->validated_range) j["warning"] = "below validated range (n < 5)";
    }
    return j.dump(2);
}

}  // namespace toruswalk
