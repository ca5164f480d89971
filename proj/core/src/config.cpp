#include "toruswalk/config.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

#include "toruswalk/io.hpp"

namespace toruswalk {

namespace {

void reject_unknown_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key))
            throw config_error("unknown key '" + key + "' in " + where);
}

cplx parse_amp(const nlohmann::json& pair, const std::string& where) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
        throw config_error(where + ": amplitudes must be [re, im] pairs");
    return cplx(pair[0].get<double>(), pair[1].get<double>());
}

InitialSpec parse_initial(const nlohmann::json& j) {
    if (!j.is_object()) throw config_error("'initial' must be an object");
    reject_unknown_keys(j, {"type", "nodes", "inners", "x_star", "amplitudes"}, "'initial'");
    InitialSpec spec;
    if (j.contains("type")) spec.type = j.at("type").get<std::string>();
    static const std::set<std::string> kTypes{"basis", "fermionic", "mirrored",
                                             "seed_superposition", "explicit"};
    if (!kTypes.count(spec.type)) throw config_error("unknown initial type '" + spec.type + "'");
    if (j.contains("nodes"))
        for (const auto& node : j.at("nodes")) {
            if (!node.is_array()) throw config_error("'initial.nodes' entries must be arrays");
            spec.nodes.push_back(node.get<std::vector<int>>());
        }
    if (j.contains("inners"))
        for (const auto& inner : j.at("inners")) {
            std::vector<cplx> v;
            for (const auto& pair : inner) v.push_back(parse_amp(pair, "'initial.inners'"));
            spec.inners.push_back(std::move(v));
        }
    if (j.contains("x_star")) spec.x_star = j.at("x_star").get<int>();
    if (j.contains("amplitudes"))
        for (const auto& pair : j.at("amplitudes"))
            spec.amplitudes.push_back(parse_amp(pair, "'initial.amplitudes'"));
    return spec;
}

OutputSpec parse_outputs(const nlohmann::json& j) {
    if (!j.is_object()) throw config_error("'outputs' must be an object");
    reject_unknown_keys(j, {"avg_csv", "per_step_csv", "heatmap_pgm", "report_json"}, "'outputs'");
    OutputSpec out;
    if (j.contains("avg_csv")) out.avg_csv = j.at("avg_csv").get<std::string>();
    if (j.contains("per_step_csv")) out.per_step_csv = j.at("per_step_csv").get<std::string>();
    if (j.contains("heatmap_pgm")) out.heatmap_pgm = j.at("heatmap_pgm").get<std::string>();
    if (j.contains("report_json")) out.report_json = j.at("report_json").get<std::string>();
    return out;
}

WalkState basis_1d(int n, int label, const std::vector<cplx>& inner) {
    const Geometry g(1, n);
    return basis_state(g, node_from_external(g, {label, 1, 1}), inner);
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw config_error("config root must be an object");
    try {
        reject_unknown_keys(
            j, {"dim", "n", "scheme", "coin_file", "initial", "steps", "outputs", "seed", "rounds"},
            "config");
        RunConfig cfg;
        if (j.contains("dim")) cfg.dim = j.at("dim").get<int>();
        if (j.contains("n")) cfg.n = j.at("n").get<int>();
        if (j.contains("scheme")) cfg.scheme = j.at("scheme").get<std::string>();
        if (j.contains("coin_file")) cfg.coin_file = j.at("coin_file").get<std::string>();
        if (j.contains("initial")) cfg.initial = parse_initial(j.at("initial"));
        if (j.contains("steps")) cfg.steps = j.at("steps").get<int>();
        if (j.contains("outputs")) cfg.outputs = parse_outputs(j.at("outputs"));
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("rounds")) cfg.rounds = j.at("rounds").get<int>();

        if (cfg.dim < 1 || cfg.dim > 3) throw config_error("'dim' must be 1, 2, or 3");
        if (cfg.n < 3) throw config_error("'n' must be >= 3");
        static const std::set<std::string> kSchemes{"hadamard_product", "reflection",
                                                    "conflict_node",    "fermionic_pair",
                                                    "mirrored_pair",    "custom"};
        if (!kSchemes.count(cfg.scheme)) throw config_error("unknown scheme '" + cfg.scheme + "'");
        if (cfg.scheme == "custom" && !cfg.coin_file)
            throw config_error("scheme 'custom' requires 'coin_file'");
        if (cfg.scheme != "custom" && cfg.coin_file)
            throw config_error("'coin_file' is only valid with scheme 'custom'");
        if (cfg.steps < 1) throw config_error("'steps' must be >= 1");
        if (cfg.rounds && *cfg.rounds < 1) throw config_error("'rounds' must be >= 1");
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("schema error: ") + e.what());
    }
}

PreparedRun prepare_run(const RunConfig& cfg) {
    // --- coin field ---
    std::optional<CoinField> field;
    const bool pair_scheme = cfg.scheme == "fermionic_pair" || cfg.scheme == "mirrored_pair" ||
                             cfg.scheme == "hadamard_product";
    try {
        if (pair_scheme) {
            if (cfg.dim != 2)
                throw config_error("scheme '" + cfg.scheme + "' requires dim 2 (two players)");
            const CMat coin = named_coin(cfg.scheme == "mirrored_pair" ? "balanced_complex"
                                                                       : "hadamard_minus");
            field = tensor_evolution_field(cfg.n, uniform_coin_row(cfg.n, coin),
                                           uniform_coin_row(cfg.n, coin));
        } else if (cfg.scheme == "reflection") {
            if (cfg.dim < 2) throw config_error("scheme 'reflection' requires dim 2 or 3");
            field = build_reflection_field(Geometry(cfg.dim, cfg.n), BlockLibrary::standard());
        } else if (cfg.scheme == "conflict_node") {
            if (cfg.dim != 2) throw config_error("scheme 'conflict_node' requires dim 2");
            field = build_conflict_node_field(Geometry(cfg.dim, cfg.n));
        } else {  // custom
            field = coin_field_from_json(read_file(*cfg.coin_file));
            if (!(field->geom == Geometry(cfg.dim, cfg.n)))
                throw config_error("coin file geometry does not match dim/n");
        }
    } catch (const std::invalid_argument& e) {
        throw config_error(e.what());
    }
    const Geometry& g = field->geom;

    // --- initial state ---
    const InitialSpec& init = cfg.initial;
    try {
        if (init.type == "basis") {
            if (init.nodes.size() != 1)
                throw config_error("initial type 'basis' requires exactly one node");
            if (static_cast<int>(init.nodes[0].size()) != g.dim)
                throw config_error("initial node label has wrong dimension");
            std::array<int, 3> labels{1, 1, 1};
            for (int a = 0; a < g.dim; ++a) labels[a] = init.nodes[0][a];
            const Node v = node_from_external(g, labels);
            std::vector<cplx> inner;
            if (!init.inners.empty()) {
                if (init.inners.size() != 1)
                    throw config_error("initial type 'basis' takes at most one inner vector");
                inner = init.inners[0];
            } else if (cfg.scheme == "reflection" || cfg.scheme == "conflict_node") {
                // default start avoids channels that would flow straight into a
                // conflict node on the first shift
                inner = uniform_nonconflict_inner(g, v);
            } else {
                inner.assign(g.channel_count(),
                             1.0 / std::sqrt(static_cast<double>(g.channel_count())));
            }
            return PreparedRun{*field, basis_state(g, v, inner)};
        }
        if (init.type == "fermionic" || init.type == "mirrored") {
            if (!pair_scheme && cfg.scheme != "custom")
                throw config_error("initial type '" + init.type + "' requires a two-player scheme");
            if (g.dim != 2)
                throw config_error("initial type '" + init.type + "' requires dim 2");
            std::vector<int> labels{2, 8};
            std::vector<std::vector<cplx>> inners{{1.0, cplx(0, 1)}, {cplx(0, 1), 1.0}};
            if (!init.nodes.empty()) {
                if (init.nodes.size() != 2 || init.nodes[0].size() != 1 || init.nodes[1].size() != 1)
                    throw config_error("initial type '" + init.type +
                                       "' takes two one-coordinate nodes");
                labels = {init.nodes[0][0], init.nodes[1][0]};
            }
            if (!init.inners.empty()) {
                if (init.inners.size() != 2)
                    throw config_error("initial type '" + init.type + "' takes two inner vectors");
                inners = init.inners;
            }
            for (auto& inner : inners) {
                if (inner.size() != 2)
                    throw config_error("pair inner vectors must have two amplitudes");
                double n2 = 0.0;
                for (const auto& a : inner) n2 += std::norm(a);
                if (n2 < 1e-24) throw config_error("pair inner vector is zero");
                for (auto& a : inner) a /= std::sqrt(n2);
            }
            const WalkState a = basis_1d(g.size, labels[0], inners[0]);
            const WalkState b = basis_1d(g.size, labels[1], inners[1]);
            if (init.type == "fermionic") return PreparedRun{*field, antisymmetrize(a, b)};
            if (init.x_star < 1 || init.x_star > g.size)
                throw config_error("'x_star' out of range [1, n]");
            return PreparedRun{*field, mirrored_antisymmetric(a, b, init.x_star - 1)};
        }
        if (init.type == "seed_superposition") {
            if (cfg.scheme != "reflection" || g.dim != 3)
                throw config_error("initial type 'seed_superposition' requires scheme 'reflection' with dim 3");
            return PreparedRun{*field, seed_superposition(*field)};
        }
        // explicit
        if (init.amplitudes.size() != g.state_length())
            throw config_error("initial type 'explicit' requires " +
                               std::to_string(g.state_length()) + " amplitudes");
        WalkState s(g);
        s.amps = init.amplitudes;
        const double n = s.norm();
        if (n < 1e-12) throw config_error("explicit initial state is zero");
        if (std::abs(n - 1.0) > 1e-6)
            throw config_error("explicit initial state norm differs from 1 beyond 1e-6");
        s.normalize();
        return PreparedRun{*field, s};
    } catch (const std::invalid_argument& e) {
        throw config_error(e.what());
    }
}

}  // namespace toruswalk
