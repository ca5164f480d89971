#include "toruswalk/operators.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace toruswalk {

namespace {

constexpr double kUnitarityTol = 1e-10;
constexpr std::size_t kDenseCap = 4096;

void require_same_geometry(const Geometry& a, const Geometry& b, const char* op) {
    if (!(a == b)) throw std::invalid_argument(std::string(op) + ": geometry mismatch");
}

}  // namespace

CoinField::CoinField(const Geometry& g, std::vector<CMat> coins_) : geom(g), coins(std::move(coins_)) {
    if (static_cast<int>(coins.size()) != geom.node_count())
        throw std::invalid_argument("CoinField: one coin per node required");
    const std::size_t nch = geom.channel_count();
    for (int r = 0; r < geom.node_count(); ++r) {
        const CMat& c = coins[r];
        if (c.rows() != nch || c.cols() != nch)
            throw std::invalid_argument("CoinField: coin shape must be 2^D x 2^D");
        if (c.unitarity_residual() > kUnitarityTol) {
            std::ostringstream os;
            const auto ext = external_labels(geom, node_from_rank(geom, r));
            os << "CoinField: non-unitary coin at node (";
            for (int a = 0; a < geom.dim; ++a) os << (a ? "," : "") << ext[a];
            os << ")";
            throw numeric_error(os.str());
        }
    }
}

WalkState step(const WalkState& s, const CoinField& f) {
    require_same_geometry(s.geom, f.geom, "step");
    const Geometry& g = s.geom;
    const int nch = g.channel_count();
    WalkState out(g);
    std::vector<cplx> in(nch), mixed(nch);
    for (int rank = 0; rank < g.node_count(); ++rank) {
        for (int c = 0; c < nch; ++c) in[c] = s.at(rank, c);
        const CMat& coin = f.coin(rank);
        // channel-ascending summation for bit-reproducible output
        for (int r = 0; r < nch; ++r) {
            cplx acc{};
            for (int c = 0; c < nch; ++c) acc += coin(r, c) * in[c];
            mixed[r] = acc;
        }
        const Node v = node_from_rank(g, rank);
        for (int r = 0; r < nch; ++r) {
            const Node dst = add_offset(g, v, channel_source_offset(r, g.dim), -1);
            out.at(node_rank(g, dst), r) = mixed[r];
        }
    }
    return out;
}

std::vector<WalkState> evolve(const WalkState& s, const CoinField& f, int steps) {
    if (steps < 0) throw std::invalid_argument("evolve: steps must be >= 0");
    std::vector<WalkState> traj;
    traj.reserve(steps + 1);
    traj.push_back(s);
    for (int t = 0; t < steps; ++t) traj.push_back(step(traj.back(), f));
    return traj;
}

void evolve_visit(const WalkState& s, const CoinField& f, int steps,
                  const std::function<void(int, const WalkState&)>& visit) {
    if (steps < 0) throw std::invalid_argument("evolve_visit: steps must be >= 0");
#ifdef NDEBUG
    const int check_every = 100;
#else
    const int check_every = 1;
#endif
    WalkState cur = s;
    visit(0, cur);
    for (int t = 1; t <= steps; ++t) {
        cur = step(cur, f);
        if (t % check_every == 0 && std::abs(cur.norm() - 1.0) > 1e-9)
            throw numeric_error("evolve_visit: norm drift exceeded 1e-9 at step " + std::to_string(t));
        visit(t, cur);
    }
}

CMat materialize_dense(const CoinField& f) {
    const std::size_t len = f.geom.state_length();
    if (len > kDenseCap) throw std::invalid_argument("materialize_dense: state length exceeds 4096");
    CMat w(len, len);
    WalkState basis(f.geom);
    for (std::size_t j = 0; j < len; ++j) {
        std::fill(basis.amps.begin(), basis.amps.end(), cplx{});
        basis.amps[j] = 1.0;
        const WalkState col = step(basis, f);
        for (std::size_t i = 0; i < len; ++i) w(i, j) = col.amps[i];
    }
    return w;
}

CoinField tensor_evolution_field(int n, const std::vector<CMat>& coins_a,
                                 const std::vector<CMat>& coins_b) {
    if (static_cast<int>(coins_a.size()) != n || static_cast<int>(coins_b.size()) != n)
        throw std::invalid_argument("tensor_evolution_field: need one 2x2 coin per node and player");
    const Geometry g(2, n);
    std::vector<CMat> coins;
    coins.reserve(g.node_count());
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) coins.push_back(coins_a[x].kron(coins_b[y]));
    return CoinField(g, std::move(coins));
}

std::vector<CMat> uniform_coin_row(int n, const CMat& coin) {
    return std::vector<CMat>(n, coin);
}

std::vector<cplx> PermutationPhase::apply(const std::vector<cplx>& in) const {
    std::vector<cplx> out(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = phase[i] * in[perm[i]];
    return out;
}

namespace {

PermutationPhase joint_channel_map(const Geometry& g,
                                   const std::function<std::size_t(int, int, int)>& target) {
    if (g.dim != 2) throw std::invalid_argument("swap/mirror operators expect a dim-2 geometry");
    const std::size_t len = g.state_length();
    PermutationPhase p;
    p.perm.resize(len);
    p.phase.assign(len, 1.0);
    const int n = g.size;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int c = 0; c < 4; ++c)
                p.perm[static_cast<std::size_t>(x * n + y) * 4 + c] = target(x, y, c);
    return p;
}

}  // namespace

PermutationPhase position_swap_operator(const Geometry& g) {
    const int n = g.size;
    return joint_channel_map(g, [n](int x, int y, int c) {
        return static_cast<std::size_t>(y * n + x) * 4 + c;
    });
}

PermutationPhase full_swap_operator(const Geometry& g) {
    const int n = g.size;
    return joint_channel_map(g, [n](int x, int y, int c) {
        const int ja = c >> 1, jb = c & 1;
        return static_cast<std::size_t>(y * n + x) * 4 + (jb * 2 + ja);
    });
}

PermutationPhase joint_mirror_operator(const Geometry& g, int x_star) {
    const int n = g.size;
    if (x_star < 0 || x_star >= n) throw std::invalid_argument("joint_mirror_operator: x_star out of range");
    return joint_channel_map(g, [n, x_star](int x, int y, int c) {
        const int mx = ((2 * x_star - x) % n + n) % n;
        const int my = ((2 * x_star - y) % n + n) % n;
        const int ja = c >> 1, jb = c & 1;
        return static_cast<std::size_t>(mx * n + my) * 4 + ((1 - ja) * 2 + (1 - jb));
    });
}

double symmetry_residual(const CoinField& f, const PermutationPhase& p) {
    const CMat w = materialize_dense(f);
    const std::size_t len = w.rows();
    if (p.perm.size() != len) throw std::invalid_argument("symmetry_residual: operator size mismatch");
    // (P W)(i,j) = phase[i] W(perm[i], j); column j of P has its entry at the
    // row r with perm[r] = j, so (W P)(i, perm[r]) = W(i, r) phase[r].
    double res = 0.0;
    CMat pw(len, len), wp(len, len);
    for (std::size_t i = 0; i < len; ++i)
        for (std::size_t j = 0; j < len; ++j) pw(i, j) = p.phase[i] * w(p.perm[i], j);
    for (std::size_t i = 0; i < len; ++i)
        for (std::size_t r = 0; r < len; ++r) wp(i, p.perm[r]) = w(i, r) * p.phase[r];
    for (std::size_t i = 0; i < len; ++i)
        for (std::size_t j = 0; j < len; ++j) res = std::max(res, std::abs(pw(i, j) - wp(i, j)));
    return res;
}

ObstructionWitness fermion_obstruction_witness(const CMat& coin) {
    if (coin.rows() != 4 || coin.cols() != 4)
        throw std::invalid_argument("fermion_obstruction_witness: expects a 4x4 coin");
    ObstructionWitness w{};
    double diff2 = 0.0;
    for (std::size_t j = 0; j < 4; ++j) diff2 += std::norm(coin(1, j) - coin(2, j));
    w.row_diff_norm = std::sqrt(diff2);

    // Equalize rows 2 and 3 (1-based) and measure how far the Gram matrix of
    // the rows falls from the identity that unitarity demands.
    CMat forced = coin;
    for (std::size_t j = 0; j < 4; ++j) forced(2, j) = forced(1, j);
    CMat gram(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t k = 0; k < 4; ++k) {
            cplx acc{};
            for (std::size_t j = 0; j < 4; ++j) acc += forced(i, j) * std::conj(forced(k, j));
            gram(i, k) = acc;
        }
    w.gram_defect = (gram - CMat::identity(4)).max_abs();
    w.constraint_satisfiable = w.row_diff_norm < 1e-12 && coin.unitarity_residual() < 1e-10;
    return w;
}

std::string coin_field_to_json(const CoinField& f) {
    nlohmann::json j;
    j["dim"] = f.geom.dim;
    j["n"] = f.geom.size;
    auto mat_json = [](const CMat& m) {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t k = 0; k < m.cols(); ++k)
                row.push_back({m(i, k).real(), m(i, k).imag()});
            rows.push_back(row);
        }
        return rows;
    };
    j["coins"] = nlohmann::json::array();
    for (int r = 0; r < f.geom.node_count(); ++r) {
        const auto ext = external_labels(f.geom, node_from_rank(f.geom, r));
        nlohmann::json entry;
        entry["node"] = std::vector<int>(ext.begin(), ext.begin() + f.geom.dim);
        entry["matrix"] = mat_json(f.coin(r));
        j["coins"].push_back(entry);
    }
    return j.dump(2);
}

CoinField coin_field_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    const Geometry g(j.at("dim").get<int>(), j.at("n").get<int>());
    const int nch = g.channel_count();
    auto mat_from = [nch](const nlohmann::json& rows) {
        if (static_cast<int>(rows.size()) != nch)
            throw std::invalid_argument("coin matrix has wrong row count");
        CMat m(nch, nch);
        for (int i = 0; i < nch; ++i) {
            if (static_cast<int>(rows[i].size()) != nch)
                throw std::invalid_argument("coin matrix has wrong column count");
            for (int k = 0; k < nch; ++k)
                m(i, k) = cplx(rows[i][k][0].get<double>(), rows[i][k][1].get<double>());
        }
        return m;
    };
    std::vector<CMat> coins;
    if (j.contains("default")) coins.assign(g.node_count(), mat_from(j.at("default")));
    else coins.assign(g.node_count(), CMat::identity(nch));
    if (j.contains("coins"))
        for (const auto& entry : j.at("coins")) {
            std::array<int, 3> labels{1, 1, 1};
            const auto& nv = entry.at("node");
            if (static_cast<int>(nv.size()) != g.dim)
                throw std::invalid_argument("coin node label has wrong dimension");
            for (int a = 0; a < g.dim; ++a) labels[a] = nv[a].get<int>();
            coins[node_rank(g, node_from_external(g, labels))] = mat_from(entry.at("matrix"));
        }
    return CoinField(g, std::move(coins));
}

}  // namespace toruswalk
