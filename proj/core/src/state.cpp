#include "toruswalk/state.hpp"

#include <cmath>
#include <stdexcept>

namespace toruswalk {

namespace {

constexpr double kZeroNorm = 1e-12;

void require_joint(const WalkState& s, const char* op) {
    if (s.geom.dim != 2) throw std::invalid_argument(std::string(op) + ": expects a dim-2 joint state");
}

void require_1d_pair(const WalkState& a, const WalkState& b, const char* op) {
    if (a.geom.dim != 1 || b.geom.dim != 1)
        throw std::invalid_argument(std::string(op) + ": expects 1D factors");
    if (a.geom.size != b.geom.size)
        throw std::invalid_argument(std::string(op) + ": mismatched cycle lengths");
}

// Unnormalized tensor product into a joint dim-2 state.
void accumulate_tensor(WalkState& out, const WalkState& a, const WalkState& b, cplx scale) {
    const int n = a.geom.size;
    for (int x = 0; x < n; ++x)
        for (int ja = 0; ja < 2; ++ja) {
            const cplx av = a.at(x, ja);
            if (av == cplx{}) continue;
            for (int y = 0; y < n; ++y)
                for (int jb = 0; jb < 2; ++jb)
                    out.at(x * n + y, ja * 2 + jb) += scale * av * b.at(y, jb);
        }
}

}  // namespace

double WalkState::norm() const {
    double s = 0.0;
    for (const auto& v : amps) s += std::norm(v);
    return std::sqrt(s);
}

double WalkState::normalize() {
    const double n = norm();
    if (n < kZeroNorm) throw std::invalid_argument("WalkState: cannot normalize a zero vector");
    for (auto& v : amps) v /= n;
    return n;
}

WalkState basis_state(const Geometry& g, const Node& v, std::span<const cplx> inner) {
    if (static_cast<int>(inner.size()) != g.channel_count())
        throw std::invalid_argument("basis_state: inner length must be 2^D");
    double n2 = 0.0;
    for (const auto& a : inner) n2 += std::norm(a);
    const double n = std::sqrt(n2);
    if (n < kZeroNorm) throw std::invalid_argument("basis_state: zero inner vector");
    if (std::abs(n - 1.0) > 1e-6)
        throw std::invalid_argument("basis_state: inner vector norm differs from 1 beyond 1e-6");
    WalkState s(g);
    const int rank = node_rank(g, v);
    for (int c = 0; c < g.channel_count(); ++c) s.at(rank, c) = inner[c] / n;
    return s;
}

std::vector<double> position_distribution(const WalkState& s) {
    std::vector<double> p(s.geom.node_count(), 0.0);
    const int nch = s.geom.channel_count();
    for (int r = 0; r < s.geom.node_count(); ++r)
        for (int c = 0; c < nch; ++c) p[r] += std::norm(s.at(r, c));
    return p;
}

WalkState tensor_join(const WalkState& a, const WalkState& b) {
    require_1d_pair(a, b, "tensor_join");
    WalkState out(Geometry(2, a.geom.size));
    accumulate_tensor(out, a, b, 1.0);
    return out;
}

WalkState antisymmetrize(const WalkState& a, const WalkState& b, int sign) {
    require_1d_pair(a, b, "antisymmetrize");
    WalkState out(Geometry(2, a.geom.size));
    accumulate_tensor(out, a, b, 1.0);
    accumulate_tensor(out, b, a, sign < 0 ? -1.0 : 1.0);
    if (out.norm() < kZeroNorm)
        throw std::invalid_argument("antisymmetrize: parallel states annihilate");
    out.normalize();
    return out;
}

WalkState mirror_1d(const WalkState& s, int x_star) {
    if (s.geom.dim != 1) throw std::invalid_argument("mirror_1d: expects a 1D state");
    const int n = s.geom.size;
    if (x_star < 0 || x_star >= n) throw std::invalid_argument("mirror_1d: x_star out of range");
    WalkState out(s.geom);
    for (int x = 0; x < n; ++x) {
        const int mx = ((2 * x_star - x) % n + n) % n;
        out.at(x, 0) = s.at(mx, 1);
        out.at(x, 1) = s.at(mx, 0);
    }
    return out;
}

WalkState mirrored_antisymmetric(const WalkState& a, const WalkState& b, int x_star) {
    require_1d_pair(a, b, "mirrored_antisymmetric");
    const WalkState ah = mirror_1d(a, x_star);
    const WalkState bh = mirror_1d(b, x_star);
    WalkState out(Geometry(2, a.geom.size));
    accumulate_tensor(out, a, b, 1.0);
    accumulate_tensor(out, b, a, -1.0);
    accumulate_tensor(out, ah, bh, 1.0);
    accumulate_tensor(out, bh, ah, -1.0);
    if (out.norm() < kZeroNorm)
        throw std::invalid_argument("mirrored_antisymmetric: all four terms cancel");
    out.normalize();
    return out;
}

WalkState swap_positions(const WalkState& s) {
    require_joint(s, "swap_positions");
    const int n = s.geom.size;
    WalkState out(s.geom);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int c = 0; c < 4; ++c) out.at(x * n + y, c) = s.at(y * n + x, c);
    return out;
}

WalkState swap_full(const WalkState& s) {
    require_joint(s, "swap_full");
    const int n = s.geom.size;
    WalkState out(s.geom);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int ja = 0; ja < 2; ++ja)
                for (int jb = 0; jb < 2; ++jb)
                    out.at(x * n + y, ja * 2 + jb) = s.at(y * n + x, jb * 2 + ja);
    return out;
}

}  // namespace toruswalk
