#ifndef TORUSWALK_STATE_HPP
#define TORUSWALK_STATE_HPP

#include <span>
#include <vector>

#include "toruswalk/lattice.hpp"
#include "toruswalk/matrix.hpp"

namespace toruswalk {

/// Complex state vector over (node, channel) pairs,
/// idx = node_rank * 2^D + channel.
struct WalkState {
    Geometry geom;
    std::vector<cplx> amps;

    explicit WalkState(const Geometry& g) : geom(g), amps(g.state_length()) {}

    cplx& at(int rank, int channel) { return amps[static_cast<std::size_t>(rank) * geom.channel_count() + channel]; }
    const cplx& at(int rank, int channel) const { return amps[static_cast<std::size_t>(rank) * geom.channel_count() + channel]; }

    double norm() const;

    /// Scales to unit norm; returns the pre-normalization norm.
    /// Throws if the norm is below 1e-12.
    double normalize();
};

/// State concentrated at node v with the given channel amplitudes.
/// |inner| must be 1 within 1e-6; it is renormalized exactly.
WalkState basis_state(const Geometry& g, const Node& v, std::span<const cplx> inner);

/// p(v) = sum_c |amp(v,c)|^2, indexed by node rank.
std::vector<double> position_distribution(const WalkState& s);

// ---- Two-player joint states ------------------------------------------------
//
// A joint state of two 1D walks is a dim-2 WalkState: node (x,y) with channel
// (J_A, J_B) corresponds to |x>|J_A> (x) |y>|J_B>, joint channel = J_A*2+J_B.

/// amp((x,y),(J_A,J_B)) = a(x,J_A) * b(y,J_B).
WalkState tensor_join(const WalkState& a, const WalkState& b);

/// Normalized (a(x)b - b(x)a); with sign = +1 the symmetric combination
/// instead. Throws when a and b are parallel (the difference vanishes).
WalkState antisymmetrize(const WalkState& a, const WalkState& b, int sign = -1);

/// Amplitude at (x,J) of the result = amplitude at ((2*x_star - x) mod N, ~J)
/// of the input, with ~J swapping L and R.
WalkState mirror_1d(const WalkState& s, int x_star);

/// Normalized a(x)b - b(x)a + a^(x)b^ - b^(x)a^ with hats mirrored about
/// x_star. All four channel amplitudes at joint node (x_star, x_star) are
/// exactly zero.
WalkState mirrored_antisymmetric(const WalkState& a, const WalkState& b, int x_star);

/// (U_sigma Phi)(x,y) = Phi(y,x), channels untouched.
WalkState swap_positions(const WalkState& s);

/// Phi((x,mu),(y,nu)) -> Phi((y,nu),(x,mu)): positions and per-player inner
/// labels exchanged.
WalkState swap_full(const WalkState& s);

}  // namespace toruswalk

#endif
