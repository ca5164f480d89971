#ifndef TORUSWALK_OPERATORS_HPP
#define TORUSWALK_OPERATORS_HPP

#include <functional>
#include <stdexcept>
#include <vector>

#include "toruswalk/lattice.hpp"
#include "toruswalk/matrix.hpp"
#include "toruswalk/state.hpp"

namespace toruswalk {

/// Raised when a numeric invariant (unitarity, norm conservation) is violated.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One 2^D x 2^D unitary per node, indexed by node rank. Row = output
/// channel, column = input channel, in channel-code order.
struct CoinField {
    Geometry geom;
    std::vector<CMat> coins;

    /// Validates shape and unitarity (residual <= 1e-10 per coin).
    CoinField(const Geometry& g, std::vector<CMat> coins_);

    const CMat& coin(int rank) const { return coins[rank]; }
};

/// One step W = S * C: per-node coin multiply, then the shift permutation
/// (v, c) -> (v - e(c), c). Norm is preserved to rounding.
WalkState step(const WalkState& s, const CoinField& f);

/// Repeated step; trajectory[0] = s, trajectory[T] = W^T s.
std::vector<WalkState> evolve(const WalkState& s, const CoinField& f, int steps);

/// Streaming variant: visit(t, state) for t = 0..steps. Norm drift is
/// re-checked every 100 steps (every step in debug builds).
void evolve_visit(const WalkState& s, const CoinField& f, int steps,
                  const std::function<void(int, const WalkState&)>& visit);

/// Explicit matrix with W * vec(s) = vec(step(s, f)). State length capped at
/// 4096.
CMat materialize_dense(const CoinField& f);

/// Dim-2 field with coin at (x,y) = coins_a[x] (x) coins_b[y]; stepping a pure
/// tensor state with it equals evolving the factors independently.
CoinField tensor_evolution_field(int n, const std::vector<CMat>& coins_a,
                                 const std::vector<CMat>& coins_b);

/// Uniform per-node 2x2 coin helper for tensor fields.
std::vector<CMat> uniform_coin_row(int n, const CMat& coin);

/// Unitary permutation-with-phase on the state index space:
/// out[i] = phase[i] * in[perm[i]].
struct PermutationPhase {
    std::vector<std::size_t> perm;
    std::vector<cplx> phase;

    std::vector<cplx> apply(const std::vector<cplx>& in) const;
};

PermutationPhase position_swap_operator(const Geometry& g);  // dim-2 joint
PermutationPhase full_swap_operator(const Geometry& g);      // dim-2 joint
PermutationPhase joint_mirror_operator(const Geometry& g, int x_star);

/// ||P W - W P||_max via the dense matrix (small instances only).
double symmetry_residual(const CoinField& f, const PermutationPhase& p);

/// Diagnostic for the impossibility of a position-swap-symmetric unitary W:
/// the commutation constraint at the swap-fixed node forces rows 2 and 3
/// (1-based) of its 4x4 coin to coincide, which no unitary allows.
struct ObstructionWitness {
    double row_diff_norm;      // ||row2 - row3|| for the candidate coin
    double gram_defect;        // unitarity defect if the rows were equalized
    bool constraint_satisfiable;
};

ObstructionWitness fermion_obstruction_witness(const CMat& coin);

// JSON (de)serialization of coin fields; schema:
// {"dim":D,"n":N,"coins":[{"node":[...1-based...],"matrix":[[[re,im],...]]}],
//  "default": matrix}
std::string coin_field_to_json(const CoinField& f);
CoinField coin_field_from_json(const std::string& text);

}  // namespace toruswalk

#endif
