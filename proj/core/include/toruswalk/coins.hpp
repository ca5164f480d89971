#ifndef TORUSWALK_COINS_HPP
#define TORUSWALK_COINS_HPP

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "toruswalk/lattice.hpp"
#include "toruswalk/matrix.hpp"
#include "toruswalk/operators.hpp"

namespace toruswalk {

/// Named coin constants: hadamard_minus, balanced_complex, coin_2d_above,
/// coin_2d_below, coin_2d_bulk, coin_conflict_node_4x4, U2, U4, U6, U8.
CMat named_coin(const std::string& name);

/// allowed[r][c] = (class of dest(r) == class of src(c)), class in
/// {conflict, non-conflict}. Permuting rows by dest class and columns by
/// source class exposes two square diagonal blocks of sizes k and 2^D - k.
struct ReflectionMask {
    Node node;
    int dim;
    std::vector<std::uint8_t> allowed;  // 2^D x 2^D, row-major

    bool at(int r, int c) const { return allowed[static_cast<std::size_t>(r) * (1 << dim) + c] != 0; }
};

ReflectionMask reflection_mask(const Geometry& g, const Node& v);

/// Mask rendered in the 0/* grid layout.
std::string mask_grid(const ReflectionMask& m);

/// Unitary blocks by size. Sizes 2, 4, 6, 8 carry fixed constants; odd sizes
/// default to the unitary DFT matrix; size 1 is the scalar 1.
struct BlockLibrary {
    static BlockLibrary standard();
    const CMat& of(int size) const;
    std::array<CMat, 9> blocks;  // index by size, 0 unused
};

/// Block-diagonal coin satisfying the node's reflection mask: conflict-bound
/// rows/columns carry lib[k], the rest lib[2^D - k]; structural zeros are
/// exact.
CMat build_reflection_coin(const Geometry& g, const Node& v, const BlockLibrary& lib);

/// Reflection field over all nodes. Nodes with no conflict neighbors get the
/// bulk coin (coin_2d_bulk for dim 2, U8 for dim 3 when bulk is not given).
CoinField build_reflection_field(const Geometry& g, const BlockLibrary& lib,
                                 const std::optional<CMat>& bulk = std::nullopt);

/// Dim-2 partial-avoidance variant: conflict nodes (i,i) get
/// coin_conflict_node_4x4, everything else the bulk tensor coin.
CoinField build_conflict_node_field(const Geometry& g, const std::optional<CMat>& bulk = std::nullopt);

/// Canonical mask signature: row-major 0/1 bitstring of the reflection mask.
std::string coin_group_of(const Geometry& g, const Node& v);

/// Distinct mask signatures over the non-conflict nodes (dim 3).
std::set<std::string> enumerate_coin_groups(const Geometry& g);

/// Channels at v whose source node is non-conflict, and the uniform unit
/// vector over them. A walker seeded this way stays in the non-conflict
/// component of a reflection field.
std::vector<int> nonconflict_source_channels(const Geometry& g, const Node& v);
std::vector<cplx> uniform_nonconflict_inner(const Geometry& g, const Node& v);

/// Search over the 8 channel relabelings (per-axis L/R flips x axis exchange)
/// for one under which the transcribed border coins satisfy the reflection
/// masks of nodes (i,i+2) and (i,i-2).
struct TranscribedCoinAdaptation {
    bool found = false;
    std::array<int, 4> relabeling{0, 1, 2, 3};  // new channel index per old
    bool above_is_upper_border = true;          // above -> (i,i+2) if true
    CMat above;
    CMat below;
    std::string report;
};

TranscribedCoinAdaptation adapt_transcribed_2d_coins();

}  // namespace toruswalk

#endif
