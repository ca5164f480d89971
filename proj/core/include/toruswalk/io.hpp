#ifndef TORUSWALK_IO_HPP
#define TORUSWALK_IO_HPP

#include <stdexcept>
#include <string>

#include "toruswalk/analysis.hpp"
#include "toruswalk/state.hpp"

namespace toruswalk {

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Doubles serialized with 17 significant digits for exact round-trips.
std::string format_double(double v);

/// "x,p" / "x,y,p" / "x,y,z,p" rows with 1-based node labels.
std::string distribution_csv(const Geometry& g, const std::vector<double>& p);

/// Columns: node label(s), channel_name, re, im.
std::string state_csv(const WalkState& s);

/// ASCII PGM (P2), probabilities scaled linearly into [0, 65535] by the
/// maximum value. For dim 3 the z slices are stacked vertically.
struct PgmImage {
    std::string pgm;
    std::string sidecar_json;  // records the max-normalization
};

PgmImage distribution_pgm(const Geometry& g, const std::vector<double>& p);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace toruswalk

#endif
