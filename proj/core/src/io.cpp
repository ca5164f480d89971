#include "toruswalk/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace toruswalk {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string distribution_csv(const Geometry& g, const std::vector<double>& p) {
    if (static_cast<int>(p.size()) != g.node_count())
        throw std::invalid_argument("distribution_csv: length mismatch");
    std::ostringstream os;
    static const char* headers[] = {"x,p\n", "x,y,p\n", "x,y,z,p\n"};
    os << headers[g.dim - 1];
    for (int r = 0; r < g.node_count(); ++r) {
        const auto ext = external_labels(g, node_from_rank(g, r));
        for (int a = 0; a < g.dim; ++a) os << ext[a] << ',';
        os << format_double(p[r]) << '\n';
    }
    return os.str();
}

std::string state_csv(const WalkState& s) {
    const Geometry& g = s.geom;
    std::ostringstream os;
    static const char* headers[] = {"x,channel,re,im\n", "x,y,channel,re,im\n",
                                    "x,y,z,channel,re,im\n"};
    os << headers[g.dim - 1];
    for (int r = 0; r < g.node_count(); ++r) {
        const auto ext = external_labels(g, node_from_rank(g, r));
        for (int c = 0; c < g.channel_count(); ++c) {
            for (int a = 0; a < g.dim; ++a) os << ext[a] << ',';
            os << channel_name(c, g.dim) << ',' << format_double(s.at(r, c).real()) << ','
               << format_double(s.at(r, c).imag()) << '\n';
        }
    }
    return os.str();
}

PgmImage distribution_pgm(const Geometry& g, const std::vector<double>& p) {
    if (static_cast<int>(p.size()) != g.node_count())
        throw std::invalid_argument("distribution_pgm: length mismatch");
    const int n = g.size;
    const int width = g.dim == 1 ? n : n;
    const int height = g.dim == 1 ? 1 : (g.dim == 2 ? n : n * n);
    const double maxp = *std::max_element(p.begin(), p.end());
    const double scale = maxp > 0.0 ? 65535.0 / maxp : 0.0;

    std::ostringstream os;
    os << "P2\n" << width << ' ' << height << "\n65535\n";
    // row index runs over (z-slice, x); column over y — rank order is already
    // row-major with the last axis fastest, so slices stack naturally
    if (g.dim == 1) {
        for (int x = 0; x < n; ++x) os << (x ? " " : "") << std::lround(p[x] * scale);
        os << '\n';
    } else if (g.dim == 2) {
        for (int x = 0; x < n; ++x) {
            for (int y = 0; y < n; ++y) os << (y ? " " : "") << std::lround(p[x * n + y] * scale);
            os << '\n';
        }
    } else {
        for (int z = 0; z < n; ++z)
            for (int x = 0; x < n; ++x) {
                for (int y = 0; y < n; ++y)
                    os << (y ? " " : "") << std::lround(p[(x * n + y) * n + z] * scale);
                os << '\n';
            }
    }

    nlohmann::json side;
    side["dim"] = g.dim;
    side["n"] = n;
    side["width"] = width;
    side["height"] = height;
    side["maxval"] = 65535;
    side["max_probability"] = maxp;
    side["pixel_to_probability"] = maxp / 65535.0;
    if (g.dim == 3) side["slice_axis"] = "z";
    return PgmImage{os.str(), side.dump(2)};
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw io_error("write failed for '" + path + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

}  // namespace toruswalk
