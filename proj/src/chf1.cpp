#include "chl/chf1.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace chl {

namespace {

// payload is pinned little-endian; swap on big-endian hosts
double to_le(double v) {
    if constexpr (std::endian::native == std::endian::little) return v;
    std::uint64_t u;
    std::memcpy(&u, &v, 8);
    u = __builtin_bswap64(u);
    std::memcpy(&v, &u, 8);
    return v;
}
double from_le(double v) { return to_le(v); }

void write_payload(const std::string& path, const Grid& g, const char* kind,
                   const double* data, std::int64_t count) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("CHF1: cannot open '" + path + "' for writing");
    std::ostringstream header;
    header.precision(17);
    header << "CHF1 " << g.dim << ' ' << g.n << ' ' << g.L << ' ' << kind << '\n';
    out << header.str();
    if constexpr (std::endian::native == std::endian::little) {
        out.write(reinterpret_cast<const char*>(data), count * 8);
    } else {
        std::vector<double> swapped(data, data + count);
        for (double& v : swapped) v = to_le(v);
        out.write(reinterpret_cast<const char*>(swapped.data()), count * 8);
    }
    if (!out) throw ConfigError("CHF1: short write to '" + path + "'");
}

} // namespace

void write_chf1(const std::string& path, const RealField& f) {
    write_payload(path, f.grid, "real", f.values.data(), f.grid.size());
}

void write_chf1(const std::string& path, const SpectralField& F) {
    // ArrayXcd is contiguous (re, im) pairs already
    write_payload(path, F.grid, "spectral",
                  reinterpret_cast<const double*>(F.coeffs.data()), 2 * F.grid.size());
}

Chf1Snapshot read_chf1(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("CHF1: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("CHF1: missing header in '" + path + "'");

    std::istringstream hdr(line);
    std::string magic, kind;
    int dim = 0, n = 0;
    double L = 0;
    hdr >> magic >> dim >> n >> L >> kind;
    if (!hdr || magic != "CHF1" || (kind != "real" && kind != "spectral"))
        throw ConfigError("CHF1: malformed header '" + line + "'");

    Chf1Snapshot snap;
    snap.kind = kind;
    snap.grid = Grid(dim, n, L);
    const std::int64_t sites = snap.grid.size();
    const std::int64_t count = kind == "real" ? sites : 2 * sites;

    std::vector<double> raw(static_cast<std::size_t>(count));
    in.read(reinterpret_cast<char*>(raw.data()), count * 8);
    if (in.gcount() != count * 8) throw ConfigError("CHF1: truncated payload in '" + path + "'");
    for (double& v : raw) v = from_le(v);

    if (kind == "real") {
        snap.values = Eigen::Map<ArrayXr>(raw.data(), sites);
    } else {
        snap.coeffs.resize(sites);
        std::memcpy(snap.coeffs.data(), raw.data(), static_cast<std::size_t>(count) * 8);
    }
    return snap;
}

RealField read_chf1_real(const std::string& path) {
    Chf1Snapshot s = read_chf1(path);
    if (s.kind != "real") throw ConfigError("CHF1: expected a real snapshot in '" + path + "'");
    return RealField(s.grid, std::move(s.values));
}

SpectralField read_chf1_spectral(const std::string& path) {
    Chf1Snapshot s = read_chf1(path);
    if (s.kind != "spectral") throw ConfigError("CHF1: expected a spectral snapshot in '" + path + "'");
    return SpectralField(s.grid, std::move(s.coeffs));
}

} // namespace chl
