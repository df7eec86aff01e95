#pragma once

#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace sublat {

/// Rank-1 lattice {k z / n mod 1 : k = 0..n-1}.  Components of z are kept
/// reduced mod n.
struct Lattice {
    std::uint64_t n = 1;
    std::vector<std::uint64_t> z;

    int d() const { return static_cast<int>(z.size()); }
};

inline void validate(const Lattice& lat) {
    if (lat.n < 1) throw std::invalid_argument("Lattice: n >= 1 required");
    if (lat.z.empty()) throw std::invalid_argument("Lattice: empty generating vector");
    for (std::uint64_t zj : lat.z)
        if (zj >= lat.n) throw std::invalid_argument("Lattice: generating vector not reduced mod n");
}

/// k-th node (k z mod n) / n, componentwise in [0, 1).
inline std::vector<double> lattice_point(const Lattice& lat, std::uint64_t k) {
    validate(lat);
    if (k >= lat.n) throw std::invalid_argument("lattice_point: k out of range");
    std::vector<double> x(lat.z.size());
    for (std::size_t j = 0; j < lat.z.size(); ++j)
        x[j] = static_cast<double>((k * lat.z[j]) % lat.n) / static_cast<double>(lat.n);
    return x;
}

inline std::vector<std::vector<double>> lattice_points(const Lattice& lat) {
    validate(lat);
    std::vector<std::vector<double>> pts;
    pts.reserve(lat.n);
    for (std::uint64_t k = 0; k < lat.n; ++k) pts.push_back(lattice_point(lat, k));
    return pts;
}

/// Euler totient by trial division.
inline std::uint64_t totient(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("totient: n >= 1 required");
    std::uint64_t result = n;
    std::uint64_t m = n;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

inline void write_lattice(std::ostream& out, const Lattice& lat) {
    validate(lat);
    out << lat.n << ' ' << lat.z.size() << '\n';
    for (std::uint64_t zj : lat.z) out << zj << '\n';
}

inline Lattice read_lattice(std::istream& in) {
    Lattice lat;
    std::size_t d = 0;
    if (!(in >> lat.n >> d)) throw std::runtime_error("read_lattice: malformed header");
    lat.z.resize(d);
    for (std::size_t j = 0; j < d; ++j)
        if (!(in >> lat.z[j])) throw std::runtime_error("read_lattice: truncated generating vector");
    validate(lat);
    return lat;
}

} // namespace sublat
