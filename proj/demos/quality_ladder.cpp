// Print s_n, its sandwich bounds, and the least-squares truncation radius
// for a short ladder of lattice sizes.

#include <cstdio>

#include <sublat/sublat.hpp>

int main() {
    using namespace sublat;

    const int d = 3;
    const KorobovSpace space{d, 1.0, parse_weights("const:0.5", d)};

    std::printf("%8s %24s %12s %12s %12s %10s\n", "n", "z", "lower", "s_n", "upper", "radius");
    for (int e = 6; e <= 12; ++e) {
        const std::uint64_t n = next_prime_above(std::uint64_t{1} << e);
        const Lattice lat = cbc_construct(space, n);
        const double sn = s_n_kernel(space, lat);
        const SkorobovBounds b = skorobov_bounds(space, n, 1.0);
        char zbuf[64];
        std::snprintf(zbuf, sizeof(zbuf), "(%llu,%llu,%llu)",
                      static_cast<unsigned long long>(lat.z[0]),
                      static_cast<unsigned long long>(lat.z[1]),
                      static_cast<unsigned long long>(lat.z[2]));
        std::printf("%8llu %24s %12.3e %12.3e %12.3e %10.1f\n",
                    static_cast<unsigned long long>(n), zbuf, b.lower, sn, b.upper,
                    reconstructing_radius(sn));
    }
    return 0;
}
