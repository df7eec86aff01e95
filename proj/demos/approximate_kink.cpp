// Fit the d = 2 kink on one lattice three ways (classical rule, subsampled
// least squares, subsampled kernel interpolation) and print the estimated
// L2 errors side by side.

#include <cstdio>

#include <sublat/sublat.hpp>

int main() {
    using namespace sublat;

    const int d = 2;
    const KorobovSpace space{d, 1.0, parse_weights("const:0.5", d)};
    const std::uint64_t n = next_prime_above(1 << 12);
    const KinkFunction f(d);

    std::printf("constructing a %llu-point lattice greedily...\n",
                static_cast<unsigned long long>(n));
    const Lattice lat = cbc_construct(space, n);
    const double sn = s_n_kernel(space, lat);
    std::printf("z = (%llu, %llu), s_n = %.3e\n", static_cast<unsigned long long>(lat.z[0]),
                static_cast<unsigned long long>(lat.z[1]), sn);

    const std::uint64_t seed = 2026;
    const int shifts = 20;

    // classical rule on the full lattice, radius 1/sqrt(s_n)
    {
        const FrequencySet set = enumerate_set(space, 1.0 / std::sqrt(sn));
        const auto samples = sample_on_lattice(f, lat);
        const FourierApproximant a = classical_fit(samples, lat, set);
        const double err = estimate_l2_error(a, f, shifts, derive_seed(seed, {1}));
        std::printf("classical      |B| = %5zu            error = %.3e\n", set.size(), err);
    }

    // subsampled least squares, radius 1/(2 sqrt(s_n))
    const FrequencySet set = enumerate_set(space, reconstructing_radius(sn));
    SubsamplePlan plan;
    plan.mode = SubsampleMode::Practice;
    plan.seed = derive_seed(seed, {2});
    const SubsampleIndex idx = draw(plan, n, set.size());
    {
        const auto samples = sample_at(f, lat, idx.entries);
        const FourierApproximant a = lsq_fit(samples, lat, set, idx);
        const double err = estimate_l2_error(a, f, shifts, derive_seed(seed, {3}));
        std::printf("subsampled ls  |B| = %5zu |J| = %4zu error = %.3e (%zu iterations)\n",
                    set.size(), idx.size(), err, a.stats.iterations);
    }

    // kernel interpolation on the same subsample
    {
        const auto samples = sample_at(f, lat, idx.entries);
        const KernelApproximant a = kernel_fit(space, lat, idx, samples);
        const double err = estimate_l2_error(a, f, shifts, derive_seed(seed, {4}));
        std::printf("kernel         nodes = %4zu          error = %.3e (%zu iterations)\n",
                    a.nodes.size(), err, a.stats.iterations);
    }
    return 0;
}
