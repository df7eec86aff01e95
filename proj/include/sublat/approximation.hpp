#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "dft.hpp"
#include "frequency_set.hpp"
#include "korobov.hpp"
#include "lattice.hpp"
#include "operators.hpp"
#include "rng.hpp"
#include "sampling.hpp"
#include "solvers.hpp"

namespace sublat {

/// Trigonometric polynomial sum_{h in B} a_h e^{2 pi i <h, x>} built from
/// lattice samples.  coeffs aligns with set.indices.
struct FourierApproximant {
    Lattice lattice;
    FrequencySet set;
    std::vector<cdouble> coeffs;
    SolverStats stats; // iterations stays 0 for closed-form fits
    std::string provenance;
};

/// Kernel interpolant sum_j c_j K(x_j, .) on (a subsample of) a lattice.
/// nodes are the distinct lattice indices that survive duplicate collapsing.
struct KernelApproximant {
    KorobovSpace space;
    Lattice lattice;
    std::vector<std::uint64_t> nodes;
    std::vector<cdouble> coeffs;
    SolverStats stats;
    std::size_t duplicates_collapsed = 0;
};

struct LsqOptions {
    double tol = 1e-9;
    std::size_t max_iter = 0; // 0 picks 500
    bool force_iterative = false;
};

struct KernelOptions {
    double tol = 1e-10;
    std::size_t max_iter = 0; // 0 picks the system size
    bool force_iterative = false;
};

/// Target values on the full lattice, index k = node k.
template <class F>
std::vector<double> sample_on_lattice(const F& f, const Lattice& lat) {
    std::vector<double> out(lat.n);
    for (std::uint64_t k = 0; k < lat.n; ++k) out[k] = f(lattice_point(lat, k));
    return out;
}

/// Target values at selected lattice indices (multiset order preserved).
template <class F>
std::vector<double> sample_at(const F& f, const Lattice& lat,
                              const std::vector<std::uint64_t>& entries) {
    std::vector<double> out(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) out[i] = f(lattice_point(lat, entries[i]));
    return out;
}

/// Classical lattice rule: a_h = (1/n) sum_k f(x_k) e^{-2 pi i k <h,z> / n}.
/// Frequencies sharing a residue receive the same aliased value.
inline FourierApproximant classical_fit(const std::vector<double>& samples, const Lattice& lat,
                                        const FrequencySet& set) {
    validate(lat);
    if (samples.size() != lat.n) throw std::invalid_argument("classical_fit: need full-lattice samples");
    if (set.d != lat.d()) throw std::invalid_argument("classical_fit: dimension mismatch");
    std::vector<cdouble> buf(lat.n);
    for (std::uint64_t k = 0; k < lat.n; ++k) buf[k] = cdouble{samples[k], 0.0};
    buf = idft(std::move(buf));
    const std::vector<std::uint64_t> res = residues(set, lat);
    FourierApproximant a{lat, set, {}, {}, "classical"};
    a.coeffs.resize(res.size());
    const double scale = 1.0 / static_cast<double>(lat.n);
    for (std::size_t i = 0; i < res.size(); ++i) a.coeffs[i] = buf[res[i]] * scale;
    a.stats.converged = true;
    a.stats.note = "closed form";
    return a;
}

/// Least squares min ||L_{J,B} a - f||_2.  On the full lattice with distinct
/// residues the normal equations collapse to a = (1/n) L^* f and no iteration
/// is needed; every other case runs LSQR.
inline FourierApproximant lsq_fit(const std::vector<double>& samples, const Lattice& lat,
                                  const FrequencySet& set, const SubsampleIndex& subsample,
                                  const LsqOptions& opt = {}) {
    validate(lat);
    if (set.d != lat.d()) throw std::invalid_argument("lsq_fit: dimension mismatch");
    if (subsample.n != lat.n) throw std::invalid_argument("lsq_fit: subsample drawn for a different n");
    LatticeOperator op(lat, set, subsample);
    if (samples.size() != op.rows()) throw std::invalid_argument("lsq_fit: sample count mismatch");
    if (op.rows() < op.cols())
        throw std::invalid_argument("lsq_fit: fewer samples than frequencies");

    std::vector<cdouble> b(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) b[i] = cdouble{samples[i], 0.0};

    FourierApproximant a{lat, set, {}, {}, ""};

    bool distinct = true;
    {
        std::vector<std::uint64_t> r = op.frequency_residues();
        std::sort(r.begin(), r.end());
        distinct = std::adjacent_find(r.begin(), r.end()) == r.end();
    }

    if (!op.subsampled() && distinct && !opt.force_iterative) {
        a.coeffs = op.adjoint(b);
        const double scale = 1.0 / static_cast<double>(lat.n);
        for (auto& c : a.coeffs) c *= scale;
        a.stats.converged = true;
        a.stats.note = "closed form";
        a.provenance = "lsq-full-closed";
        return a;
    }

    LinearOperator lin;
    lin.rows = op.rows();
    lin.cols = op.cols();
    lin.apply = [&op](const std::vector<cdouble>& x) { return op.apply(x); };
    lin.adjoint = [&op](const std::vector<cdouble>& y) { return op.adjoint(y); };
    const std::size_t cap = opt.max_iter ? opt.max_iter : 500;
    a.coeffs = lsqr(lin, b, opt.tol, cap, &a.stats);
    a.provenance = "lsq-lsqr";
    return a;
}

/// Kernel interpolation K c = f at the sample nodes.  Duplicate subsample
/// entries are collapsed first (they carry the same value, and repeated nodes
/// would make the Gram matrix singular).  Full lattice inverts the circulant
/// symbol directly; otherwise conjugate gradients on the Gram matvec.
inline KernelApproximant kernel_fit(const KorobovSpace& space, const Lattice& lat,
                                    const SubsampleIndex& subsample,
                                    const std::vector<double>& samples,
                                    const KernelOptions& opt = {}) {
    detail::validate_space(space);
    validate(lat);
    if (space.d != lat.d()) throw std::invalid_argument("kernel_fit: dimension mismatch");
    if (subsample.n != lat.n) throw std::invalid_argument("kernel_fit: subsample drawn for a different n");
    if (samples.size() != subsample.size()) throw std::invalid_argument("kernel_fit: sample count mismatch");

    KernelApproximant a{space, lat, {}, {}, {}, 0};

    if (subsample.is_full() && !opt.force_iterative) {
        a.nodes.resize(lat.n);
        for (std::uint64_t k = 0; k < lat.n; ++k) a.nodes[k] = k;
        std::vector<cdouble> b(lat.n);
        for (std::uint64_t k = 0; k < lat.n; ++k) b[k] = cdouble{samples[k], 0.0};
        CirculantKernelOperator op(space, lat);
        a.coeffs = op.solve_full(std::move(b));
        a.stats.converged = true;
        a.stats.note = "symbol inversion";
        return a;
    }

    // entries are sorted, so duplicates are adjacent
    std::vector<double> uniq_samples;
    for (std::size_t i = 0; i < subsample.entries.size(); ++i) {
        if (!a.nodes.empty() && a.nodes.back() == subsample.entries[i]) {
            ++a.duplicates_collapsed;
            continue;
        }
        a.nodes.push_back(subsample.entries[i]);
        uniq_samples.push_back(samples[i]);
    }

    SubsampleIndex uniq{subsample.n, subsample.seed, a.nodes};
    CirculantKernelOperator op(space, lat, uniq);
    std::vector<cdouble> b(uniq_samples.size());
    for (std::size_t i = 0; i < uniq_samples.size(); ++i) b[i] = cdouble{uniq_samples[i], 0.0};
    const std::size_t cap = opt.max_iter ? opt.max_iter : b.size();
    a.coeffs = conjugate_gradient([&op](const std::vector<cdouble>& v) { return op.matvec(v); },
                                  b, opt.tol, cap, &a.stats);
    return a;
}

/// Values of the approximant on the whole lattice shifted by delta,
/// index k = x_k + delta.  One transform for the trigonometric case.
inline std::vector<cdouble> evaluate_on_shifted_lattice(const FourierApproximant& a,
                                                        const std::vector<double>& delta) {
    if (static_cast<int>(delta.size()) != a.lattice.d())
        throw std::invalid_argument("evaluate_on_shifted_lattice: bad shift dimension");
    const std::uint64_t n = a.lattice.n;
    const std::vector<std::uint64_t> res = residues(a.set, a.lattice);
    std::vector<cdouble> buf(n, cdouble{0.0, 0.0});
    const double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t i = 0; i < res.size(); ++i) {
        double phase = 0.0;
        for (std::size_t j = 0; j < delta.size(); ++j)
            phase += static_cast<double>(a.set.indices[i][j]) * delta[j];
        buf[res[i]] += a.coeffs[i] * std::polar(1.0, two_pi * phase);
    }
    return dft(std::move(buf));
}

/// Kernel counterpart: a cyclic cross-correlation of the scattered
/// coefficients with the kernel column at offset delta, two transforms total.
inline std::vector<cdouble> evaluate_on_shifted_lattice(const KernelApproximant& a,
                                                        const std::vector<double>& delta) {
    if (static_cast<int>(delta.size()) != a.lattice.d())
        throw std::invalid_argument("evaluate_on_shifted_lattice: bad shift dimension");
    const std::uint64_t n = a.lattice.n;
    std::vector<cdouble> u(n, cdouble{0.0, 0.0});
    for (std::size_t i = 0; i < a.nodes.size(); ++i) u[a.nodes[i]] += a.coeffs[i];
    std::vector<cdouble> v(n);
    for (std::uint64_t t = 0; t < n; ++t)
        v[t] = cdouble{kernel_K(a.space, lattice_point(a.lattice, t), delta), 0.0};
    // w_k = sum_m u_m v_{(m-k) mod n} = idft(dft(u) .* idft(v)) / n
    u = dft(std::move(u));
    v = idft(std::move(v));
    for (std::uint64_t k = 0; k < n; ++k) u[k] *= v[k];
    u = idft(std::move(u));
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& x : u) x *= scale;
    return u;
}

/// Direct pointwise evaluation, for spot checks only (O(|B| d) per point).
inline cdouble evaluate(const FourierApproximant& a, const std::vector<double>& x) {
    const double two_pi = 2.0 * std::numbers::pi;
    cdouble s{0.0, 0.0};
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        double phase = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j)
            phase += static_cast<double>(a.set.indices[i][j]) * x[j];
        s += a.coeffs[i] * std::polar(1.0, two_pi * phase);
    }
    return s;
}

inline cdouble evaluate(const KernelApproximant& a, const std::vector<double>& x) {
    cdouble s{0.0, 0.0};
    for (std::size_t i = 0; i < a.nodes.size(); ++i)
        s += a.coeffs[i] * kernel_K(a.space, lattice_point(a.lattice, a.nodes[i]), x);
    return s;
}

/// Monte Carlo L2 error over randomly shifted copies of the lattice:
///   sqrt( (1/(S n)) sum_s sum_k |f(x_k + delta_s) - A(x_k + delta_s)|^2 ).
/// Each shift consumes d sequential uniforms from the stream.
template <class Approx, class F>
double estimate_l2_error(const Approx& a, const F& f, int num_shifts, std::uint64_t seed) {
    if (num_shifts < 1) throw std::invalid_argument("estimate_l2_error: need at least one shift");
    const std::uint64_t n = a.lattice.n;
    const int d = a.lattice.d();
    RngStream rng(seed);
    std::vector<double> delta(static_cast<std::size_t>(d));
    std::vector<double> point(static_cast<std::size_t>(d));
    double acc = 0.0;
    for (int s = 0; s < num_shifts; ++s) {
        for (auto& t : delta) t = rng.real01();
        const std::vector<cdouble> approx = evaluate_on_shifted_lattice(a, delta);
        for (std::uint64_t k = 0; k < n; ++k) {
            const std::vector<double> xk = lattice_point(a.lattice, k);
            for (int j = 0; j < d; ++j) {
                double t = xk[static_cast<std::size_t>(j)] + delta[static_cast<std::size_t>(j)];
                t -= std::floor(t);
                point[static_cast<std::size_t>(j)] = t;
            }
            const double exact = f(point);
            acc += std::norm(cdouble{exact, 0.0} - approx[k]);
        }
    }
    return std::sqrt(acc / (static_cast<double>(num_shifts) * static_cast<double>(n)));
}

} // namespace sublat
