#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dft.hpp"
#include "eig.hpp"
#include "frequency_set.hpp"
#include "korobov.hpp"
#include "lattice.hpp"
#include "quality.hpp"
#include "sampling.hpp"

namespace sublat {

/// L_B applied through one length-n transform: scatter the coefficients to
/// their residues, then values_k = sum_rho buf_rho e^{+2 pi i k rho / n}.
/// Columns sharing a residue simply accumulate.
inline std::vector<cdouble> lfft_forward(const FftPlan& plan, std::uint64_t n,
                                         const std::vector<std::uint64_t>& res,
                                         const std::vector<cdouble>& coeffs) {
    if (plan.size() != n) throw std::invalid_argument("lfft_forward: plan length mismatch");
    if (res.size() != coeffs.size()) throw std::invalid_argument("lfft_forward: size mismatch");
    std::vector<cdouble> buf(n, cdouble{0.0, 0.0});
    for (std::size_t i = 0; i < res.size(); ++i) buf[res[i]] += coeffs[i];
    plan.forward(buf);
    return buf;
}

/// L_B^* applied through one inverse transform and a gather at the residues.
inline std::vector<cdouble> lfft_adjoint(const FftPlan& plan, std::uint64_t n,
                                         const std::vector<std::uint64_t>& res,
                                         std::vector<cdouble> values) {
    if (plan.size() != n) throw std::invalid_argument("lfft_adjoint: plan length mismatch");
    if (values.size() != n) throw std::invalid_argument("lfft_adjoint: values length mismatch");
    plan.inverse(values);
    std::vector<cdouble> out(res.size());
    for (std::size_t i = 0; i < res.size(); ++i) out[i] = values[res[i]];
    return out;
}

/// Matrix-free L_{J,B} = [e^{2 pi i (k/n) <h,z>}]_{k in J, h in B} with J a
/// multiset (repeated entries give repeated rows).  Holds its own transform
/// plan and scratch, so each instance wants exclusive access per call.
class LatticeOperator {
public:
    LatticeOperator(const Lattice& lat, const FrequencySet& set,
                    std::optional<SubsampleIndex> subsample = std::nullopt)
        : n_(lat.n), res_(residues(set, lat)), plan_(lat.n) {
        if (subsample) {
            if (subsample->n != lat.n)
                throw std::invalid_argument("LatticeOperator: subsample drawn for a different n");
            if (!subsample->is_full()) rows_ = subsample->entries;
        }
    }

    std::uint64_t n() const { return n_; }
    std::size_t rows() const { return rows_.empty() ? n_ : rows_.size(); }
    std::size_t cols() const { return res_.size(); }
    bool subsampled() const { return !rows_.empty(); }
    const std::vector<std::uint64_t>& frequency_residues() const { return res_; }

    /// values = L_{J,B} coeffs.
    std::vector<cdouble> apply(const std::vector<cdouble>& coeffs) const {
        if (coeffs.size() != cols()) throw std::invalid_argument("LatticeOperator::apply: size mismatch");
        std::vector<cdouble> full = lfft_forward(plan_, n_, res_, coeffs);
        if (!subsampled()) return full;
        std::vector<cdouble> out(rows_.size());
        for (std::size_t i = 0; i < rows_.size(); ++i) out[i] = full[rows_[i]];
        return out;
    }

    /// coeffs = L_{J,B}^* values; duplicate rows accumulate.
    std::vector<cdouble> adjoint(const std::vector<cdouble>& values) const {
        if (values.size() != rows()) throw std::invalid_argument("LatticeOperator::adjoint: size mismatch");
        std::vector<cdouble> full;
        if (!subsampled()) {
            full = values;
        } else {
            full.assign(n_, cdouble{0.0, 0.0});
            for (std::size_t i = 0; i < rows_.size(); ++i) full[rows_[i]] += values[i];
        }
        return lfft_adjoint(plan_, n_, res_, std::move(full));
    }

private:
    std::uint64_t n_;
    std::vector<std::uint64_t> res_;
    std::vector<std::uint64_t> rows_; // empty = full lattice
    FftPlan plan_;
};

/// Kernel Gram matrix on (a multiset subsample of) a lattice.  On the full
/// lattice K is circulant, K = (1/n) F Diag(F^* c) F^* with first column
/// c_k = K(x_k, 0); the subsampled matrix is P K P^* for the row selector P.
/// One matvec costs two length-n transforms.
class CirculantKernelOperator {
public:
    CirculantKernelOperator(const KorobovSpace& space, const Lattice& lat,
                            std::optional<SubsampleIndex> subsample = std::nullopt)
        : n_(lat.n), plan_(lat.n) {
        detail::validate_space(space);
        validate(lat);
        if (space.d != lat.d())
            throw std::invalid_argument("CirculantKernelOperator: dimension mismatch");
        if (subsample) {
            if (subsample->n != lat.n)
                throw std::invalid_argument("CirculantKernelOperator: subsample drawn for a different n");
            if (!subsample->is_full()) rows_ = subsample->entries;
        }

        const std::vector<double> origin(static_cast<std::size_t>(space.d), 0.0);
        std::vector<cdouble> c(n_);
        for (std::uint64_t k = 0; k < n_; ++k)
            c[k] = cdouble{kernel_K(space, lattice_point(lat, k), origin), 0.0};
        plan_.inverse(c); // F^* c

        // The symbol entries are n * (sums of 1/r over a residue class), so
        // they must come out real and positive up to roundoff.
        double max_re = 0.0;
        for (const cdouble& v : c) max_re = std::max(max_re, std::abs(v.real()));
        symbol_.resize(n_);
        for (std::uint64_t k = 0; k < n_; ++k) {
            if (std::abs(c[k].imag()) > 1e-8 * max_re)
                throw std::runtime_error("CirculantKernelOperator: symbol has a non-real entry");
            if (c[k].real() < -1e-8 * max_re)
                throw std::runtime_error("CirculantKernelOperator: symbol has a negative entry");
            symbol_[k] = c[k].real();
        }
    }

    std::uint64_t n() const { return n_; }
    std::size_t rows() const { return rows_.empty() ? n_ : rows_.size(); }
    bool subsampled() const { return !rows_.empty(); }
    const std::vector<double>& symbol() const { return symbol_; }

    /// out = (P K P^*) v.
    std::vector<cdouble> matvec(const std::vector<cdouble>& v) const {
        if (v.size() != rows()) throw std::invalid_argument("CirculantKernelOperator::matvec: size mismatch");
        std::vector<cdouble> buf;
        if (!subsampled()) {
            buf = v;
        } else {
            buf.assign(n_, cdouble{0.0, 0.0});
            for (std::size_t i = 0; i < rows_.size(); ++i) buf[rows_[i]] += v[i];
        }
        plan_.inverse(buf);
        for (std::uint64_t k = 0; k < n_; ++k) buf[k] *= symbol_[k];
        plan_.forward(buf);
        const double scale = 1.0 / static_cast<double>(n_);
        if (!subsampled()) {
            for (auto& x : buf) x *= scale;
            return buf;
        }
        std::vector<cdouble> out(rows_.size());
        for (std::size_t i = 0; i < rows_.size(); ++i) out[i] = buf[rows_[i]] * scale;
        return out;
    }

    /// Direct solve K a = f on the full lattice by inverting the symbol.
    std::vector<cdouble> solve_full(std::vector<cdouble> f) const {
        if (subsampled()) throw std::logic_error("solve_full: operator is subsampled");
        if (f.size() != n_) throw std::invalid_argument("solve_full: size mismatch");
        plan_.inverse(f);
        for (std::uint64_t k = 0; k < n_; ++k) {
            if (!(symbol_[k] > 0.0))
                throw std::runtime_error("solve_full: symbol entry not positive, matrix singular");
            f[k] /= symbol_[k];
        }
        plan_.forward(f);
        const double scale = 1.0 / static_cast<double>(n_);
        for (auto& x : f) x *= scale;
        return f;
    }

private:
    std::uint64_t n_;
    std::vector<std::uint64_t> rows_;
    FftPlan plan_;
    std::vector<double> symbol_;
};

struct DiagnosticsReport {
    double sigma_min_sq = 0.0;
    double sigma_max_sq = 0.0;
    double kappa2 = 0.0;
    double phi_jb_norm_sq = 0.0; // truncated tail operator norm
    double nokings_bound = 0.0;  // n (sup_{h not in B} 1/r + sqrt(S_n))
    std::int64_t truncation_radius = 0;
};

/// Dense spectral diagnostics for small instances: extreme singular values
/// of L_{J,B}, and the truncated aliasing-tail operator norm ||Phi_{J,B}||^2
/// over frequencies |h|_inf <= radius outside B.  Guarded against blowup;
/// meant for n and |J| in the hundreds.
inline DiagnosticsReport diagnostics(const KorobovSpace& space, const Lattice& lat,
                                     const FrequencySet& set, const SubsampleIndex& subsample,
                                     std::int64_t radius) {
    detail::validate_space(space);
    validate(lat);
    if (space.d != lat.d() || set.d != lat.d())
        throw std::invalid_argument("diagnostics: dimension mismatch");
    const std::size_t rows = subsample.size();
    const std::size_t cols = set.size();
    if (rows == 0 || cols == 0) throw std::invalid_argument("diagnostics: empty operator");
    if (rows * cols > 10'000'000) throw std::invalid_argument("diagnostics: operator too large for dense analysis");
    if (rows * rows > 10'000'000) throw std::invalid_argument("diagnostics: |J|^2 too large for dense analysis");

    DiagnosticsReport rep;
    rep.truncation_radius = radius;
    const std::uint64_t n = lat.n;
    const double two_pi = 2.0 * std::numbers::pi;

    // Gram of L_{J,B}: G = L^* L, cols x cols.
    const std::vector<std::uint64_t> res = residues(set, lat);
    std::vector<cdouble> gram(cols * cols, cdouble{0.0, 0.0});
    for (std::size_t a = 0; a < cols; ++a) {
        for (std::size_t b = 0; b < cols; ++b) {
            cdouble sum{0.0, 0.0};
            for (std::size_t i = 0; i < rows; ++i) {
                const double k = static_cast<double>(subsample.entries[i]);
                const double rho =
                    static_cast<double>((n + res[b] % n - res[a] % n) % n);
                sum += std::polar(1.0, two_pi * k * rho / static_cast<double>(n));
            }
            gram[a * cols + b] = sum;
        }
    }
    const std::vector<double> sv = hermitian_eigenvalues(gram, cols);
    rep.sigma_min_sq = sv.front();
    rep.sigma_max_sq = sv.back();
    rep.kappa2 = (sv.front() > 0.0) ? std::sqrt(sv.back() / sv.front())
                                    : std::numeric_limits<double>::infinity();

    // Residue-bucketed tail weights w_rho = sum_{h outside B, |h|_inf <= R,
    // <h,z> = rho} 1/r(h); then (Phi Phi^*)_{k k'} depends on k - k' only.
    std::vector<std::vector<std::int64_t>> sorted_members = set.indices;
    std::sort(sorted_members.begin(), sorted_members.end());
    std::vector<double> w(n, 0.0);
    double sup_inv_r = 0.0;
    {
        double box = 1.0;
        for (int j = 0; j < space.d; ++j) box *= static_cast<double>(2 * radius + 1);
        if (box > 2e8) throw std::invalid_argument("diagnostics: truncation box too large");

        std::vector<std::int64_t> h(static_cast<std::size_t>(space.d), 0);
        auto walk = [&](auto&& self, int j) -> void {
            if (j == space.d) {
                if (std::binary_search(sorted_members.begin(), sorted_members.end(), h)) return;
                const double g = weight_gamma(space.weights, support(h));
                if (g <= 0.0) return;
                double q = 1.0;
                for (std::size_t i = 0; i < h.size(); ++i)
                    if (h[i] != 0) {
                        const double av = static_cast<double>(std::abs(h[i]));
                        q *= std::pow(av * av, space.alpha);
                    }
                const double inv_r = g / q;
                sup_inv_r = std::max(sup_inv_r, inv_r);
                std::int64_t rho = 0;
                for (std::size_t i = 0; i < h.size(); ++i)
                    rho = (rho + h[i] * static_cast<std::int64_t>(lat.z[i])) %
                          static_cast<std::int64_t>(n);
                if (rho < 0) rho += static_cast<std::int64_t>(n);
                w[static_cast<std::size_t>(rho)] += inv_r;
                return;
            }
            for (std::int64_t v = -radius; v <= radius; ++v) {
                h[static_cast<std::size_t>(j)] = v;
                self(self, j + 1);
            }
            h[static_cast<std::size_t>(j)] = 0;
        };
        walk(walk, 0);
    }

    std::vector<cdouble> g(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) g[i] = cdouble{w[i], 0.0};
    g = dft(std::move(g)); // g_m = sum_rho w_rho e^{+2 pi i m rho / n}

    std::vector<cdouble> phi_gram(rows * rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < rows; ++j) {
            const std::uint64_t diff =
                (subsample.entries[i] + n - subsample.entries[j]) % n;
            phi_gram[i * rows + j] = g[diff];
        }
    const std::vector<double> phi_ev = hermitian_eigenvalues(phi_gram, rows);
    rep.phi_jb_norm_sq = phi_ev.back();

    rep.nokings_bound =
        static_cast<double>(n) * (sup_inv_r + std::sqrt(s_n_kernel(space, lat)));
    return rep;
}

} // namespace sublat
