#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

namespace sublat {

using cdouble = std::complex<double>;

namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 transform, unnormalized, sign +1 or -1 in the
// exponent.  Twiddles and the bit-reversal permutation are precomputed.
struct Pow2Fft {
    std::size_t n = 0;
    std::vector<std::uint32_t> rev;
    std::vector<cdouble> tw; // tw[j] = exp(+2 pi i j / n), j < n/2

    explicit Pow2Fft(std::size_t len) : n(len) {
        if (!is_pow2(n)) throw std::invalid_argument("Pow2Fft: length must be a power of two");
        rev.resize(n);
        std::uint32_t bits = 0;
        while ((std::size_t{1} << bits) < n) ++bits;
        for (std::size_t i = 0; i < n; ++i) {
            std::uint32_t r = 0, v = static_cast<std::uint32_t>(i);
            for (std::uint32_t b = 0; b < bits; ++b, v >>= 1) r = (r << 1) | (v & 1u);
            rev[i] = r;
        }
        tw.resize(n / 2);
        const double base = 2.0 * std::numbers::pi / static_cast<double>(n);
        for (std::size_t j = 0; j < n / 2; ++j)
            tw[j] = std::polar(1.0, base * static_cast<double>(j));
    }

    void transform(cdouble* x, int sign) const {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t r = rev[i];
            if (i < r) std::swap(x[i], x[r]);
        }
        for (std::size_t len = 2; len <= n; len <<= 1) {
            const std::size_t half = len >> 1;
            const std::size_t step = n / len;
            for (std::size_t start = 0; start < n; start += len) {
                for (std::size_t j = 0; j < half; ++j) {
                    cdouble w = tw[j * step];
                    if (sign < 0) w = std::conj(w);
                    const cdouble odd = x[start + j + half] * w;
                    const cdouble even = x[start + j];
                    x[start + j] = even + odd;
                    x[start + j + half] = even - odd;
                }
            }
        }
    }
};

} // namespace detail

/// Discrete Fourier transform plan for a fixed length n.
///   forward: X_m = sum_k x_k exp(+2 pi i k m / n)
///   inverse: X_m = sum_k x_k exp(-2 pi i k m / n)
/// Both are unnormalized, so inverse(forward(x)) = n * x.  Powers of two run
/// in place; every other length goes through the chirp-z factorization
/// km = (k^2 + m^2 - (k-m)^2)/2 and a power-of-two cyclic convolution, so
/// prime lengths still cost O(n log n).  Instances keep scratch buffers and
/// need exclusive access per call.
class FftPlan {
public:
    explicit FftPlan(std::size_t n) : n_(n) {
        if (n == 0) throw std::invalid_argument("FftPlan: length must be positive");
        if (n == 1) return;
        if (detail::is_pow2(n)) {
            pow2_.emplace(n);
            return;
        }
        conv_len_ = 1;
        while (conv_len_ < 2 * n - 1) conv_len_ <<= 1;
        conv_fft_.emplace(conv_len_);

        chirp_.resize(n);
        const double base = std::numbers::pi / static_cast<double>(n);
        for (std::size_t k = 0; k < n; ++k) {
            // k^2 mod 2n keeps the phase argument small for large k.
            const std::uint64_t q = (static_cast<std::uint64_t>(k) * k) % (2 * n);
            chirp_[k] = std::polar(1.0, base * static_cast<double>(q));
        }

        kernel_fwd_ = transformed_kernel(true);
        kernel_inv_ = transformed_kernel(false);
        work_.resize(conv_len_);
    }

    std::size_t size() const { return n_; }

    void forward(std::vector<cdouble>& x) const { run(x, +1); }
    void inverse(std::vector<cdouble>& x) const { run(x, -1); }

private:
    std::vector<cdouble> transformed_kernel(bool forward) const {
        // Wrapped chirp kernel v_j = exp(-s i pi j^2 / n), j = -(n-1)..n-1.
        std::vector<cdouble> v(conv_len_, cdouble{0.0, 0.0});
        for (std::size_t j = 0; j < n_; ++j) {
            const cdouble c = forward ? std::conj(chirp_[j]) : chirp_[j];
            v[j] = c;
            if (j > 0) v[conv_len_ - j] = c;
        }
        conv_fft_->transform(v.data(), +1);
        return v;
    }

    void run(std::vector<cdouble>& x, int sign) const {
        if (x.size() != n_) throw std::invalid_argument("FftPlan: input length mismatch");
        if (n_ == 1) return;
        if (pow2_) {
            pow2_->transform(x.data(), sign);
            return;
        }
        const auto& kernel = (sign > 0) ? kernel_fwd_ : kernel_inv_;
        std::fill(work_.begin(), work_.end(), cdouble{0.0, 0.0});
        for (std::size_t k = 0; k < n_; ++k) {
            const cdouble c = (sign > 0) ? chirp_[k] : std::conj(chirp_[k]);
            work_[k] = x[k] * c;
        }
        conv_fft_->transform(work_.data(), +1);
        for (std::size_t j = 0; j < conv_len_; ++j) work_[j] *= kernel[j];
        conv_fft_->transform(work_.data(), -1);
        const double scale = 1.0 / static_cast<double>(conv_len_);
        for (std::size_t m = 0; m < n_; ++m) {
            const cdouble c = (sign > 0) ? chirp_[m] : std::conj(chirp_[m]);
            x[m] = work_[m] * scale * c;
        }
    }

    std::size_t n_;
    std::optional<detail::Pow2Fft> pow2_;
    std::size_t conv_len_ = 0;
    std::optional<detail::Pow2Fft> conv_fft_;
    std::vector<cdouble> chirp_;
    std::vector<cdouble> kernel_fwd_;
    std::vector<cdouble> kernel_inv_;
    mutable std::vector<cdouble> work_;
};

/// One-shot helpers; hot paths should hold an FftPlan instead.
inline std::vector<cdouble> dft(std::vector<cdouble> x) {
    FftPlan plan(x.size());
    plan.forward(x);
    return x;
}

inline std::vector<cdouble> idft(std::vector<cdouble> x) {
    FftPlan plan(x.size());
    plan.inverse(x);
    return x;
}

} // namespace sublat
