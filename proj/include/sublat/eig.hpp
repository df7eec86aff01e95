#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace sublat {

/// Eigenvalues (ascending) of a real symmetric matrix, row-major n x n,
/// by cyclic Jacobi rotations.  Intended for the modest matrices showing up
/// in diagnostics; O(n^3) per sweep.
inline std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n) {
    if (a.size() != n * n) throw std::invalid_argument("symmetric_eigenvalues: size mismatch");
    auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(at(i, j)));
    if (scale == 0.0) return std::vector<double>(n, 0.0);

    const double tol = 1e-14 * scale;
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(at(p, q)));
        if (off <= tol) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (std::abs(apq) <= tol) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }

    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = at(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

/// Eigenvalues (ascending) of a complex Hermitian matrix via the real
/// embedding [[Re, -Im], [Im, Re]], whose spectrum is the Hermitian spectrum
/// doubled.
inline std::vector<double> hermitian_eigenvalues(const std::vector<std::complex<double>>& a,
                                                 std::size_t n) {
    if (a.size() != n * n) throw std::invalid_argument("hermitian_eigenvalues: size mismatch");
    const std::size_t m = 2 * n;
    std::vector<double> e(m * m, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const std::complex<double> v = a[i * n + j];
            e[i * m + j] = v.real();
            e[i * m + (j + n)] = -v.imag();
            e[(i + n) * m + j] = v.imag();
            e[(i + n) * m + (j + n)] = v.real();
        }
    }
    const std::vector<double> doubled = symmetric_eigenvalues(std::move(e), m);
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = doubled[2 * i];
    return ev;
}

} // namespace sublat
