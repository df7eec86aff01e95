#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dft.hpp"
#include "rng.hpp"

namespace sublat {

/// Matrix-free rectangular operator.  apply is A x (rows out), adjoint is
/// A^* y (cols out).
struct LinearOperator {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::function<std::vector<cdouble>(const std::vector<cdouble>&)> apply;
    std::function<std::vector<cdouble>(const std::vector<cdouble>&)> adjoint;
};

struct SolverStats {
    std::size_t iterations = 0;
    bool converged = false;
    double final_residual = 0.0; // lsqr: ||A^* r|| / (||A|| ||r||) at exit, cg: relative residual
    std::string note;
};

namespace detail {

inline double norm2(const std::vector<cdouble>& v) {
    double s = 0.0;
    for (const cdouble& x : v) s += std::norm(x);
    return std::sqrt(s);
}

inline cdouble dot(const std::vector<cdouble>& a, const std::vector<cdouble>& b) {
    cdouble s{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

inline void axpy(std::vector<cdouble>& y, cdouble a, const std::vector<cdouble>& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

inline void scale(std::vector<cdouble>& v, double a) {
    for (cdouble& x : v) x *= a;
}

/// One random probe of <A x, y> == <x, A^* y>; catches mismatched operator
/// pairs early in debug builds.
inline void verify_adjoint(const LinearOperator& op, std::uint64_t seed) {
    RngStream rng(seed);
    std::vector<cdouble> x(op.cols), y(op.rows);
    for (auto& v : x) v = cdouble{rng.real01() - 0.5, rng.real01() - 0.5};
    for (auto& v : y) v = cdouble{rng.real01() - 0.5, rng.real01() - 0.5};
    const cdouble lhs = dot(y, op.apply(x));
    const cdouble rhs = dot(op.adjoint(y), x);
    const double ref = std::abs(lhs) + std::abs(rhs) + 1.0;
    if (std::abs(lhs - rhs) > 1e-8 * ref)
        throw std::logic_error("verify_adjoint: <Ax,y> != <x,A*y>, adjoint is wrong");
}

} // namespace detail

/// LSQR for min ||A x - b||_2 over complex x (Golub-Kahan bidiagonalization
/// with orthogonal plane rotations).  Stops when either backward-error test
/// holds with atol = btol = tol:
///   S1: ||r|| <= btol ||b|| + atol ||A|| ||x||
///   S2: ||A^* r|| <= atol ||A|| ||r||
/// Returns the zero vector immediately when b = 0.
inline std::vector<cdouble> lsqr(const LinearOperator& op, const std::vector<cdouble>& b,
                                 double tol, std::size_t max_iter, SolverStats* stats = nullptr) {
    if (b.size() != op.rows) throw std::invalid_argument("lsqr: rhs size mismatch");
#ifndef NDEBUG
    detail::verify_adjoint(op, 0x5eed5eedULL ^ (op.rows * 1315423911ULL) ^ op.cols);
#endif
    std::vector<cdouble> x(op.cols, cdouble{0.0, 0.0});
    SolverStats st;

    std::vector<cdouble> u = b;
    double beta = detail::norm2(u);
    const double bnorm = beta;
    if (beta == 0.0) {
        st.converged = true;
        st.note = "zero rhs";
        if (stats) *stats = st;
        return x;
    }
    detail::scale(u, 1.0 / beta);

    std::vector<cdouble> v = op.adjoint(u);
    double alpha = detail::norm2(v);
    if (alpha == 0.0) {
        st.converged = true;
        st.note = "rhs orthogonal to range";
        if (stats) *stats = st;
        return x;
    }
    detail::scale(v, 1.0 / alpha);

    std::vector<cdouble> w = v;
    double phibar = beta;
    double rhobar = alpha;
    double anorm_sq = 0.0; // running ||A||_F^2 estimate from the bidiagonal entries
    double rnorm = beta;

    for (std::size_t it = 1; it <= max_iter; ++it) {
        // Next bidiagonalization step: beta u = A v - alpha u.
        std::vector<cdouble> av = op.apply(v);
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = av[i] - alpha * u[i];
        beta = detail::norm2(u);
        anorm_sq += alpha * alpha + beta * beta;
        if (beta > 0.0) {
            detail::scale(u, 1.0 / beta);
            std::vector<cdouble> au = op.adjoint(u);
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = au[i] - beta * v[i];
            alpha = detail::norm2(v);
            if (alpha > 0.0) detail::scale(v, 1.0 / alpha);
        }

        // Plane rotation eliminating beta from the lower bidiagonal.
        const double rho = std::hypot(rhobar, beta);
        const double c = rhobar / rho;
        const double s = beta / rho;
        const double theta = s * alpha;
        rhobar = -c * alpha;
        const double phi = c * phibar;
        phibar = s * phibar;

        detail::axpy(x, cdouble{phi / rho, 0.0}, w);
        for (std::size_t i = 0; i < w.size(); ++i)
            w[i] = v[i] - cdouble{theta / rho, 0.0} * w[i];

        rnorm = phibar;
        const double arnorm = alpha * std::abs(c) * phibar; // ||A^* r||
        const double anorm = std::sqrt(anorm_sq);
        const double xnorm = detail::norm2(x);

        st.iterations = it;
        if (rnorm <= tol * bnorm + tol * anorm * xnorm) {
            st.converged = true;
            st.note = "residual test";
            st.final_residual = (anorm * rnorm > 0.0) ? arnorm / (anorm * rnorm) : 0.0;
            break;
        }
        if (anorm * rnorm > 0.0 && arnorm <= tol * anorm * rnorm) {
            st.converged = true;
            st.note = "normal-equations test";
            st.final_residual = arnorm / (anorm * rnorm);
            break;
        }
        st.final_residual = (anorm * rnorm > 0.0) ? arnorm / (anorm * rnorm) : 0.0;
    }
    if (!st.converged) st.note = "iteration cap reached";
    if (stats) *stats = st;
    return x;
}

/// Conjugate gradients for Hermitian positive definite matvec.  Relative
/// residual ||r||/||b|| <= tol stops; a non-positive curvature <p, Ap> means
/// the operator is not HPD and throws.  The optional callback sees the
/// relative residual after every iteration.
inline std::vector<cdouble> conjugate_gradient(
    const std::function<std::vector<cdouble>(const std::vector<cdouble>&)>& matvec,
    const std::vector<cdouble>& b, double tol, std::size_t max_iter, SolverStats* stats = nullptr,
    const std::function<void(std::size_t, double)>& callback = {}) {
    SolverStats st;
    std::vector<cdouble> x(b.size(), cdouble{0.0, 0.0});
    const double bnorm = detail::norm2(b);
    if (bnorm == 0.0) {
        st.converged = true;
        st.note = "zero rhs";
        if (stats) *stats = st;
        return x;
    }
    std::vector<cdouble> r = b;
    std::vector<cdouble> p = r;
    double rr = 0.0;
    for (const cdouble& v : r) rr += std::norm(v);

    for (std::size_t it = 1; it <= max_iter; ++it) {
        const std::vector<cdouble> ap = matvec(p);
        const cdouble pap = detail::dot(p, ap);
        if (!(pap.real() > 0.0) || std::abs(pap.imag()) > 1e-8 * std::abs(pap.real()))
            throw std::runtime_error("conjugate_gradient: operator is not Hermitian positive definite");
        const double alpha = rr / pap.real();
        detail::axpy(x, cdouble{alpha, 0.0}, p);
        detail::axpy(r, cdouble{-alpha, 0.0}, ap);
        double rr_new = 0.0;
        for (const cdouble& v : r) rr_new += std::norm(v);
        const double rel = std::sqrt(rr_new) / bnorm;
        st.iterations = it;
        st.final_residual = rel;
        if (callback) callback(it, rel);
        if (rel <= tol) {
            st.converged = true;
            st.note = "residual test";
            break;
        }
        const double beta = rr_new / rr;
        rr = rr_new;
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = r[i] + cdouble{beta, 0.0} * p[i];
    }
    if (!st.converged) st.note = "iteration cap reached";
    if (stats) *stats = st;
    return x;
}

/// Classical CG iteration count guarantee for condition number kappa:
/// ceil((sqrt(kappa)/2) ln(2/tau)) iterations force the energy-norm error
/// below tau times the initial one.
inline std::size_t iteration_bound(double kappa, double tau) {
    if (!(kappa >= 1.0)) throw std::invalid_argument("iteration_bound: kappa must be >= 1");
    if (!(tau > 0.0 && tau < 2.0)) throw std::invalid_argument("iteration_bound: tau must be in (0,2)");
    return static_cast<std::size_t>(std::ceil(0.5 * std::sqrt(kappa) * std::log(2.0 / tau)));
}

/// Textbook CG error envelope after i steps: 2 ((sqrt(kappa)-1)/(sqrt(kappa)+1))^i.
inline double cg_envelope(double kappa, std::size_t i) {
    if (!(kappa >= 1.0)) throw std::invalid_argument("cg_envelope: kappa must be >= 1");
    const double sk = std::sqrt(kappa);
    return 2.0 * std::pow((sk - 1.0) / (sk + 1.0), static_cast<double>(i));
}

} // namespace sublat
