#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <sublat/operators.hpp>
#include <sublat/quality.hpp>
#include <sublat/solvers.hpp>

#include "test_support.hpp"

using namespace sublat;
using test_support::DenseMatrix;
using test_support::adjoint_matvec;
using test_support::dense_lstsq;
using test_support::dense_solve;
using test_support::make_dense;
using test_support::matvec;
using test_support::random_complex;
using test_support::rel_err;

namespace {

LinearOperator wrap(const DenseMatrix& m) {
    return LinearOperator{
        m.rows, m.cols,
        [&m](const std::vector<cdouble>& x) { return matvec(m, x); },
        [&m](const std::vector<cdouble>& y) { return adjoint_matvec(m, y); }};
}

// A = B^* B + shift I, Hermitian positive definite by construction.
DenseMatrix gram_plus_shift(const DenseMatrix& b, double shift) {
    DenseMatrix a;
    a.rows = b.cols;
    a.cols = b.cols;
    a.a.assign(a.rows * a.cols, cdouble{0.0, 0.0});
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) {
            cdouble s{0.0, 0.0};
            for (std::size_t k = 0; k < b.rows; ++k) s += std::conj(b.at(k, i)) * b.at(k, j);
            if (i == j) s += shift;
            a.a[i * a.cols + j] = s;
        }
    return a;
}

} // namespace

TEST_CASE("lsqr agrees with the dense least-squares solution") {
    const DenseMatrix m = make_dense(30, 12, 17);
    const auto b = random_complex(30, 18);
    const auto ref = dense_lstsq(m, b);
    SolverStats st;
    const auto x = lsqr(wrap(m), b, 1e-12, 200, &st);
    CHECK(st.converged);
    CHECK(rel_err(x, ref) < 1e-6);
}

TEST_CASE("lsqr solves a consistent square system") {
    DenseMatrix m = make_dense(10, 10, 31);
    for (std::size_t i = 0; i < 10; ++i) m.a[i * 10 + i] += cdouble{3.0, 0.0};
    const auto x_true = random_complex(10, 32);
    const auto b = matvec(m, x_true);
    SolverStats st;
    const auto x = lsqr(wrap(m), b, 1e-12, 300, &st);
    CHECK(st.converged);
    CHECK(rel_err(x, x_true) < 1e-8);
}

TEST_CASE("lsqr exits for degenerate right-hand sides") {
    SECTION("zero rhs") {
        const DenseMatrix m = make_dense(6, 3, 5);
        SolverStats st;
        const auto x = lsqr(wrap(m), std::vector<cdouble>(6, cdouble{0.0, 0.0}), 1e-10, 50, &st);
        CHECK(st.converged);
        CHECK(st.iterations == 0);
        CHECK(st.note == "zero rhs");
        for (const cdouble& v : x) CHECK(std::abs(v) == 0.0);
    }
    SECTION("rhs orthogonal to the range") {
        DenseMatrix m;
        m.rows = 2;
        m.cols = 1;
        m.a = {cdouble{1.0, 0.0}, cdouble{0.0, 0.0}};
        SolverStats st;
        const auto x = lsqr(wrap(m), {cdouble{0.0, 0.0}, cdouble{1.0, 0.0}}, 1e-10, 50, &st);
        CHECK(st.converged);
        CHECK(st.note == "rhs orthogonal to range");
        CHECK(std::abs(x[0]) == 0.0);
    }
    SECTION("rhs size mismatch") {
        const DenseMatrix m = make_dense(6, 3, 5);
        CHECK_THROWS_AS(lsqr(wrap(m), random_complex(5, 1), 1e-10, 50), std::invalid_argument);
    }
    SECTION("iteration cap") {
        const DenseMatrix m = make_dense(30, 12, 77);
        SolverStats st;
        lsqr(wrap(m), random_complex(30, 78), 1e-14, 1, &st);
        CHECK_FALSE(st.converged);
        CHECK(st.note == "iteration cap reached");
    }
}

TEST_CASE("consistent full-lattice systems converge in one lsqr iteration") {
    // Columns of the full-lattice operator are orthogonal when the frequency
    // set is reconstructing, so the first Krylov step is exact.
    const KorobovSpace space{2, 1.0, product_scheme({0.5, 0.5})};
    const Lattice lat = cbc_construct(space, 67);
    const double sn = s_n_kernel(space, lat);
    const FrequencySet set = enumerate_set(space, reconstructing_radius(sn));
    REQUIRE(is_reconstructing(set, lat).reconstructing);

    LatticeOperator lop(lat, set);
    const auto a_true = random_complex(set.size(), 99);
    const auto b = lop.apply(a_true);
    LinearOperator op{
        lop.rows(), lop.cols(),
        [&lop](const std::vector<cdouble>& x) { return lop.apply(x); },
        [&lop](const std::vector<cdouble>& y) { return lop.adjoint(y); }};
    SolverStats st;
    const auto a = lsqr(op, b, 1e-9, 50, &st);
    CHECK(st.converged);
    CHECK(st.iterations == 1);
    CHECK(rel_err(a, a_true) < 1e-10);
}

TEST_CASE("conjugate gradients matches a dense solve on hpd systems") {
    const DenseMatrix b_mat = make_dense(18, 12, 41);
    const DenseMatrix a = gram_plus_shift(b_mat, 1.0);
    const auto rhs = random_complex(12, 42);
    const auto ref = dense_solve(a, rhs);
    SolverStats st;
    std::vector<double> residuals;
    const auto x = conjugate_gradient(
        [&a](const std::vector<cdouble>& v) { return matvec(a, v); }, rhs, 1e-12, 200, &st,
        [&residuals](std::size_t, double rel) { residuals.push_back(rel); });
    CHECK(st.converged);
    CHECK(st.note == "residual test");
    CHECK(rel_err(x, ref) < 1e-8);
    CHECK(residuals.size() == st.iterations);
    CHECK(residuals.back() <= 1e-12);
}

TEST_CASE("conjugate gradients refuses indefinite operators") {
    const auto indefinite = [](const std::vector<cdouble>& v) {
        std::vector<cdouble> out = v;
        out[1] = -out[1];
        return out;
    };
    const std::vector<cdouble> b = {cdouble{1.0, 0.0}, cdouble{1.0, 0.0}};
    CHECK_THROWS_AS(conjugate_gradient(indefinite, b, 1e-10, 10), std::runtime_error);
}

TEST_CASE("conjugate gradients returns zero for a zero rhs") {
    SolverStats st;
    const auto x = conjugate_gradient(
        [](const std::vector<cdouble>& v) { return v; },
        std::vector<cdouble>(4, cdouble{0.0, 0.0}), 1e-10, 10, &st);
    CHECK(st.converged);
    CHECK(st.note == "zero rhs");
    CHECK(st.iterations == 0);
    for (const cdouble& v : x) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("iteration bound matches its closed form") {
    CHECK(iteration_bound(3.0, 1e-16) == 33);
    CHECK(iteration_bound(100.0, 1e-8) == 96);
    CHECK(iteration_bound(1.0, 1.0) == 1);
    CHECK_THROWS_AS(iteration_bound(0.5, 1e-8), std::invalid_argument);
    CHECK_THROWS_AS(iteration_bound(4.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(iteration_bound(4.0, 2.0), std::invalid_argument);
}

TEST_CASE("cg envelope decays geometrically") {
    CHECK(cg_envelope(9.0, 0) == Catch::Approx(2.0));
    CHECK(cg_envelope(9.0, 1) == Catch::Approx(1.0));
    CHECK(cg_envelope(9.0, 2) == Catch::Approx(0.5));
    for (std::size_t i = 0; i + 1 < 20; ++i)
        CHECK(cg_envelope(25.0, i + 1) < cg_envelope(25.0, i));
    CHECK_THROWS_AS(cg_envelope(0.9, 3), std::invalid_argument);
}

TEST_CASE("adjoint probe flags a mismatched operator pair") {
    const DenseMatrix m = make_dense(7, 4, 13);
    LinearOperator good = wrap(m);
    CHECK_NOTHROW(sublat::detail::verify_adjoint(good, 1));

    LinearOperator bad = wrap(m);
    bad.adjoint = [&m](const std::vector<cdouble>& y) {
        auto v = adjoint_matvec(m, y);
        v[0] += cdouble{0.1, 0.0};
        return v;
    };
    CHECK_THROWS_AS(sublat::detail::verify_adjoint(bad, 1), std::logic_error);
}

TEST_CASE("cg error stays under the classical envelope") {
    // Energy-norm error after i steps is bounded by 2((sqrt(k)-1)/(sqrt(k)+1))^i
    // times the initial error.  Checked on a dense HPD instance with known
    // extreme eigenvalues obtained from the gram spectrum.
    const DenseMatrix b_mat = make_dense(16, 10, 55);
    const DenseMatrix a = gram_plus_shift(b_mat, 0.5);
    std::vector<cdouble> flat = a.a;
    const std::vector<double> ev = hermitian_eigenvalues(flat, a.rows);
    REQUIRE(ev.front() > 0.0);
    const double kappa = ev.back() / ev.front();

    const auto x_true = random_complex(10, 56);
    const auto rhs = matvec(a, x_true);
    const auto energy_err = [&](const std::vector<cdouble>& x) {
        std::vector<cdouble> e(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) e[i] = x[i] - x_true[i];
        const auto ae = matvec(a, e);
        double s = 0.0;
        for (std::size_t i = 0; i < e.size(); ++i) s += (std::conj(e[i]) * ae[i]).real();
        return std::sqrt(std::max(0.0, s));
    };

    const double err0 = energy_err(std::vector<cdouble>(10, cdouble{0.0, 0.0}));
    for (std::size_t steps = 1; steps <= 12; ++steps) {
        SolverStats st;
        const auto x = conjugate_gradient(
            [&a](const std::vector<cdouble>& v) { return matvec(a, v); }, rhs, 0.0, steps, &st);
        CHECK(energy_err(x) <= cg_envelope(kappa, steps) * err0 * (1.0 + 1e-9));
    }
}
