#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "fdbeam/dense_linalg.hpp"
#include "fdbeam/errors.hpp"
#include "support.hpp"

using namespace fdbeam;
using testing_support::Rng;

namespace {

DenseMatrix random_matrix(Rng& r, int n, bool sym) {
    DenseMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = r.uniform(-1, 1);
    if (sym)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j) a(i, j) = a(j, i);
    return a;
}

double residual(const DenseMatrix& a, const std::vector<double>& x, const std::vector<double>& b) {
    const auto ax = a.multiply(x);
    double r = 0.0;
    for (size_t i = 0; i < b.size(); ++i) r = std::max(r, std::abs(ax[i] - b[i]));
    return r;
}

}  // namespace

TEST_CASE("small solves and inverse") {
    Rng r(7);
    for (int k = 0; k < 20; ++k) {
        Mat3 a;
        Vec3 b;
        for (int i = 0; i < 3; ++i) {
            b[i] = r.uniform(-1, 1);
            for (int j = 0; j < 3; ++j) a[i][j] = r.uniform(-1, 1);
        }
        const auto x = solve_small(a, b);
        for (int i = 0; i < 3; ++i)
            CHECK(a[i][0] * x[0] + a[i][1] * x[1] + a[i][2] * x[2] == doctest::Approx(b[i]).epsilon(1e-11));
        const auto inv = inverse_small(a);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0.0;
                for (int m = 0; m < 3; ++m) s += a[i][m] * inv[m][j];
                CHECK(s == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-10).scale(1.0));
            }
        // cofactor expansion
        const double det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
        CHECK(det_small(a) == doctest::Approx(det).epsilon(1e-12));
    }
}

TEST_CASE("singular systems throw") {
    Mat3 a{{{1, 2, 3}, {2, 4, 6}, {0, 1, 1}}};
    CHECK_THROWS_AS(solve_small(a, Vec3{1, 2, 3}), SingularMatrixError);
    CHECK_THROWS_AS(inverse_small(a), SingularMatrixError);
    DenseMatrix z(4, 4);
    CHECK_THROWS_AS(lu_solve(z, {1, 1, 1, 1}), SingularMatrixError);
    CHECK_THROWS_AS(lu_solve(DenseMatrix(2, 3), {1, 1}), ContractViolation);
}

TEST_CASE("lu solve on random systems") {
    Rng r(11);
    for (int n : {1, 3, 5, 30}) {
        const auto a = random_matrix(r, n, false);
        std::vector<double> b(n);
        for (auto& v : b) v = r.uniform(-1, 1);
        CHECK(residual(a, lu_solve(a, b), b) < 1e-11);
        if (n == 3) CHECK(residual(a, solve_small(a, b), b) < 1e-11);
    }
}

TEST_CASE("symmetric eigenvalues: trace, Frobenius norm, eigen-equation") {
    Rng r(3);
    for (int n : {2, 3, 6, 12}) {
        const auto a = random_matrix(r, n, true);
        auto ev = sym_eigenvalues(a);
        REQUIRE(ev.size() == static_cast<size_t>(n));
        CHECK(std::is_sorted(ev.begin(), ev.end()));
        double tr = 0.0;
        for (int i = 0; i < n; ++i) tr += a(i, i);
        CHECK(std::accumulate(ev.begin(), ev.end(), 0.0) == doctest::Approx(tr).epsilon(1e-12).scale(1.0));
        double fro = 0.0;
        for (double v : ev) fro += v * v;
        CHECK(std::sqrt(fro) == doctest::Approx(a.frobenius_norm()).epsilon(1e-12));

        const auto lo = sym_lowest_eigenvalue(a);
        CHECK(lo.value == doctest::Approx(ev.front()).epsilon(1e-12));
        const auto av = a.multiply(lo.vector);
        for (int i = 0; i < n; ++i) CHECK(av[i] == doctest::Approx(lo.value * lo.vector[i]).scale(1.0).epsilon(1e-10));
    }
    // 2x2 characteristic polynomial
    DenseMatrix b(2, 2);
    b(0, 0) = 2, b(0, 1) = 1, b(1, 0) = 1, b(1, 1) = -3;
    const double disc = std::sqrt(25.0 / 4.0 + 1.0);
    const auto ev = sym_eigenvalues(b);
    CHECK(ev[0] == doctest::Approx(-0.5 - disc));
    CHECK(ev[1] == doctest::Approx(-0.5 + disc));
}
