#include "fdbeam/dense_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "fdbeam/errors.hpp"

namespace fdbeam {

DenseMatrix::DenseMatrix(int rows, int cols, double fill)
    : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, fill) {
    if (rows < 0 || cols < 0) throw InputError("negative matrix dimension");
}

DenseMatrix DenseMatrix::identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

std::vector<double> DenseMatrix::multiply(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != cols_) throw ContractViolation("dimension mismatch in multiply");
    std::vector<double> y(rows_, 0.0);
    for (int i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

double DenseMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
}

double DenseMatrix::max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
}

namespace {

constexpr double kPivotTol = 1e-14;

// in-place elimination on an n x n row-major block with a rhs; scaled partial pivoting,
// pivots are judged against their own row so block-scaled systems are not flagged
void eliminate(std::vector<double>& a, std::vector<double>& b, int n) {
    std::vector<double> rs(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double v = a[i * n + j];
            if (!std::isfinite(v)) throw SingularMatrixError("non-finite matrix entry");
            rs[i] = std::max(rs[i], std::abs(v));
        }
    for (int i = 0; i < n; ++i)
        if (rs[i] == 0.0) throw SingularMatrixError("zero row");
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(a[k * n + k]) / rs[k];
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(a[i * n + k]) / rs[i];
            if (v > best) best = v, p = i;
        }
        if (best < kPivotTol) throw SingularMatrixError("pivot below threshold");
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
            std::swap(b[k], b[p]);
            std::swap(rs[k], rs[p]);
        }
        const double piv = a[k * n + k];
        for (int i = k + 1; i < n; ++i) {
            const double f = a[i * n + k] / piv;
            if (f == 0.0) continue;
            for (int j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
            b[i] -= f * b[k];
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j) s -= a[i * n + j] * b[j];
        b[i] = s / a[i * n + i];
    }
}

}  // namespace

Vec3 solve_small(const Mat3& a, const Vec3& b) {
    std::vector<double> m(9), r(b.begin(), b.end());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i * 3 + j] = a[i][j];
    eliminate(m, r, 3);
    return {r[0], r[1], r[2]};
}

std::vector<double> solve_small(const DenseMatrix& a, const std::vector<double>& b) {
    if (a.rows() != 3 || a.cols() != 3 || b.size() != 3) throw ContractViolation("solve_small expects 3x3");
    return lu_solve(a, b);
}

Mat3 inverse_small(const Mat3& a) {
    Mat3 inv{};
    for (int c = 0; c < 3; ++c) {
        Vec3 e{};
        e[c] = 1.0;
        Vec3 col = solve_small(a, e);
        for (int r = 0; r < 3; ++r) inv[r][c] = col[r];
    }
    return inv;
}

double det_small(const Mat3& a) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

std::vector<double> lu_solve(const DenseMatrix& a, const std::vector<double>& b) {
    const int n = a.rows();
    if (a.cols() != n || static_cast<int>(b.size()) != n) throw ContractViolation("lu_solve dimension mismatch");
    if (n == 0) return {};
    std::vector<double> m = a.data(), r = b;
    eliminate(m, r, n);
    return r;
}

namespace {

struct JacobiResult {
    std::vector<double> values;
    DenseMatrix vectors;  // columns
};

JacobiResult jacobi(const DenseMatrix& a0) {
    const int n = a0.rows();
    if (a0.cols() != n) throw ContractViolation("eigenvalues need a square matrix");
    DenseMatrix a(n, n), v = DenseMatrix::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (a0(i, j) + a0(j, i));
    const double fro = a.frobenius_norm();
    auto off = [&] {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) s += a(i, j) * a(i, j);
        return std::sqrt(s);
    };
    for (int sweep = 0; sweep < 100 && off() > 1e-12 * fro * 1e-3; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    JacobiResult r{std::vector<double>(n), std::move(v)};
    for (int i = 0; i < n; ++i) r.values[i] = a(i, i);
    return r;
}

}  // namespace

EigenPair sym_lowest_eigenvalue(const DenseMatrix& a) {
    if (a.rows() == 0) throw ContractViolation("empty matrix has no eigenvalues");
    auto r = jacobi(a);
    int k = static_cast<int>(std::min_element(r.values.begin(), r.values.end()) - r.values.begin());
    EigenPair e;
    e.value = r.values[k];
    e.vector.resize(a.rows());
    for (int i = 0; i < a.rows(); ++i) e.vector[i] = r.vectors(i, k);
    return e;
}

std::vector<double> sym_eigenvalues(const DenseMatrix& a) {
    auto r = jacobi(a);
    std::sort(r.values.begin(), r.values.end());
    return r.values;
}

}  // namespace fdbeam
