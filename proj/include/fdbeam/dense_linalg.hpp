#pragma once

#include <array>
#include <vector>

namespace fdbeam {

class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(int rows, int cols, double fill = 0.0);
    static DenseMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const std::vector<double>& data() const { return a_; }

    std::vector<double> multiply(const std::vector<double>& x) const;
    double frobenius_norm() const;
    double max_abs() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

using Mat3 = std::array<std::array<double, 3>, 3>;
using Vec3 = std::array<double, 3>;

// Gaussian elimination with scaled partial pivoting; throws SingularMatrixError
// when a pivot drops below 1e-14 times the largest entry of its row.
Vec3 solve_small(const Mat3& a, const Vec3& b);
std::vector<double> solve_small(const DenseMatrix& a, const std::vector<double>& b);
Mat3 inverse_small(const Mat3& a);
double det_small(const Mat3& a);

std::vector<double> lu_solve(const DenseMatrix& a, const std::vector<double>& b);

struct EigenPair {
    double value = 0.0;
    std::vector<double> vector;
};

// cyclic Jacobi on (A + A^T)/2
EigenPair sym_lowest_eigenvalue(const DenseMatrix& a);
std::vector<double> sym_eigenvalues(const DenseMatrix& a);

}  // namespace fdbeam
