#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace rydgrover {

using Complex = std::complex<double>;

// Small dense row-major complex matrix. Used for pulse blocks (2x2, 3x3)
// and for assembling full register unitaries in verification code.
class CMatrix {
  public:
    CMatrix() = default;
    CMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

    static CMatrix identity(int n) {
        CMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Complex& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Complex& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    const Complex* data() const { return a_.data(); }
    Complex* data() { return a_.data(); }

    CMatrix adjoint() const {
        CMatrix m(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    CMatrix operator*(const CMatrix& rhs) const {
        if (cols_ != rhs.rows_) throw std::invalid_argument("CMatrix: shape mismatch in product");
        CMatrix m(rows_, rhs.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int l = 0; l < cols_; ++l) {
                const Complex v = (*this)(i, l);
                if (v == Complex{}) continue;
                for (int j = 0; j < rhs.cols_; ++j) m(i, j) += v * rhs(l, j);
            }
        return m;
    }

    bool is_unitary(double tol) const {
        if (rows_ != cols_) return false;
        const CMatrix p = adjoint() * (*this);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) {
                const Complex want = (i == j) ? Complex{1.0} : Complex{};
                if (std::abs(p(i, j) - want) > tol) return false;
            }
        return true;
    }

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Complex> a_;
};

// Largest entrywise deviation |a - b|.
inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    double worst = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
    return worst;
}

// Largest entrywise deviation after aligning one global phase: the phase is
// read off the largest-magnitude entry of b.
inline double max_abs_diff_mod_phase(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff_mod_phase: shape mismatch");
    double best = 0.0;
    int bi = 0, bj = 0;
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j)
            if (std::abs(b(i, j)) > best) {
                best = std::abs(b(i, j));
                bi = i;
                bj = j;
            }
    if (best == 0.0) return max_abs_diff(a, b);
    Complex phase = a(bi, bj) / b(bi, bj);
    const double mag = std::abs(phase);
    phase = (mag > 0.0) ? phase / mag : Complex{1.0};
    double worst = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - phase * b(i, j)));
    return worst;
}

} // namespace rydgrover
