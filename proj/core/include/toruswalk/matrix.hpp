#ifndef TORUSWALK_MATRIX_HPP
#define TORUSWALK_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace toruswalk {

using cplx = std::complex<double>;

/// Small dense complex matrix, row-major. Coins are at most 8x8; dense
/// evolution matrices used as test oracles stay below 4096x4096.
class CMat {
public:
    CMat() = default;
    CMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    CMat(std::initializer_list<std::initializer_list<cplx>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw std::invalid_argument("CMat: ragged initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static CMat identity(std::size_t n) {
        CMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<cplx>& data() const { return data_; }

    CMat operator*(const CMat& o) const;
    CMat operator*(cplx s) const;
    CMat operator-(const CMat& o) const;
    CMat adjoint() const;

    /// Matrix-vector product y = A x, summed in ascending column order.
    std::vector<cplx> apply(const std::vector<cplx>& x) const;

    CMat kron(const CMat& o) const;

    double max_abs() const;

    /// max-norm of A^dagger A - I.
    double unitarity_residual() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> data_;
};

double max_abs_diff(const CMat& a, const CMat& b);

}  // namespace toruswalk

#endif
