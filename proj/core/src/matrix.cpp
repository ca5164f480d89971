#include "toruswalk/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace toruswalk {

CMat CMat::operator*(const CMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("CMat: shape mismatch in multiply");
    CMat r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const cplx a = (*this)(i, k);
            if (a == cplx{}) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
        }
    return r;
}

CMat CMat::operator*(cplx s) const {
    CMat r = *this;
    for (auto& v : r.data_) v *= s;
    return r;
}

CMat CMat::operator-(const CMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("CMat: shape mismatch in subtract");
    CMat r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
}

CMat CMat::adjoint() const {
    CMat r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

std::vector<cplx> CMat::apply(const std::vector<cplx>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("CMat: vector length mismatch");
    std::vector<cplx> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        cplx acc{};
        for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

CMat CMat::kron(const CMat& o) const {
    CMat r(rows_ * o.rows_, cols_ * o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            const cplx a = (*this)(i, j);
            if (a == cplx{}) continue;
            for (std::size_t k = 0; k < o.rows_; ++k)
                for (std::size_t l = 0; l < o.cols_; ++l)
                    r(i * o.rows_ + k, j * o.cols_ + l) = a * o(k, l);
        }
    return r;
}

double CMat::max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
}

double CMat::unitarity_residual() const {
    if (rows_ != cols_) return 1.0;
    return (adjoint() * (*this) - identity(rows_)).max_abs();
}

double max_abs_diff(const CMat& a, const CMat& b) {
    return (a - b).max_abs();
}

}  // namespace toruswalk
