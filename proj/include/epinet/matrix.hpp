#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "epinet/error.hpp"

namespace epinet {

/// Dense row-major matrix over a flat buffer. Small sizes only (N in the
/// hundreds); no linear-algebra library is warranted at this scale.
template <typename T>
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, T fill = T())
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    std::vector<T>& data() { return data_; }
    const std::vector<T>& data() const { return data_; }

    /// Column j as a vector of doubles (rows become entries).
    std::vector<double> col(std::size_t j) const {
        std::vector<double> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out[i] = static_cast<double>((*this)(i, j));
        return out;
    }

    /// Column j in the element type.
    std::vector<T> col_raw(std::size_t j) const {
        std::vector<T> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
        return out;
    }

    bool same_shape(const Mat& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using Matrix = Mat<double>;
using BitMatrix = Mat<std::uint8_t>;

/// y = M * x for square or rectangular M.
inline std::vector<double> matvec(const Matrix& m, const std::vector<double>& x) {
    if (x.size() != m.cols())
        throw Error(ErrorKind::DimensionMismatch, "matvec: vector length " +
                        std::to_string(x.size()) + " vs matrix cols " +
                        std::to_string(m.cols()));
    std::vector<double> y(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

}  // namespace epinet
