#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "legdet/integer.hpp"

namespace legdet {

/// Dense row-major matrix of exact integers.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, Int(0)) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    bool operator==(const IntMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && entries_ == other.entries_;
    }

    IntMatrix transposed() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_symmetric() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    bool is_skew_symmetric() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i; j < cols_; ++j)
                if ((*this)(i, j) != -(*this)(j, i)) return false;
        return true;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Int> entries_;
};

/// Column vector of exact integers.
class IntVector {
public:
    IntVector() = default;
    explicit IntVector(std::size_t len) : entries_(len, Int(0)) {}

    static IntVector ones(std::size_t len) {
        IntVector v(len);
        for (auto& e : v.entries_) e = 1;
        return v;
    }

    std::size_t size() const { return entries_.size(); }
    Int& operator[](std::size_t i) { return entries_[i]; }
    const Int& operator[](std::size_t i) const { return entries_[i]; }
    bool operator==(const IntVector& other) const { return entries_ == other.entries_; }

private:
    std::vector<Int> entries_;
};

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: dimension mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Int& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline IntVector operator*(const IntMatrix& a, const IntVector& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("matrix-vector product: dimension mismatch");
    IntVector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Int s = 0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

/// M + w * u * v^T without mutating M.
inline IntMatrix add_rank_one(const IntMatrix& m, const IntVector& u, const IntVector& v,
                              const Int& w) {
    if (m.rows() != u.size() || m.cols() != v.size()) {
        throw std::invalid_argument("add_rank_one: dimension mismatch");
    }
    IntMatrix out = m;
    if (w == 0) return out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (u[i] == 0) continue;
        Int wu = w * u[i];
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) += wu * v[j];
    }
    return out;
}

}  // namespace legdet
