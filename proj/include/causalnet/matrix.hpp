#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace causalnet {

using Rational = mpq_class;

/// Canonical text form: "p" for integers, "p/q" otherwise (q > 0, reduced).
std::string to_string(const Rational& r);
/// Accepts "p" or "p/q" with optional leading '-'. Throws Error(ParseError).
Rational parse_rational(std::string_view text);

/// Dense matrix of exact rationals. A morphism m -> n in the matrix
/// category is stored as an n x m matrix (rows index the codomain).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    /// Throws Error(InvalidMorphism) on ragged input.
    explicit Matrix(const std::vector<std::vector<Rational>>& rows);

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    /// Stored entries are expected in canonical (reduced) form.
    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    /// Matrix product; skips zero entries of the left factor, which keeps
    /// products with permutation and block-identity matrices cheap.
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    /// Gauss-Jordan elimination; nullopt if singular or not square.
    std::optional<Matrix> inverse() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Kronecker product; the left factor's index is the most significant.
Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace causalnet
