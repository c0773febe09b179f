#include "causalnet/matrix.hpp"

#include <cctype>

#include "causalnet/error.hpp"

namespace causalnet {

std::string to_string(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    return c.get_str(10);
}

Rational parse_rational(std::string_view text) {
    auto digits = [](std::string_view s) {
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    std::string_view body = text;
    if (!body.empty() && body.front() == '-') body.remove_prefix(1);
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
    if (!digits(num) || (slash != std::string_view::npos && !digits(den))) {
        throw Error(ErrorCode::ParseError, "not a rational: '" + std::string(text) + "'");
    }
    Rational r;
    if (r.set_str(std::string(text), 10) != 0) {
        throw Error(ErrorCode::ParseError, "not a rational: '" + std::string(text) + "'");
    }
    if (r.get_den() == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    r.canonicalize();
    return r;
}

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(const std::vector<std::vector<Rational>>& rows) {
    rows_ = rows.size();
    cols_ = rows.empty() ? 0 : rows.front().size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw Error(ErrorCode::InvalidMorphism, "ragged matrix rows");
        data_.insert(data_.end(), row.begin(), row.end());
    }
    for (auto& x : data_) x.canonicalize();
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::BoundaryMismatch, "matrix shapes do not compose");
    Matrix out(a.rows_, b.cols_);
    Rational term;
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t j = 0; j < a.cols_; ++j) {
            const Rational& x = a(i, j);
            if (sgn(x) == 0) continue;
            for (std::size_t k = 0; k < b.cols_; ++k) {
                const Rational& y = b(j, k);
                if (sgn(y) == 0) continue;
                term = x * y;
                out(i, k) += term;
            }
        }
    }
    return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Rational& x = a(i, j);
            if (sgn(x) == 0) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    if (sgn(b(k, l)) != 0) out(i * b.rows() + k, j * b.cols() + l) = x * b(k, l);
        }
    }
    return out;
}

std::optional<Matrix> Matrix::inverse() const {
    if (rows_ != cols_) return std::nullopt;
    const std::size_t n = rows_;
    Matrix work = *this;
    Matrix inv = identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && sgn(work(pivot, col)) == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        if (pivot != col) {
            for (std::size_t k = 0; k < n; ++k) {
                std::swap(work(pivot, k), work(col, k));
                std::swap(inv(pivot, k), inv(col, k));
            }
        }
        const Rational scale = 1 / work(col, col);
        for (std::size_t k = 0; k < n; ++k) {
            work(col, k) *= scale;
            inv(col, k) *= scale;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || sgn(work(r, col)) == 0) continue;
            const Rational factor = work(r, col);
            for (std::size_t k = 0; k < n; ++k) {
                work(r, k) -= factor * work(col, k);
                inv(r, k) -= factor * inv(col, k);
            }
        }
    }
    return inv;
}

}  // namespace causalnet
