#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bflift {

// Exact integer arithmetic everywhere; matrix powers and transition maps
// overflow fixed-width types quickly.
using Int = boost::multiprecision::cpp_int;

// Dense integer matrix. Graphs here are desk scale, so no sparsity and no
// fancy linear algebra, just exact products and comparisons.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m.at(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Int& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool operator==(const Matrix& o) const = default;

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_)
            throw std::invalid_argument("matrix dimension mismatch in product");
        Matrix out(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Int& a = at(i, k);
                if (a == 0)
                    continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    out.at(i, j) += a * o.at(k, j);
            }
        return out;
    }

    Matrix operator+(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix dimension mismatch in sum");
        Matrix out(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i)
            out.data_[i] = data_[i] + o.data_[i];
        return out;
    }

    Matrix transpose() const {
        Matrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out.at(j, i) = at(i, j);
        return out;
    }

    Matrix pow(unsigned k) const {
        if (rows_ != cols_)
            throw std::invalid_argument("matrix power of non-square matrix");
        Matrix acc = identity(rows_);
        for (unsigned i = 0; i < k; ++i)
            acc = acc * *this;
        return acc;
    }

    bool is_zero() const {
        for (const Int& x : data_)
            if (x != 0)
                return false;
        return true;
    }

    Int column_sum(std::size_t c) const {
        Int s = 0;
        for (std::size_t i = 0; i < rows_; ++i)
            s += at(i, c);
        return s;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

inline std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << (j ? " " : "") << m.at(i, j);
        os << '\n';
    }
    return os;
}

// Error carrying the exit-code category used by the command line tool.
struct Error : std::runtime_error {
    enum class Kind { parse, usage, validation, internal };
    Kind kind;
    Error(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

inline Error parse_error(const std::string& msg) { return Error(Error::Kind::parse, msg); }
inline Error usage_error(const std::string& msg) { return Error(Error::Kind::usage, msg); }
inline Error validation_error(const std::string& msg) { return Error(Error::Kind::validation, msg); }
inline Error internal_error(const std::string& msg) { return Error(Error::Kind::internal, msg); }

}  // namespace bflift
