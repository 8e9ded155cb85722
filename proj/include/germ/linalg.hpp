#pragma once

#include <optional>
#include <vector>

#include "germ/scalar.hpp"

namespace germ {

// Dense exact matrix over a Field; enough linear algebra for minors, ranks
// and small solves.
class Matrix {
public:
    Matrix(const Field& f, std::size_t rows, std::size_t cols)
        : field_(f), rows_(rows), cols_(cols), a_(rows * cols, Scalar(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Field& field() const { return field_; }

    Scalar& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Scalar& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    std::size_t rank() const;
    Scalar det() const; // square only
    Matrix without_row_col(std::size_t r, std::size_t c) const;

    // one solution of A x = b, if any
    std::optional<std::vector<Scalar>> solve(const std::vector<Scalar>& b) const;

private:
    Field field_;
    std::size_t rows_, cols_;
    std::vector<Scalar> a_;
};

} // namespace germ
