#include "germ/linalg.hpp"

namespace germ {

std::size_t Matrix::rank() const {
    Matrix m = *this;
    const Field& F = field_;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows_ && F.is_zero(m.at(pivot, col))) ++pivot;
        if (pivot == rows_) continue;
        if (pivot != rank)
            for (std::size_t c = 0; c < cols_; ++c) std::swap(m.at(pivot, c), m.at(rank, c));
        Scalar inv = F.inv(m.at(rank, col));
        for (std::size_t r = rank + 1; r < rows_; ++r) {
            if (F.is_zero(m.at(r, col))) continue;
            Scalar factor = F.mul(m.at(r, col), inv);
            for (std::size_t c = col; c < cols_; ++c)
                m.at(r, c) = F.sub(m.at(r, c), F.mul(factor, m.at(rank, c)));
        }
        ++rank;
    }
    return rank;
}

Scalar Matrix::det() const {
    if (rows_ != cols_) fail(errc::internal, "det of non-square matrix");
    Matrix m = *this;
    const Field& F = field_;
    Scalar d = F.one();
    for (std::size_t col = 0; col < cols_; ++col) {
        std::size_t pivot = col;
        while (pivot < rows_ && F.is_zero(m.at(pivot, col))) ++pivot;
        if (pivot == rows_) return F.zero();
        if (pivot != col) {
            for (std::size_t c = 0; c < cols_; ++c) std::swap(m.at(pivot, c), m.at(col, c));
            d = F.neg(d);
        }
        d = F.mul(d, m.at(col, col));
        Scalar inv = F.inv(m.at(col, col));
        for (std::size_t r = col + 1; r < rows_; ++r) {
            if (F.is_zero(m.at(r, col))) continue;
            Scalar factor = F.mul(m.at(r, col), inv);
            for (std::size_t c = col; c < cols_; ++c)
                m.at(r, c) = F.sub(m.at(r, c), F.mul(factor, m.at(col, c)));
        }
    }
    return d;
}

Matrix Matrix::without_row_col(std::size_t dr, std::size_t dc) const {
    Matrix m(field_, rows_ - 1, cols_ - 1);
    for (std::size_t r = 0, rr = 0; r < rows_; ++r) {
        if (r == dr) continue;
        for (std::size_t c = 0, cc = 0; c < cols_; ++c) {
            if (c == dc) continue;
            m.at(rr, cc) = at(r, c);
            ++cc;
        }
        ++rr;
    }
    return m;
}

std::optional<std::vector<Scalar>> Matrix::solve(const std::vector<Scalar>& b) const {
    if (b.size() != rows_) fail(errc::internal, "solve dimension mismatch");
    const Field& F = field_;
    Matrix m = *this;
    std::vector<Scalar> rhs = b;
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows_ && F.is_zero(m.at(pivot, col))) ++pivot;
        if (pivot == rows_) continue;
        if (pivot != rank) {
            for (std::size_t c = 0; c < cols_; ++c) std::swap(m.at(pivot, c), m.at(rank, c));
            std::swap(rhs[pivot], rhs[rank]);
        }
        Scalar inv = F.inv(m.at(rank, col));
        for (std::size_t c = col; c < cols_; ++c) m.at(rank, c) = F.mul(m.at(rank, c), inv);
        rhs[rank] = F.mul(rhs[rank], inv);
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == rank || F.is_zero(m.at(r, col))) continue;
            Scalar factor = m.at(r, col);
            for (std::size_t c = col; c < cols_; ++c)
                m.at(r, c) = F.sub(m.at(r, c), F.mul(factor, m.at(rank, c)));
            rhs[r] = F.sub(rhs[r], F.mul(factor, rhs[rank]));
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (std::size_t r = rank; r < rows_; ++r)
        if (!F.is_zero(rhs[r])) return std::nullopt;
    std::vector<Scalar> x(cols_, F.zero());
    for (std::size_t r = 0; r < rank; ++r) x[pivot_col[r]] = rhs[r];
    return x;
}

} // namespace germ
