#ifndef RTKIT_ALGEBRA_FP_MATRIX_HPP
#define RTKIT_ALGEBRA_FP_MATRIX_HPP

#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <rtkit/algebra/fq.hpp>
#include <rtkit/errors.hpp>

namespace rtkit
{

// Dense row-major matrix over F_p.
class FpMatrix
{
public:
    FpMatrix() = default;
    FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols) : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static FpMatrix identity(std::uint32_t p, std::size_t n)
    {
        FpMatrix m(p, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1 % p;
        return m;
    }

    std::uint32_t prime() const noexcept { return p_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    std::uint32_t &operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    std::uint32_t operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::span<std::uint32_t> row(std::size_t i) { return {a_.data() + i * cols_, cols_}; }
    std::span<const std::uint32_t> row(std::size_t i) const { return {a_.data() + i * cols_, cols_}; }

    friend bool operator==(const FpMatrix &, const FpMatrix &) = default;

    bool is_zero() const noexcept
    {
        for (auto v : a_)
            if (v) return false;
        return true;
    }

    void add_row(std::span<const std::uint32_t> r)
    {
        if (r.size() != cols_) throw domain_error("FpMatrix::add_row: width mismatch");
        a_.insert(a_.end(), r.begin(), r.end());
        ++rows_;
    }

    FpMatrix transpose() const
    {
        FpMatrix t(p_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend FpMatrix operator*(const FpMatrix &x, const FpMatrix &y)
    {
        if (x.cols_ != y.rows_ || x.p_ != y.p_) throw domain_error("FpMatrix: shape mismatch in product");
        FpMatrix r(x.p_, x.rows_, y.cols_);
        std::vector<std::uint64_t> acc(y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i) {
            std::fill(acc.begin(), acc.end(), 0);
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const std::uint64_t v = x(i, k);
                if (!v) continue;
                const auto yr = y.row(k);
                for (std::size_t j = 0; j < y.cols_; ++j) acc[j] = (acc[j] + v * yr[j]) % x.p_;
            }
            for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) = static_cast<std::uint32_t>(acc[j]);
        }
        return r;
    }

    friend FpMatrix operator+(const FpMatrix &x, const FpMatrix &y)
    {
        x.check_same_shape(y);
        FpMatrix r = x;
        for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = (x.a_[i] + y.a_[i]) % x.p_;
        return r;
    }

    friend FpMatrix operator-(const FpMatrix &x, const FpMatrix &y)
    {
        x.check_same_shape(y);
        FpMatrix r = x;
        for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = (x.a_[i] + x.p_ - y.a_[i]) % x.p_;
        return r;
    }

    FpMatrix scaled(std::uint32_t s) const
    {
        FpMatrix r = *this;
        for (auto &v : r.a_) v = static_cast<std::uint32_t>(std::uint64_t{v} * (s % p_) % p_);
        return r;
    }

    FpMatrix pow(std::uint64_t e) const
    {
        if (rows_ != cols_) throw domain_error("FpMatrix::pow: matrix not square");
        FpMatrix r = identity(p_, rows_), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }

    // In-place reduced row echelon form; returns pivot columns.
    std::vector<std::size_t> rref()
    {
        std::vector<std::size_t> pivots;
        std::size_t lead_row = 0;
        for (std::size_t c = 0; c < cols_ && lead_row < rows_; ++c) {
            std::size_t piv = lead_row;
            while (piv < rows_ && (*this)(piv, c) == 0) ++piv;
            if (piv == rows_) continue;
            swap_rows(piv, lead_row);
            const std::uint64_t inv = detail::powmod((*this)(lead_row, c), p_ - 2, p_);
            auto lr = row(lead_row);
            for (std::size_t j = c; j < cols_; ++j) lr[j] = static_cast<std::uint32_t>(lr[j] * inv % p_);
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == lead_row) continue;
                const std::uint64_t f = (*this)(i, c);
                if (!f) continue;
                auto ri = row(i);
                const std::uint64_t nf = p_ - f;
                for (std::size_t j = c; j < cols_; ++j)
                    if (lr[j]) ri[j] = static_cast<std::uint32_t>((ri[j] + nf * lr[j]) % p_);
            }
            pivots.push_back(c);
            ++lead_row;
        }
        return pivots;
    }

    std::size_t rank() const
    {
        FpMatrix t = *this;
        return t.rref().size();
    }

    // Basis of {x : A x = 0}, one solution per returned column.
    FpMatrix kernel() const
    {
        FpMatrix t = *this;
        const auto pivots = t.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (auto c : pivots) is_pivot[c] = true;
        std::vector<std::size_t> free_cols;
        for (std::size_t c = 0; c < cols_; ++c)
            if (!is_pivot[c]) free_cols.push_back(c);
        FpMatrix k(p_, cols_, free_cols.size());
        for (std::size_t f = 0; f < free_cols.size(); ++f) {
            const std::size_t fc = free_cols[f];
            k(fc, f) = 1;
            for (std::size_t i = 0; i < pivots.size(); ++i) {
                const std::uint32_t v = t(i, fc);
                k(pivots[i], f) = v ? p_ - v : 0;
            }
        }
        return k;
    }

    // Rows form a basis of the row space.
    FpMatrix row_basis() const
    {
        FpMatrix t = *this;
        const std::size_t r = t.rref().size();
        FpMatrix b(p_, 0, cols_);
        for (std::size_t i = 0; i < r; ++i) b.add_row(t.row(i));
        return b;
    }

    std::string to_string() const
    {
        std::ostringstream os;
        for (std::size_t i = 0; i < rows_; ++i) {
            os << "[";
            for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
            os << "]\n";
        }
        return os.str();
    }

private:
    void swap_rows(std::size_t i, std::size_t j)
    {
        if (i == j) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
    }

    void check_same_shape(const FpMatrix &y) const
    {
        if (rows_ != y.rows_ || cols_ != y.cols_ || p_ != y.p_) throw domain_error("FpMatrix: shape mismatch");
    }

    std::uint32_t p_ = 2;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint32_t> a_;
};

} // namespace rtkit

#endif
