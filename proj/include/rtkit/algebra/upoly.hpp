#ifndef RTKIT_ALGEBRA_UPOLY_HPP
#define RTKIT_ALGEBRA_UPOLY_HPP

#include <cstddef>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <rtkit/algebra/fq.hpp>
#include <rtkit/errors.hpp>

namespace rtkit
{

// Element of F_q[u]/(u^(e*p)): the coefficient ring of Breuil modules killed by p,
// after quotienting the divided powers X_n.
class UPoly
{
public:
    UPoly() = default;

    UPoly(FqField field, unsigned e) : field_(std::move(field)), e_(e)
    {
        if (e_ == 0) throw domain_error("UPoly: ramification degree must be positive");
        if (std::gcd(e_, field_.characteristic()) != 1)
            throw domain_error("UPoly: ramification degree must be prime to p");
        c_.assign(static_cast<std::size_t>(e_) * field_.characteristic(), FqElem{});
    }

    static UPoly monomial(const FqField &field, unsigned e, const FqElem &c, std::size_t m)
    {
        UPoly r(field, e);
        if (m < r.length()) r.c_[m] = c;
        return r;
    }

    const FqField &field() const noexcept { return field_; }
    unsigned ramification() const noexcept { return e_; }
    // e*p: the truncation degree.
    std::size_t length() const noexcept { return c_.size(); }

    const FqElem &operator[](std::size_t i) const { return c_.at(i); }
    // Out-of-range (including negative) indices read as zero.
    FqElem coeff(long long i) const
    {
        if (i < 0 || static_cast<std::size_t>(i) >= c_.size()) return FqElem{};
        return c_[static_cast<std::size_t>(i)];
    }
    void set(std::size_t i, const FqElem &v) { c_.at(i) = v; }

    bool is_zero() const noexcept
    {
        for (const auto &x : c_)
            if (x != FqElem{}) return false;
        return true;
    }

    // Least index with a nonzero coefficient, or length() for zero.
    std::size_t valuation() const noexcept
    {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != FqElem{}) return i;
        return c_.size();
    }

    bool divisible_by_u_pow(std::size_t r) const noexcept { return valuation() >= r; }

    friend bool operator==(const UPoly &a, const UPoly &b)
    {
        return a.e_ == b.e_ && a.field_ == b.field_ && a.c_ == b.c_;
    }

    friend UPoly operator+(const UPoly &a, const UPoly &b)
    {
        a.check_compatible(b);
        UPoly r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.field_.add(a.c_[i], b.c_[i]);
        return r;
    }

    friend UPoly operator-(const UPoly &a, const UPoly &b)
    {
        a.check_compatible(b);
        UPoly r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.field_.sub(a.c_[i], b.c_[i]);
        return r;
    }

    friend UPoly operator*(const UPoly &a, const UPoly &b)
    {
        a.check_compatible(b);
        UPoly r(a.field_, a.e_);
        const std::size_t n = a.c_.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (a.c_[i] == FqElem{}) continue;
            for (std::size_t j = 0; i + j < n; ++j) {
                if (b.c_[j] == FqElem{}) continue;
                r.c_[i + j] = a.field_.add(r.c_[i + j], a.field_.mul(a.c_[i], b.c_[j]));
            }
        }
        return r;
    }

    friend UPoly operator*(const FqElem &s, const UPoly &a)
    {
        UPoly r = a;
        for (auto &x : r.c_) x = a.field_.mul(s, x);
        return r;
    }

    // Multiplication by u^k.
    UPoly shift_up(std::size_t k) const
    {
        UPoly r(field_, e_);
        for (std::size_t i = 0; i + k < c_.size(); ++i) r.c_[i + k] = c_[i];
        return r;
    }

    // Division by u^r of an element of (u^r). The quotient is only defined modulo
    // u^(ep-r); this returns the lift with zero top coefficients. Every consumer
    // applies frobenius_twist next, which kills the ambiguity when r <= e.
    UPoly div_u_pow(std::size_t r) const
    {
        if (!divisible_by_u_pow(r)) throw domain_error("UPoly::div_u_pow: argument not in (u^r)");
        UPoly q(field_, e_);
        for (std::size_t i = r; i < c_.size(); ++i) q.c_[i - r] = c_[i];
        return q;
    }

    // sum phi(c_i) u^(p i), truncated at u^(ep).
    UPoly frobenius_twist() const
    {
        const std::size_t p = field_.characteristic();
        UPoly r(field_, e_);
        for (std::size_t i = 0; i * p < c_.size(); ++i) r.c_[i * p] = field_.frobenius(c_[i]);
        return r;
    }

    std::string to_string() const
    {
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == FqElem{}) continue;
            if (!first) os << " + ";
            first = false;
            const std::string cs = field_.to_string(c_[i]);
            const bool unit = c_[i] == field_.one();
            if (i == 0) {
                os << cs;
                continue;
            }
            if (!unit) os << (field_.degree() > 1 ? "(" + cs + ")" : cs);
            os << "u";
            if (i > 1) os << "^" << i;
        }
        if (first) os << "0";
        return os.str();
    }

private:
    void check_compatible(const UPoly &b) const
    {
        if (e_ != b.e_ || !(field_ == b.field_)) throw domain_error("UPoly: mismatched rings");
    }

    FqField field_;
    unsigned e_ = 1;
    std::vector<FqElem> c_ = std::vector<FqElem>(3);
};

} // namespace rtkit

#endif
