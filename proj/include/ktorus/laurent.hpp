#pragma once

#include "ktorus/errors.hpp"
#include "ktorus/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ktorus {

using Exponent = std::vector<std::int64_t>;

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("exponent overflow");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("exponent overflow");
    return r;
}

} // namespace detail

/// Finite sum of characters z^m = z_1^{m_1} ... z_d^{m_d} on the d-torus with
/// rational coefficients. Zero coefficients are never stored.
class LaurentPolynomial {
  public:
    using Terms = std::map<Exponent, Rational>;

    explicit LaurentPolynomial(std::size_t d = 1) : d_(d) {}

    static LaurentPolynomial constant(std::size_t d, const Rational& c) {
        return monomial(Exponent(d, 0), c);
    }

    static LaurentPolynomial monomial(Exponent e, const Rational& c = 1) {
        LaurentPolynomial p(e.size());
        if (c != 0)
            p.terms_.emplace(std::move(e), c);
        return p;
    }

    std::size_t dim() const noexcept { return d_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    Rational coefficient(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Adds c z^e, dropping the term if it cancels.
    void add_term(const Exponent& e, const Rational& c) {
        if (e.size() != d_)
            throw DimensionError("exponent length does not match dimension");
        if (c == 0)
            return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    LaurentPolynomial& operator+=(const LaurentPolynomial& o) {
        require_dim(o);
        for (const auto& [e, c] : o.terms_)
            add_term(e, c);
        return *this;
    }

    LaurentPolynomial& operator-=(const LaurentPolynomial& o) {
        require_dim(o);
        for (const auto& [e, c] : o.terms_)
            add_term(e, -c);
        return *this;
    }

    friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
    friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }

    friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        a.require_dim(b);
        LaurentPolynomial out(a.d_);
        Exponent e(a.d_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < a.d_; ++i)
                    e[i] = detail::checked_add(ea[i], eb[i]);
                out.add_term(e, ca * cb);
            }
        return out;
    }

    LaurentPolynomial& operator*=(const LaurentPolynomial& o) { return *this = *this * o; }

    friend LaurentPolynomial operator*(const Rational& s, LaurentPolynomial p) {
        if (s == 0)
            return LaurentPolynomial(p.d_);
        for (auto& [e, c] : p.terms_)
            c *= s;
        return p;
    }

    /// f*: negate exponents; rational coefficients are self-conjugate.
    LaurentPolynomial conj() const {
        LaurentPolynomial out(d_);
        for (const auto& [e, c] : terms_) {
            Exponent n(e.size());
            for (std::size_t i = 0; i < e.size(); ++i)
                n[i] = detail::checked_mul(e[i], -1);
            out.terms_.emplace(std::move(n), c);
        }
        return out;
    }

    friend bool operator==(const LaurentPolynomial&, const LaurentPolynomial&) = default;

  private:
    void require_dim(const LaurentPolynomial& o) const {
        if (o.d_ != d_)
            throw DimensionError("Laurent polynomials live on tori of different dimension");
    }

    std::size_t d_;
    Terms terms_;
};

inline std::string to_string(const Exponent& e) {
    std::string s = "(";
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i)
            s += ",";
        s += std::to_string(e[i]);
    }
    return s + ")";
}

/// "3/2*z^(1,0) + z^(0,0)"; "0" for the zero polynomial.
inline std::string to_string(const LaurentPolynomial& p) {
    if (p.is_zero())
        return "0";
    std::string s;
    for (const auto& [e, c] : p.terms()) {
        if (!s.empty())
            s += " + ";
        if (c != 1)
            s += c.get_str() + "*";
        s += "z^" + to_string(e);
    }
    return s;
}

} // namespace ktorus
