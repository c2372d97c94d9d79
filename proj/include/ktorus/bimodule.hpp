#pragma once

#include "ktorus/dilation.hpp"
#include "ktorus/errors.hpp"
#include "ktorus/laurent.hpp"
#include "ktorus/linalg.hpp"
#include "ktorus/matrix.hpp"
#include "ktorus/smith.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

namespace ktorus {

namespace detail {

inline std::int64_t to_int64(const Integer& x) {
    if (!x.fits_slong_p())
        throw std::overflow_error("integer does not fit in 64 bits");
    return x.get_si();
}

} // namespace detail

/// The system (C(T^d), alpha, L) of an integer matrix a with det a != 0, acting on
/// Laurent polynomials. alpha(f) = f o sigma_a sends z^m to z^{a^T m}; L averages
/// over the |det a| points of each fibre of sigma_a, which on characters keeps
/// z^m with m in a^T Z^d (sending it to z^{(a^T)^{-1} m}) and kills the rest.
class ExelSystem {
  public:
    explicit ExelSystem(IntegerMatrix a) : a_(std::move(a)) {
        detail::require_square(a_, "ExelSystem");
        const IntegerMatrix at = a_.transpose();
        det_ = determinant(at);
        if (det_ == 0)
            throw SingularMatrixError("transfer operator needs a nonsingular matrix");
        const IntegerMatrix adj = adjugate(at);
        const std::size_t d = a_.rows();
        at_.assign(d * d, 0);
        adj_at_.assign(d * d, 0);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                at_[i * d + j] = detail::to_int64(at(i, j));
                adj_at_[i * d + j] = detail::to_int64(adj(i, j));
            }
        det64_ = detail::to_int64(det_);
    }

    std::size_t dim() const noexcept { return a_.rows(); }
    const IntegerMatrix& matrix() const noexcept { return a_; }
    const Integer& det() const noexcept { return det_; }

    Exponent push_exponent(const Exponent& m) const {
        const std::size_t d = dim();
        Exponent out(d, 0);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                out[i] = detail::checked_add(out[i], detail::checked_mul(at_[i * d + j], m[j]));
        return out;
    }

    /// (a^T)^{-1} m if m lies in a^T Z^d.
    std::optional<Exponent> pull_exponent(const Exponent& m) const {
        const std::size_t d = dim();
        Exponent out(d, 0);
        for (std::size_t i = 0; i < d; ++i) {
            std::int64_t s = 0;
            for (std::size_t j = 0; j < d; ++j)
                s = detail::checked_add(s, detail::checked_mul(adj_at_[i * d + j], m[j]));
            if (s % det64_ != 0)
                return std::nullopt;
            out[i] = s / det64_;
        }
        return out;
    }

    bool in_image_lattice(const Exponent& m) const { return pull_exponent(m).has_value(); }

    LaurentPolynomial alpha(const LaurentPolynomial& f) const {
        require_dim(f);
        LaurentPolynomial out(dim());
        for (const auto& [e, c] : f.terms())
            out.add_term(push_exponent(e), c);
        return out;
    }

    LaurentPolynomial transfer(const LaurentPolynomial& f) const {
        require_dim(f);
        LaurentPolynomial out(dim());
        for (const auto& [e, c] : f.terms())
            if (auto pre = pull_exponent(e))
                out.add_term(*pre, c);
        return out;
    }

    /// <f, g> = L(f* g)
    LaurentPolynomial inner(const LaurentPolynomial& f, const LaurentPolynomial& g) const {
        return transfer(f.conj() * g);
    }

    /// m . a = m alpha(a)
    LaurentPolynomial module_action(const LaurentPolynomial& m, const LaurentPolynomial& a) const {
        return m * alpha(a);
    }

  private:
    void require_dim(const LaurentPolynomial& f) const {
        if (f.dim() != dim())
            throw DimensionError("polynomial dimension does not match the matrix");
    }

    IntegerMatrix a_;
    Integer det_;
    std::int64_t det64_ = 1;
    std::vector<std::int64_t> at_;
    std::vector<std::int64_t> adj_at_;
};

inline LaurentPolynomial alpha(const IntegerMatrix& a, const LaurentPolynomial& f) {
    detail::require_square(a, "alpha");
    if (f.dim() != a.rows())
        throw DimensionError("alpha: polynomial dimension does not match the matrix");
    // alpha needs no inverse, so a singular a is allowed here.
    LaurentPolynomial out(a.rows());
    const std::size_t d = a.rows();
    for (const auto& [e, c] : f.terms()) {
        Exponent m(d, 0);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                m[i] = detail::checked_add(m[i], detail::checked_mul(detail::to_int64(a(j, i)), e[j]));
        out.add_term(m, c);
    }
    return out;
}

inline LaurentPolynomial transfer(const IntegerMatrix& a, const LaurentPolynomial& f) {
    return ExelSystem(a).transfer(f);
}

inline LaurentPolynomial inner(const IntegerMatrix& a, const LaurentPolynomial& f, const LaurentPolynomial& g) {
    return ExelSystem(a).inner(f, g);
}

inline LaurentPolynomial module_action(const IntegerMatrix& a, const LaurentPolynomial& m,
                                       const LaurentPolynomial& x) {
    return m * alpha(a, x);
}

/// Column k is the exponent of alpha(z_k): the action of alpha on degree-one characters.
inline IntegerMatrix alpha_exponent_matrix(const IntegerMatrix& a) {
    const std::size_t d = a.rows();
    IntegerMatrix out(d, d);
    for (std::size_t k = 0; k < d; ++k) {
        Exponent e(d, 0);
        e[k] = 1;
        const LaurentPolynomial img = alpha(a, LaurentPolynomial::monomial(e));
        const Exponent& m = img.terms().begin()->first;
        for (std::size_t i = 0; i < d; ++i)
            out(i, k) = static_cast<long>(m[i]);
    }
    return out;
}

/// Monomial filters m_j = z^{gammas[j]}: the gammas are a transversal of
/// Z^d / a^T Z^d with gammas[0] = 0.
struct FilterBank {
    IntegerMatrix a;
    std::size_t n = 0;
    std::vector<Exponent> gammas;
};

namespace detail {

/// Representatives w^{-1} t, 0 <= t_i < s_i, of Z^d / mZ^d where w m v = s is the Smith form.
inline std::vector<Exponent> lattice_transversal(const IntegerMatrix& m) {
    const SmithDecomposition snf = smith_normal_form(m);
    const std::size_t d = m.rows();
    for (const auto& f : snf.factors)
        if (f == 0)
            throw SingularMatrixError();
    const IntegerMatrix u_inv = to_integer(rational_inverse(snf.u));
    std::vector<std::int64_t> bounds;
    for (const auto& f : snf.factors)
        bounds.push_back(to_int64(f));

    std::vector<Exponent> reps;
    std::vector<std::int64_t> t(d, 0);
    for (;;) {
        Exponent g(d, 0);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                g[i] = checked_add(g[i], checked_mul(to_int64(u_inv(i, j)), t[j]));
        reps.push_back(std::move(g));
        // odometer, last coordinate fastest
        std::size_t i = d;
        while (i > 0) {
            --i;
            if (++t[i] < bounds[i])
                break;
            t[i] = 0;
            if (i == 0)
                return reps;
        }
    }
}

} // namespace detail

inline FilterBank build_filterbank(const DilationMatrix& a) {
    FilterBank fb{a.matrix(), 0, detail::lattice_transversal(a.matrix().transpose())};
    fb.n = fb.gammas.size();
    return fb;
}

inline FilterBank build_filterbank(const IntegerMatrix& a) { return build_filterbank(DilationMatrix::from(a)); }

/// Points A^{-1}k of the kernel of sigma_a, as exponent vectors in [0,1)^d.
inline std::vector<std::vector<Rational>> kernel_representatives(const IntegerMatrix& a) {
    detail::require_square(a, "kernel_representatives");
    const RationalMatrix inv = rational_inverse(a);
    const std::size_t d = a.rows();
    std::vector<std::vector<Rational>> out;
    for (const Exponent& k : detail::lattice_transversal(a)) {
        std::vector<Rational> x(d);
        for (std::size_t i = 0; i < d; ++i) {
            Rational s = 0;
            for (std::size_t j = 0; j < d; ++j)
                s += inv(i, j) * Rational(static_cast<long>(k[j]));
            Integer fl;
            mpz_fdiv_q(fl.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
            x[i] = s - Rational(fl);
        }
        out.push_back(std::move(x));
    }
    return out;
}

struct OrthonormalReport {
    bool ok = true;
    bool cardinality_ok = true;                           // n == |det a|
    std::optional<std::pair<std::size_t, std::size_t>> offending_pair;
    double max_numeric_deviation = 0;                     // advisory
};

/// Exact check of <m_j, m_k> = delta_jk, plus a floating-point evaluation of the
/// fibre average (1/N) sum_zeta zeta^(gamma_k - gamma_j) over ker sigma_a. The
/// numeric pass covers every pair for N <= 64 and the first 64 columns beyond that.
inline OrthonormalReport check_orthonormal(const FilterBank& fb) {
    const ExelSystem sys(fb.a);
    OrthonormalReport rep;
    const std::size_t n = fb.gammas.size();
    rep.cardinality_ok = Integer(static_cast<unsigned long>(n)) == abs(sys.det());
    rep.ok = rep.cardinality_ok;
    const std::size_t d = sys.dim();

    // <z^g, z^h> = L(z^{h-g}) is nonzero exactly when h - g lies in a^T Z^d, i.e.
    // when g and h share a coset. With u a^T v = s, the coset of x is read off
    // from (u x)_i mod s_i, so the pairwise test reduces to a duplicate search.
    const SmithDecomposition snf = smith_normal_form(fb.a.transpose());
    std::map<std::vector<Integer>, std::size_t> seen;
    for (std::size_t k = 0; k < n && !rep.offending_pair; ++k) {
        if (fb.gammas[k].size() != d)
            throw DimensionError("filter exponent has the wrong length");
        std::vector<Integer> key(d);
        for (std::size_t i = 0; i < d; ++i) {
            Integer acc = 0;
            for (std::size_t t = 0; t < d; ++t)
                acc += snf.u(i, t) * Integer(static_cast<long>(fb.gammas[k][t]));
            const Integer& m = snf.factors[i];
            acc %= m;
            if (acc < 0)
                acc += m;
            key[i] = acc;
        }
        const auto [it, fresh] = seen.emplace(std::move(key), k);
        if (!fresh) {
            rep.ok = false;
            rep.offending_pair = {it->second, k};
        }
    }

    std::vector<std::vector<double>> zetas;
    for (const auto& x : kernel_representatives(fb.a)) {
        std::vector<double> z;
        for (const auto& q : x)
            z.push_back(q.get_d());
        zetas.push_back(std::move(z));
    }
    const std::size_t rows = n <= 64 ? n : 1;
    const std::size_t cols = std::min<std::size_t>(n, 64);
    for (std::size_t j = 0; j < rows; ++j)
        for (std::size_t k = 0; k < cols; ++k) {
            std::complex<double> acc = 0;
            for (const auto& z : zetas) {
                double phase = 0;
                for (std::size_t i = 0; i < d; ++i)
                    phase += static_cast<double>(fb.gammas[k][i] - fb.gammas[j][i]) * z[i];
                acc += std::polar(1.0, 2 * std::numbers::pi * phase);
            }
            acc /= static_cast<double>(zetas.size());
            const double dev = std::abs(acc - std::complex<double>(j == k ? 1.0 : 0.0));
            rep.max_numeric_deviation = std::max(rep.max_numeric_deviation, dev);
        }
    return rep;
}

/// sum_j m_j . <m_j, f>; equals f for an orthonormal bank.
inline LaurentPolynomial reconstruct(const FilterBank& fb, const LaurentPolynomial& f) {
    const ExelSystem sys(fb.a);
    LaurentPolynomial out(sys.dim());
    for (const auto& g : fb.gammas) {
        const LaurentPolynomial m = LaurentPolynomial::monomial(g);
        out += sys.module_action(m, sys.inner(m, f));
    }
    return out;
}

/// N x N matrix of Laurent polynomials.
class OmegaMatrix {
  public:
    OmegaMatrix(std::size_t n, std::size_t d) : n_(n), d_(d), entries_(n * n, LaurentPolynomial(d)) {}

    static OmegaMatrix identity(std::size_t n, std::size_t d) {
        OmegaMatrix m(n, d);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = LaurentPolynomial::constant(d, 1);
        return m;
    }

    std::size_t size() const noexcept { return n_; }
    LaurentPolynomial& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
    const LaurentPolynomial& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

    friend OmegaMatrix operator*(const OmegaMatrix& x, const OmegaMatrix& y) {
        if (x.n_ != y.n_)
            throw DimensionError("Omega matrices differ in size");
        OmegaMatrix out(x.n_, x.d_);
        for (std::size_t i = 0; i < x.n_; ++i)
            for (std::size_t k = 0; k < x.n_; ++k) {
                const LaurentPolynomial& xik = x(i, k);
                if (xik.is_zero())
                    continue;
                for (std::size_t j = 0; j < x.n_; ++j)
                    if (!y(k, j).is_zero())
                        out(i, j) += xik * y(k, j);
            }
        return out;
    }

    friend bool operator==(const OmegaMatrix&, const OmegaMatrix&) = default;

  private:
    std::size_t n_;
    std::size_t d_;
    std::vector<LaurentPolynomial> entries_;
};

/// Omega(f)_{j,k} = <m_j, f . m_k>, the left action of f in the frame {m_j}.
inline OmegaMatrix omega(const FilterBank& fb, const LaurentPolynomial& f) {
    const ExelSystem sys(fb.a);
    const std::size_t n = fb.gammas.size();
    OmegaMatrix out(n, sys.dim());
    std::vector<LaurentPolynomial> filters;
    for (const auto& g : fb.gammas)
        filters.push_back(LaurentPolynomial::monomial(g));
    for (std::size_t k = 0; k < n; ++k) {
        const LaurentPolynomial fm = f * filters[k];
        for (std::size_t j = 0; j < n; ++j)
            out(j, k) = sys.inner(filters[j], fm);
    }
    return out;
}

} // namespace ktorus
