#pragma once

#include "ktorus/errors.hpp"
#include "ktorus/matrix.hpp"

#include <cstddef>
#include <vector>

namespace ktorus {

namespace detail {

inline void require_square(const auto& m, const char* what) {
    if (!m.is_square())
        throw DimensionError(std::string(what) + ": matrix must be square");
}

} // namespace detail

/// Fraction-free (Bareiss) elimination. Every intermediate division is exact.
inline Integer determinant(const IntegerMatrix& m) {
    detail::require_square(m, "determinant");
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;
    IntegerMatrix w = m;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (w(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && w(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            w.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = w(k, k) * w(i, j) - w(i, k) * w(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                w(i, j) = std::move(t);
            }
            w(i, k) = 0;
        }
        prev = w(k, k);
    }
    Integer det = w(n - 1, n - 1);
    return sign < 0 ? Integer(-det) : det;
}

/// Coefficients of det(xI - m), lowest degree first; the last entry is 1.
/// Faddeev-LeVerrier: every division by k is exact over the integers.
inline std::vector<Integer> characteristic_polynomial(const IntegerMatrix& m) {
    detail::require_square(m, "characteristic_polynomial");
    const std::size_t d = m.rows();
    if (d == 0)
        throw DimensionError("characteristic_polynomial: empty matrix");
    std::vector<Integer> c(d + 1);
    c[d] = 1;
    IntegerMatrix acc(d, d); // M_0 = 0
    for (std::size_t k = 1; k <= d; ++k) {
        IntegerMatrix next = m * acc;
        for (std::size_t i = 0; i < d; ++i)
            next(i, i) += c[d - k + 1];
        acc = std::move(next);
        IntegerMatrix am = m * acc;
        Integer tr = 0;
        for (std::size_t i = 0; i < d; ++i)
            tr += am(i, i);
        Integer q;
        Integer kk = static_cast<unsigned long>(k);
        mpz_divexact(q.get_mpz_t(), tr.get_mpz_t(), kk.get_mpz_t());
        c[d - k] = -q;
    }
    return c;
}

/// Gauss-Jordan over the rationals.
inline RationalMatrix rational_inverse(const RationalMatrix& m) {
    detail::require_square(m, "rational_inverse");
    const std::size_t n = m.rows();
    RationalMatrix w = m;
    RationalMatrix inv = RationalMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && w(p, k) == 0)
            ++p;
        if (p == n)
            throw SingularMatrixError();
        w.swap_rows(k, p);
        inv.swap_rows(k, p);
        const Rational piv = w(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            w(k, j) /= piv;
            inv(k, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || w(i, k) == 0)
                continue;
            const Rational f = w(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                w(i, j) -= f * w(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

inline RationalMatrix rational_inverse(const IntegerMatrix& m) { return rational_inverse(to_rational(m)); }

/// adj(m) = det(m) * m^{-1}, always integral.
inline IntegerMatrix adjugate(const IntegerMatrix& m) {
    detail::require_square(m, "adjugate");
    const std::size_t n = m.rows();
    IntegerMatrix adj(n, n);
    if (n == 1) {
        adj(0, 0) = 1;
        return adj;
    }
    std::vector<std::size_t> ri, ci;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            ri.clear();
            ci.clear();
            for (std::size_t t = 0; t < n; ++t) {
                if (t != j)
                    ri.push_back(t);
                if (t != i)
                    ci.push_back(t);
            }
            Integer c = determinant(m.select(ri, ci));
            adj(i, j) = ((i + j) % 2) ? Integer(-c) : c;
        }
    return adj;
}

template <typename T>
Matrix<T> matrix_power(const Matrix<T>& m, unsigned n) {
    detail::require_square(m, "matrix_power");
    Matrix<T> result = Matrix<T>::identity(m.rows());
    Matrix<T> base = m;
    while (n) {
        if (n & 1U)
            result = result * base;
        n >>= 1U;
        if (n)
            base = base * base;
    }
    return result;
}

inline bool is_unimodular(const IntegerMatrix& m) {
    if (!m.is_square())
        return false;
    return abs(determinant(m)) == 1;
}

/// 0/1 permutation of size r*n_blocks that regroups an r x r array of
/// n_blocks x n_blocks blocks into an n_blocks x n_blocks array of r x r blocks.
/// Entry (p, q) is 1 iff p = t*n_blocks + k and q = k*r + t for some
/// 0 <= k < n_blocks, 0 <= t < r.
inline IntegerMatrix block_transpose_permutation(std::size_t r, std::size_t n_blocks) {
    if (r < 1 || n_blocks < 2)
        throw DimensionError("block_transpose_permutation: need r >= 1 and n_blocks >= 2");
    IntegerMatrix u(r * n_blocks, r * n_blocks);
    for (std::size_t t = 0; t < r; ++t)
        for (std::size_t k = 0; k < n_blocks; ++k)
            u(t * n_blocks + k, k * r + t) = 1;
    return u;
}

} // namespace ktorus
