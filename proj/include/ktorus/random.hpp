#pragma once

#include "ktorus/dilation.hpp"
#include "ktorus/laurent.hpp"
#include "ktorus/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace ktorus {

using Rng = std::mt19937_64;

inline IntegerMatrix random_integer_matrix(Rng& rng, std::size_t rows, std::size_t cols, long lo, long hi) {
    std::uniform_int_distribution<long> dist(lo, hi);
    IntegerMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = dist(rng);
    return m;
}

/// Rejection-samples entries uniform in [lo, hi] until the matrix certifies.
/// max_abs_det > 0 also rejects matrices with |det| above that bound.
inline DilationMatrix random_dilation_matrix(Rng& rng, std::size_t d, long lo = -9, long hi = 9,
                                             long max_abs_det = 0, unsigned max_attempts = 100000) {
    for (unsigned attempt = 0; attempt < max_attempts; ++attempt) {
        IntegerMatrix m = random_integer_matrix(rng, d, d, lo, hi);
        DilationCertificate cert = certify_dilation(m);
        if (!cert.is_dilation)
            continue;
        if (max_abs_det > 0 && abs(cert.det) > max_abs_det)
            continue;
        return DilationMatrix::from(m);
    }
    throw std::runtime_error("random_dilation_matrix: no dilation matrix found");
}

/// Product of random elementary row operations and sign flips.
inline IntegerMatrix random_unimodular(Rng& rng, std::size_t d, unsigned steps = 12) {
    IntegerMatrix u = IntegerMatrix::identity(d);
    if (d < 2)
        return std::uniform_int_distribution<int>(0, 1)(rng) ? u : IntegerMatrix(-u);
    std::uniform_int_distribution<std::size_t> idx(0, d - 1);
    std::uniform_int_distribution<long> mult(-3, 3);
    for (unsigned s = 0; s < steps; ++s) {
        const std::size_t i = idx(rng);
        std::size_t j = idx(rng);
        if (i == j)
            j = (j + 1) % d;
        const Integer q = mult(rng);
        for (std::size_t c = 0; c < d; ++c)
            u(i, c) += q * u(j, c);
        if (std::uniform_int_distribution<int>(0, 3)(rng) == 0)
            u.swap_rows(i, j);
    }
    return u;
}

inline Exponent random_exponent(Rng& rng, std::size_t d, std::int64_t bound = 6) {
    std::uniform_int_distribution<std::int64_t> dist(-bound, bound);
    Exponent e(d);
    for (auto& x : e)
        x = dist(rng);
    return e;
}

/// Nonzero rational coefficient times a random character.
inline LaurentPolynomial random_monomial(Rng& rng, std::size_t d, std::int64_t bound = 6) {
    std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
    long n = 0;
    while (n == 0)
        n = num(rng);
    Rational c(n, den(rng));
    c.canonicalize();
    return LaurentPolynomial::monomial(random_exponent(rng, d, bound), c);
}

inline LaurentPolynomial random_laurent(Rng& rng, std::size_t d, std::size_t max_terms = 8, std::int64_t bound = 6) {
    std::uniform_int_distribution<std::size_t> count(1, max_terms);
    LaurentPolynomial p(d);
    const std::size_t t = count(rng);
    for (std::size_t i = 0; i < t; ++i)
        p += random_monomial(rng, d, bound);
    return p;
}

} // namespace ktorus
