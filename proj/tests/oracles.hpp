#pragma once

// Independent reference computations used only by the tests. Nothing here calls
// the elimination, Smith, or transfer code it is meant to check.

#include "ktorus/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <vector>

namespace ktorus::oracle {

inline int permutation_sign(const std::vector<std::size_t>& p) {
    std::size_t inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            inv += p[i] > p[j];
    return inv % 2 ? -1 : 1;
}

/// Leibniz expansion.
inline Integer permutation_determinant(const IntegerMatrix& m) {
    const std::size_t n = m.rows();
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    Integer total = 0;
    do {
        Integer term = permutation_sign(p);
        for (std::size_t i = 0; i < n; ++i)
            term *= m(i, p[i]);
        total += term;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

inline void choose(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                   std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        choose(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    choose(n, k, 0, cur, out);
    return out;
}

/// Smith factors from determinantal divisors: s_k = D_k / D_{k-1}, D_k = gcd of k x k minors.
inline std::vector<Integer> smith_factors_by_minors(const IntegerMatrix& m) {
    const std::size_t r = std::min(m.rows(), m.cols());
    std::vector<Integer> divisors{Integer(1)};
    for (std::size_t k = 1; k <= r; ++k) {
        Integer g = 0;
        for (const auto& rows : subsets(m.rows(), k))
            for (const auto& cols : subsets(m.cols(), k))
                g = gcd(g, permutation_determinant(m.select(rows, cols)));
        divisors.push_back(g);
    }
    std::vector<Integer> factors;
    for (std::size_t k = 1; k <= r; ++k) {
        if (divisors[k] == 0)
            factors.emplace_back(0);
        else
            factors.push_back(divisors[k] / divisors[k - 1]);
    }
    return factors;
}

/// 2x2 invariant factors: gcd of the entries, then |det| / gcd.
inline std::vector<Integer> smith_factors_2x2(const IntegerMatrix& m) {
    Integer g = gcd(gcd(m(0, 0), m(0, 1)), gcd(m(1, 0), m(1, 1)));
    Integer det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    if (g == 0)
        return {Integer(0), Integer(0)};
    return {g, Integer(abs(det) / g)};
}

/// Value at w = 1 of the fibre average (1/|det a|) sum_{sigma(z)=1} z^m, with the
/// fibre enumerated by brute force over x in [0,1)^d, a x in Z^d, on a grid of step 1/|det|.
inline std::complex<double> fibre_average_at_one(const IntegerMatrix& a, const std::vector<long>& m) {
    const std::size_t d = a.rows();
    const long n = std::labs(permutation_determinant(a).get_si());
    // a x integral with x in [0,1)^d forces x in (1/n) Z^d.
    std::vector<long> k(d, 0);
    std::complex<double> acc = 0;
    std::size_t count = 0;
    for (;;) {
        bool integral = true;
        for (std::size_t i = 0; i < d && integral; ++i) {
            long s = 0;
            for (std::size_t j = 0; j < d; ++j)
                s += a(i, j).get_si() * k[j];
            integral = s % n == 0;
        }
        if (integral) {
            double phase = 0;
            for (std::size_t i = 0; i < d; ++i)
                phase += static_cast<double>(m[i]) * static_cast<double>(k[i]) / static_cast<double>(n);
            acc += std::polar(1.0, 2 * std::numbers::pi * phase);
            ++count;
        }
        std::size_t i = d;
        while (i > 0) {
            --i;
            if (++k[i] < n)
                break;
            k[i] = 0;
            if (i == 0)
                return acc / static_cast<double>(count);
        }
    }
}

} // namespace ktorus::oracle
