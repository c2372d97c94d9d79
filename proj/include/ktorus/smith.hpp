#pragma once

#include "ktorus/matrix.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace ktorus {

/// u * m * v == s, u and v unimodular, s diagonal with
/// factors[0] | factors[1] | ... and zero factors last.
struct SmithDecomposition {
    IntegerMatrix u;
    IntegerMatrix s;
    IntegerMatrix v;
    std::vector<Integer> factors; // diagonal of s, length min(rows, cols)
};

namespace detail {

class SmithReducer {
  public:
    explicit SmithReducer(const IntegerMatrix& m)
        : s_(m), u_(IntegerMatrix::identity(m.rows())), v_(IntegerMatrix::identity(m.cols())) {}

    SmithDecomposition run() && {
        const std::size_t diag = std::min(s_.rows(), s_.cols());
        for (std::size_t t = 0; t < diag; ++t)
            if (!reduce_at(t))
                break;
        SmithDecomposition out{std::move(u_), std::move(s_), std::move(v_), {}};
        for (std::size_t i = 0; i < diag; ++i)
            out.factors.push_back(out.s(i, i));
        return out;
    }

  private:
    // Smallest |entry| != 0 in the block rows >= t, cols >= t; first in row-major order on ties.
    std::optional<std::pair<std::size_t, std::size_t>> pick_pivot(std::size_t t) const {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        for (std::size_t i = t; i < s_.rows(); ++i)
            for (std::size_t j = t; j < s_.cols(); ++j) {
                const Integer& x = s_(i, j);
                if (x == 0)
                    continue;
                if (!best || cmpabs(x, s_(best->first, best->second)) < 0)
                    best = {i, j};
            }
        return best;
    }

    void row_axpy(std::size_t dst, std::size_t src, const Integer& q) {
        // row dst -= q * row src
        for (std::size_t j = 0; j < s_.cols(); ++j)
            s_(dst, j) -= q * s_(src, j);
        for (std::size_t j = 0; j < u_.cols(); ++j)
            u_(dst, j) -= q * u_(src, j);
    }

    void col_axpy(std::size_t dst, std::size_t src, const Integer& q) {
        for (std::size_t i = 0; i < s_.rows(); ++i)
            s_(i, dst) -= q * s_(i, src);
        for (std::size_t i = 0; i < v_.rows(); ++i)
            v_(i, dst) -= q * v_(i, src);
    }

    // Returns false when the remaining block is zero.
    bool reduce_at(std::size_t t) {
        for (;;) {
            auto piv = pick_pivot(t);
            if (!piv)
                return false;
            s_.swap_rows(t, piv->first);
            u_.swap_rows(t, piv->first);
            s_.swap_cols(t, piv->second);
            v_.swap_cols(t, piv->second);

            bool dirty = false;
            Integer q;
            for (std::size_t i = t + 1; i < s_.rows(); ++i) {
                if (s_(i, t) == 0)
                    continue;
                mpz_tdiv_q(q.get_mpz_t(), s_(i, t).get_mpz_t(), s_(t, t).get_mpz_t());
                if (q != 0)
                    row_axpy(i, t, q);
                dirty = dirty || s_(i, t) != 0;
            }
            for (std::size_t j = t + 1; j < s_.cols(); ++j) {
                if (s_(t, j) == 0)
                    continue;
                mpz_tdiv_q(q.get_mpz_t(), s_(t, j).get_mpz_t(), s_(t, t).get_mpz_t());
                if (q != 0)
                    col_axpy(j, t, q);
                dirty = dirty || s_(t, j) != 0;
            }
            if (dirty)
                continue;

            // Row and column t are clear; enforce divisibility on the rest.
            bool fixed = false;
            for (std::size_t i = t + 1; i < s_.rows() && !fixed; ++i)
                for (std::size_t j = t + 1; j < s_.cols(); ++j)
                    if (!mpz_divisible_p(s_(i, j).get_mpz_t(), s_(t, t).get_mpz_t())) {
                        row_axpy(t, i, Integer(-1));
                        fixed = true;
                        break;
                    }
            if (fixed)
                continue;

            if (s_(t, t) < 0) {
                for (std::size_t j = 0; j < s_.cols(); ++j)
                    s_(t, j) = -s_(t, j);
                for (std::size_t j = 0; j < u_.cols(); ++j)
                    u_(t, j) = -u_(t, j);
            }
            return true;
        }
    }

    IntegerMatrix s_;
    IntegerMatrix u_;
    IntegerMatrix v_;
};

} // namespace detail

/// Deterministic: pivot is the smallest nonzero |entry| of the active block,
/// ties broken by row-major position.
inline SmithDecomposition smith_normal_form(const IntegerMatrix& m) { return detail::SmithReducer(m).run(); }

} // namespace ktorus
