#pragma once

#include "ktorus/dilation.hpp"
#include "ktorus/errors.hpp"
#include "ktorus/linalg.hpp"
#include "ktorus/matrix.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace ktorus {

/// n-subset of {1, ..., d}, ascending, with its position in the lexicographic
/// enumeration of all n-subsets (the basis e_J of the n-th exterior power).
struct SubsetIndex {
    std::size_t d = 0;
    std::vector<std::size_t> elements; // 1-based, strictly increasing
    std::size_t rank = 0;

    std::size_t size() const noexcept { return elements.size(); }
    friend bool operator==(const SubsetIndex&, const SubsetIndex&) = default;
};

inline Integer binomial(std::size_t n, std::size_t k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline std::size_t binomial_count(std::size_t n, std::size_t k) { return binomial(n, k).get_ui(); }

/// Lexicographic rank of an ascending n-subset of {1..d}.
inline std::size_t subset_rank(std::size_t d, const std::vector<std::size_t>& elements) {
    const std::size_t n = elements.size();
    std::size_t rank = 0;
    std::size_t prev = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t v = prev + 1; v < elements[i]; ++v)
            rank += binomial_count(d - v, n - i - 1);
        prev = elements[i];
    }
    return rank;
}

inline SubsetIndex make_subset(std::size_t d, std::vector<std::size_t> elements) {
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (elements[i] < 1 || elements[i] > d || (i && elements[i] <= elements[i - 1]))
            throw std::invalid_argument("subset elements must be strictly increasing within [1, d]");
    }
    const std::size_t rank = subset_rank(d, elements);
    return SubsetIndex{d, std::move(elements), rank};
}

inline std::vector<SubsetIndex> enumerate_subsets(std::size_t d, std::size_t n) {
    if (n > d)
        throw GradeError("enumerate_subsets: n > d");
    std::vector<SubsetIndex> out;
    out.reserve(binomial_count(d, n));
    std::vector<std::size_t> cur(n);
    for (std::size_t i = 0; i < n; ++i)
        cur[i] = i + 1;
    for (std::size_t rank = 0;; ++rank) {
        out.push_back(SubsetIndex{d, cur, rank});
        // advance to the next combination in lex order
        std::size_t i = n;
        while (i > 0 && cur[i - 1] == d - n + i)
            --i;
        if (i == 0)
            break;
        ++cur[i - 1];
        for (std::size_t j = i; j < n; ++j)
            cur[j] = cur[j - 1] + 1;
    }
    return out;
}

inline SubsetIndex complement(const SubsetIndex& k) {
    std::vector<std::size_t> rest;
    rest.reserve(k.d - k.size());
    std::size_t p = 0;
    for (std::size_t v = 1; v <= k.d; ++v) {
        if (p < k.size() && k.elements[p] == v)
            ++p;
        else
            rest.push_back(v);
    }
    return make_subset(k.d, std::move(rest));
}

/// Sign of the permutation i -> k_i listing K then its complement, both ascending.
/// Counted by inversions.
inline int tau_sign(const SubsetIndex& k) {
    std::vector<std::size_t> perm = k.elements;
    const SubsetIndex rest = complement(k);
    perm.insert(perm.end(), rest.elements.begin(), rest.elements.end());
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j])
                ++inversions;
    return inversions % 2 ? -1 : 1;
}

/// prod_i (-1)^(j_i + k_i); equals tau_sign(k) * tau_sign(j). Kept as an independent cross-check.
inline int sign_product_formula(const SubsetIndex& k, const SubsetIndex& j) {
    if (k.size() != j.size())
        throw DimensionError("sign_product_formula: subsets differ in size");
    std::size_t s = 0;
    for (std::size_t i = 0; i < k.size(); ++i)
        s += k.elements[i] + j.elements[i];
    return s % 2 ? -1 : 1;
}

inline std::vector<std::size_t> zero_based(const SubsetIndex& s) {
    std::vector<std::size_t> idx(s.elements.begin(), s.elements.end());
    for (auto& x : idx)
        --x;
    return idx;
}

/// det of the submatrix on rows k, columns j.
inline Integer minor(const IntegerMatrix& a, const SubsetIndex& k, const SubsetIndex& j) {
    if (k.size() != j.size())
        throw DimensionError("minor: row and column subsets differ in size");
    if (k.d != a.rows() || j.d != a.cols())
        throw DimensionError("minor: subset ambient dimension does not match matrix");
    return determinant(a.select(zero_based(k), zero_based(j)));
}

namespace detail {

inline void require_grade(const IntegerMatrix& a, std::size_t n, const char* what) {
    require_square(a, what);
    if (n > a.rows())
        throw GradeError(std::string(what) + ": grade out of range");
}

} // namespace detail

/// Matrix of the n-th exterior power of a^T in the lexicographic basis:
/// entry (J, K) is det a_{K,J}.
inline IntegerMatrix compound_c(const IntegerMatrix& a, std::size_t n) {
    detail::require_grade(a, n, "compound_c");
    const auto subsets = enumerate_subsets(a.rows(), n);
    const std::size_t m = subsets.size();
    IntegerMatrix c(m, m);
    for (std::size_t jr = 0; jr < m; ++jr)
        for (std::size_t kr = 0; kr < m; ++kr)
            c(jr, kr) = minor(a, subsets[kr], subsets[jr]);
    return c;
}

/// Entry (K, L) = (-1)^{deg(tau_K tau_L)} det a_{K',L'}, negated when det a < 0.
/// No dilation check; grade 0 gives [|det a|] and grade d gives [sign det a].
inline IntegerMatrix signed_complementary_minors(const IntegerMatrix& a, std::size_t n) {
    detail::require_grade(a, n, "signed_complementary_minors");
    const bool negate = sgn(determinant(a)) < 0;
    const auto subsets = enumerate_subsets(a.rows(), n);
    std::vector<SubsetIndex> rest;
    std::vector<int> signs;
    for (const auto& s : subsets) {
        rest.push_back(complement(s));
        signs.push_back(tau_sign(s));
    }
    const std::size_t m = subsets.size();
    IntegerMatrix b(m, m);
    for (std::size_t kr = 0; kr < m; ++kr)
        for (std::size_t lr = 0; lr < m; ++lr) {
            Integer v = minor(a, rest[kr], rest[lr]);
            if ((signs[kr] * signs[lr] < 0) != negate)
                v = -v;
            b(kr, lr) = std::move(v);
        }
    return b;
}

/// B_n with B_n C_n = C_n B_n = |det a| * 1.
inline IntegerMatrix adjugate_compound_b(const DilationMatrix& a, std::size_t n) {
    return signed_complementary_minors(a.matrix(), n);
}

/// Certifies a first; throws NotDilationError otherwise.
inline IntegerMatrix adjugate_compound_b(const IntegerMatrix& a, std::size_t n) {
    detail::require_grade(a, n, "adjugate_compound_b");
    return adjugate_compound_b(DilationMatrix::from(a), n);
}

/// sum_K (-1)^{deg(tau_K tau_J)} det a_{K,J} det a_{K',J'}; equals det a.
inline Integer laplace_identity_diag(const IntegerMatrix& a, std::size_t n, const SubsetIndex& j) {
    detail::require_grade(a, n, "laplace_identity_diag");
    if (n < 1 || n + 1 > a.rows())
        throw GradeError("laplace_identity_diag: need 1 <= n <= d-1");
    if (j.size() != n || j.d != a.rows())
        throw DimensionError("laplace_identity_diag: J is not an n-subset of {1..d}");
    const SubsetIndex jc = complement(j);
    const int sj = tau_sign(j);
    Integer total = 0;
    for (const auto& k : enumerate_subsets(a.rows(), n)) {
        Integer term = minor(a, k, j) * minor(a, complement(k), jc);
        total += (tau_sign(k) * sj < 0) ? Integer(-term) : term;
    }
    return total;
}

/// sum_K (-1)^{deg(tau_K tau_J)} det a_{K,J} det a_{K',L'} for J != L; equals 0.
inline Integer laplace_identity_offdiag(const IntegerMatrix& a, std::size_t n, const SubsetIndex& j,
                                        const SubsetIndex& l) {
    detail::require_grade(a, n, "laplace_identity_offdiag");
    if (n < 1 || n + 1 > a.rows())
        throw GradeError("laplace_identity_offdiag: need 1 <= n <= d-1");
    if (j.size() != n || l.size() != n || j.d != a.rows() || l.d != a.rows())
        throw DimensionError("laplace_identity_offdiag: J, L must be n-subsets of {1..d}");
    if (j == l)
        throw std::invalid_argument("laplace_identity_offdiag: J == L, use laplace_identity_diag");
    const SubsetIndex lc = complement(l);
    const int sj = tau_sign(j);
    Integer total = 0;
    for (const auto& k : enumerate_subsets(a.rows(), n)) {
        Integer term = minor(a, k, j) * minor(a, complement(k), lc);
        total += (tau_sign(k) * sj < 0) ? Integer(-term) : term;
    }
    return total;
}

/// Conjugation by the basis f_k = e_{{1..d} \ {k}} of the (d-1)-th exterior power.
/// In lexicographic order f_k sits at position d-k, so the relabeling reverses
/// both rows and columns. It is an involution.
inline IntegerMatrix complement_basis_form(const IntegerMatrix& m) {
    const std::size_t n = m.rows();
    IntegerMatrix out(n, m.cols());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = m(n - 1 - i, m.cols() - 1 - j);
    return out;
}

/// |det a| (a^T)^{-1}, i.e. B_1 in the basis e_1..e_d.
inline IntegerMatrix b1_closed_form(const IntegerMatrix& a) {
    detail::require_square(a, "b1_closed_form");
    const Integer det = determinant(a);
    if (det == 0)
        throw SingularMatrixError();
    RationalMatrix inv_t = rational_inverse(to_rational(a.transpose()));
    inv_t *= Rational(abs(det));
    return to_integer(inv_t);
}

/// B_{d-1} from the entry formula (-1)^{k+l} a_{k,l} (sign flipped when det a < 0),
/// which holds in the basis f_k; returned in the lexicographic basis.
inline IntegerMatrix bd1_closed_form(const IntegerMatrix& a) {
    detail::require_square(a, "bd1_closed_form");
    const Integer det = determinant(a);
    if (det == 0)
        throw SingularMatrixError();
    const std::size_t d = a.rows();
    IntegerMatrix f(d, d);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
            const bool odd = ((k + l) % 2 == 1) != (det < 0);
            f(k, l) = odd ? Integer(-a(k, l)) : a(k, l);
        }
    return complement_basis_form(f);
}

/// C_n and B_n for every grade 0..d of a dilation matrix.
struct GradedFamily {
    IntegerMatrix a;
    Integer det;
    std::vector<IntegerMatrix> c;
    std::vector<IntegerMatrix> b;
};

inline GradedFamily graded_family(const DilationMatrix& a) {
    GradedFamily g{a.matrix(), a.det(), {}, {}};
    for (std::size_t n = 0; n <= a.dim(); ++n) {
        g.c.push_back(compound_c(a.matrix(), n));
        g.b.push_back(adjugate_compound_b(a, n));
    }
    return g;
}

} // namespace ktorus
