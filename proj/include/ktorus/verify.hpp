#pragma once

#include "ktorus/bimodule.hpp"
#include "ktorus/exterior.hpp"
#include "ktorus/ktheory.hpp"
#include "ktorus/random.hpp"

#include <cstddef>
#include <exception>
#include <functional>
#include <string>
#include <vector>

namespace ktorus {

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::size_t checks = 0;
    std::string failure; // first failure, empty when passed
};

namespace detail {

class SuiteRecorder {
  public:
    explicit SuiteRecorder(std::string name) { r_.name = std::move(name); }

    void expect(bool cond, const std::function<std::string()>& what) {
        ++r_.checks;
        if (!cond && r_.passed) {
            r_.passed = false;
            r_.failure = what();
        }
    }

    SuiteResult finish() && { return std::move(r_); }

  private:
    SuiteResult r_;
};

inline SuiteResult guarded(const std::string& name, const std::function<SuiteResult()>& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        return SuiteResult{name, false, 0, std::string("exception: ") + e.what()};
    }
}

} // namespace detail

/// B_n C_n = C_n B_n = |det| * 1 for every grade.
inline SuiteResult verify_compound_identity(const DilationMatrix& a) {
    return detail::guarded("compound-identity", [&] {
        detail::SuiteRecorder rec("compound-identity");
        const Integer n_abs = abs(a.det());
        for (std::size_t n = 0; n <= a.dim(); ++n) {
            const IntegerMatrix c = compound_c(a.matrix(), n);
            const IntegerMatrix b = adjugate_compound_b(a, n);
            const IntegerMatrix target = IntegerMatrix::scalar(c.rows(), n_abs);
            rec.expect(b * c == target && c * b == target,
                       [&] { return "B_n C_n != |det| 1 at grade " + std::to_string(n); });
        }
        return std::move(rec).finish();
    });
}

/// Laplace-type expansions: diagonal sum = det, off-diagonal sum = 0. Any square matrix.
inline SuiteResult verify_laplace(const IntegerMatrix& a) {
    return detail::guarded("laplace", [&] {
        detail::SuiteRecorder rec("laplace");
        const Integer det = determinant(a);
        for (std::size_t n = 1; n + 1 <= a.rows(); ++n) {
            const auto subsets = enumerate_subsets(a.rows(), n);
            for (const auto& j : subsets)
                for (const auto& l : subsets) {
                    if (j == l)
                        rec.expect(laplace_identity_diag(a, n, j) == det,
                                   [&] { return "diagonal sum != det at n=" + std::to_string(n); });
                    else
                        rec.expect(laplace_identity_offdiag(a, n, j, l) == 0,
                                   [&] { return "off-diagonal sum != 0 at n=" + std::to_string(n); });
                }
        }
        return std::move(rec).finish();
    });
}

/// tau_K tau_J parity by inversion count against prod (-1)^{j_i + k_i}, all n <= d.
inline SuiteResult verify_sign_formula(std::size_t d) {
    return detail::guarded("sign-formula", [&] {
        detail::SuiteRecorder rec("sign-formula");
        for (std::size_t n = 0; n <= d; ++n) {
            const auto subsets = enumerate_subsets(d, n);
            std::vector<int> signs;
            for (const auto& s : subsets)
                signs.push_back(tau_sign(s));
            for (std::size_t i = 0; i < subsets.size(); ++i)
                for (std::size_t j = 0; j < subsets.size(); ++j)
                    rec.expect(signs[i] * signs[j] == sign_product_formula(subsets[i], subsets[j]),
                               [&] { return "sign mismatch at d=" + std::to_string(d) + " n=" + std::to_string(n); });
        }
        return std::move(rec).finish();
    });
}

inline SuiteResult verify_injectivity(const DilationMatrix& a) {
    return detail::guarded("injectivity", [&] {
        detail::SuiteRecorder rec("injectivity");
        const auto report = injectivity_report(a); // throws on violation
        rec.expect(report.size() == a.dim() + 1, [] { return "missing grades"; });
        return std::move(rec).finish();
    });
}

/// B_1 = |det|(A^T)^{-1} and the (-1)^{k+l} a_{k,l} form of B_{d-1}.
inline SuiteResult verify_closed_forms(const DilationMatrix& a) {
    return detail::guarded("closed-forms", [&] {
        detail::SuiteRecorder rec("closed-forms");
        const std::size_t d = a.dim();
        rec.expect(b1_closed_form(a.matrix()) == adjugate_compound_b(a, 1), [] { return "B_1 closed form"; });
        rec.expect(bd1_closed_form(a.matrix()) == adjugate_compound_b(a, d - 1),
                   [] { return "B_{d-1} closed form"; });
        return std::move(rec).finish();
    });
}

inline SuiteResult verify_filterbank(const DilationMatrix& a) {
    return detail::guarded("filterbank", [&] {
        detail::SuiteRecorder rec("filterbank");
        const FilterBank fb = build_filterbank(a);
        const OrthonormalReport rep = check_orthonormal(fb);
        rec.expect(rep.ok, [&] {
            if (!rep.cardinality_ok)
                return std::string("filter count != |det|");
            return "pair (" + std::to_string(rep.offending_pair->first) + ", " +
                   std::to_string(rep.offending_pair->second) + ") not orthonormal";
        });
        rec.expect(fb.gammas.front() == Exponent(a.dim(), 0), [] { return "first filter is not constant"; });
        return std::move(rec).finish();
    });
}

/// Bimodule identities on random monomials. The Omega checks need N x N matrices
/// and are skipped (not failed) when N > omega_limit.
inline SuiteResult verify_bimodule(const DilationMatrix& a, Rng& rng, std::size_t samples = 4,
                                   std::size_t omega_limit = 64) {
    return detail::guarded("bimodule", [&] {
        detail::SuiteRecorder rec("bimodule");
        const ExelSystem sys(a.matrix());
        const FilterBank fb = build_filterbank(a);
        const std::size_t d = a.dim();
        const bool with_omega = fb.n <= omega_limit;
        for (std::size_t s = 0; s < samples; ++s) {
            const LaurentPolynomial f = random_monomial(rng, d);
            const LaurentPolynomial g = random_monomial(rng, d);
            rec.expect(sys.transfer(sys.alpha(f) * g) == f * sys.transfer(g),
                       [] { return "L(alpha(f) g) != f L(g)"; });
            rec.expect(sys.alpha(f * g) == sys.alpha(f) * sys.alpha(g), [] { return "alpha not multiplicative"; });
            rec.expect(reconstruct(fb, f) == f, [] { return "reconstruction failed"; });
            if (with_omega) {
                rec.expect(omega(fb, f * g) == omega(fb, f) * omega(fb, g), [] { return "Omega not multiplicative"; });
                OmegaMatrix diag(fb.n, d);
                for (std::size_t i = 0; i < fb.n; ++i)
                    diag(i, i) = f;
                rec.expect(omega(fb, sys.alpha(f)) == diag, [] { return "Omega(alpha(f)) != f 1"; });
            }
        }
        return std::move(rec).finish();
    });
}

/// Every suite on one certified matrix.
inline std::vector<SuiteResult> verify_all(const DilationMatrix& a, Rng& rng) {
    std::vector<SuiteResult> out;
    out.push_back(verify_compound_identity(a));
    out.push_back(verify_laplace(a.matrix()));
    out.push_back(verify_sign_formula(a.dim()));
    out.push_back(verify_injectivity(a));
    out.push_back(verify_closed_forms(a));
    out.push_back(verify_filterbank(a));
    out.push_back(verify_bimodule(a, rng));
    return out;
}

} // namespace ktorus
