#pragma once

#include "ktorus/errors.hpp"
#include "ktorus/linalg.hpp"
#include "ktorus/matrix.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ktorus {

/// One reduction of the Schur-Cohn recursion on a polynomial of the given degree.
struct SchurCohnStep {
    std::size_t degree = 0;
    Integer leading;
    Integer constant;
    enum class Outcome { pass, degenerate, fail } outcome = Outcome::pass;
};

/// Exact evidence that every eigenvalue of a lies strictly outside the unit circle
/// (or the reason it does not).
struct DilationCertificate {
    bool is_dilation = false;
    Integer det;
    std::vector<Integer> charpoly;           // det(xI - a), lowest degree first, monic
    std::vector<SchurCohnStep> evidence;     // run on the reversed characteristic polynomial
    std::vector<std::string> notes;
    std::vector<double> float_eigenvalue_moduli; // advisory only, ascending
};

class NotDilationError : public std::domain_error {
  public:
    explicit NotDilationError(DilationCertificate cert)
        : std::domain_error("not a dilation matrix"), certificate_(std::move(cert)) {}
    const DilationCertificate& certificate() const noexcept { return certificate_; }

  private:
    DilationCertificate certificate_;
};

inline Eigen::MatrixXd to_eigen(const IntegerMatrix& m) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).get_d();
    return out;
}

inline Eigen::MatrixXd to_eigen(const RationalMatrix& m) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).get_d();
    return out;
}

inline std::vector<double> eigenvalue_moduli(const IntegerMatrix& a) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(to_eigen(a), false);
    std::vector<double> mods;
    for (const std::complex<double>& z : solver.eigenvalues())
        mods.push_back(std::abs(z));
    std::sort(mods.begin(), mods.end());
    return mods;
}

/// Schur-Cohn recursion for "all roots strictly inside the unit disk".
/// coeffs are lowest degree first with a nonzero leading entry.
inline bool schur_cohn_inside_unit_disk(std::vector<Integer> coeffs, std::vector<SchurCohnStep>& steps) {
    while (coeffs.size() > 1) {
        const std::size_t k = coeffs.size() - 1;
        SchurCohnStep step{k, coeffs[k], coeffs[0], SchurCohnStep::Outcome::pass};
        const int c = cmpabs(coeffs[0], coeffs[k]);
        if (c >= 0) {
            step.outcome = c == 0 ? SchurCohnStep::Outcome::degenerate : SchurCohnStep::Outcome::fail;
            steps.push_back(std::move(step));
            return false;
        }
        steps.push_back(std::move(step));
        // (a_k p(x) - a_0 p*(x)) / x
        std::vector<Integer> next(k);
        for (std::size_t i = 0; i < k; ++i)
            next[i] = coeffs[k] * coeffs[i + 1] - coeffs[0] * coeffs[k - 1 - i];
        Integer g = 0;
        for (const auto& x : next)
            g = gcd(g, x);
        if (g > 1)
            for (auto& x : next)
                mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
        coeffs = std::move(next);
    }
    return true;
}

inline DilationCertificate certify_dilation(const IntegerMatrix& a) {
    detail::require_square(a, "certify_dilation");
    if (a.rows() == 0)
        throw DimensionError("certify_dilation: empty matrix");
    DilationCertificate cert;
    const std::size_t d = a.rows();
    cert.det = determinant(a);
    cert.charpoly = characteristic_polynomial(a);
    cert.float_eigenvalue_moduli = eigenvalue_moduli(a);

    if (cert.charpoly[0] == 0) {
        cert.notes.push_back("eigenvalue 0");
        return cert;
    }
    // Reversal x^d p(1/x) maps roots to their reciprocals.
    std::vector<Integer> reversed(cert.charpoly.rbegin(), cert.charpoly.rend());
    cert.is_dilation = schur_cohn_inside_unit_disk(std::move(reversed), cert.evidence);

    if (!cert.is_dilation) {
        Integer at_one = 0, at_minus_one = 0;
        for (std::size_t i = 0; i <= d; ++i) {
            at_one += cert.charpoly[i];
            at_minus_one += (i % 2) ? Integer(-cert.charpoly[i]) : cert.charpoly[i];
        }
        if (at_one == 0)
            cert.notes.push_back("unit-modulus eigenvalue: 1");
        if (at_minus_one == 0)
            cert.notes.push_back("unit-modulus eigenvalue: -1");
        const auto& last = cert.evidence.back();
        if (last.outcome == SchurCohnStep::Outcome::degenerate)
            cert.notes.push_back("degenerate step at degree " + std::to_string(last.degree) +
                                 ": boundary condition, some eigenvalue has modulus <= 1");
        else
            cert.notes.push_back("failed at degree " + std::to_string(last.degree) +
                                 ": some eigenvalue has modulus < 1");
    }
    if (d == 1)
        cert.notes.push_back("d = 1: circle case, treated with the general d >= 1 formulas");
    return cert;
}

/// A square integer matrix whose eigenvalues all have modulus > 1.
class DilationMatrix {
  public:
    /// Throws NotDilationError carrying the failed certificate.
    static DilationMatrix from(const IntegerMatrix& a) {
        DilationCertificate cert = certify_dilation(a);
        if (!cert.is_dilation)
            throw NotDilationError(std::move(cert));
        return DilationMatrix(a, std::move(cert));
    }

    const IntegerMatrix& matrix() const noexcept { return a_; }
    const DilationCertificate& certificate() const noexcept { return cert_; }
    const Integer& det() const noexcept { return cert_.det; }
    std::size_t dim() const noexcept { return a_.rows(); }

  private:
    DilationMatrix(IntegerMatrix a, DilationCertificate cert) : a_(std::move(a)), cert_(std::move(cert)) {}

    IntegerMatrix a_;
    DilationCertificate cert_;
};

inline double spectral_norm(const RationalMatrix& m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(m));
    return svd.singularValues()(0);
}

struct NormDecayResult {
    std::optional<unsigned> index; // empty: not yet decayed within n_max
    std::vector<double> norms;     // norms[n-1] = ||A^{-n}||, for every n tried
};

/// Smallest n in [1, n_max] with ||A^{-n}||_2 < epsilon. Powers are exact; only the
/// norm evaluation is in floating point.
inline NormDecayResult norm_decay(const DilationMatrix& a, double epsilon, unsigned n_max) {
    if (!(epsilon > 0))
        throw std::invalid_argument("norm_decay: epsilon must be positive");
    const RationalMatrix inv = rational_inverse(a.matrix());
    RationalMatrix power = inv;
    NormDecayResult out;
    for (unsigned n = 1; n <= n_max; ++n) {
        if (n > 1)
            power = power * inv;
        out.norms.push_back(spectral_norm(power));
        if (out.norms.back() < epsilon) {
            out.index = n;
            break;
        }
    }
    return out;
}

} // namespace ktorus
