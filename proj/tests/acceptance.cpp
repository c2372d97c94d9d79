// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any fails.

#include "ktorus/ktorus.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace ktorus;

namespace {

// Tolerances. Group and matrix comparisons are exact; only the float norms have one.
constexpr double kNormThreshold = 1e-3;
constexpr unsigned kNormMaxPower = 64;
constexpr double kHalfNormTolerance = 1e-12;

constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
    bool ok = true;
    std::size_t checks = 0;
    std::string detail;

    void expect(bool cond, const std::string& what) {
        ++checks;
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

AbelianGroup group(std::size_t free_rank, std::vector<Integer> torsion) {
    return AbelianGroup::from_cyclic_orders(free_rank, std::move(torsion));
}

std::string show(const IntegerMatrix& m) { return to_string(m); }

bool has_note(const KTheoryResult& r, const std::string& prefix) {
    return std::any_of(r.notes.begin(), r.notes.end(), [&](const std::string& n) { return n.rfind(prefix, 0) == 0; });
}

const std::vector<IntegerMatrix>& worked_examples() {
    static const std::vector<IntegerMatrix> xs = {
        {{0, 1}, {2, 0}}, {{1, 1}, {-1, 1}}, {{2, 1}, {-1, 2}}, {{2, -1}, {1, -3}}};
    return xs;
}

// The 200 random dilation matrices shared by criteria 3 and 6.
const std::vector<DilationMatrix>& random_family() {
    static const std::vector<DilationMatrix> xs = [] {
        Rng rng(kSeed);
        std::vector<DilationMatrix> out;
        for (int i = 0; i < 200; ++i)
            out.push_back(random_dilation_matrix(rng, 2 + i % 4));
        return out;
    }();
    return xs;
}

Outcome criterion1() {
    Outcome o;
    const std::vector<std::pair<AbelianGroup, AbelianGroup>> expect = {
        {group(0, {2}), group(0, {})},
        {group(1, {}), group(1, {})},
        {group(1, {4}), group(1, {2})},
        {group(0, {2, 4}), group(0, {5})},
    };
    for (std::size_t i = 0; i < expect.size(); ++i) {
        const auto r = kgroups(worked_examples()[i]);
        o.expect(r.k0 == expect[i].first && r.k1 == expect[i].second,
                 show(worked_examples()[i]) + " gave " + to_string(r.k0) + " / " + to_string(r.k1));
    }
    return o;
}

Outcome criterion2() {
    Outcome o;
    for (long n : {2L, 3L, 5L, 10L}) {
        const auto r = kgroups(IntegerMatrix{{n}});
        o.expect(r.k0 == group(1, {n - 1}) && r.k1 == group(1, {}),
                 "N = " + std::to_string(n) + ": " + to_string(r.k0) + " / " + to_string(r.k1));
    }
    for (long n : {-2L, -3L}) {
        const auto r = kgroups(IntegerMatrix{{n}});
        o.expect(r.k1 == group(0, {2}), "N = " + std::to_string(n) + ": K1 = " + to_string(r.k1));
        o.expect(r.k0 == group(0, {-n - 1}), "N = " + std::to_string(n) + ": K0 = " + to_string(r.k0));
        o.expect(has_note(r, "corollary-discrepancy"), "N = " + std::to_string(n) + ": note missing");
    }
    return o;
}

Outcome criterion3() {
    Outcome o;
    for (const auto& a : random_family()) {
        const Integer n_abs = abs(a.det());
        for (std::size_t n = 0; n <= a.dim(); ++n) {
            const IntegerMatrix c = compound_c(a.matrix(), n);
            const IntegerMatrix b = adjugate_compound_b(a, n);
            const IntegerMatrix target = IntegerMatrix::scalar(c.rows(), n_abs);
            o.expect(b * c == target && c * b == target, show(a.matrix()) + " grade " + std::to_string(n));
        }
    }
    return o;
}

Outcome criterion4() {
    Outcome o;
    Rng rng(kSeed + 4);
    for (int i = 0; i < 100; ++i) {
        const std::size_t d = 2 + i % 3;
        const IntegerMatrix a = random_integer_matrix(rng, d, d, -9, 9);
        const Integer det = oracle::permutation_determinant(a);
        for (std::size_t n = 1; n < d; ++n) {
            const auto js = enumerate_subsets(d, n);
            for (const auto& j : js) {
                o.expect(laplace_identity_diag(a, n, j) == det, show(a) + " diagonal, grade " + std::to_string(n));
                for (const auto& l : js)
                    if (l.rank != j.rank)
                        o.expect(laplace_identity_offdiag(a, n, j, l) == 0,
                                 show(a) + " off-diagonal, grade " + std::to_string(n));
            }
        }
    }
    return o;
}

Outcome criterion5() {
    Outcome o;
    for (std::size_t d = 1; d <= 8; ++d)
        for (std::size_t n = 0; n <= d; ++n) {
            const auto subs = enumerate_subsets(d, n);
            for (const auto& k : subs)
                for (const auto& j : subs)
                    o.expect(tau_sign(k) * tau_sign(j) == sign_product_formula(k, j),
                             "d = " + std::to_string(d) + ", n = " + std::to_string(n));
        }
    return o;
}

Outcome criterion6() {
    Outcome o;
    for (const auto& a : random_family()) {
        const std::size_t d = a.dim();
        for (std::size_t n = 1; n < d; ++n)
            o.expect(determinant(one_minus_b(a, n)) != 0, show(a.matrix()) + " grade " + std::to_string(n));
        const Integer top = one_minus_b(a, d)(0, 0);
        o.expect(top == (a.det() > 1 ? 0 : 2), show(a.matrix()) + " top grade gives " + top.get_str());
    }
    return o;
}

Outcome criterion7() {
    Outcome o;
    Rng rng(kSeed + 7);
    for (int i = 0; i < 500; ++i) {
        const DilationMatrix a = random_dilation_matrix(rng, 2);
        const IntegerMatrix& m = a.matrix();
        const Integer det = a.det();
        const long s = det > 1 ? 1 : -1;
        IntegerMatrix x(2, 2);
        x(0, 0) = 1 - s * m(0, 0);
        x(0, 1) = s * m(0, 1);
        x(1, 0) = s * m(1, 0);
        x(1, 1) = 1 - s * m(1, 1);
        const AbelianGroup k0 = det > 1 ? group(1, {det - 1}) : group(0, {abs(det) - 1, 2});
        const AbelianGroup k1 = group(det > 1 ? 1 : 0, oracle::smith_factors_2x2(x));
        const auto r = kgroups(a);
        o.expect(r.k0 == k0 && r.k1 == k1, show(m) + ": " + to_string(r.k0) + " / " + to_string(r.k1));
    }
    return o;
}

Outcome criterion8() {
    Outcome o;
    Rng rng(kSeed + 8);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t d = 1 + i % 3;
        const DilationMatrix a = random_dilation_matrix(rng, d, -3, 3, 16);
        const ExelSystem sys(a.matrix());
        const FilterBank fb = build_filterbank(a);
        const LaurentPolynomial f = random_monomial(rng, d), g = random_monomial(rng, d);
        const std::string where = show(a.matrix()) + " f = " + to_string(f) + " g = " + to_string(g);
        o.expect(sys.transfer(sys.alpha(f) * g) == f * sys.transfer(g), "transfer axiom at " + where);
        o.expect(sys.alpha(f * g) == sys.alpha(f) * sys.alpha(g), "alpha multiplicativity at " + where);
        o.expect(omega(fb, f * g) == omega(fb, f) * omega(fb, g), "Omega multiplicativity at " + where);
        OmegaMatrix diag(fb.n, d);
        for (std::size_t k = 0; k < fb.n; ++k)
            diag(k, k) = f;
        o.expect(omega(fb, sys.alpha(f)) == diag, "Omega(alpha f) at " + where);
        o.expect(reconstruct(fb, f) == f, "reconstruction at " + where);
    }
    for (int i = 0; i < 100; ++i) {
        const DilationMatrix a = random_dilation_matrix(rng, 1 + i % 4);
        const FilterBank fb = build_filterbank(a);
        o.expect(check_orthonormal(fb).ok, "filter bank of " + show(a.matrix()));
    }
    return o;
}

Outcome criterion9() {
    Outcome o;
    Rng rng(kSeed + 9);
    for (int i = 0; i < 200; ++i) {
        const std::size_t d = 1 + i % 4;
        const IntegerMatrix a = random_integer_matrix(rng, d, d, -9, 9);
        const IntegerMatrix b = random_integer_matrix(rng, d, d, -9, 9);
        const Integer det = determinant(a);
        o.expect(det == oracle::permutation_determinant(a), "Bareiss vs permutations at " + show(a));

        const auto snf = smith_normal_form(a);
        o.expect(snf.u * a * snf.v == snf.s && is_unimodular(snf.u) && is_unimodular(snf.v),
                 "u m v = s at " + show(a));
        o.expect(snf.factors == oracle::smith_factors_by_minors(a), "invariant factors at " + show(a));

        for (std::size_t n = 1; n <= d; ++n) {
            o.expect(compound_c(a * b, n) == compound_c(b, n) * compound_c(a, n),
                     "functoriality at " + show(a) + ", grade " + std::to_string(n));
            Integer expect;
            mpz_pow_ui(expect.get_mpz_t(), det.get_mpz_t(), binomial_count(d - 1, n - 1));
            o.expect(determinant(compound_c(a, n)) == expect,
                     "Sylvester-Franke at " + show(a) + ", grade " + std::to_string(n));
        }
    }
    for (int i = 0; i < 100; ++i) {
        const std::size_t d = 2 + i % 3;
        const DilationMatrix a = random_dilation_matrix(rng, d);
        o.expect(b1_closed_form(a.matrix()) == adjugate_compound_b(a, 1), "B_1 closed form at " + show(a.matrix()));
        o.expect(bd1_closed_form(a.matrix()) == adjugate_compound_b(a, d - 1),
                 "B_(d-1) closed form at " + show(a.matrix()));
    }
    return o;
}

Outcome criterion10() {
    Outcome o;
    for (const auto& m : worked_examples()) {
        const auto r = norm_decay(DilationMatrix::from(m), kNormThreshold, kNormMaxPower);
        o.expect(r.index.has_value(), show(m) + " not below threshold by n = 64");
        if (r.index)
            o.expect(r.norms[*r.index - 1] < kNormThreshold, show(m) + " reported norm above threshold");
    }
    const auto r = norm_decay(DilationMatrix::from(IntegerMatrix{{0, 1}, {2, 0}}), kNormThreshold, kNormMaxPower);
    o.expect(r.norms.size() >= 2 && std::abs(r.norms[1] - 0.5) <= kHalfNormTolerance, "norm at n = 2 is not 0.5");
    return o;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"worked examples, exact K-groups", criterion1},
        {"circle family N in {2,3,5,10,-2,-3}", criterion2},
        {"B_n C_n = C_n B_n = |det| on 200 dilations, d = 2..5", criterion3},
        {"Laplace identities on 100 integer matrices, d <= 4", criterion4},
        {"sign product formula, exhaustive d <= 8", criterion5},
        {"det(1 - B_n) != 0 and top grade in {0, 2}", criterion6},
        {"2x2 closed forms on 500 dilations", criterion7},
        {"bimodule identities on 1000 monomial instances, 100 filter banks", criterion8},
        {"oracle equivalences", criterion9},
        {"norm decay below 1e-3 by n = 64; 0.5 at n = 2", criterion10},
    };
    int failed = 0;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream line;
        line << (o.ok ? "[PASS]" : "[FAIL]") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
             << o.checks << " checks, " << s << " s)";
        if (!o.ok) {
            line << " -- " << o.detail;
            ++failed;
        }
        std::cout << line.str() << std::endl;
    }
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (failed ? "FAILED " : "ALL PASSED ") << "(" << total << " s)" << std::endl;
    return failed ? 1 : 0;
}
