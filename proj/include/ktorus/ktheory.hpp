#pragma once

#include "ktorus/abelian_group.hpp"
#include "ktorus/dilation.hpp"
#include "ktorus/errors.hpp"
#include "ktorus/exterior.hpp"
#include "ktorus/linalg.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace ktorus {

enum class KCase { det_positive_odd_d, det_positive_even_d, det_negative };

inline std::string to_string(KCase c) {
    switch (c) {
    case KCase::det_positive_odd_d:
        return "det>1/odd-d";
    case KCase::det_positive_even_d:
        return "det>1/even-d";
    case KCase::det_negative:
        return "det<-1";
    }
    return "?";
}

/// Contribution of grade n: coker(1 - B_n) lands in K_parity.
struct GradeSummand {
    std::size_t n = 0;
    IntegerMatrix one_minus_b;
    AbelianGroup cokernel;
    int parity = 0;
};

/// Image of [1] in coker(1 - B_0) = Z/(|det| - 1): the residue 1 modulo |det| - 1.
struct IdentityClass {
    Integer modulus;
    Integer residue;
    bool is_zero() const { return residue == 0; }
};

inline std::string to_string(const IdentityClass& c) {
    if (c.is_zero())
        return "0";
    return c.residue.get_str() + " mod " + c.modulus.get_str();
}

struct KTheoryResult {
    std::size_t d = 0;
    Integer det;
    KCase case_tag = KCase::det_negative;
    AbelianGroup k0;
    AbelianGroup k1;
    std::vector<GradeSummand> summands; // grades 0..d, before canonicalisation
    /// K-group (0 or 1) receiving the extra Z from ker(1 - B_d); -1 when det < -1.
    int kernel_free_summand = -1;
    IdentityClass identity_class;
    std::vector<std::string> notes;
};

inline IntegerMatrix one_minus_b(const DilationMatrix& a, std::size_t n) {
    const IntegerMatrix b = adjugate_compound_b(a, n);
    return IntegerMatrix::identity(b.rows()) - b;
}

inline IntegerMatrix one_minus_b(const IntegerMatrix& a, std::size_t n) {
    detail::require_grade(a, n, "one_minus_b");
    return one_minus_b(DilationMatrix::from(a), n);
}

inline IdentityClass identity_class(const DilationMatrix& a) {
    IdentityClass c;
    c.modulus = abs(a.det()) - 1;
    c.residue = c.modulus == 1 ? Integer(0) : Integer(1);
    return c;
}

inline std::string corollary_discrepancy_note(const Integer& n) {
    return "corollary-discrepancy: N = " + n.get_str() + " < -1 on the circle; K0 = coker(1 - |N|) = Z/" +
           Integer(abs(n) - 1).get_str() + " is reported, not the closed form Z/(N-1) = Z/" +
           Integer(abs(n - 1)).get_str();
}

/// K_0 and K_1 of the crossed product of C(T^d) by the endomorphism of a.
inline KTheoryResult kgroups(const DilationMatrix& a) {
    KTheoryResult r;
    r.d = a.dim();
    r.det = a.det();
    const bool positive = r.det > 0;
    r.case_tag = !positive ? KCase::det_negative
                 : (r.d % 2) ? KCase::det_positive_odd_d
                             : KCase::det_positive_even_d;

    std::vector<Integer> torsion[2];
    std::size_t free_rank[2] = {0, 0};
    for (std::size_t n = 0; n <= r.d; ++n) {
        GradeSummand s;
        s.n = n;
        s.one_minus_b = one_minus_b(a, n);
        s.cokernel = cokernel(s.one_minus_b);
        s.parity = static_cast<int>(n % 2);
        free_rank[s.parity] += s.cokernel.free_rank();
        torsion[s.parity].insert(torsion[s.parity].end(), s.cokernel.torsion().begin(), s.cokernel.torsion().end());
        r.summands.push_back(std::move(s));
    }
    if (positive) {
        // 1 - B_d = 0: its kernel Z splits off into the group of the other parity.
        r.kernel_free_summand = static_cast<int>((r.d + 1) % 2);
        ++free_rank[r.kernel_free_summand];
    }
    r.k0 = AbelianGroup::from_cyclic_orders(free_rank[0], torsion[0]);
    r.k1 = AbelianGroup::from_cyclic_orders(free_rank[1], torsion[1]);
    r.identity_class = identity_class(a);
    for (const auto& note : a.certificate().notes)
        r.notes.push_back(note);
    if (r.d == 1 && r.det < -1)
        r.notes.push_back(corollary_discrepancy_note(r.det));
    return r;
}

inline KTheoryResult kgroups(const IntegerMatrix& a) { return kgroups(DilationMatrix::from(a)); }

struct GradeDeterminant {
    std::size_t n = 0;
    Integer det_one_minus_b;
};

/// det(1 - B_n) for all grades. Throws ConsistencyError if the values contradict
/// 1 - B_0 = 1 - |det|, det(1 - B_n) != 0 for 0 < n < d, and 1 - B_d in {0, 2}.
inline std::vector<GradeDeterminant> injectivity_report(const DilationMatrix& a) {
    std::vector<GradeDeterminant> out;
    const std::size_t d = a.dim();
    for (std::size_t n = 0; n <= d; ++n) {
        GradeDeterminant g{n, determinant(one_minus_b(a, n))};
        bool ok = true;
        if (n == 0)
            ok = g.det_one_minus_b == 1 - abs(a.det());
        else if (n == d)
            ok = g.det_one_minus_b == (a.det() > 0 ? 0 : 2);
        else
            ok = g.det_one_minus_b != 0;
        if (!ok)
            throw ConsistencyError("det(1 - B_" + std::to_string(n) + ") = " + g.det_one_minus_b.get_str() +
                                   " contradicts the grade-" + std::to_string(n) + " constraint");
        out.push_back(std::move(g));
    }
    return out;
}

} // namespace ktorus
