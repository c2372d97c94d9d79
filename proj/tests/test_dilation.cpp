#include "ktorus/dilation.hpp"
#include "ktorus/random.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace ktorus;

TEST(CertifyDilation, Examples) {
    EXPECT_TRUE(certify_dilation(IntegerMatrix{{1, 1}, {-1, 1}}).is_dilation);
    EXPECT_TRUE(certify_dilation(IntegerMatrix{{0, 1}, {2, 0}}).is_dilation);

    const auto cert = certify_dilation(IntegerMatrix{{2, 0}, {0, 1}});
    EXPECT_FALSE(cert.is_dilation);
    ASSERT_FALSE(cert.evidence.empty());
    EXPECT_EQ(cert.evidence.back().outcome, SchurCohnStep::Outcome::degenerate);
    EXPECT_NE(std::find(cert.notes.begin(), cert.notes.end(), "unit-modulus eigenvalue: 1"), cert.notes.end());
}

TEST(CertifyDilation, CertificateShape) {
    const auto cert = certify_dilation(IntegerMatrix{{2, 1}, {-1, 2}});
    EXPECT_TRUE(cert.is_dilation);
    EXPECT_EQ(cert.det, 5);
    ASSERT_EQ(cert.charpoly.size(), 3u);
    EXPECT_EQ(cert.charpoly.back(), 1);
    EXPECT_EQ(cert.evidence.size(), 2u);
    for (const auto& step : cert.evidence)
        EXPECT_EQ(step.outcome, SchurCohnStep::Outcome::pass);
    ASSERT_EQ(cert.float_eigenvalue_moduli.size(), 2u);
    EXPECT_NEAR(cert.float_eigenvalue_moduli[0], std::sqrt(5.0), 1e-12);
}

TEST(CertifyDilation, EdgeCases) {
    EXPECT_FALSE(certify_dilation(IntegerMatrix{{0, 1}, {0, 0}}).is_dilation); // nilpotent
    EXPECT_FALSE(certify_dilation(IntegerMatrix{{-1}}).is_dilation);
    EXPECT_FALSE(certify_dilation(IntegerMatrix{{1}}).is_dilation);
    EXPECT_TRUE(certify_dilation(IntegerMatrix{{-2}}).is_dilation);
    EXPECT_TRUE(certify_dilation(IntegerMatrix{{2}}).is_dilation);
    // rotation by 90 degrees: eigenvalues +-i on the unit circle
    EXPECT_FALSE(certify_dilation(IntegerMatrix{{0, -1}, {1, 0}}).is_dilation);
    // det 1, eigenvalues (3 +- sqrt 5)/2: one inside the disk
    EXPECT_FALSE(certify_dilation(IntegerMatrix{{2, 1}, {1, 1}}).is_dilation);
    EXPECT_THROW(certify_dilation(IntegerMatrix(2, 3)), DimensionError);
}

TEST(CertifyDilation, AgreesWithFloatEigenvalues) {
    Rng rng(1);
    int compared = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t d = 1 + trial % 4;
        const IntegerMatrix m = random_integer_matrix(rng, d, d, -9, 9);
        const auto cert = certify_dilation(m);
        const auto mods = eigenvalue_moduli(m);
        if (std::any_of(mods.begin(), mods.end(), [](double x) { return std::abs(x - 1) < 1e-6; }))
            continue;
        ++compared;
        const bool float_says = std::all_of(mods.begin(), mods.end(), [](double x) { return x > 1 + 1e-6; });
        ASSERT_EQ(cert.is_dilation, float_says) << m;
        if (cert.is_dilation) {
            EXPECT_GE(abs(cert.det), 2);
        }
    }
    EXPECT_GT(compared, 900);
}

TEST(DilationMatrix, RejectsWithCertificate) {
    try {
        DilationMatrix::from(IntegerMatrix{{2, 0}, {0, 1}});
        FAIL() << "expected NotDilationError";
    } catch (const NotDilationError& e) {
        EXPECT_FALSE(e.certificate().is_dilation);
        EXPECT_EQ(e.certificate().det, 2);
    }
}

TEST(NormDecay, Examples) {
    const auto swap2 = DilationMatrix::from(IntegerMatrix{{0, 1}, {2, 0}});
    auto r = norm_decay(swap2, 0.6, 10);
    ASSERT_TRUE(r.index);
    EXPECT_EQ(*r.index, 2u);
    EXPECT_NEAR(r.norms[1], 0.5, 1e-12);

    const auto two = DilationMatrix::from(IntegerMatrix{{2}});
    EXPECT_EQ(*norm_decay(two, 0.3, 10).index, 2u);
    EXPECT_NEAR(norm_decay(two, 0.3, 10).norms[1], 0.25, 1e-15);
    EXPECT_EQ(*norm_decay(two, 0.6, 10).index, 1u);
}

TEST(NormDecay, ReportsNotYetDecayed) {
    const auto a = DilationMatrix::from(IntegerMatrix{{1, 1}, {-1, 1}});
    const auto r = norm_decay(a, 1e-3, 5);
    EXPECT_FALSE(r.index);
    EXPECT_EQ(r.norms.size(), 5u);
    // |A^{-n}| = 2^{-n/2} for this scaled rotation
    for (unsigned n = 1; n <= 5; ++n)
        EXPECT_NEAR(r.norms[n - 1], std::pow(2.0, -0.5 * n), 1e-12);
}
