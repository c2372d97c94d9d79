#include "ktorus/linalg.hpp"
#include "ktorus/random.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace ktorus;

TEST(Determinant, Examples) {
    EXPECT_EQ(determinant(IntegerMatrix{{2, 1}, {-1, 2}}), 5);
    EXPECT_EQ(determinant(IntegerMatrix::identity(3)), 1);
    EXPECT_EQ(determinant(IntegerMatrix{{2, 4}, {6, 8}}), -8);
}

TEST(Determinant, NeedsPivotSwap) {
    EXPECT_EQ(determinant(IntegerMatrix{{0, 1}, {2, 0}}), -2);
    EXPECT_EQ(determinant(IntegerMatrix{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}), -1);
    EXPECT_EQ(determinant(IntegerMatrix{{1, 2}, {2, 4}}), 0);
}

TEST(Determinant, RejectsNonSquare) {
    EXPECT_THROW(determinant(IntegerMatrix(2, 3)), DimensionError);
}

TEST(Determinant, AgreesWithLeibnizExpansion) {
    Rng rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t d = 1 + trial % 5;
        const IntegerMatrix m = random_integer_matrix(rng, d, d, -9, 9);
        ASSERT_EQ(determinant(m), oracle::permutation_determinant(m)) << m;
    }
}

TEST(CharacteristicPolynomial, Examples) {
    using V = std::vector<Integer>;
    EXPECT_EQ(characteristic_polynomial(IntegerMatrix{{3}}), (V{-3, 1}));
    EXPECT_EQ(characteristic_polynomial(IntegerMatrix{{0, 1}, {2, 0}}), (V{-2, 0, 1}));
    EXPECT_EQ(characteristic_polynomial(IntegerMatrix{{1, 1}, {-1, 1}}), (V{2, -2, 1}));
    EXPECT_THROW(characteristic_polynomial(IntegerMatrix(1, 2)), DimensionError);
}

TEST(CharacteristicPolynomial, MatchesDeterminantOfShiftedMatrix) {
    // p(t) = det(tI - m) at a few integer points t, via the Leibniz oracle.
    Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t d = 1 + trial % 4;
        const IntegerMatrix m = random_integer_matrix(rng, d, d, -6, 6);
        const auto p = characteristic_polynomial(m);
        ASSERT_EQ(p.size(), d + 1);
        ASSERT_EQ(p.back(), 1);
        for (long t = -2; t <= 2; ++t) {
            Integer value = 0, power = 1;
            for (const auto& c : p) {
                value += c * power;
                power *= t;
            }
            EXPECT_EQ(value, oracle::permutation_determinant(IntegerMatrix::scalar(d, t) - m));
        }
    }
}

TEST(RationalInverse, Examples) {
    EXPECT_EQ(rational_inverse(IntegerMatrix{{2}})(0, 0), Rational(1, 2));
    const RationalMatrix inv = rational_inverse(IntegerMatrix{{1, 1}, {-1, 1}});
    EXPECT_EQ(inv(0, 0), Rational(1, 2));
    EXPECT_EQ(inv(0, 1), Rational(-1, 2));
    EXPECT_EQ(inv(1, 0), Rational(1, 2));
    EXPECT_EQ(inv(1, 1), Rational(1, 2));
    EXPECT_EQ(rational_inverse(IntegerMatrix::identity(4)), RationalMatrix::identity(4));
}

TEST(RationalInverse, SingularIsDistinct) {
    EXPECT_THROW(rational_inverse(IntegerMatrix{{1, 2}, {2, 4}}), SingularMatrixError);
}

TEST(RationalInverse, TimesMatrixIsIdentity) {
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const IntegerMatrix m = random_integer_matrix(rng, 3, 3, -5, 5);
        if (determinant(m) == 0)
            continue;
        EXPECT_EQ(to_rational(m) * rational_inverse(m), RationalMatrix::identity(3));
        EXPECT_EQ(to_integer(rational_inverse(m) * Rational(determinant(m))), adjugate(m));
    }
}

TEST(BlockTransposePermutation, Examples) {
    EXPECT_EQ(block_transpose_permutation(1, 3), IntegerMatrix::identity(3));

    IntegerMatrix swap12 = IntegerMatrix::identity(4);
    swap12.swap_rows(1, 2);
    EXPECT_EQ(block_transpose_permutation(2, 2), swap12);

    IntegerMatrix expect(6, 6);
    for (auto [p, q] : {std::pair{0, 0}, {1, 2}, {2, 4}, {3, 1}, {4, 3}, {5, 5}})
        expect(p, q) = 1;
    EXPECT_EQ(block_transpose_permutation(2, 3), expect);
}

TEST(BlockTransposePermutation, RegroupsBlocks) {
    // C uses m = s*N + j, D uses m = j*r + s; then C U = U D.
    Rng rng(5);
    for (std::size_t nb = 2; nb <= 3; ++nb)
        for (std::size_t r = 1; r <= 3; ++r) {
            const std::size_t size = r * nb;
            const IntegerMatrix b = random_integer_matrix(rng, size, size, -20, 20); // b(j*r+s, k*r+t)
            IntegerMatrix c(size, size), dm(size, size);
            for (std::size_t j = 0; j < nb; ++j)
                for (std::size_t k = 0; k < nb; ++k)
                    for (std::size_t s = 0; s < r; ++s)
                        for (std::size_t t = 0; t < r; ++t) {
                            const Integer& v = b(j * r + s, k * r + t);
                            c(s * nb + j, t * nb + k) = v;
                            dm(j * r + s, k * r + t) = v;
                        }
            const IntegerMatrix u = block_transpose_permutation(r, nb);
            EXPECT_EQ(c * u, u * dm) << "r=" << r << " N=" << nb;
            EXPECT_EQ(u * u.transpose(), IntegerMatrix::identity(size));
        }
}

TEST(BlockTransposePermutation, RejectsDegenerateSizes) {
    EXPECT_THROW(block_transpose_permutation(0, 3), DimensionError);
    EXPECT_THROW(block_transpose_permutation(2, 1), DimensionError);
}
