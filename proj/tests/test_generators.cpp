#include <gtest/gtest.h>

#include "cantornorm/cantornorm.hpp"
#include "oracles.hpp"

using namespace cantornorm;

TEST(Champernowne, BaseTwoPrefix) {
    const std::vector<unsigned> expected{0, 1, 1, 0, 1, 1, 1, 0, 0, 1, 0, 1, 1, 1, 0, 1, 1, 1};
    EXPECT_EQ(champernowne_bits(2, 18), expected);
}

TEST(Champernowne, BaseTenCrossesIntoTwoDigitNumerals) {
    const std::vector<unsigned> expected{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 1};
    EXPECT_EQ(champernowne_bits(10, 11), expected);
}

TEST(Champernowne, EmptyAndBadBase) {
    EXPECT_TRUE(champernowne_bits(7, 0).empty());
    EXPECT_THROW(champernowne_bits(1, 3), DomainError);
    EXPECT_THROW(champernowne_digit_at(0, 3), DomainError);
}

TEST(Champernowne, RandomAccessMatchesSequentialAndPrefixIsStable) {
    for (unsigned base : {2u, 3u, 10u, 16u}) {
        const auto long_run = champernowne_bits(base, 5000);
        for (std::size_t n : {0u, 1u, 17u, 999u}) {
            const auto short_run = champernowne_bits(base, n);
            ASSERT_TRUE(std::equal(short_run.begin(), short_run.end(), long_run.begin()));
        }
        for (std::size_t p = 0; p < long_run.size(); ++p) {
            ASSERT_EQ(champernowne_digit_at(base, p), long_run[p]) << "base " << base << " p " << p;
        }
    }
}

TEST(RationalBits, Examples) {
    EXPECT_EQ(rational_bits(1, 2, 3), (Bits{1, 0, 0}));
    EXPECT_EQ(rational_bits(1, 3, 4), (Bits{0, 1, 0, 1}));
    EXPECT_EQ(rational_bits(0, 5, 2), (Bits{0, 0}));
    EXPECT_THROW(rational_bits(3, 3, 1), DomainError);
    EXPECT_THROW(rational_bits(1, 0, 1), DomainError);
}

TEST(RationalBits, AgreesWithExactDoublingAndRandomAccess) {
    for (std::uint64_t den = 1; den <= 60; ++den) {
        for (std::uint64_t num = 0; num < den; ++num) {
            const auto bits = rational_bits(num, den, 80);
            ASSERT_EQ(bits, reference::reference_rational_bits(num, den, 80)) << num << "/" << den;
            for (std::uint64_t k = 0; k < 80; ++k) ASSERT_EQ(rational_bit_at(num, den, k), bits[k]);
        }
    }
    // Large positions go through modular exponentiation.
    EXPECT_EQ(rational_bit_at(1, 3, 1000001), 1);
    EXPECT_EQ(rational_bit_at(1, 3, 1000000), 0);
}

TEST(RationalBits, PrefixValueApproachesFromBelowWithin2ToMinusN) {
    for (std::uint64_t den : {3u, 7u, 10u, 97u, 128u}) {
        for (std::uint64_t num = 0; num < den; num += 1 + den / 9) {
            const Rational target(num, den);
            Rational previous = 0;
            for (std::size_t n = 0; n <= 40; ++n) {
                const Rational v = value_of_bits(rational_bits(num, den, n)).value();
                ASSERT_LE(v, target);
                ASSERT_GE(v, previous);
                ASSERT_LT(target - v, Rational(Integer(1), pow2(n)));
                previous = v;
            }
        }
    }
}

TEST(PeriodicBits, Examples) {
    EXPECT_EQ(periodic_bits({0, 1}, 5), (Bits{0, 1, 0, 1, 0}));
    EXPECT_EQ(periodic_bits({1}, 3), (Bits{1, 1, 1}));
    EXPECT_EQ(periodic_bits({0, 0, 1}, 3), (Bits{0, 0, 1}));
    EXPECT_THROW(periodic_bits({}, 3), DomainError);
}

TEST(GeneratorSpec, ValidationAndEvaluation) {
    EXPECT_THROW(validate(PeriodicGen{}), DomainError);
    EXPECT_THROW(validate(RationalGen{4, 4}), DomainError);
    EXPECT_THROW(validate(ConstantGen{2}), DomainError);
    EXPECT_THROW(validate(TableGen{{0, 3}, 0}), DomainError);

    EXPECT_EQ(generator_bit(TableGen{{1, 0, 1}, 1}, 1, nullptr), 0);
    EXPECT_EQ(generator_bit(TableGen{{1, 0, 1}, 1}, 7, nullptr), 1);
    EXPECT_EQ(generator_bit(ChampernowneGen{}, 2, nullptr), 1);

    const Oracle a({1, 0, 0, 1}, 0);
    EXPECT_EQ(generator_bit(OracleBitGen{0, false}, 3, &a), 1);
    EXPECT_EQ(generator_bit(OracleBitGen{1, false}, 2, &a), 1);
    EXPECT_EQ(generator_bit(OracleBitGen{0, true}, 3, &a), 0);
    EXPECT_EQ(generator_bit(OracleBitGen{0, false}, 100, &a), 0);
    EXPECT_THROW(generator_bit(OracleBitGen{}, 0, nullptr), ConfigError);
}
