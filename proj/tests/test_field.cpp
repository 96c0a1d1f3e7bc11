#include <gtest/gtest.h>

#include "isc/field.hpp"
#include "oracle_helpers.hpp"

using namespace isc;

TEST(MakeField, DegreeOneModulus) {
    const auto f = make_field(2, 1);
    EXPECT_EQ(f->modulus(), (std::vector<int>{1, 1}));  // z + 1
    EXPECT_EQ(f->size(), 2u);
}

TEST(MakeField, AcceptsIrreducibleModulus) {
    const auto f = make_field(2, 3, std::vector<int>{1, 1, 0, 1});  // z^3 + z + 1
    EXPECT_EQ(f->modulus(), (std::vector<int>{1, 1, 0, 1}));
}

TEST(MakeField, RejectsReducibleModulus) {
    EXPECT_THROW(make_field(2, 3, std::vector<int>{1, 0, 0, 1}), std::invalid_argument);  // z^3 + 1 = (z+1)(...)
}

TEST(MakeField, RejectsNonPrimeAndBadShape) {
    EXPECT_THROW(make_field(4, 2), std::invalid_argument);
    EXPECT_THROW(make_field(2, 0), std::invalid_argument);
    EXPECT_THROW(make_field(2, 3, std::vector<int>{1, 1, 1}), std::invalid_argument);       // degree 2, not 3
    EXPECT_THROW(make_field(2, 3, std::vector<int>{1, 1, 0, 0}), std::invalid_argument);    // not monic
}

TEST(MakeField, SelectionMatchesBruteForceSearch) {
    for (const auto& [q, m] : {std::pair{2, 8}, std::pair{3, 4}, std::pair{5, 3}}) {
        const auto f = make_field(q, m);
        // oracle: first packed candidate with nonzero constant term that the
        // brute-force factor search accepts
        oracle::Poly expected;
        long total = 1;
        for (int i = 0; i < m; ++i) total *= q;
        for (long packed = 0; packed < total && expected.empty(); ++packed) {
            oracle::Poly cand(std::size_t(m) + 1, 0);
            long v = packed;
            for (int i = 0; i < m; ++i) {
                cand[std::size_t(i)] = int(v % q);
                v /= q;
            }
            cand[std::size_t(m)] = 1;
            if (cand[0] != 0 && oracle::irreducible(cand, q)) expected = cand;
        }
        EXPECT_EQ(f->modulus(), expected) << "q=" << q << " m=" << m;
    }
}

TEST(FieldArithmetic, IdentitiesInF4) {
    const auto f = make_field(2, 2);
    EXPECT_EQ(f->modulus(), (std::vector<int>{1, 1, 1}));  // z^2 + z + 1
    const Fe z = f->element(2);
    EXPECT_EQ(f->mul(z, z), f->element(3));        // z * z = z + 1
    EXPECT_EQ(f->q_power(z, 1), f->element(3));    // z^2 = z + 1
    for (std::uint64_t v = 0; v < 4; ++v) {
        const Fe a = f->element(v);
        EXPECT_EQ(f->add(a, f->zero()), a);
        EXPECT_EQ(f->mul(a, f->one()), a);
    }
}

TEST(FieldArithmetic, AxiomsOnRandomTriples) {
    for (const auto& [q, m] : {std::pair{2, 1}, std::pair{2, 4}, std::pair{2, 8}, std::pair{3, 2}, std::pair{5, 3}}) {
        const auto f = make_field(q, m);
        Rng rng(7);
        for (int trial = 0; trial < 1000; ++trial) {
            const Fe a = f->random_element(rng), b = f->random_element(rng), c = f->random_element(rng);
            EXPECT_EQ(f->add(a, b), f->add(b, a));
            EXPECT_EQ(f->mul(a, b), f->mul(b, a));
            EXPECT_EQ(f->add(f->add(a, b), c), f->add(a, f->add(b, c)));
            EXPECT_EQ(f->mul(f->mul(a, b), c), f->mul(a, f->mul(b, c)));
            EXPECT_EQ(f->mul(a, f->add(b, c)), f->add(f->mul(a, b), f->mul(a, c)));
            EXPECT_EQ(f->add(a, f->neg(a)), f->zero());
        }
    }
}

TEST(FieldArithmetic, InverseMatchesExtendedEuclidOracle) {
    for (const auto& [q, m] : {std::pair{2, 8}, std::pair{3, 3}, std::pair{7, 2}}) {
        const auto f = make_field(q, m);
        Rng rng(11);
        for (int trial = 0; trial < 100; ++trial) {
            Fe a = f->random_element(rng);
            while (a == Fe{0}) a = f->random_element(rng);
            const Fe inv = f->inv(a);
            EXPECT_EQ(f->mul(inv, a), f->one());
            // independent route: coefficient-level extended Euclid
            oracle::Poly ap = f->coeffs(a);
            const oracle::Poly ip = oracle::xgcd_inverse(ap, f->modulus(), q);
            std::vector<int> padded(std::size_t(m), 0);
            for (std::size_t i = 0; i < ip.size(); ++i) padded[i] = ip[i];
            EXPECT_EQ(f->coeffs(inv), padded);
        }
    }
    EXPECT_THROW(make_field(2, 4)->inv(Fe{0}), std::domain_error);
}

TEST(QPower, BasicIdentities) {
    const auto f = make_field(3, 4);
    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const Fe a = f->random_element(rng);
        EXPECT_EQ(f->q_power(a, 0), a);
        EXPECT_EQ(f->q_power(f->q_power(a, 1), -1), a);
        EXPECT_EQ(f->q_power(a, f->m()), a);
        EXPECT_EQ(f->q_power(a, -1), f->q_power(a, f->m() - 1));
    }
}

TEST(QPower, MatchesRepeatedSquaringOracle) {
    for (const auto& [q, m] : {std::pair{2, 6}, std::pair{3, 3}}) {
        const auto f = make_field(q, m);
        Rng rng(5);
        for (int trial = 0; trial < 100; ++trial) {
            const Fe a = f->random_element(rng);
            Fe expect = a;
            for (int i = 0; i < m; ++i) {
                EXPECT_EQ(f->q_power(a, i), expect) << "q=" << q << " m=" << m << " i=" << i;
                expect = f->pow(expect, std::uint64_t(q));
            }
        }
    }
}

TEST(QPower, IsFieldAutomorphismAndLinear) {
    const auto f = make_field(3, 4);
    Rng rng(9);
    for (int trial = 0; trial < 300; ++trial) {
        const Fe a = f->random_element(rng), b = f->random_element(rng);
        const int c = int(rng.uniform(3));
        const long i = long(rng.uniform(9)) - 4;
        EXPECT_EQ(f->q_power(f->mul(a, b), i), f->mul(f->q_power(a, i), f->q_power(b, i)));
        EXPECT_EQ(f->q_power(f->add(a, b), i), f->add(f->q_power(a, i), f->q_power(b, i)));
        EXPECT_EQ(f->q_power(f->add(f->scalar_mul(c, a), b), i),
                  f->add(f->scalar_mul(c, f->q_power(a, i)), f->q_power(b, i)));
    }
}

TEST(LargeField, GenericPathAgreesWithTables) {
    // 2^21 is above the table limit, so this exercises the coefficient path
    const auto big = make_field(2, 21);
    EXPECT_GT(big->size(), FieldContext::kTableLimit);
    Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const Fe a = big->random_element(rng);
        const Fe b = big->random_element(rng);
        if (a != Fe{0}) {
            EXPECT_EQ(big->mul(big->inv(a), a), big->one());
        }
        EXPECT_EQ(big->q_power(big->mul(a, b), 1), big->mul(big->q_power(a, 1), big->q_power(b, 1)));
        EXPECT_EQ(big->q_power(a, 1), big->pow(a, 2));
        EXPECT_EQ(big->q_power(a, big->m()), a);
        EXPECT_EQ(big->mul(a, big->add(b, big->one())), big->add(big->mul(a, b), a));
    }
}

TEST(RankOverBase, Examples) {
    const auto f = make_field(2, 4);
    EXPECT_EQ(f->rank_over_base(std::vector<Fe>{Fe{0}}), 0);
    std::vector<Fe> basis;
    for (int i = 0; i < 4; ++i) basis.push_back(f->element(std::uint64_t(1) << i));  // 1, z, z^2, z^3
    EXPECT_EQ(f->rank_over_base(basis), 4);

    const auto f3 = make_field(3, 3);
    const Fe a = f3->element(5);
    EXPECT_EQ(f3->rank_over_base(std::vector<Fe>{a, f3->scalar_mul(2, a)}), 1);
}

TEST(RandomIndependentSet, RankAlwaysFull) {
    const auto f = make_field(2, 6);
    Rng rng(21);
    EXPECT_TRUE(f->random_independent_set(0, rng).empty());
    for (int n = 1; n <= 6; ++n) {
        const auto set = f->random_independent_set(n, rng);
        EXPECT_EQ(int(set.size()), n);
        EXPECT_EQ(f->rank_over_base(set), n);
    }
    EXPECT_THROW(f->random_independent_set(7, rng), std::invalid_argument);
}

TEST(RandomIndependentSet, DeterministicGivenSeed) {
    const auto f = make_field(2, 8);
    Rng a(77), b(77);
    const auto s1 = f->random_independent_set(5, a);
    const auto s2 = f->random_independent_set(5, b);
    EXPECT_EQ(s1.size(), s2.size());
    for (std::size_t i = 0; i < s1.size(); ++i) EXPECT_EQ(s1[i], s2[i]);
}

TEST(MultCounter, CountsMulsAndInversions) {
    const auto f = make_field(2, 8);
    const Fe a = f->element(57), b = f->element(190);
    CountScope outer;
    {
        CountScope inner;
        (void)f->mul(a, b);
        (void)f->mul(a, a);
        (void)f->inv(b);
        EXPECT_EQ(inner.count(), 3u);
    }
    (void)f->mul(a, b);
    EXPECT_EQ(outer.count(), 4u);  // children fold into the enclosing scope
}

TEST(Encoding, PackedDecimalRoundTrip) {
    const auto f = make_field(3, 3);
    const Fe a = f->from_coeffs(std::vector<int>{2, 0, 1});  // 2 + z^2
    EXPECT_EQ(a.v, 2u + 9u);
    EXPECT_EQ(to_text(a), "11");
    EXPECT_EQ(parse_element(*f, "11"), a);
    EXPECT_THROW(parse_element(*f, "27"), std::invalid_argument);  // out of range
    EXPECT_THROW(parse_element(*f, "zz"), std::invalid_argument);
    EXPECT_THROW(f->element(100), std::invalid_argument);
}
