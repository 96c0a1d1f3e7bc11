#include <gtest/gtest.h>

#include "isc/channels.hpp"
#include "oracle_helpers.hpp"

using namespace isc;

namespace {

struct Setup {
    CodeParams params;
    InterleavedMessage msg;
    SubspaceBasis sent;
};

Setup make_setup(std::uint64_t seed, int q = 2, int m = 8, int n_t = 7, int k = 4, int s = 2) {
    Rng rng(seed);
    Setup su{make_code(make_field(q, m), n_t, k, s, std::nullopt, &rng), {}, {}};
    su.msg = random_message(su.params, rng);
    su.sent = encode_subspace(su.params, su.msg);
    return su;
}

}  // namespace

TEST(OperatorChannel, NoiselessKeepsTheRowSpace) {
    auto su = make_setup(1);
    const auto out = operator_channel(su.params, su.sent, OperatorChannelConfig{0, 0, 99, false});
    EXPECT_EQ(oracle::subspace_dim(*su.params.field, out.rows), 7);
    EXPECT_EQ(oracle::intersection_dim(*su.params.field, out.rows, su.sent.rows), 7);
}

TEST(OperatorChannel, DimensionsMatchDeletionsAndInsertions) {
    auto su = make_setup(2);
    for (const auto& [delta, gamma] : {std::pair{0, 0}, std::pair{1, 0}, std::pair{0, 3}, std::pair{2, 4}, std::pair{7, 1}}) {
        Rng rng(std::uint64_t(100 + delta * 10 + gamma));
        const auto out = operator_channel(su.params, su.sent, delta, gamma, false, rng);
        const int n_r = su.params.n_t - delta + gamma;
        EXPECT_EQ(out.dimension(), n_r);
        EXPECT_EQ(oracle::subspace_dim(*su.params.field, out.rows), n_r);
        EXPECT_EQ(oracle::intersection_dim(*su.params.field, out.rows, su.sent.rows), su.params.n_t - delta);
    }
}

TEST(OperatorChannel, RestrictAmbientKeepsFirstCoordinateInTheSpan) {
    auto su = make_setup(3);
    Rng rng(17);
    const auto out = operator_channel(su.params, su.sent, 0, 4, true, rng);
    // first coordinates of all rows stay inside span(alpha)
    std::vector<Fe> firsts = su.params.alpha;
    for (const auto& row : out.rows) firsts.push_back(row[0]);
    EXPECT_EQ(su.params.field->rank_over_base(firsts), su.params.n_t);
    EXPECT_EQ(oracle::subspace_dim(*su.params.field, out.rows), su.params.n_t + 4);
}

TEST(OperatorChannel, DeterministicGivenSeed) {
    auto su = make_setup(4);
    const OperatorChannelConfig cfg{1, 3, 1234, false};
    const auto a = operator_channel(su.params, su.sent, cfg);
    const auto b = operator_channel(su.params, su.sent, cfg);
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) EXPECT_EQ(a.rows[i], b.rows[i]);
}

TEST(OperatorChannel, InfeasibleInsertionCountThrows) {
    // s = 1, m = 4, n_t = 4: ambient F_q-dimension is 8, so gamma > 4 cannot
    // keep the intersection trivial
    Rng rng(5);
    const auto params = make_code(make_field(2, 4), 4, 2, 1, std::nullopt, &rng);
    const auto sent = encode_subspace(params, random_message(params, rng));
    Rng crng(6);
    EXPECT_THROW(operator_channel(params, sent, 0, 5, false, crng), std::invalid_argument);
}

TEST(RankErrorChannel, ZeroErrorsIsIdentity) {
    auto su = make_setup(6);
    const auto word = encode_gabidulin(su.params, su.msg);
    Rng rng(7);
    EXPECT_EQ(rank_error_channel(su.params, word, 0, rng), word);
    EXPECT_THROW(rank_error_channel(su.params, word, 8, rng), std::invalid_argument);  // t > n
}

TEST(RankErrorChannel, ErrorRankIsExactlyT) {
    auto su = make_setup(8);
    const auto word = encode_gabidulin(su.params, su.msg);
    for (int t = 1; t <= 4; ++t) {
        Rng rng(std::uint64_t(40 + t));
        const auto received = rank_error_channel(su.params, word, t, rng);
        std::vector<std::vector<Fe>> error(word.size());
        for (std::size_t j = 0; j < word.size(); ++j) {
            error[j].resize(word[j].size());
            for (std::size_t i = 0; i < word[j].size(); ++i)
                error[j][i] = su.params.field->sub(received[j][i], word[j][i]);
        }
        EXPECT_EQ(oracle::rank_metric_rank(*su.params.field, error), t);
    }
}

TEST(RankErrorChannel, DeterministicGivenSeed) {
    auto su = make_setup(9);
    const auto word = encode_gabidulin(su.params, su.msg);
    const auto a = rank_error_channel(su.params, word, 2, std::uint64_t(55));
    const auto b = rank_error_channel(su.params, word, 2, std::uint64_t(55));
    EXPECT_EQ(a, b);
}
