#include <doctest.h>

#include <array>
#include <random>
#include <set>

#include "eulaflag/kernels.hpp"
#include "eulaflag/summarize.hpp"
#include "eulaflag/textproc.hpp"
#include "oracles.hpp"

using namespace eulaflag;

namespace {

Eigen::MatrixXd random_graph(std::mt19937_64& rng, Eigen::Index n, double density) {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            if (unit < density) {
                const double weight = 0.1 + 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53;
                w(i, j) = weight;
                w(j, i) = weight;
            }
        }
    }
    return w;
}

}  // namespace

TEST_CASE("power_iteration on a symmetric complete graph is uniform") {
    Eigen::MatrixXd w = Eigen::MatrixXd::Ones(3, 3);
    w.diagonal().setZero();
    const auto result = power_iteration(w, 0.85, 1e-12, 1000);
    CHECK(result.converged);
    for (Eigen::Index i = 0; i < 3; ++i) {
        CHECK(result.scores(i) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    }
}

TEST_CASE("power_iteration on a single node") {
    const Eigen::MatrixXd w = Eigen::MatrixXd::Zero(1, 1);
    const auto result = power_iteration(w, 0.85, 1e-12, 100);
    CHECK(result.scores(0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("power_iteration on a path graph matches the linear-solve oracle") {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(3, 3);
    w(0, 1) = w(1, 0) = 1.0;
    w(1, 2) = w(2, 1) = 1.0;
    const auto result = power_iteration(w, 0.85, 1e-13, 10000);
    const Eigen::VectorXd expected = oracles::pagerank_linear_solve(w, 0.85);
    CHECK(result.scores(1) > result.scores(0));
    CHECK(result.scores(1) > result.scores(2));
    for (Eigen::Index i = 0; i < 3; ++i) {
        CHECK(result.scores(i) == doctest::Approx(expected(i)).epsilon(1e-8));
    }
}

TEST_CASE("power_iteration matches the oracle on random graphs") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        const auto n = static_cast<Eigen::Index>(1 + rng() % 8);
        const Eigen::MatrixXd w = random_graph(rng, n, 0.6);
        const auto result = power_iteration(w, 0.85, 1e-13, 20000);
        const Eigen::VectorXd expected = oracles::pagerank_linear_solve(w, 0.85);
        CHECK((result.scores - expected).lpNorm<Eigen::Infinity>() < 1e-6);

        CHECK(result.scores.sum() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(result.scores.minCoeff() >= 0.0);
    }
}

TEST_CASE("power_iteration is invariant under uniform weight scaling") {
    std::mt19937_64 rng(123);
    const Eigen::MatrixXd w = random_graph(rng, 6, 0.7);
    const auto base = power_iteration(w, 0.85, 1e-12, 10000);
    const auto scaled = power_iteration((7.0 * w).eval(), 0.85, 1e-12, 10000);
    CHECK((base.scores - scaled.scores).lpNorm<Eigen::Infinity>() < 1e-9);
}

TEST_CASE("power_iteration scores permute with the nodes") {
    std::mt19937_64 rng(321);
    const Eigen::MatrixXd w = random_graph(rng, 5, 0.8);
    const auto base = power_iteration(w, 0.85, 1e-12, 10000);

    const std::array<Eigen::Index, 5> perm = {3, 0, 4, 1, 2};
    Eigen::MatrixXd shuffled(5, 5);
    for (Eigen::Index i = 0; i < 5; ++i) {
        for (Eigen::Index j = 0; j < 5; ++j) {
            shuffled(perm[i], perm[j]) = w(i, j);
        }
    }
    const auto permuted = power_iteration(shuffled, 0.85, 1e-12, 10000);
    for (Eigen::Index i = 0; i < 5; ++i) {
        CHECK(permuted.scores(perm[i]) == doctest::Approx(base.scores(i)).epsilon(1e-8));
    }
}

TEST_CASE("power_iteration reports non-convergence without throwing") {
    Eigen::MatrixXd w = Eigen::MatrixXd::Ones(4, 4);
    w.diagonal().setZero();
    const auto result = power_iteration(w, 0.85, 1e-30, 2);
    CHECK_FALSE(result.converged);
    CHECK(result.iterations == 2);
    CHECK(result.scores.sum() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("truncated_svd of the identity") {
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(3, 3);
    const auto svd = truncated_svd(eye, 3);
    for (Eigen::Index i = 0; i < 3; ++i) {
        CHECK(svd.singular_values(i) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("truncated_svd of a rank-1 matrix") {
    Eigen::VectorXd u(4);
    u << 0.5, -0.5, 0.5, 0.5;
    Eigen::VectorXd v(3);
    v << 1.0 / std::sqrt(2.0), 0.0, -1.0 / std::sqrt(2.0);
    const Eigen::MatrixXd a = u * v.transpose();
    const auto svd = truncated_svd(a, 1);
    CHECK(svd.singular_values(0) == doctest::Approx(1.0).epsilon(1e-10));
    const Eigen::MatrixXd reconstructed =
        svd.u * svd.singular_values.asDiagonal() * svd.v.transpose();
    CHECK((reconstructed - a).lpNorm<Eigen::Infinity>() < 1e-8);
}

TEST_CASE("truncated_svd matches the naive oracle on random matrices") {
    std::mt19937_64 rng(2024);
    auto unit = [&] { return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0; };
    for (int trial = 0; trial < 40; ++trial) {
        const auto m = static_cast<Eigen::Index>(1 + rng() % 6);
        const auto n = static_cast<Eigen::Index>(1 + rng() % 6);
        Eigen::MatrixXd a(m, n);
        for (Eigen::Index i = 0; i < m; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) a(i, j) = unit();
        }
        const auto k = static_cast<Eigen::Index>(1 + rng() % static_cast<std::uint64_t>(
                                                         std::min(m, n)));
        const auto svd = truncated_svd(a, k);
        const auto oracle = oracles::naive_full_svd(a);

        for (Eigen::Index i = 0; i < k; ++i) {
            CHECK(svd.singular_values(i) ==
                  doctest::Approx(oracle.singular_values(i)).epsilon(1e-6));
            if (i > 0) CHECK(svd.singular_values(i) <= svd.singular_values(i - 1) + 1e-12);
        }

        const Eigen::MatrixXd utu = svd.u.transpose() * svd.u;
        const Eigen::MatrixXd vtv = svd.v.transpose() * svd.v;
        const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(k, k);
        CHECK((utu - eye).lpNorm<Eigen::Infinity>() < 1e-8);
        CHECK((vtv - eye).lpNorm<Eigen::Infinity>() < 1e-8);

        // Rank-k reconstruction error agrees with the oracle's.
        const Eigen::MatrixXd mine =
            svd.u * svd.singular_values.asDiagonal() * svd.v.transpose();
        Eigen::MatrixXd theirs = Eigen::MatrixXd::Zero(m, n);
        for (Eigen::Index i = 0; i < k; ++i) {
            theirs += oracle.singular_values(i) * oracle.u.col(i) * oracle.v.col(i).transpose();
        }
        CHECK(std::abs((mine - a).norm() - (theirs - a).norm()) < 1e-6);
    }
}

TEST_CASE("truncated_svd validates k") {
    const Eigen::MatrixXd a = Eigen::MatrixXd::Ones(3, 2);
    CHECK_THROWS_AS(truncated_svd(a, 0), DimensionError);
    CHECK_THROWS_AS(truncated_svd(a, 3), DimensionError);
}

TEST_CASE("index vectors have the configured shape") {
    const auto vocab = build_vocabulary({{"alpha", "beta", "gamma"}});
    RandomIndexConfig config;
    config.seed = 5;
    const auto vectors = make_index_vectors(vocab, config);
    for (const auto& term : vocab.terms) {
        const auto& iv = vectors.at(term);
        CHECK(iv.positive.size() == 4);
        CHECK(iv.negative.size() == 4);
        Eigen::VectorXd dense = Eigen::VectorXd::Zero(config.dimension);
        iv.add_to(dense);
        CHECK(dense.sum() == doctest::Approx(0.0));          // balanced signs
        CHECK(dense.cwiseAbs().sum() == doctest::Approx(8)); // positions distinct
    }
}

TEST_CASE("index vectors are deterministic and order-independent") {
    RandomIndexConfig config;
    config.seed = 9;
    const auto a = make_index_vectors(build_vocabulary({{"x", "y"}}), config);
    const auto b = make_index_vectors(build_vocabulary({{"z", "y", "x"}}), config);
    CHECK(a.at("x").positive == b.at("x").positive);
    CHECK(a.at("x").negative == b.at("x").negative);
    CHECK(a.at("y").positive == b.at("y").positive);
}

TEST_CASE("index vector overlap stays near the hypergeometric expectation") {
    std::vector<TokenList> doc(1);
    for (int i = 0; i < 2000; ++i) doc[0].push_back("tok" + std::to_string(i));
    RandomIndexConfig config;
    config.seed = 31;
    const auto vocab = build_vocabulary(doc);
    const auto vectors = make_index_vectors(vocab, config);

    double total_overlap = 0.0;
    int pairs = 0;
    for (int p = 0; p < 1000; ++p) {
        const auto& a = vectors.at("tok" + std::to_string(2 * p));
        const auto& b = vectors.at("tok" + std::to_string(2 * p + 1));
        std::set<int> positions(a.positive.begin(), a.positive.end());
        positions.insert(a.negative.begin(), a.negative.end());
        int overlap = 0;
        for (const int x : b.positive) overlap += positions.count(x);
        for (const int x : b.negative) overlap += positions.count(x);
        total_overlap += overlap;
        ++pairs;
    }
    const double mean = total_overlap / pairs;
    const double expected = oracles::expected_index_overlap(config.nonzeros, config.dimension);
    CHECK(expected == doctest::Approx(0.125));
    CHECK(mean >= 0.0);
    CHECK(mean <= 1.0);
}

TEST_CASE("make_index_vectors validates its config") {
    const auto vocab = build_vocabulary({{"a"}});
    RandomIndexConfig odd;
    odd.nonzeros = 7;
    CHECK_THROWS_AS(make_index_vectors(vocab, odd), ConfigError);
    RandomIndexConfig too_many;
    too_many.dimension = 8;
    too_many.nonzeros = 8;
    CHECK_THROWS_AS(make_index_vectors(vocab, too_many), ConfigError);
}
