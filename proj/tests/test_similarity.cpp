#include "paraprobe/similarity.hpp"

#include "paraprobe/embedding.hpp"
#include "paraprobe/error.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

using namespace paraprobe;

namespace {

EmbeddingVector vec(std::vector<float> values) {
    return make_embedding(std::move(values), "test");
}

Sentence sentence(const std::string& doc_id, std::size_t index, const std::string& text = "") {
    return Sentence{doc_id, index, text.empty() ? doc_id + "#" + std::to_string(index) : text, 0, 0};
}

std::vector<EmbeddingVector> random_vectors(std::size_t count, std::size_t dimension,
                                            std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<float> dist(-1.0f, 1.0f);
    std::vector<EmbeddingVector> out;
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<float> values(dimension);
        for (auto& v : values) v = dist(rng);
        out.push_back(vec(std::move(values)));
    }
    return out;
}

} // namespace

TEST_CASE("cosine of reference pairs") {
    CHECK(cosine(vec({1, 0}), vec({0, 1})) == 0.0);
    CHECK(cosine(vec({1, 0}), vec({-1, 0})) == -1.0);
    CHECK(cosine(vec({2, 0}), vec({5, 0})) == 1.0);
    CHECK(cosine(vec({3, 4}), vec({4, 3})) == 0.96); // 24 / (5 * 5)
}

TEST_CASE("cosine rejects degenerate inputs") {
    CHECK_THROWS_AS(cosine(vec({1, 0}), vec({1, 0, 0})), DimensionError);
    EmbeddingVector zero;
    zero.values = {0.0f, 0.0f};
    zero.provider_tag = "test";
    CHECK_THROWS_AS(cosine(vec({1, 0}), zero), ValidationError);
    CHECK_THROWS_AS(cosine(zero, vec({1, 0})), ValidationError);
}

TEST_CASE("cosine is symmetric, scale-invariant, bounded") {
    const auto us = random_vectors(50, 16, 1);
    const auto vs = random_vectors(50, 16, 2);
    for (std::size_t i = 0; i < us.size(); ++i) {
        const double forward = cosine(us[i], vs[i]);
        CHECK(forward == cosine(vs[i], us[i])); // exact: same products, same sum order

        auto scaled = vs[i];
        for (auto& x : scaled.values) x *= 4.0f; // power of two, exact float scaling
        CHECK(std::abs(cosine(us[i], scaled) - forward) < 1e-12);

        CHECK(forward >= -1.0);
        CHECK(forward <= 1.0);
        const double self = cosine(us[i], us[i]);
        CHECK(self <= 1.0);
        CHECK(self == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("similarity matrix holds pairwise cosines") {
    const auto a = random_vectors(3, 8, 10);
    const auto b = random_vectors(5, 8, 11);
    const auto m = similarity_matrix(a, b);
    CHECK(m.rows == 3);
    CHECK(m.cols == 5);
    REQUIRE(m.scores.size() == 15);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) {
            CHECK(m.at(i, j) == cosine(a[i], b[j]));
        }
    }
    const auto t = similarity_matrix(b, a);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) {
            CHECK(m.at(i, j) == t.at(j, i));
        }
    }
}

TEST_CASE("similarity matrix reports the failing entry") {
    auto a = random_vectors(2, 4, 20);
    EmbeddingVector zero;
    zero.values = {0.0f, 0.0f, 0.0f, 0.0f};
    zero.provider_tag = "test";
    a.push_back(zero);
    const auto b = random_vectors(2, 4, 21);
    try {
        similarity_matrix(a, b);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("(2, 0)") != std::string::npos);
    }
    CHECK_THROWS_AS(similarity_matrix({}, b), ValidationError);
    CHECK_THROWS_AS(similarity_matrix(a, {}), ValidationError);
}

TEST_CASE("best match keeps the lowest pool index on ties") {
    const std::vector<Sentence> students = {sentence("s", 0)};
    const std::vector<EmbeddingVector> student_vecs = {vec({1, 0})};
    const std::vector<Sentence> pool = {sentence("p", 0), sentence("p", 1), sentence("p", 2)};
    const std::vector<EmbeddingVector> pool_vecs = {vec({1, 1}), vec({2, 0}), vec({2, 0})};

    const auto matches = best_matches(students, student_vecs, pool, pool_vecs);
    REQUIRE(matches.size() == 1);
    CHECK(matches[0].pool_index == 1); // indices 1 and 2 tie at 1.0
    CHECK(matches[0].score == 1.0);
    CHECK(matches[0].matched_sentence.index == 1);
    CHECK(matches[0].student_sentence.doc_id == "s");
}

TEST_CASE("best matches agree with a direct scan") {
    const auto student_vecs = random_vectors(20, 8, 30);
    const auto pool_vecs = random_vectors(30, 8, 31);
    std::vector<Sentence> students, pool;
    for (std::size_t i = 0; i < student_vecs.size(); ++i) students.push_back(sentence("s", i));
    for (std::size_t j = 0; j < pool_vecs.size(); ++j) pool.push_back(sentence("p", j));

    const auto matches = best_matches(students, student_vecs, pool, pool_vecs);
    REQUIRE(matches.size() == students.size());
    for (std::size_t i = 0; i < matches.size(); ++i) {
        std::size_t best = 0;
        double best_score = cosine(student_vecs[i], pool_vecs[0]);
        for (std::size_t j = 1; j < pool_vecs.size(); ++j) {
            const double s = cosine(student_vecs[i], pool_vecs[j]);
            if (s > best_score) {
                best_score = s;
                best = j;
            }
        }
        CHECK(matches[i].pool_index == best);
        CHECK(matches[i].score == best_score);
        CHECK(matches[i].student_sentence.index == i);
    }
}

TEST_CASE("best_matches validates alignment") {
    const std::vector<Sentence> one = {sentence("s", 0)};
    const std::vector<EmbeddingVector> two = {vec({1, 0}), vec({0, 1})};
    const std::vector<EmbeddingVector> single = {vec({1, 0})};
    CHECK_THROWS_AS(best_matches(one, two, one, single), ValidationError);
    CHECK_THROWS_AS(best_matches(one, single, one, two), ValidationError);
    CHECK_THROWS_AS(best_matches({}, {}, one, single), ValidationError);
    CHECK_THROWS_AS(best_matches(one, single, {}, {}), ValidationError);
}

TEST_CASE("document score is the exact mean") {
    auto with_scores = [](std::vector<double> scores) {
        std::vector<BestMatch> matches;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            matches.push_back(BestMatch{sentence("s", i), sentence("p", 0), 0, scores[i]});
        }
        return matches;
    };

    CHECK(document_score(with_scores({0.5})).value == 0.5);
    CHECK(document_score(with_scores({0.25, 0.75})).value == 0.5);
    CHECK(document_score(with_scores({0.25, 0.75})).n_sentences == 2);
    CHECK_THROWS_AS(document_score({}), ValidationError);

    // mean of a reference ten-sentence best-match profile
    const auto matches = with_scores({0.8087, 0.8753, 0.8154, 0.7472, 0.8677, 0.8641, 0.7735,
                                      0.8846, 0.7937, 0.7676});
    const auto score = document_score(matches);
    CHECK(score.n_sentences == 10);
    CHECK(std::abs(score.value - 0.81978) <= 1e-6);
}
