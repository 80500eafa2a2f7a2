#include "paraprobe/similarity.hpp"

#include "paraprobe/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace paraprobe {

double cosine(const EmbeddingVector& u, const EmbeddingVector& v) {
    if (u.dimension() != v.dimension()) {
        throw DimensionError("cosine of vectors with dimensions " +
                             std::to_string(u.dimension()) + " and " +
                             std::to_string(v.dimension()));
    }
    double dot = 0.0, nu = 0.0, nv = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        const double a = u.values[i];
        const double b = v.values[i];
        dot += a * b;
        nu += a * a;
        nv += b * b;
    }
    if (nu == 0.0 || nv == 0.0) throw ValidationError("cosine of a zero-norm vector");
    return std::clamp(dot / (std::sqrt(nu) * std::sqrt(nv)), -1.0, 1.0);
}

SimilarityMatrix similarity_matrix(const std::vector<EmbeddingVector>& a,
                                   const std::vector<EmbeddingVector>& b) {
    if (a.empty() || b.empty()) throw ValidationError("similarity_matrix requires non-empty inputs");
    SimilarityMatrix m;
    m.rows = a.size();
    m.cols = b.size();
    m.scores.resize(m.rows * m.cols);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) {
            try {
                m.scores[i * m.cols + j] = cosine(a[i], b[j]);
            } catch (const Error& e) {
                throw ValidationError("similarity_matrix entry (" + std::to_string(i) + ", " +
                                      std::to_string(j) + "): " + e.what());
            }
        }
    }
    return m;
}

std::vector<BestMatch> best_matches(const std::vector<Sentence>& student_sentences,
                                    const std::vector<EmbeddingVector>& student_embeddings,
                                    const std::vector<Sentence>& pool_sentences,
                                    const std::vector<EmbeddingVector>& pool_embeddings) {
    if (student_sentences.empty()) throw ValidationError("best_matches requires student sentences");
    if (pool_sentences.empty()) throw ValidationError("best_matches requires a non-empty pool");
    if (student_sentences.size() != student_embeddings.size()) {
        throw ValidationError("student sentences and embeddings are misaligned");
    }
    if (pool_sentences.size() != pool_embeddings.size()) {
        throw ValidationError("pool sentences and embeddings are misaligned");
    }

    const auto matrix = similarity_matrix(student_embeddings, pool_embeddings);
    std::vector<BestMatch> matches;
    matches.reserve(student_sentences.size());
    for (std::size_t i = 0; i < matrix.rows; ++i) {
        std::size_t best = 0;
        double best_score = matrix.at(i, 0);
        for (std::size_t j = 1; j < matrix.cols; ++j) {
            if (matrix.at(i, j) > best_score) {
                best_score = matrix.at(i, j);
                best = j;
            }
        }
        matches.push_back(BestMatch{student_sentences[i], pool_sentences[best], best, best_score});
    }
    return matches;
}

DocumentScore document_score(const std::vector<BestMatch>& matches) {
    if (matches.empty()) throw ValidationError("document_score of an empty match list");
    double sum = 0.0;
    for (const auto& m : matches) sum += m.score;
    return DocumentScore{sum / static_cast<double>(matches.size()), matches.size()};
}

} // namespace paraprobe
