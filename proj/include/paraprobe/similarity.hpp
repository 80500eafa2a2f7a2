#pragma once

#include "paraprobe/embedding.hpp"
#include "paraprobe/segmenter.hpp"

#include <cstddef>
#include <vector>

namespace paraprobe {

// cosine(u, v) = u.v / (|u| |v|), accumulated in double, clamped to [-1, 1].
double cosine(const EmbeddingVector& u, const EmbeddingVector& v);

struct SimilarityMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> scores; // row-major, rows*cols entries

    double at(std::size_t i, std::size_t j) const { return scores[i * cols + j]; }
};

SimilarityMatrix similarity_matrix(const std::vector<EmbeddingVector>& a,
                                   const std::vector<EmbeddingVector>& b);

struct BestMatch {
    Sentence student_sentence;
    Sentence matched_sentence;
    std::size_t pool_index = 0;
    double score = 0.0; // row maximum, ties to the lowest pool index
};

std::vector<BestMatch> best_matches(const std::vector<Sentence>& student_sentences,
                                    const std::vector<EmbeddingVector>& student_embeddings,
                                    const std::vector<Sentence>& pool_sentences,
                                    const std::vector<EmbeddingVector>& pool_embeddings);

struct DocumentScore {
    double value = 0.0; // exact mean of the best-match scores
    std::size_t n_sentences = 0;
};

DocumentScore document_score(const std::vector<BestMatch>& matches);

} // namespace paraprobe
