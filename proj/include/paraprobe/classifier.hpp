#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace paraprobe {

enum class Level { sentence, document };

std::string level_name(Level level);
Level level_from_name(const std::string& name);

// Two-class linear discriminant over a single similarity feature.
// Shared (pooled) variance; the posterior is a logistic function of the score.
struct LdaModel {
    double mu0 = 0.0; // class-0 mean (human-machine pairs)
    double mu1 = 0.0; // class-1 mean (machine-machine pairs)
    double pooled_variance = 0.0;
    double prior0 = 0.5;
    double prior1 = 0.5;
    double threshold = 0.5; // posterior cutoff
    Level level = Level::document;
    std::string provenance; // free-text description of the training data
};

struct ClassStats {
    double mean = 0.0;
    double std_dev = 0.0; // sample convention (n - 1)
    std::size_t n = 0;
};

// rows = actual {0,1}, columns = predicted {0,1}
struct ConfusionMatrix {
    std::size_t tn = 0; // actual 0, predicted 0
    std::size_t fp = 0; // actual 0, predicted 1
    std::size_t fn = 0; // actual 1, predicted 0
    std::size_t tp = 0; // actual 1, predicted 1

    std::size_t total() const { return tn + fp + fn + tp; }
};

struct Metrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double accuracy = 0.0;
    bool precision_defined = true; // false when the denominator was zero
    bool recall_defined = true;
    bool f1_defined = true;
};

struct KdeCurve {
    std::vector<double> grid; // 201 evenly spaced abscissae
    std::vector<double> density;
    double bandwidth = 0.0;
};

struct SweepResult {
    double threshold = 0.0;
    double accuracy = 0.0;
};

LdaModel fit_lda(const std::vector<double>& scores, const std::vector<int>& labels,
                 Level level = Level::document);

double posterior(const LdaModel& model, double score);

// Evaluates thresholds {0, step, 2*step, ..., 1}; ties go to the smallest
// threshold; the winner is stored back into model.threshold.
SweepResult sweep_threshold(LdaModel& model, const std::vector<double>& scores,
                            const std::vector<int>& labels, double step = 0.01);

int classify(const LdaModel& model, double score); // 1 iff posterior >= threshold

ConfusionMatrix confusion(const std::vector<int>& labels, const std::vector<int>& predictions);

Metrics metrics(const ConfusionMatrix& cm, int positive = 0);

ClassStats class_stats(const std::vector<double>& scores);

// Convenience split of class_stats by binary label: returns {class0, class1}.
std::pair<ClassStats, ClassStats> class_stats_by_label(const std::vector<double>& scores,
                                                       const std::vector<int>& labels);

// Gaussian KDE; default bandwidth h = 1.06 * sigma * n^(-1/5), grid of 201
// points over [min - 3h, max + 3h].
KdeCurve kde(const std::vector<double>& scores, std::optional<double> bandwidth = std::nullopt);

void save_model(const LdaModel& model, const std::string& path);
LdaModel load_model(const std::string& path);

} // namespace paraprobe
