#include "paraprobe/classifier.hpp"

#include "paraprobe/error.hpp"
#include "paraprobe/util.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>

namespace paraprobe {

using nlohmann::json;

namespace {

constexpr int kModelSchemaVersion = 1;

void check_aligned(std::size_t scores, std::size_t labels, const char* op) {
    if (scores != labels) {
        throw ValidationError(std::string(op) + ": " + std::to_string(scores) + " scores vs " +
                              std::to_string(labels) + " labels");
    }
}

void check_binary_labels(const std::vector<int>& labels) {
    for (const int label : labels) {
        if (label != 0 && label != 1) {
            throw ValidationError("labels must be 0 or 1, got " + std::to_string(label));
        }
    }
}

} // namespace

std::string level_name(Level level) {
    return level == Level::sentence ? "sentence" : "document";
}

Level level_from_name(const std::string& name) {
    if (name == "sentence") return Level::sentence;
    if (name == "document") return Level::document;
    throw ValidationError("unknown level name: '" + name + "'");
}

LdaModel fit_lda(const std::vector<double>& scores, const std::vector<int>& labels, Level level) {
    check_aligned(scores.size(), labels.size(), "fit_lda");
    check_binary_labels(labels);

    double sum0 = 0.0, sum1 = 0.0;
    std::size_t n0 = 0, n1 = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] == 0) {
            sum0 += scores[i];
            ++n0;
        } else {
            sum1 += scores[i];
            ++n1;
        }
    }
    if (n0 < 2 || n1 < 2) {
        throw ValidationError("fit_lda requires at least 2 samples per class, got " +
                              std::to_string(n0) + " / " + std::to_string(n1));
    }

    LdaModel model;
    model.level = level;
    model.mu0 = sum0 / static_cast<double>(n0);
    model.mu1 = sum1 / static_cast<double>(n1);

    double ss = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const double d = scores[i] - (labels[i] == 0 ? model.mu0 : model.mu1);
        ss += d * d;
    }
    model.pooled_variance = ss / static_cast<double>(n0 + n1 - 2);
    if (model.pooled_variance <= 0.0) {
        throw ValidationError("degenerate fit: pooled variance is zero");
    }
    if (model.mu0 == model.mu1) {
        throw ValidationError("degenerate fit: class means coincide");
    }
    model.prior0 = static_cast<double>(n0) / static_cast<double>(n0 + n1);
    model.prior1 = static_cast<double>(n1) / static_cast<double>(n0 + n1);
    model.threshold = 0.5;
    return model;
}

double posterior(const LdaModel& model, double score) {
    // P(1|x) reduces to a logistic in x under the shared-variance Gaussian model.
    const double a = (model.mu1 - model.mu0) / model.pooled_variance;
    const double b = (model.mu0 * model.mu0 - model.mu1 * model.mu1) /
                         (2.0 * model.pooled_variance) +
                     std::log(model.prior1 / model.prior0);
    const double t = a * score + b;
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    const double e = std::exp(t);
    return e / (1.0 + e);
}

SweepResult sweep_threshold(LdaModel& model, const std::vector<double>& scores,
                            const std::vector<int>& labels, double step) {
    check_aligned(scores.size(), labels.size(), "sweep_threshold");
    check_binary_labels(labels);
    if (scores.empty()) throw ValidationError("sweep_threshold on an empty evaluation set");
    if (step <= 0.0 || step > 1.0) {
        throw ValidationError("sweep step must be in (0, 1], got " + format_double(step));
    }

    std::vector<double> posteriors(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) posteriors[i] = posterior(model, scores[i]);

    std::vector<double> grid;
    for (std::size_t i = 0;; ++i) {
        const double t = static_cast<double>(i) * step;
        if (t >= 1.0) break;
        grid.push_back(t);
    }
    grid.push_back(1.0);

    SweepResult best{grid.front(), -1.0};
    for (const double t : grid) {
        std::size_t correct = 0;
        for (std::size_t i = 0; i < posteriors.size(); ++i) {
            const int predicted = posteriors[i] >= t ? 1 : 0;
            if (predicted == labels[i]) ++correct;
        }
        const double accuracy = static_cast<double>(correct) / static_cast<double>(scores.size());
        if (accuracy > best.accuracy) best = SweepResult{t, accuracy};
    }
    model.threshold = best.threshold;
    return best;
}

int classify(const LdaModel& model, double score) {
    return posterior(model, score) >= model.threshold ? 1 : 0;
}

ConfusionMatrix confusion(const std::vector<int>& labels, const std::vector<int>& predictions) {
    check_aligned(labels.size(), predictions.size(), "confusion");
    if (labels.empty()) throw ValidationError("confusion of empty inputs");
    check_binary_labels(labels);
    check_binary_labels(predictions);
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == 0) {
            predictions[i] == 0 ? ++cm.tn : ++cm.fp;
        } else {
            predictions[i] == 0 ? ++cm.fn : ++cm.tp;
        }
    }
    return cm;
}

Metrics metrics(const ConfusionMatrix& cm, int positive) {
    if (cm.total() == 0) throw ValidationError("metrics of an empty confusion matrix");
    if (positive != 0 && positive != 1) {
        throw ValidationError("positive class must be 0 or 1");
    }
    // Re-read the matrix from the declared positive class's perspective.
    const double tp = static_cast<double>(positive == 1 ? cm.tp : cm.tn);
    const double fp = static_cast<double>(positive == 1 ? cm.fp : cm.fn);
    const double fn = static_cast<double>(positive == 1 ? cm.fn : cm.fp);

    Metrics m;
    if (tp + fp == 0.0) {
        m.precision = 0.0;
        m.precision_defined = false;
    } else {
        m.precision = tp / (tp + fp);
    }
    if (tp + fn == 0.0) {
        m.recall = 0.0;
        m.recall_defined = false;
    } else {
        m.recall = tp / (tp + fn);
    }
    if (m.precision + m.recall == 0.0) {
        m.f1 = 0.0;
        m.f1_defined = false;
    } else {
        m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    }
    m.accuracy = static_cast<double>(cm.tn + cm.tp) / static_cast<double>(cm.total());
    return m;
}

ClassStats class_stats(const std::vector<double>& scores) {
    if (scores.empty()) throw ValidationError("class_stats of an empty group");
    ClassStats stats;
    stats.n = scores.size();
    double sum = 0.0;
    for (const double s : scores) sum += s;
    stats.mean = sum / static_cast<double>(stats.n);
    if (stats.n > 1) {
        double ss = 0.0;
        for (const double s : scores) {
            const double d = s - stats.mean;
            ss += d * d;
        }
        stats.std_dev = std::sqrt(ss / static_cast<double>(stats.n - 1));
    }
    return stats;
}

std::pair<ClassStats, ClassStats> class_stats_by_label(const std::vector<double>& scores,
                                                       const std::vector<int>& labels) {
    check_aligned(scores.size(), labels.size(), "class_stats_by_label");
    check_binary_labels(labels);
    std::vector<double> class0, class1;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        (labels[i] == 0 ? class0 : class1).push_back(scores[i]);
    }
    return {class_stats(class0), class_stats(class1)};
}

KdeCurve kde(const std::vector<double>& scores, std::optional<double> bandwidth) {
    if (scores.size() < 2) throw ValidationError("kde requires at least 2 scores");
    const auto [lo_it, hi_it] = std::minmax_element(scores.begin(), scores.end());
    if (*lo_it == *hi_it) {
        throw ValidationError("kde requires at least 2 distinct scores (zero bandwidth)");
    }

    KdeCurve curve;
    if (bandwidth) {
        if (*bandwidth <= 0.0) throw ValidationError("kde bandwidth must be positive");
        curve.bandwidth = *bandwidth;
    } else {
        const auto stats = class_stats(scores);
        curve.bandwidth = 1.06 * stats.std_dev *
                          std::pow(static_cast<double>(scores.size()), -0.2);
    }

    constexpr std::size_t kGridPoints = 201;
    const double lo = *lo_it - 3.0 * curve.bandwidth;
    const double hi = *hi_it + 3.0 * curve.bandwidth;
    const double width = (hi - lo) / static_cast<double>(kGridPoints - 1);
    curve.grid.resize(kGridPoints);
    curve.density.resize(kGridPoints);
    const double norm = 1.0 / (static_cast<double>(scores.size()) * curve.bandwidth *
                               std::sqrt(2.0 * 3.14159265358979323846));
    for (std::size_t i = 0; i < kGridPoints; ++i) {
        const double x = lo + static_cast<double>(i) * width;
        double sum = 0.0;
        for (const double s : scores) {
            const double u = (x - s) / curve.bandwidth;
            sum += std::exp(-0.5 * u * u);
        }
        curve.grid[i] = x;
        curve.density[i] = norm * sum;
    }
    return curve;
}

void save_model(const LdaModel& model, const std::string& path) {
    const json doc{{"schema_version", kModelSchemaVersion},
                   {"kind", "lda-model"},
                   {"level", level_name(model.level)},
                   {"mu0", model.mu0},
                   {"mu1", model.mu1},
                   {"pooled_variance", model.pooled_variance},
                   {"prior0", model.prior0},
                   {"prior1", model.prior1},
                   {"threshold", model.threshold},
                   {"provenance", model.provenance}};
    atomic_write_file(path, doc.dump(2) + "\n");
}

LdaModel load_model(const std::string& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw FormatError("model file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!doc.is_object() || doc.value("kind", "") != "lda-model") {
        throw FormatError("'" + path + "' is not a model file");
    }
    if (doc.value("schema_version", -1) != kModelSchemaVersion) {
        throw FormatError("model file '" + path + "' has an unsupported schema version");
    }
    try {
        LdaModel model;
        model.level = level_from_name(doc.at("level").get<std::string>());
        model.mu0 = doc.at("mu0").get<double>();
        model.mu1 = doc.at("mu1").get<double>();
        model.pooled_variance = doc.at("pooled_variance").get<double>();
        model.prior0 = doc.at("prior0").get<double>();
        model.prior1 = doc.at("prior1").get<double>();
        model.threshold = doc.at("threshold").get<double>();
        model.provenance = doc.value("provenance", "");
        if (model.pooled_variance <= 0.0 || model.mu0 == model.mu1) {
            throw FormatError("model file '" + path + "' describes a degenerate model");
        }
        if (std::abs(model.prior0 + model.prior1 - 1.0) > 1e-9) {
            throw FormatError("model file '" + path + "' has priors that do not sum to 1");
        }
        if (model.threshold < 0.0 || model.threshold > 1.0) {
            throw FormatError("model file '" + path + "' has a threshold outside [0, 1]");
        }
        return model;
    } catch (const json::exception& e) {
        throw FormatError("model file '" + path + "' is missing fields: " + e.what());
    }
}

} // namespace paraprobe
