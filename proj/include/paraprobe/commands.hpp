#pragma once

#include "paraprobe/classifier.hpp"
#include "paraprobe/config.hpp"
#include "paraprobe/report.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace paraprobe {

struct IngestOptions {
    std::string input_path;
    std::string format = "hc3"; // "hc3" or "wiki-intro"
    std::string output_path = "corpus.jsonl";
    std::optional<std::size_t> limit;
};

void cmd_ingest(const IngestOptions& options, std::ostream& out);

struct ScorePairsOptions {
    RunConfig config;
    std::string output_path = "scores.csv";
};

// Scores every comparison pair in the corpus; per-pair provider failures are
// reported and skipped rather than aborting the run.
void cmd_score_pairs(const ScorePairsOptions& options, std::ostream& out, std::ostream& err);

struct FitOptions {
    RunConfig config;
    std::string scores_path = "scores.csv";
    Level level = Level::document;
    int positive_class = 0; // for precision/recall/F1
};

void cmd_fit(const FitOptions& options, std::ostream& out, std::ostream& err);

struct DetectOptions {
    RunConfig config;
    std::string question;
    std::string response_path;
};

DetectionReport cmd_detect(const DetectOptions& options, std::ostream& out);

struct ReportOptions {
    std::string report_path;
};

void cmd_report(const ReportOptions& options, std::ostream& out);

} // namespace paraprobe
