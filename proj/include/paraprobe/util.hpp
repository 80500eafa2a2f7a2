#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace paraprobe {

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);

// Lowercase alphanumeric runs; everything else is a separator.
std::vector<std::string> tokenize_words(std::string_view text);

std::uint64_t fnv1a64(std::string_view data);
std::uint64_t mix64(std::uint64_t a, std::uint64_t b);

// Fisher-Yates with an explicit index draw so the permutation is identical
// on every platform (std::shuffle's draw sequence is implementation-defined).
template <typename T>
void seeded_shuffle(std::vector<T>& items, std::uint64_t seed) {
    std::mt19937_64 engine(seed);
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(engine() % i);
        std::swap(items[i - 1], items[j]);
    }
}

// Box-Muller over mt19937_64; std::normal_distribution is not reproducible
// across standard library implementations.
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}

    double sample(double mean, double stddev);

private:
    double unit_open();

    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Shortest decimal string that round-trips the exact double.
std::string format_double(double value);
double parse_double(std::string_view text);

// Round to the given number of significant decimal digits.
double round_sig(double value, int digits);

std::string read_file(const std::filesystem::path& path);

// Write-temp-then-rename so readers never observe a partial file.
void atomic_write_file(const std::filesystem::path& path, std::string_view contents);

// Minimal RFC 4180 support: quoted fields may contain commas, quotes, newlines.
std::string csv_escape(std::string_view field);

class CsvReader {
public:
    explicit CsvReader(std::istream& in) : in_(in) {}

    // Returns nullopt at end of input. Empty lines are skipped.
    std::optional<std::vector<std::string>> next_row();

private:
    std::istream& in_;
};

} // namespace paraprobe
