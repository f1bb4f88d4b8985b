#pragma once

// Deterministic reports. A report has a header (tool version, seed, spec
// digest) and one section per task. Each section carries human-readable
// lines and a fenced block of `key = value` lines for machines.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace liext {

inline constexpr const char* kVersion = "1.0.0";

enum class SectionStatus { Ok, Failed };

struct Section {
    std::string title;
    SectionStatus status = SectionStatus::Ok;
    std::vector<std::string> text;
    std::vector<std::pair<std::string, std::string>> data;

    void line(std::string s) { text.push_back(std::move(s)); }
    void put(std::string key, std::string value) { data.emplace_back(std::move(key), std::move(value)); }
};

enum class ReportFormat { Text, Machine };

struct Report {
    std::string name;
    std::uint64_t seed = 0;
    std::string digest;
    std::vector<Section> sections;

    bool failed() const;
    std::string render(ReportFormat format) const;
};

/// 64-bit FNV-1a, as 16 hex digits.
std::string digest(std::string_view text);

/// Multi-line values are flattened so every data entry stays on one line.
std::string one_line(std::string_view value);

}  // namespace liext
