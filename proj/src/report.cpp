#include "liext/report.hpp"

#include <cstdio>
#include <sstream>

namespace liext {

bool Report::failed() const {
    for (const auto& s : sections)
        if (s.status == SectionStatus::Failed) return true;
    return false;
}

std::string digest(std::string_view text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string one_line(std::string_view value) {
    std::string out;
    for (char ch : value) out += (ch == '\n' || ch == '\r') ? ' ' : ch;
    return out;
}

namespace {

const char* status_name(SectionStatus s) { return s == SectionStatus::Ok ? "OK" : "FAILED"; }

void machine_block(std::ostringstream& os, const Section& s, std::size_t index) {
    os << "```section " << index << "\n";
    os << "task = " << one_line(s.title) << "\n";
    os << "status = " << status_name(s.status) << "\n";
    for (const auto& [k, v] : s.data) os << k << " = " << one_line(v) << "\n";
    os << "```\n";
}

}  // namespace

std::string Report::render(ReportFormat format) const {
    std::ostringstream os;
    if (format == ReportFormat::Machine) {
        os << "```header\n";
        os << "tool = liext\nversion = " << kVersion << "\nspec = " << name << "\nseed = " << seed
           << "\ndigest = " << digest << "\nsections = " << sections.size() << "\n";
        os << "```\n";
        for (std::size_t i = 0; i < sections.size(); ++i) machine_block(os, sections[i], i + 1);
        return os.str();
    }
    os << "# liext report: " << name << "\n\n";
    os << "version: " << kVersion << "\nseed: " << seed << "\nspec digest: " << digest << "\n";
    for (std::size_t i = 0; i < sections.size(); ++i) {
        const auto& s = sections[i];
        os << "\n## " << (i + 1) << ". " << s.title << " [" << status_name(s.status) << "]\n\n";
        for (const auto& l : s.text) os << l << "\n";
        if (!s.text.empty()) os << "\n";
        machine_block(os, s, i + 1);
    }
    return os.str();
}

}  // namespace liext
