#include "fracharm/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace fracharm {

namespace {

nlohmann::ordered_json number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

void VerificationReport::append(const std::vector<CheckRecord>& records) {
    records_.insert(records_.end(), records.begin(), records.end());
}

bool VerificationReport::overall_pass() const {
    return std::all_of(records_.begin(), records_.end(),
                       [](const CheckRecord& r) { return r.pass || !r.mandatory; });
}

nlohmann::ordered_json VerificationReport::to_json() const {
    nlohmann::ordered_json out;
    out["title"] = title_;
    out["overall_pass"] = overall_pass();
    auto& checks = out["checks"] = nlohmann::ordered_json::array();
    for (const auto& r : records_) {
        nlohmann::ordered_json rec;
        rec["name"] = r.name;
        rec["anchor"] = r.anchor;
        rec["pass"] = r.pass;
        rec["mandatory"] = r.mandatory;
        rec["tolerance"] = number(r.tolerance);
        auto& m = rec["measured"] = nlohmann::ordered_json::object();
        for (const auto& item : r.measured) m[item.name] = number(item.value);
        if (!r.note.empty()) rec["note"] = r.note;
        checks.push_back(std::move(rec));
    }
    return out;
}

std::string VerificationReport::to_text() const {
    std::size_t width = 10;
    for (const auto& r : records_) width = std::max(width, r.name.size());
    std::ostringstream os;
    os << title_ << '\n';
    for (const auto& r : records_) {
        os << (r.pass ? "PASS " : (r.mandatory ? "FAIL " : "warn ")) << r.name
           << std::string(width - r.name.size() + 2, ' ') << "tol " << short_number(r.tolerance)
           << "  " << r.anchor << '\n';
        for (const auto& m : r.measured) {
            os << "      " << m.name << " = " << short_number(m.value) << '\n';
        }
        if (!r.note.empty()) os << "      note: " << r.note << '\n';
    }
    os << "overall: " << (overall_pass() ? "PASS" : "FAIL") << '\n';
    return os.str();
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string config_hash(const nlohmann::ordered_json& config) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(config.dump())));
    return buf;
}

} // namespace fracharm
