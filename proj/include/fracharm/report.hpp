#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fracharm {

inline constexpr std::string_view kVersion = "0.3.0";

struct Measurement {
    std::string name;
    double value = 0.0;
};

struct CheckRecord {
    std::string name;
    /// Statement being checked, in words.
    std::string anchor;
    std::vector<Measurement> measured;
    double tolerance = 0.0;
    bool pass = false;
    bool mandatory = true;
    std::string note;

    void add(std::string key, double value) { measured.push_back({std::move(key), value}); }
};

class VerificationReport {
public:
    explicit VerificationReport(std::string title = "verification") : title_(std::move(title)) {}

    void add(CheckRecord record) { records_.push_back(std::move(record)); }
    void append(const std::vector<CheckRecord>& records);
    const std::vector<CheckRecord>& records() const { return records_; }
    bool overall_pass() const;

    nlohmann::ordered_json to_json() const;
    /// Aligned table, one line per check plus indented measurements.
    std::string to_text() const;

private:
    std::string title_;
    std::vector<CheckRecord> records_;
};

std::uint64_t fnv1a64(std::string_view bytes);
/// 16 hex digits of FNV-1a over the compact dump of the config.
std::string config_hash(const nlohmann::ordered_json& config);

} // namespace fracharm
