#pragma once

// Check records and their serialization: JSON lines for machines, a table for people.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace hfa {

inline constexpr int kReportSchemaVersion = 1;

enum class Relation { Below, AtMost, AtLeast, Equal };

const char* to_string(Relation r);

struct CheckRecord {
    std::string suite;
    std::string check;
    double value = 0;
    double tolerance = 0;
    Relation relation = Relation::AtMost;
    bool pass = false;
    double wall_seconds = 0;
    std::map<std::string, double> numbers;
    std::map<std::string, std::string> notes;
};

/// value `relation` tolerance, e.g. value <= tolerance for AtMost.
bool holds(double value, Relation r, double tolerance);

class Report {
public:
    explicit Report(std::map<std::string, std::string> config_echo = {}) : config_(std::move(config_echo)) {}

    /// Records a check; pass is computed from the relation. Returns the stored record.
    CheckRecord& add(CheckRecord r);
    /// Records a boolean fact with value 1/0 against tolerance 1.
    CheckRecord& add_flag(const std::string& suite, const std::string& check, bool ok);
    void append(const Report& other);

    const std::vector<CheckRecord>& records() const { return records_; }
    const std::map<std::string, std::string>& config() const { return config_; }
    bool passed() const;
    std::size_t failures() const;
    const CheckRecord* find(const std::string& suite, const std::string& check) const;

    /// Header line with schema and config, one line per check, a summary line.
    /// Wall times are left out when include_timing is false, making the output
    /// byte-identical across runs of the same configuration.
    void write_jsonl(std::ostream& os, bool include_timing = true) const;
    void write_summary(std::ostream& os) const;

private:
    std::map<std::string, std::string> config_;
    std::vector<CheckRecord> records_;
};

}  // namespace hfa
