#include "hfa/report.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

#include "json.hpp"

namespace hfa {

const char* to_string(Relation r) {
    switch (r) {
        case Relation::Below: return "<";
        case Relation::AtMost: return "<=";
        case Relation::AtLeast: return ">=";
        case Relation::Equal: return "==";
    }
    return "?";
}

bool holds(double value, Relation r, double tolerance) {
    switch (r) {
        case Relation::Below: return value < tolerance;
        case Relation::AtMost: return value <= tolerance;
        case Relation::AtLeast: return value >= tolerance;
        case Relation::Equal: return value == tolerance;
    }
    return false;
}

CheckRecord& Report::add(CheckRecord r) {
    r.pass = holds(r.value, r.relation, r.tolerance);
    records_.push_back(std::move(r));
    return records_.back();
}

CheckRecord& Report::add_flag(const std::string& suite, const std::string& check, bool ok) {
    CheckRecord r;
    r.suite = suite;
    r.check = check;
    r.value = ok ? 1.0 : 0.0;
    r.tolerance = 1.0;
    r.relation = Relation::Equal;
    return add(std::move(r));
}

void Report::append(const Report& other) {
    records_.insert(records_.end(), other.records_.begin(), other.records_.end());
}

bool Report::passed() const { return failures() == 0; }

std::size_t Report::failures() const {
    std::size_t n = 0;
    for (const auto& r : records_) n += !r.pass;
    return n;
}

const CheckRecord* Report::find(const std::string& suite, const std::string& check) const {
    for (const auto& r : records_)
        if (r.suite == suite && r.check == check) return &r;
    return nullptr;
}

void Report::write_jsonl(std::ostream& os, bool include_timing) const {
    using nlohmann::ordered_json;
    ordered_json head;
    head["type"] = "header";
    head["schema"] = kReportSchemaVersion;
    head["config"] = config_;
    os << head.dump() << '\n';
    for (const auto& r : records_) {
        ordered_json j;
        j["type"] = "check";
        j["suite"] = r.suite;
        j["check"] = r.check;
        j["value"] = r.value;  // non-finite values serialize as null
        j["relation"] = to_string(r.relation);
        j["tolerance"] = r.tolerance;
        j["pass"] = r.pass;
        if (include_timing) j["wall_seconds"] = r.wall_seconds;
        if (!r.numbers.empty()) j["diagnostics"] = r.numbers;
        if (!r.notes.empty()) j["notes"] = r.notes;
        os << j.dump() << '\n';
    }
    ordered_json tail;
    tail["type"] = "summary";
    tail["checks"] = records_.size();
    tail["failed"] = failures();
    tail["pass"] = passed();
    os << tail.dump() << '\n';
}

void Report::write_summary(std::ostream& os) const {
    std::size_t w = 5;
    for (const auto& r : records_) w = std::max(w, r.suite.size() + r.check.size() + 1);
    const auto flags = os.flags();
    for (const auto& r : records_) {
        os << (r.pass ? "PASS " : "FAIL ") << std::left << std::setw(static_cast<int>(w)) << (r.suite + "." + r.check)
           << std::right << "  " << std::setprecision(4) << std::scientific << r.value << ' ' << to_string(r.relation)
           << ' ' << r.tolerance << '\n';
    }
    os.flags(flags);
    os << records_.size() - failures() << '/' << records_.size() << " checks passed\n";
}

}  // namespace hfa
