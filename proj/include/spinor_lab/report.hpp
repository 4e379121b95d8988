#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace spinor_lab {

/// One violated identity, with the coordinates (k, l, x, column, ...) where
/// it was observed.
struct Failure {
    std::string check;
    std::vector<std::pair<std::string, std::int64_t>> where;
};

/// Outcome of a verification sweep. Violations are data, not exceptions.
struct Report {
    std::string name;
    std::size_t checks = 0;
    std::size_t failed = 0;
    std::vector<Failure> failures;  // at most max_listed entries
    std::vector<std::string> notes;

    static constexpr std::size_t max_listed = 32;

    explicit Report(std::string n = {}) : name(std::move(n)) {}

    bool passed() const { return failed == 0; }

    void record(bool ok, const std::string& check, std::vector<std::pair<std::string, std::int64_t>> where = {}) {
        ++checks;
        if (ok) return;
        ++failed;
        if (failures.size() < max_listed) failures.push_back({check, std::move(where)});
    }

    void merge(const Report& other) {
        checks += other.checks;
        failed += other.failed;
        for (const auto& f : other.failures)
            if (failures.size() < max_listed) failures.push_back(f);
        notes.insert(notes.end(), other.notes.begin(), other.notes.end());
    }

    /// True if some listed failure has this check name.
    bool has_failure(const std::string& check) const {
        for (const auto& f : failures)
            if (f.check == check) return true;
        return false;
    }
};

}  // namespace spinor_lab
