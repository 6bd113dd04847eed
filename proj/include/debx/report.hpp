#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace debx {

/// One named check: a measured quantity, the value it should match (if any),
/// and the tolerance verdict.
struct CheckEntry {
    std::string check_name;
    std::optional<double> target;  // absent for pure inequality checks
    double measured = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;
    double tol = 0.0;
    bool pass = false;
};

/// Aggregated result of a verification run. `finalize()` orders entries by
/// name and recomputes the overall verdict, so serialized reports are stable
/// regardless of the order checks executed in.
struct VerificationReport {
    std::vector<CheckEntry> entries;
    bool overall_pass = true;
    std::map<std::string, std::string> metadata;

    /// Record a check against a known target with an absolute tolerance on
    /// |measured - target|. rel_err is reported against |target| when that
    /// is nonzero, otherwise it duplicates abs_err.
    CheckEntry& add_target_check(const std::string& name, double measured, double target,
                                 double tol);

    /// Record a bound-style check: `measured` must not exceed `tol`.
    CheckEntry& add_bound_check(const std::string& name, double measured, double tol);

    void finalize();

    std::string to_json() const;
    static VerificationReport from_json(const std::string& text);
};

}  // namespace debx
