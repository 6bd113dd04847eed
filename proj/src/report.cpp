#include "debx/report.hpp"

#include <algorithm>
#include <cmath>

#include "nlohmann/json.hpp"

namespace debx {

using ordered_json = nlohmann::ordered_json;

CheckEntry& VerificationReport::add_target_check(const std::string& name, double measured,
                                                 double target, double tol) {
    CheckEntry e;
    e.check_name = name;
    e.target = target;
    e.measured = measured;
    e.abs_err = std::abs(measured - target);
    e.rel_err = target != 0.0 ? e.abs_err / std::abs(target) : e.abs_err;
    e.tol = tol;
    e.pass = e.abs_err <= tol;
    entries.push_back(e);
    return entries.back();
}

CheckEntry& VerificationReport::add_bound_check(const std::string& name, double measured,
                                                double tol) {
    CheckEntry e;
    e.check_name = name;
    e.measured = measured;
    e.abs_err = measured;
    e.rel_err = measured;
    e.tol = tol;
    e.pass = measured <= tol;
    entries.push_back(e);
    return entries.back();
}

void VerificationReport::finalize() {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const CheckEntry& a, const CheckEntry& b) {
                         return a.check_name < b.check_name;
                     });
    overall_pass = std::all_of(entries.begin(), entries.end(),
                               [](const CheckEntry& e) { return e.pass; });
}

std::string VerificationReport::to_json() const {
    ordered_json root;
    root["entries"] = ordered_json::array();
    for (const auto& e : entries) {
        ordered_json je;
        je["check_name"] = e.check_name;
        if (e.target)
            je["target"] = *e.target;
        else
            je["target"] = nullptr;
        je["measured"] = e.measured;
        je["abs_err"] = e.abs_err;
        je["rel_err"] = e.rel_err;
        je["tol"] = e.tol;
        je["pass"] = e.pass;
        root["entries"].push_back(je);
    }
    root["overall_pass"] = overall_pass;
    root["metadata"] = metadata;
    return root.dump(2) + "\n";
}

VerificationReport VerificationReport::from_json(const std::string& text) {
    const auto root = ordered_json::parse(text);
    VerificationReport rep;
    for (const auto& je : root.at("entries")) {
        CheckEntry e;
        e.check_name = je.at("check_name").get<std::string>();
        if (!je.at("target").is_null()) e.target = je.at("target").get<double>();
        e.measured = je.at("measured").get<double>();
        e.abs_err = je.at("abs_err").get<double>();
        e.rel_err = je.at("rel_err").get<double>();
        e.tol = je.at("tol").get<double>();
        e.pass = je.at("pass").get<bool>();
        rep.entries.push_back(e);
    }
    rep.overall_pass = root.at("overall_pass").get<bool>();
    if (root.contains("metadata")) {
        for (auto it = root["metadata"].begin(); it != root["metadata"].end(); ++it)
            rep.metadata[it.key()] = it.value().get<std::string>();
    }
    return rep;
}

}  // namespace debx
