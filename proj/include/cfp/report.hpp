#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace cfp {

// Outcome of one sampled inequality check, oriented so that margin >= 0 means satisfied.
struct VerificationReport {
    std::string lemma_id;
    std::string domain;
    double worst_margin = 0.0;
    std::vector<double> worst_location;
    bool passed = false;
    bool inconclusive = false;  // |margin| below the resolution threshold
    std::size_t samples = 0;
    std::size_t violations = 0;

    std::string to_text() const;
    nlohmann::json to_json() const;
};

constexpr double kInconclusiveMargin = 1e-9;

VerificationReport make_report(std::string id, std::string domain, double margin,
                               std::vector<double> location, std::size_t samples = 0,
                               std::size_t violations = 0);

struct ScanResult {
    double worst = 0.0;
    std::size_t index = 0;
    std::size_t violations = 0;  // margin < 0
};

// min over i of margin(i), evaluated in parallel, ties resolved by lowest index.
ScanResult scan_min(std::size_t n, const std::function<double(std::size_t)>& margin);

}  // namespace cfp
