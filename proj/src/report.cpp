#include "cfp/report.hpp"

#include <cmath>
#include <fmt/format.h>

#include "cfp/quadrature.hpp"

namespace cfp {

std::string VerificationReport::to_text() const {
    std::string loc;
    for (std::size_t i = 0; i < worst_location.size(); ++i)
        loc += fmt::format("{}{:.10g}", i ? "," : "", worst_location[i]);
    const char* status = inconclusive ? "INCONCLUSIVE" : (passed ? "PASS" : "FAIL");
    return fmt::format("{} {} worst_margin={:.6e} at=({}) samples={} violations={} domain=\"{}\"",
                       lemma_id, status, worst_margin, loc, samples, violations, domain);
}

nlohmann::json VerificationReport::to_json() const {
    return {{"lemma_id", lemma_id},       {"domain", domain},
            {"worst_margin", worst_margin}, {"worst_location", worst_location},
            {"passed", passed},           {"inconclusive", inconclusive},
            {"samples", samples},         {"violations", violations}};
}

VerificationReport make_report(std::string id, std::string domain, double margin,
                               std::vector<double> location, std::size_t samples,
                               std::size_t violations) {
    VerificationReport r;
    r.lemma_id = std::move(id);
    r.domain = std::move(domain);
    r.worst_margin = margin;
    r.worst_location = std::move(location);
    r.inconclusive = std::fabs(margin) < kInconclusiveMargin;
    r.passed = margin >= 0.0 && !r.inconclusive;
    r.samples = samples;
    r.violations = violations;
    return r;
}

ScanResult scan_min(std::size_t n, const std::function<double(std::size_t)>& margin) {
    std::vector<double> m(n);
    parallel_for(n, [&](std::size_t i) { m[i] = margin(i); });
    ScanResult r;
    r.worst = INFINITY;
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i] < 0.0 || std::isnan(m[i])) ++r.violations;
        if (m[i] < r.worst || std::isnan(m[i])) {
            r.worst = std::isnan(m[i]) ? -INFINITY : m[i];
            r.index = i;
        }
    }
    return r;
}

}  // namespace cfp
