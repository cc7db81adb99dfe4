#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cfp/report.hpp"

namespace cfp {

struct SuiteOptions {
    int lambda_grid = 200;  // lambda samples for the master inequality and c_k scans
    std::uint64_t seed = 1;
    int n_nodes = 400;      // grid for suites that apply T
    double lambda2 = 1e6;
    int members = 10;       // random K_lambda members (or pairs) per lambda
};

// lemma3 lemma4 ck prop4 prop5 equicont appendix all
const std::vector<std::string>& suite_names();

// Throws DomainError for an unknown suite name.
std::vector<VerificationReport> run_suite(const std::string& name, const SuiteOptions& opt);

// Individual building blocks, also used by the acceptance run.
VerificationReport verify_k_lambda_preservation(double lambda, const SuiteOptions& opt);
VerificationReport verify_rf_sandwich(double lambda, const SuiteOptions& opt);
VerificationReport verify_delta_r(double lambda, const SuiteOptions& opt);
VerificationReport verify_continuity(double lambda, const SuiteOptions& opt);
VerificationReport verify_equicontinuity(double lambda, const SuiteOptions& opt);
std::vector<VerificationReport> verify_appendix_identities(const SuiteOptions& opt);

}  // namespace cfp
