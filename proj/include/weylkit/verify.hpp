#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace weylkit {

struct VerifyOptions {
    unsigned long seed = 20250811;
    // Instance-count divisor for quick runs; 1 = the full acceptance load.
    int scale_down = 1;
    bool inject_fault = false;
    bool parallel = true;
};

struct CheckResult {
    std::string id;
    std::string params;
    bool pass = false;
    long instances = 0;
    std::string witness;
    double millis = 0.0;
};

struct VerificationReport {
    unsigned long seed = 0;
    std::vector<CheckResult> checks;
    bool all_pass() const
    {
        for (const auto& c : checks)
            if (!c.pass)
                return false;
        return true;
    }
};

// Runs the full assertion suite deterministically for the seed. Check ids:
//   1 lemma25-identities   2 word-oracle        3 qp-tail
//   4 schur-fixture        5 centralizer        6 dixmier-laws
//   7 poly-ode             8 condition-aq       9 automorphism-roundtrip
//  10 essgcd-twist
VerificationReport lemma_suite(const VerifyOptions& opt);

nlohmann::json report_to_json(const VerificationReport& rep);
std::string report_to_text(const VerificationReport& rep);

} // namespace weylkit
