// verify.hpp -- the flat-model identity suite behind `forms-verify`: every
// exact check of the holonomy layer bundled into one deterministic report.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace holonov {

struct VerifyOptions {
    int property_b_samples = 500;
    int calibration_samples = 10000;
    int taming_samples = 10000;
    uint64_t seed = 2024;
    double tolerance = 1e-9;  // float-layer comparisons only; identities are exact
    bool mutate = false;      // test hook: flips one coefficient of the model form
};

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    VerifyOptions options;
    std::vector<CheckLine> checks;
    bool pass = false;

    std::string text() const;  // byte-deterministic given identical options
};

VerifyReport forms_verify(const VerifyOptions& opt);

}  // namespace holonov
