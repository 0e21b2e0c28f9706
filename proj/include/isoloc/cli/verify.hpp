#pragma once

#include "isoloc/cli/record.hpp"

namespace isoloc {

struct VerifyCheck {
    std::string what;
    bool ok = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;

    bool passed() const;
};

/// Recomputes every certificate from its stored rotation or seed (to 1e-8),
/// and checks that no row carries a failed property flag and that the
/// summary count matches.
VerifyReport verify_record(const ExperimentRecord& record);

}  // namespace isoloc
