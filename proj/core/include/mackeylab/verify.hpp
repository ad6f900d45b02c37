#pragma once

#include <cstdint>

#include "mackeylab/report.hpp"

// The one-shot verification suite: ten headline checks over the stock list
// of small p-groups, one report record each.  Probes that cannot reach a
// conclusive answer at the requested depth come back as skip, not fail.

namespace mackeylab::verify {

struct SuiteOptions {
    uint32_t depth = 8;
    uint64_t seed = 0xB0C;
    uint32_t trials = 100;
    bool timings = false;
};

report::Report paper_suite(const SuiteOptions& opt = {});

}  // namespace mackeylab::verify
