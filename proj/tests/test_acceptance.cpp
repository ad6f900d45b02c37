#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>

#include "doctest.h"
#include "mackeylab/report.hpp"
#include "mackeylab/verify.hpp"

using namespace mackeylab;

// The headline suite, one line per check. Everything must come back as a
// pass at stock settings; a skip here means the probe depth was too shallow,
// which the stock depth never is.

TEST_CASE("headline suite passes at stock settings") {
    verify::SuiteOptions opt;
    opt.timings = true;
    report::Report rep = verify::paper_suite(opt);
    REQUIRE(rep.records.size() == 10);
    for (const auto& rec : rep.records) {
        std::printf("[%s] %s (%.0f ms)\n", rec.status.c_str(), rec.name.c_str(),
                    rec.wall_ms);
        std::fflush(stdout);
    }
    for (const auto& rec : rep.records) {
        CAPTURE(rec.name);
        CAPTURE(rec.measured.dump());
        CHECK(rec.status == "pass");
    }
    CHECK(rep.exit_code() == 0);
}
