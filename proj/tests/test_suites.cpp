#include <doctest.h>

#include <sstream>

#include "hfa/suites.hpp"

using namespace hfa;

TEST_CASE("suite names") {
    CHECK(suite_names().size() == 9);
    CHECK(is_suite("all"));
    CHECK(is_suite("lie"));
    CHECK_FALSE(is_suite("nope"));
    CHECK_THROWS_AS(run_suite("nope", RunConfig{}), UsageError);
}

TEST_CASE("fast suites pass with defaults") {
    const RunConfig cfg;
    for (const char* name : {"group", "lie"}) {
        const Report rep = run_suite(name, cfg);
        CHECK_MESSAGE(rep.passed(), name);
        CHECK(!rep.records().empty());
    }
}

TEST_CASE("suite output is deterministic") {
    const RunConfig cfg;
    std::ostringstream a, b;
    run_suite("group", cfg).write_jsonl(a, false);
    run_suite("group", cfg).write_jsonl(b, false);
    CHECK(a.str() == b.str());
}

TEST_CASE("convergence tables") {
    RunConfig cfg;
    CHECK_THROWS_AS(convergence_table("fusion", cfg, 1), UsageError);
    const auto t = convergence_table("fusion", cfg, 2);
    REQUIRE(!t.rows.empty());
    CHECK(std::isnan(t.rows.front().ratio));
    bool level1 = false;
    for (const auto& r : t.rows) level1 |= r.level == 1 && r.n_points == 2 * cfg.fusion_n_points;
    CHECK(level1);
    std::ostringstream os;
    write_csv(os, t);
    CHECK(os.str().rfind("suite,check,level,n_points,value,ratio", 0) == 0);

    cfg.max_tensor_n_points = 16;
    try {
        convergence_table("fusion", cfg, 3);
        FAIL("expected a capacity error");
    } catch (const ConvergenceCapacityError& e) {
        CHECK(!e.partial().rows.empty());
    }
}

TEST_CASE("refined configs") {
    const RunConfig cfg;
    const auto r = refine_config(cfg, 1);
    CHECK(r.transform.n_points == 2 * cfg.transform.n_points);
    CHECK(r.fusion_n_points == 2 * cfg.fusion_n_points);
    CHECK(r.rep_n_points == 2 * cfg.rep_n_points);
}
