#include <sstream>

#include "doctest.h"
#include "mimlab/harness.hpp"

using namespace mimlab;

namespace {

std::string csv(const std::vector<ReportRow>& rows) {
    std::ostringstream os;
    write_csv(os, rows);
    return os.str();
}

int lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

bool all_pass(const std::vector<ReportRow>& rows) {
    return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.status == CheckStatus::pass; });
}

}  // namespace

TEST_CASE("instance descriptors") {
    CHECK(resolve_instances("fixture:c4", 0).front().graph.n() == 4);
    auto sg = resolve_instances("skew-grid:auto,3,1", 0);
    REQUIRE(sg.size() == 1);
    REQUIRE(sg.front().grid);
    CHECK(sg.front().grid->meta.p == 4);
    CHECK(sg.front().id == "skew-grid:4,3,1");
    CHECK(resolve_instances("corpus:all:4", 0).size() == 1 + 2 + 4 + 11);
    CHECK(resolve_instances("corpus:connected:4", 0).size() == 1 + 2 + 6);
    auto r1 = resolve_instances("random:8:3", 5);
    auto r2 = resolve_instances("random:8:3", 5);
    REQUIRE(r1.size() == 3);
    CHECK(r1[0].graph == r2[0].graph);
    CHECK(r1[0].id == "rand8-000-s5");
    CHECK(resolve_instances("counterexample:3", 0).front().side_u->count() == 3);
    CHECK_THROWS_AS(resolve_instances("nonsense", 0), std::invalid_argument);
    CHECK_THROWS_AS(resolve_instances("blob:3", 0), std::invalid_argument);
    CHECK_THROWS_AS(resolve_instances("grid:3", 0), std::invalid_argument);
    CHECK_THROWS_AS(resolve_instances("skew:x", 0), std::invalid_argument);
}

TEST_CASE("unknown check names are rejected") {
    ExperimentSpec spec;
    spec.instances = {"fixture:k2"};
    spec.checks = {"lemma9"};
    CHECK_THROWS_AS(verify(spec), std::invalid_argument);
}

TEST_CASE("connected corpus up to six vertices passes the subfunction and OBDD checks") {
    ExperimentSpec spec;
    spec.instances = {"corpus:connected:6"};
    spec.checks = {"lemma1", "theorem2"};
    auto rows = verify(spec);
    CHECK(rows.size() == 2 * (1 + 2 + 6 + 21 + 112));
    CHECK(all_pass(rows));
    CHECK_FALSE(any_failed(rows));
    for (const auto& r : rows) CHECK(r.exact);
}

TEST_CASE("separation and counterexample rows") {
    ExperimentSpec spec;
    spec.instances = {"h:3"};
    spec.checks = {"h-separation"};
    auto rows = verify(spec);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].exact);
    CHECK(rows[0].lu == 1);
    CHECK(rows[0].lmim >= 1);
    // the stated lu = 2 does not hold for this construction
    CHECK(rows[0].status == CheckStatus::fail);

    spec.instances = {"counterexample:4"};
    spec.checks = {"counterexample"};
    rows = verify(spec);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].status == CheckStatus::pass);
    CHECK(rows[0].traces == 16);
}

TEST_CASE("inapplicable checks are skipped, never passed") {
    ExperimentSpec spec;
    spec.instances = {"fixture:c4"};
    spec.checks = {"lemma2", "vc", "counterexample"};
    auto rows = verify(spec);
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) {
        CHECK(r.status == CheckStatus::skipped);
        CHECK_FALSE(r.exact);
    }
    CHECK(any_skipped(rows));
}

TEST_CASE("budget exhaustion marks rows skipped") {
    ExperimentSpec spec;
    spec.instances = {"skew-grid:3,3,1"};
    spec.checks = {"lemma4"};
    spec.budget.matching_nodes = 2;
    auto rows = verify(spec);
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows) {
        CHECK(r.status == CheckStatus::skipped);
        CHECK(r.detail.find("budget") != std::string::npos);
    }
}

TEST_CASE("prefix trace lower bound on small grids") {
    auto a = grid_prefix_trace_check(2, 1);
    CHECK(a.status == CheckStatus::pass);
    CHECK(a.traces >= 2);
    CHECK(a.detail.find("(all)") != std::string::npos);
    auto b = grid_prefix_trace_check(3, 1);
    CHECK(b.status == CheckStatus::pass);
    CHECK(b.traces >= 4);
    CHECK_THROWS_AS(grid_prefix_trace_check(1, 1), PreconditionError);
}

TEST_CASE("CSV export") {
    CHECK(lines(csv({})) == 1);
    ReportRow r;
    r.instance = "x,y";
    r.check = "vc";
    r.bound = "say \"hi\"";
    const std::string one = csv({r});
    CHECK(lines(one) == 2);
    CHECK(one.find("\"x,y\"") != std::string::npos);
    CHECK(one.find("\"say \"\"hi\"\"\"") != std::string::npos);
    r.traces = 123456789012345LL;
    CHECK(csv({r}).find("123456789012345") != std::string::npos);
    CHECK(parse_export_format("json") == ExportFormat::json);
    CHECK_THROWS_AS(parse_export_format("xml"), std::invalid_argument);
}

TEST_CASE("JSON round trip") {
    ExperimentSpec spec;
    spec.instances = {"fixture:c4", "skew:3"};
    spec.checks = {"theorem1", "obdd", "vc"};
    auto rows = verify(spec);
    for (bool timing : {false, true}) {
        std::stringstream ss;
        write_json(ss, rows, timing);
        auto back = read_json(ss);
        REQUIRE(back.size() == rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            ReportRow want = rows[i];
            if (!timing) want.wall_ms = 0.0;
            CHECK(back[i] == want);
        }
    }
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
    ExperimentSpec spec;
    spec.instances = {"random:7:12", "fixture:fig1", "skew:3"};
    spec.checks = {"theorem2", "claims", "vc"};
    spec.seed = 11;
    const std::string one = csv(verify(spec));
    spec.threads = 4;
    CHECK(csv(verify(spec)) == one);
    CHECK(one.find(",11\n") != std::string::npos);
}
