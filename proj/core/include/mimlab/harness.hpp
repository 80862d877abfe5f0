#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mimlab/generators.hpp"
#include "mimlab/graph.hpp"

namespace mimlab {

/// Names accepted in ExperimentSpec::checks.
const std::vector<std::string>& known_checks();

/// A resolved test instance.
struct Instance {
    std::string id;
    /// Family name ("fixture", "skew-grid", "corpus", ...).
    std::string family;
    std::vector<int> params;
    Graph graph;
    /// Present for skew-grid instances.
    std::optional<SkewGrid> grid;
    /// Natural U side for bipartite and counterexample families.
    std::optional<VertexSet> side_u;
};

/// Expands one instance descriptor:
///   fixture:<name>  skew:<q>  matching:<k>  counterexample:<k>  h:<r>
///   grid:<p>,<r>  skew-path:<p>,<q>  skew-grid:<p>,<q>,<r>  skew-grid:auto,<q>,<r>
///   corpus:all:<N>  corpus:connected:<N>  random:<n>:<count>[:<edge-prob>]
/// Random descriptors draw from `seed`. Throws std::invalid_argument on
/// malformed descriptors.
std::vector<Instance> resolve_instances(const std::string& descriptor, std::uint64_t seed);

struct ExperimentSpec {
    std::vector<std::string> instances;
    std::vector<std::string> checks;
    Budget budget;
    std::uint64_t seed = 0;
    int threads = 1;
    /// Number of seeded mixed-layer horizontal subgraphs for lemma2.
    int mixed_samples = 10;
    /// Seeded random orderings tried by lemma3-core beyond the fixed ones.
    int random_orderings = 5;
};

enum class CheckStatus { pass, fail, skipped };
std::string_view to_string(CheckStatus s);

struct ReportRow {
    std::string instance;
    int n = 0;
    int m = 0;
    std::string check;
    CheckStatus status = CheckStatus::skipped;
    /// True when every number behind the status came from an exact computation.
    bool exact = false;
    /// -1 when not computed.
    long long lu = -1;
    long long lmim = -1;
    long long lsim = -1;
    long long traces = -1;
    long long obdd_quasi = -1;
    long long obdd_reduced = -1;
    /// The inequality checked, with numbers substituted.
    std::string bound;
    std::string detail;
    std::uint64_t seed = 0;
    double wall_ms = 0.0;

    friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

/// Runs every requested check on every instance. Rows are ordered by instance
/// (in descriptor order) and then by the order of spec.checks, regardless
/// of thread scheduling. Throws std::invalid_argument on unknown check names.
std::vector<ReportRow> verify(const ExperimentSpec& spec);

/// Prefix trace lower bound on a p,q,r skew grid with p = 2 r ceil(log2 q): for each tested
/// ordering the largest prefix trace count must reach min((q+1)^r, 2^{p/2}).
/// All orderings are tried when n <= 9; otherwise layer-major, coordinate-major
/// and `random_orderings` seeded shuffles. Requires q > 1.
ReportRow grid_prefix_trace_check(int q, int r, std::uint64_t seed = 0, int random_orderings = 5,
                            const Budget& budget = {});

enum class ExportFormat { csv, json };
ExportFormat parse_export_format(const std::string& text);

/// Stable column order; integers printed in full. Wall time is written only
/// when include_timing is set so that reports stay byte-identical per seed.
void write_csv(std::ostream& out, const std::vector<ReportRow>& rows, bool include_timing = false);
void write_json(std::ostream& out, const std::vector<ReportRow>& rows, bool include_timing = false);
std::vector<ReportRow> read_json(std::istream& in);

/// Writes rows to path (or stdout for "-"). Throws std::runtime_error on I/O failure.
void export_rows(const std::vector<ReportRow>& rows, ExportFormat format, const std::string& path,
                 bool include_timing = false);

/// True when any row failed.
bool any_failed(const std::vector<ReportRow>& rows);
bool any_skipped(const std::vector<ReportRow>& rows);

}  // namespace mimlab
