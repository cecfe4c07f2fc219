#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mps/pipeline.hpp"

namespace mps {

/// Benchmark-suite settings, loadable from a flat key=value text file.
struct BenchConfig {
    /// Formulations to run per instance, in record order.
    std::vector<Formulation> formulations = {
        Formulation::Kuratowski,
        Formulation::FacialWalks,
        Formulation::Schnyder,
        Formulation::LeftRight,
    };
    double time_limit_sec = 60.0;
    std::int64_t node_limit = std::numeric_limits<std::int64_t>::max();
    std::int64_t memory_limit_mb = 1024;
    /// Cross-check optimal objectives against the brute-force oracle when the
    /// instance has at most this many edges (<= 0 disables the check).
    int oracle_guard_edges = 30;
    /// Heuristic seed; also recorded in every CSV row.
    std::uint64_t seed = 0;
    /// Write wall_time_ms as 0 so the CSV is byte-deterministic across runs.
    /// Turn off to record real times.
    bool redact_timings = true;
    int jobs = 1;
    KuratowskiConfig kuratowski;
    FacialWalkConfig facialwalks;
    SchnyderConfig schnyder;
    LeftRightConfig leftright;
};

/// Parses "key=value" lines ('#' comments and blank lines allowed). Keys are
/// the BenchConfig field names; formulation options use a dotted prefix, e.g.
/// "leftright.unique_tree=false" or "schnyder.transitivity=lazy". Unknown
/// keys or unreadable values throw ParseError with the line number.
BenchConfig parse_bench_config(const std::string& text);
BenchConfig load_bench_config(const std::filesystem::path& path);

/// One (instance, formulation) outcome; maps 1:1 to a CSV row.
struct RunRecord {
    std::string instance;
    std::string formulation;
    /// "optimal", "time_limit", "node_limit", "memory_limit", or "error"
    /// (ingest failure, solver exception, or a failed verification).
    std::string status;
    std::int64_t objective = 0;
    std::int64_t dual_bound = 0;
    /// total weight minus the planar heuristic's weight: an upper bound on
    /// the instance's skewness that needs no solve.
    std::int64_t skewness_upper_bound = 0;
    std::int64_t wall_time_ms = 0;
    std::int64_t bnb_nodes = 0;
    std::int64_t lazy_constraints = 0;
    std::uint64_t seed = 0;
};

std::string csv_header();
std::string to_csv_row(const RunRecord& r);

struct SuiteResult {
    std::vector<RunRecord> records;
    /// Header plus one row per record, LF line endings.
    std::string csv;
    /// Solved-ratio table per formulation, for humans.
    std::string summary;
};

/// Runs every enabled formulation on every instance file in `corpus_dir`
/// (regular files, sorted by filename; format deduced from the extension):
/// ingest, preprocess, heuristic warm start, solve under the configured
/// limits, then verify the result (selection planarity, and oracle agreement
/// on small instances). Failures of a single run are recorded with status
/// "error" and never abort the suite. With jobs > 1, runs execute in a
/// worker pool; records always come back in deterministic order.
SuiteResult run_suite(const std::filesystem::path& corpus_dir, const BenchConfig& cfg);

} // namespace mps
