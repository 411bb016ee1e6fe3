#pragma once

#include "forge/cover.hpp"
#include "forge/dedup.hpp"
#include "forge/filter.hpp"
#include "forge/identity.hpp"
#include "forge/rules.hpp"

#include <string>
#include <vector>

namespace forge {

struct PipelineConfig {
    RunBudget budget;              // per saturation phase
    std::size_t candidate_cap = 512;
    int verify_points = 256;
    double verify_tol = 1e-10;
    int jobs = 1;
    bool emit_lp = false;
    bool dump_egraphs = false;
    bool defs_before_cover = false;
    std::string out_dir = "forge-out";
};

struct ReportedIdentity {
    std::string rhs;
    std::string s, t; // populated when the identity has s(f(t(x))) form
    std::string classification;
    bool verified = false;
};

struct StageCounts {
    std::size_t raw_extractions = 0;
    std::size_t thefunc_free_discarded = 0;
    std::size_t candidates = 0;
    bool capped = false;
    std::size_t after_dedup = 0;
    std::size_t facts = 0;
    std::size_t after_cover = 0;
    bool trivial_present = false;
    std::size_t definitional_removed = 0;
    std::size_t final_core = 0;
};

struct PhaseSeconds {
    double synth = 0, dedup = 0, cover = 0, filter = 0, verify = 0;
    double total() const { return synth + dedup + cover + filter + verify; }
};

struct BenchmarkReport {
    std::string name;
    std::string input;
    std::string status = "ok"; // ok | verify-failed | sentinel | error
    std::string message;
    StageCounts counts;
    std::vector<ReportedIdentity> core;
    std::vector<ReportedIdentity> composite;
    std::vector<ReportedIdentity> definitional;
    bool budget_exhausted = false;
    bool verification_ok = true;
    PhaseSeconds seconds; // kept out of report.json so reruns are byte-identical
    std::string lp_text;
    std::string dot_text;
};

struct PipelineResult {
    std::vector<BenchmarkReport> benchmarks;
    std::size_t total_candidates = 0;
    std::size_t total_duplicates_removed = 0;
    double dedup_fraction = 0.0; // duplicates / candidates over the whole run
    int exit_code = 0;
};

// One benchmark through all phases; never throws (errors land in the
// report status).
BenchmarkReport process_benchmark(const std::string& name, const std::string& line,
                                  const std::vector<Rule>& rules, const PipelineConfig& config);

// Complete batch run over parsed benchmark lines. `rules` must already
// be closed over bidirectionality (rule_closure).
PipelineResult run_pipeline_lines(const std::vector<std::string>& lines,
                                  const std::vector<Rule>& rules, const PipelineConfig& config);

// File-based entry: benchmark file (one s-expression per line, `;`
// comments) plus rule file; returns the result without writing output.
PipelineResult run_pipeline(const std::string& benchmarks_path, const std::string& rules_path,
                            const PipelineConfig& config);

std::vector<std::string> read_benchmark_lines(const std::string& path);

std::string report_json(const PipelineResult& result, const PipelineConfig& config);
std::string summary_text(const PipelineResult& result);
std::string histogram_csv(const PipelineResult& result);

// Writes report.json, summary.txt, histogram.csv and any per-benchmark
// .lp/.dot files into config.out_dir.
void write_outputs(const PipelineResult& result, const PipelineConfig& config);

} // namespace forge
