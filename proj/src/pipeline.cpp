#include "forge/pipeline.hpp"

#include "forge/verify.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

namespace forge {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

ReportedIdentity report_identity(const Identity& id, Classification cls, bool verified)
{
    ReportedIdentity out;
    out.rhs = print_expr(id.rhs);
    if (id.decomposition) {
        out.s = print_expr(id.decomposition->first);
        out.t = print_expr(id.decomposition->second);
    }
    out.classification = std::string(classification_name(cls));
    out.verified = verified;
    return out;
}

} // namespace

BenchmarkReport process_benchmark(const std::string& name, const std::string& line,
                                  const std::vector<Rule>& rules, const PipelineConfig& config)
{
    BenchmarkReport rep;
    rep.name = name;
    rep.input = line;

    ExprPtr f;
    try {
        f = parse_expr(line);
    } catch (const ParseError& e) {
        rep.status = "error";
        rep.message = std::string("parse error at ") + std::to_string(e.position) + ": " + e.what();
        return rep;
    }

    try {
        // Phase 1: synthesis.
        auto t0 = Clock::now();
        SynthesisConfig scfg{config.budget, config.candidate_cap};
        EGraph synth_graph;
        SynthesisResult synth = synthesize(f, rules, scfg, config.dump_egraphs ? &synth_graph : nullptr);
        rep.seconds.synth = elapsed(t0);
        rep.counts.raw_extractions = synth.raw_extractions;
        rep.counts.thefunc_free_discarded = synth.thefunc_free_discarded;
        rep.counts.candidates = synth.candidates.size();
        rep.counts.capped = synth.capped;
        rep.budget_exhausted |= synth.run.exhausted();
        if (config.dump_egraphs) {
            std::ostringstream os;
            synth_graph.dump_dot(os);
            rep.dot_text = os.str();
        }

        // Every emitted candidate must agree with f numerically.
        t0 = Clock::now();
        for (const auto& cand : synth.candidates) {
            VerifyResult v = verify_identity(f, cand.rhs, config.verify_points, config.verify_tol);
            if (!v.pass) {
                rep.verification_ok = false;
                rep.status = "verify-failed";
                rep.message = "candidate " + print_expr(cand.rhs) + ": " + v.describe();
            }
        }
        rep.seconds.verify = elapsed(t0);

        // Phase 2a: abstract-function deduplication.
        t0 = Clock::now();
        DedupResult dd = dedup(synth.candidates, rules, config.budget);
        rep.seconds.dedup = elapsed(t0);
        rep.counts.after_dedup = dd.groups.size();
        rep.counts.trivial_present = dd.has_trivial_group();
        rep.budget_exhausted |= dd.budget_exhausted;

        std::vector<Identity> reps = dd.representatives;
        std::size_t trivial_idx = dd.trivial_group;

        // Optional early definitional pass (flag-switchable order).
        std::vector<bool> definitional(reps.size(), false);
        auto run_filters = [&](std::size_t idx) {
            FilterOutcome direct = is_definitional_direct(reps[idx], rules, config.budget);
            if (direct.definitional)
                return true;
            FilterOutcome eq = is_definitional_equation(reps[idx], f, rules, config.budget);
            return eq.definitional;
        };
        auto filter_t0 = Clock::now();
        if (config.defs_before_cover) {
            for (std::size_t i = 0; i < reps.size(); ++i)
                if (i != trivial_idx && run_filters(i))
                    definitional[i] = true;
        }
        rep.seconds.filter += elapsed(filter_t0);

        // Phase 2b: composition facts over the representatives, then
        // core minimization over the non-trivial (and, pre-filtered,
        // non-definitional) identities. The trivial identity is always
        // derivable at age 0 and never forces core membership.
        t0 = Clock::now();
        FactResult facts = discover_facts(reps, rules, config.budget);
        rep.budget_exhausted |= facts.budget_exhausted;

        std::vector<std::size_t> universe; // rep indices entering minimization
        std::vector<std::size_t> new_index(reps.size(), static_cast<std::size_t>(-1));
        for (std::size_t i = 0; i < reps.size(); ++i) {
            if (i == trivial_idx || definitional[i])
                continue;
            new_index[i] = universe.size();
            universe.push_back(i);
        }

        std::vector<CoverageFact> solver_facts;
        for (CoverageFact fct : facts.facts) {
            if (fct.k == trivial_idx || new_index[fct.k] == static_cast<std::size_t>(-1))
                continue;
            if (fct.i == trivial_idx)
                fct.i = fct.j; // trivial is always covered
            if (fct.j == trivial_idx)
                fct.j = fct.i;
            if (fct.i == trivial_idx || new_index[fct.i] == static_cast<std::size_t>(-1)
                || new_index[fct.j] == static_cast<std::size_t>(-1))
                continue;
            solver_facts.push_back({new_index[fct.i], new_index[fct.j], new_index[fct.k]});
        }
        std::sort(solver_facts.begin(), solver_facts.end());
        solver_facts.erase(std::unique(solver_facts.begin(), solver_facts.end()),
                           solver_facts.end());
        rep.counts.facts = solver_facts.size();

        CoreResult core = minimize_core(universe.size(), solver_facts);
        rep.seconds.cover = elapsed(t0);
        rep.counts.after_cover = core.core.size();
        if (config.emit_lp)
            rep.lp_text = emit_lp(universe.size(), solver_facts);

        std::vector<bool> in_core(reps.size(), false);
        for (std::size_t c : core.core)
            in_core[universe[c]] = true;

        // Phase 3 (default order): definitional detection on the core.
        filter_t0 = Clock::now();
        if (!config.defs_before_cover) {
            for (std::size_t i = 0; i < reps.size(); ++i)
                if (in_core[i] && run_filters(i))
                    definitional[i] = true;
        }
        rep.seconds.filter += elapsed(filter_t0);

        // Assemble per-identity reports; every listed identity is
        // re-verified (representatives can be new expressions).
        auto verify_t0 = Clock::now();
        for (std::size_t i = 0; i < reps.size(); ++i) {
            Classification cls;
            if (i == trivial_idx)
                cls = Classification::Trivial;
            else if (definitional[i])
                cls = Classification::Definitional;
            else if (in_core[i])
                cls = Classification::Core;
            else
                cls = Classification::Composite;
            reps[i].classification = cls;

            if (cls == Classification::Trivial)
                continue;
            VerifyResult v = verify_identity(f, reps[i].rhs, config.verify_points, config.verify_tol);
            if (!v.pass) {
                rep.verification_ok = false;
                rep.status = "verify-failed";
                rep.message = "representative " + print_expr(reps[i].rhs) + ": " + v.describe();
            }
            ReportedIdentity ri = report_identity(reps[i], cls, v.pass);
            if (cls == Classification::Core)
                rep.core.push_back(std::move(ri));
            else if (cls == Classification::Definitional)
                rep.definitional.push_back(std::move(ri));
            else
                rep.composite.push_back(std::move(ri));
        }
        rep.seconds.verify += elapsed(verify_t0);
        rep.counts.definitional_removed = rep.definitional.size();
        rep.counts.final_core = rep.core.size();
    } catch (const SoundnessError& e) {
        rep.status = "sentinel";
        rep.message = e.what();
    } catch (const std::exception& e) {
        rep.status = "error";
        rep.message = e.what();
    }
    return rep;
}

std::vector<std::string> read_benchmark_lines(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open benchmark file: " + path);
    std::vector<std::string> lines;
    std::string raw;
    while (std::getline(in, raw)) {
        auto comment = raw.find(';');
        if (comment != std::string::npos)
            raw.erase(comment);
        std::size_t b = raw.find_first_not_of(" \t\r");
        if (b == std::string::npos)
            continue;
        std::size_t e = raw.find_last_not_of(" \t\r");
        lines.push_back(raw.substr(b, e - b + 1));
    }
    return lines;
}

PipelineResult run_pipeline_lines(const std::vector<std::string>& lines,
                                  const std::vector<Rule>& rules, const PipelineConfig& config)
{
    PipelineResult result;
    result.benchmarks.resize(lines.size());

    auto name_of = [](std::size_t i) {
        std::ostringstream os;
        os << "bench-" << std::setw(3) << std::setfill('0') << i + 1;
        return os.str();
    };

    int jobs = std::max(1, config.jobs);
    if (jobs == 1 || lines.size() <= 1) {
        for (std::size_t i = 0; i < lines.size(); ++i)
            result.benchmarks[i] = process_benchmark(name_of(i), lines[i], rules, config);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= lines.size())
                    return;
                result.benchmarks[i] = process_benchmark(name_of(i), lines[i], rules, config);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }

    for (const auto& b : result.benchmarks) {
        result.total_candidates += b.counts.candidates;
        result.total_duplicates_removed += b.counts.candidates - b.counts.after_dedup;
        if (b.status == "sentinel" || b.status == "error" || !b.verification_ok)
            result.exit_code = 1;
    }
    result.dedup_fraction = result.total_candidates == 0
                                ? 0.0
                                : static_cast<double>(result.total_duplicates_removed)
                                      / static_cast<double>(result.total_candidates);
    return result;
}

PipelineResult run_pipeline(const std::string& benchmarks_path, const std::string& rules_path,
                            const PipelineConfig& config)
{
    std::vector<Rule> rules = rule_closure(load_rules(rules_path));
    return run_pipeline_lines(read_benchmark_lines(benchmarks_path), rules, config);
}

namespace {

nlohmann::ordered_json identity_json(const ReportedIdentity& ri)
{
    nlohmann::ordered_json j;
    j["rhs"] = ri.rhs;
    if (!ri.s.empty()) {
        j["s"] = ri.s;
        j["t"] = ri.t;
    }
    j["classification"] = ri.classification;
    j["verified"] = ri.verified;
    return j;
}

} // namespace

std::string report_json(const PipelineResult& result, const PipelineConfig& config)
{
    nlohmann::ordered_json root;
    nlohmann::ordered_json cfg;
    cfg["iterations"] = config.budget.max_iterations;
    cfg["max_enodes"] = config.budget.max_enodes;
    cfg["timeout_seconds"] = config.budget.timeout_seconds;
    cfg["candidate_cap"] = config.candidate_cap;
    cfg["verify_points"] = config.verify_points;
    cfg["verify_tol"] = config.verify_tol;
    cfg["defs_before_cover"] = config.defs_before_cover;
    root["config"] = cfg;

    nlohmann::ordered_json benches = nlohmann::ordered_json::array();
    for (const auto& b : result.benchmarks) {
        nlohmann::ordered_json jb;
        jb["name"] = b.name;
        jb["input"] = b.input;
        jb["status"] = b.status;
        if (!b.message.empty())
            jb["message"] = b.message;
        nlohmann::ordered_json counts;
        counts["raw_extractions"] = b.counts.raw_extractions;
        counts["thefunc_free_discarded"] = b.counts.thefunc_free_discarded;
        counts["candidates"] = b.counts.candidates;
        counts["capped"] = b.counts.capped;
        counts["after_dedup"] = b.counts.after_dedup;
        counts["facts"] = b.counts.facts;
        counts["after_cover"] = b.counts.after_cover;
        counts["trivial_present"] = b.counts.trivial_present;
        counts["definitional_removed"] = b.counts.definitional_removed;
        counts["final_core"] = b.counts.final_core;
        jb["counts"] = counts;
        jb["budget_exhausted"] = b.budget_exhausted;
        jb["verification_ok"] = b.verification_ok;
        auto emit_list = [](const std::vector<ReportedIdentity>& list) {
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            for (const auto& ri : list)
                arr.push_back(identity_json(ri));
            return arr;
        };
        jb["core"] = emit_list(b.core);
        jb["composite"] = emit_list(b.composite);
        jb["definitional"] = emit_list(b.definitional);
        benches.push_back(std::move(jb));
    }
    root["benchmarks"] = std::move(benches);

    nlohmann::ordered_json totals;
    totals["benchmarks"] = result.benchmarks.size();
    totals["candidates"] = result.total_candidates;
    totals["duplicates_removed"] = result.total_duplicates_removed;
    {
        std::ostringstream os;
        os << std::fixed << std::setprecision(4) << result.dedup_fraction;
        totals["dedup_fraction"] = os.str();
    }
    totals["exit_code"] = result.exit_code;
    root["totals"] = std::move(totals);
    return root.dump(2) + "\n";
}

std::string summary_text(const PipelineResult& result)
{
    std::ostringstream os;
    os << std::left;
    os << std::setw(11) << "benchmark" << std::setw(8) << "status" << std::setw(6) << "cand"
       << std::setw(7) << "dedup" << std::setw(6) << "core" << std::setw(6) << "defs"
       << std::setw(9) << "seconds" << "input\n";
    for (const auto& b : result.benchmarks) {
        std::ostringstream secs;
        secs << std::fixed << std::setprecision(2) << b.seconds.total() << " (s "
             << b.seconds.synth << " d " << b.seconds.dedup << " c " << b.seconds.cover
             << " f " << b.seconds.filter << " v " << b.seconds.verify << ")";
        os << std::setw(11) << b.name << std::setw(8) << b.status << std::setw(6)
           << b.counts.candidates << std::setw(7) << b.counts.after_dedup << std::setw(6)
           << b.counts.final_core << std::setw(6) << b.counts.definitional_removed
           << std::setw(9) << secs.str() << "  " << b.input << "\n";
        for (const auto& ri : b.core) {
            os << "    core: " << ri.rhs;
            if (!ri.s.empty())
                os << "   [s(y) = " << ri.s << ", t(x) = " << ri.t << "]";
            os << "\n";
        }
        for (const auto& ri : b.definitional)
            os << "    definitional: " << ri.rhs << "\n";
    }
    os << "\ncandidates " << result.total_candidates << ", duplicates removed "
       << result.total_duplicates_removed << " (" << std::fixed << std::setprecision(1)
       << 100.0 * result.dedup_fraction << "%)\n";
    return os.str();
}

std::string histogram_csv(const PipelineResult& result)
{
    std::size_t max_bucket = 0;
    for (const auto& b : result.benchmarks) {
        max_bucket = std::max(max_bucket, b.counts.final_core);
        max_bucket = std::max(max_bucket, b.counts.definitional_removed);
    }
    std::ostringstream os;
    os << "bucket,useful,definitional\n";
    for (std::size_t k = 0; k <= max_bucket; ++k) {
        std::size_t useful = 0, defs = 0;
        for (const auto& b : result.benchmarks) {
            if (b.counts.final_core == k)
                ++useful;
            if (b.counts.definitional_removed == k)
                ++defs;
        }
        os << k << "," << useful << "," << defs << "\n";
    }
    return os.str();
}

void write_outputs(const PipelineResult& result, const PipelineConfig& config)
{
    namespace fs = std::filesystem;
    fs::create_directories(config.out_dir);
    auto write = [&](const std::string& file, const std::string& text) {
        std::ofstream out(fs::path(config.out_dir) / file, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write " + file + " in " + config.out_dir);
        out << text;
    };
    write("report.json", report_json(result, config));
    write("summary.txt", summary_text(result));
    write("histogram.csv", histogram_csv(result));
    for (const auto& b : result.benchmarks) {
        if (!b.lp_text.empty())
            write(b.name + ".lp", b.lp_text);
        if (!b.dot_text.empty())
            write(b.name + ".dot", b.dot_text);
    }
}

} // namespace forge
