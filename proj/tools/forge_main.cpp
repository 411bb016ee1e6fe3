#include "forge/pipeline.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

// Flat `key = value` config text mirroring the CLI flags; `;` and `#`
// start comments. Values given on the command line win.
std::map<std::string, std::string> read_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto cut = line.find_first_of(";#");
        if (cut != std::string::npos)
            line.erase(cut);
        auto eq = line.find('=');
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos)
                return std::string();
            auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        std::string rest = trim(line);
        if (rest.empty())
            continue;
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(line_no)
                                     + ": expected key = value");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

bool truthy(const std::string& v)
{
    return v == "1" || v == "true" || v == "yes" || v == "on";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"forge - identity synthesis for univariate math expressions"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run the full synthesis/deduplication pipeline");

    std::string benchmarks_path, rules_path, config_path;
    forge::PipelineConfig config;

    // A config file is applied first so that explicit command-line
    // values override it.
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config")
            config_path = argv[i + 1];
    if (!config_path.empty()) {
        try {
            auto kv = read_config_file(config_path);
            auto take = [&kv](const char* key, auto&& apply) {
                auto it = kv.find(key);
                if (it != kv.end())
                    apply(it->second);
            };
            take("benchmarks", [&](const std::string& v) { benchmarks_path = v; });
            take("rules", [&](const std::string& v) { rules_path = v; });
            take("out", [&](const std::string& v) { config.out_dir = v; });
            take("iters", [&](const std::string& v) { config.budget.max_iterations = std::stoi(v); });
            take("max-nodes", [&](const std::string& v) { config.budget.max_enodes = std::stoul(v); });
            take("timeout", [&](const std::string& v) { config.budget.timeout_seconds = std::stod(v); });
            take("cap", [&](const std::string& v) { config.candidate_cap = std::stoul(v); });
            take("jobs", [&](const std::string& v) { config.jobs = std::stoi(v); });
            take("emit-lp", [&](const std::string& v) { config.emit_lp = truthy(v); });
            take("dump-egraphs", [&](const std::string& v) { config.dump_egraphs = truthy(v); });
            take("defs-before-cover",
                 [&](const std::string& v) { config.defs_before_cover = truthy(v); });
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }

    run->add_option("--benchmarks", benchmarks_path, "benchmark file, one s-expression per line");
    run->add_option("--rules", rules_path, "rewrite rule file");
    run->add_option("--out", config.out_dir, "output directory (report.json, summary.txt, histogram.csv)");
    run->add_option("--iters", config.budget.max_iterations, "max saturation iterations per phase");
    run->add_option("--max-nodes", config.budget.max_enodes, "e-node budget per e-graph");
    run->add_option("--timeout", config.budget.timeout_seconds, "seconds per saturation phase");
    run->add_option("--cap", config.candidate_cap, "candidate cap per benchmark, lowest cost first");
    run->add_option("--jobs", config.jobs, "benchmark-level worker threads");
    run->add_flag("--emit-lp", config.emit_lp, "write the core-selection ILP per benchmark");
    run->add_flag("--dump-egraphs", config.dump_egraphs, "write the synthesis e-graph as DOT");
    run->add_flag("--defs-before-cover", config.defs_before_cover,
                  "run definitional filtering before core minimization");
    std::string config_flag_sink;
    run->add_option("--config", config_flag_sink, "config file (key = value lines mirroring these flags)");

    CLI11_PARSE(app, argc, argv);

    if (benchmarks_path.empty() || rules_path.empty()) {
        std::cerr << "error: --benchmarks and --rules are required (flag or config file)\n";
        return 2;
    }

    try {
        forge::PipelineResult result = forge::run_pipeline(benchmarks_path, rules_path, config);
        forge::write_outputs(result, config);
        std::cout << forge::summary_text(result);
        std::cout << "outputs written to " << config.out_dir << "/\n";
        return result.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
