#include "forge/rules.hpp"

#include "forge/verify.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace forge {

namespace {

const std::set<std::string> kPatternVars = {"a", "b", "c"};

std::string trim(std::string_view s)
{
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

} // namespace

std::string_view rule_status_name(RuleStatus s)
{
    switch (s) {
    case RuleStatus::CuratedSound: return "curated-sound";
    case RuleStatus::Validated: return "validated";
    case RuleStatus::FlaggedUnsound: return "flagged-unsound";
    }
    return "?";
}

std::vector<Rule> parse_rules(std::string_view text)
{
    std::vector<Rule> rules;
    std::set<std::string> seen;
    int line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        auto comment = raw.find(';');
        if (comment != std::string::npos)
            raw.erase(comment);
        std::string line = trim(raw);
        if (line.empty())
            continue;

        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw RuleFileError("missing ':' after rule name", line_no);
        std::string name = trim(line.substr(0, colon));
        if (name.empty())
            throw RuleFileError("empty rule name", line_no);
        if (!seen.insert(name).second)
            throw RuleFileError("duplicate rule name '" + name + "'", line_no);

        std::string body = line.substr(colon + 1);
        bool bidir = true;
        auto arrow = body.find("<=>");
        std::size_t arrow_len = 3;
        if (arrow == std::string::npos) {
            bidir = false;
            arrow = body.find("=>");
            arrow_len = 2;
        }
        if (arrow == std::string::npos)
            throw RuleFileError("missing '=>' or '<=>' in rule '" + name + "'", line_no);

        Rule r;
        r.name = std::move(name);
        r.bidirectional = bidir;
        try {
            r.lhs = parse_expr(trim(body.substr(0, arrow)), kPatternVars);
            r.rhs = parse_expr(trim(body.substr(arrow + arrow_len)), kPatternVars);
        } catch (const ParseError& pe) {
            throw RuleFileError("in rule '" + r.name + "': " + pe.what(), line_no);
        }

        auto lhs_vars = r.lhs->variables();
        for (const auto& v : r.rhs->variables())
            if (!lhs_vars.count(v))
                throw RuleFileError("rule '" + r.name + "': right-hand variable '" + v
                                        + "' not bound on the left",
                                    line_no);
        if (r.lhs->is_var())
            throw RuleFileError("rule '" + r.name + "': bare-variable left-hand side "
                                "matches every term",
                                line_no);
        rules.push_back(std::move(r));
    }
    return rules;
}

std::vector<Rule> load_rules(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open rule file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_rules(buf.str());
}

std::vector<Rule> rule_closure(const std::vector<Rule>& rules)
{
    std::vector<Rule> out;
    out.reserve(rules.size() * 2);
    for (const auto& r : rules) {
        Rule fwd = r;
        fwd.bidirectional = false;
        out.push_back(fwd);
        if (r.bidirectional) {
            Rule rev = r;
            rev.name += "-rev";
            rev.bidirectional = false;
            std::swap(rev.lhs, rev.rhs);
            out.push_back(std::move(rev));
        }
    }
    return out;
}

namespace {

const std::vector<double>& grid_values()
{
    static const std::vector<double> grid = {
        0.0, 1.0, -1.0, 2.0, -2.0, 0.5, -0.5,
        3.14159265358979323846, -3.14159265358979323846,
        1e-9, -1e-9, 1e9, -1e9,
    };
    return grid;
}

void cross_product(const std::vector<std::string>& vars, std::size_t i,
                   std::map<std::string, double>& env,
                   std::vector<std::map<std::string, double>>& out)
{
    if (i == vars.size()) {
        out.push_back(env);
        return;
    }
    for (double v : grid_values()) {
        env[vars[i]] = v;
        cross_product(vars, i + 1, env, out);
    }
}

} // namespace

RuleValidation validate_rule(const Rule& r, const DomainTable& /*table*/, int samples,
                             std::uint64_t seed)
{
    RuleValidation out;
    const std::set<std::string> var_set = r.lhs->variables();
    std::vector<std::string> vars(var_set.begin(), var_set.end());

    std::vector<std::map<std::string, double>> assignments;
    if (vars.empty()) {
        assignments.push_back({});
    } else {
        std::map<std::string, double> env;
        cross_product(vars, 0, env, assignments);
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(-10.0, 10.0);
    std::uniform_real_distribution<double> exponent(-9.0, 9.0);
    for (int i = 0; i < samples; ++i) {
        std::map<std::string, double> env;
        for (const auto& v : vars) {
            if (rng() % 2 == 0)
                env[v] = uniform(rng);
            else
                env[v] = (rng() % 2 == 0 ? 1.0 : -1.0) * std::pow(10.0, exponent(rng));
        }
        assignments.push_back(std::move(env));
    }

    const double value_tol = 1e-8;
    auto describe_env = [](const std::map<std::string, double>& env) {
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, v] : env) {
            if (!first)
                os << ", ";
            os << k << " = " << v;
            first = false;
        }
        return os.str();
    };

    for (const auto& env : assignments) {
        PairCheck chk = check_pair(*r.lhs, *r.rhs, env, value_tol);
        if (chk.lhs_defined != chk.rhs_defined) {
            out.status = RuleStatus::FlaggedUnsound;
            out.witness = env;
            out.reason = std::string(chk.lhs_defined ? "right" : "left")
                         + " side undefined where the other is defined at "
                         + describe_env(env);
            return out;
        }
        if (chk.lhs_defined && !chk.agree) {
            out.status = RuleStatus::FlaggedUnsound;
            out.witness = env;
            out.reason = "sides disagree numerically at " + describe_env(env);
            return out;
        }
    }
    out.status = RuleStatus::Validated;
    return out;
}

} // namespace forge
