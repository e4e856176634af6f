#include "faithcheck/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "faithcheck/errors.hpp"
#include "faithcheck/faithful.hpp"
#include "faithcheck/pc.hpp"

namespace faithcheck {

namespace {

struct SearchExhausted {
    std::string message;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct DistInput {
    std::string dist_file;
    int example_id = 0;

    JointTable load() const {
        if ((example_id != 0) == !dist_file.empty())
            throw ParseError("give exactly one of --dist and --example");
        if (example_id != 0) return example_table(example_id);
        return JointTable::parse(read_file(dist_file));
    }
};

// Variable names appearing in a DAG spec / statement, for commands that have
// no distribution to take the variable set from.
void collect_names(std::string_view text, std::set<std::string>& names) {
    std::string cur;
    auto flush = [&] {
        if (!cur.empty() && std::isalpha(static_cast<unsigned char>(cur[0])) && cur != "empty" &&
            cur != "mutual")
            names.insert(cur);
        cur.clear();
    };
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            cur += c;
        } else {
            flush();
        }
    }
    flush();
}

VarSet vars_for_query(const std::string& vars_flag, const std::string& dag_spec,
                      const std::string& query) {
    if (!vars_flag.empty()) {
        std::istringstream in(vars_flag);
        std::vector<std::string> names;
        for (std::string n; in >> n;) names.push_back(n);
        return VarSet::of(std::move(names));
    }
    std::set<std::string> names;
    collect_names(dag_spec, names);
    collect_names(query, names);
    return VarSet::of({names.begin(), names.end()});
}

CISet parse_target(const std::string& text, const VarSet& vars) {
    std::vector<CIStatement> stmts;
    bool mutual = false;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t semi = text.find(';', pos);
        std::string part = text.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
        Goal g = parse_goal(part, vars);
        if (g.is_mutual())
            mutual = true;
        else
            stmts.push_back(*g.statement);
        if (semi == std::string::npos) break;
        pos = semi + 1;
    }
    CISet set = CISet::of(vars.size(), std::move(stmts));
    if (mutual && !set.mutual()) set = CISet::with_mutual(vars.size(), set.statements(), true);
    return set;
}

int dispatch(const std::vector<std::string>& args, std::string& out, std::string& err) {
    CLI::App app{"exact analysis of independence structure and DAG faithfulness for small binary systems"};
    app.name("faithcheck");
    app.require_subcommand(1);

    std::string semantics_flag = "strict";
    app.add_option("--semantics", semantics_flag, "conditioning semantics: strict or standard")
        ->capture_default_str()
        ->check(CLI::IsMember({"strict", "standard"}));

    DistInput dist;
    uint64_t seed = 0;
    uint64_t budget = 0;
    int denom_bound = 8;
    std::string dag_spec, query, vars_flag, id_flag, target_flag;
    bool verify_flag = false;

    auto add_dist = [&](CLI::App* cmd) {
        cmd->add_option("--dist", dist.dist_file, "distribution file");
        cmd->add_option("--example", dist.example_id, "built-in example id (1..10)");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "print the extracted independence set");
    add_dist(analyze);

    CLI::App* classify_cmd = app.add_subcommand("classify", "faithfulness verdicts over all DAGs");
    add_dist(classify_cmd);

    CLI::App* dsep = app.add_subcommand("dsep", "d-separation query against a DAG");
    dsep->add_option("--dag", dag_spec, "DAG spec, e.g. \"X->Z;Y->Z\" or \"empty\"")->required();
    dsep->add_option("--query", query, "statement, e.g. \"X _||_ Y | Z\"")->required();
    dsep->add_option("--vars", vars_flag, "space-separated variable names (default: names in the query)");

    CLI::App* markov = app.add_subcommand("markov", "Markov compatibility of a distribution and a DAG");
    add_dist(markov);
    markov->add_option("--dag", dag_spec, "DAG spec")->required();

    CLI::App* pc_cmd = app.add_subcommand("pc", "run PC with the exact oracle and diagnose the result");
    add_dist(pc_cmd);

    CLI::App* examples = app.add_subcommand("examples", "the built-in example catalog");
    examples->add_flag("--verify", verify_flag, "check the documented statement sets against arithmetic");
    examples->add_option("--example", dist.example_id, "print this example as a dist file");

    CLI::App* pattern_cmd = app.add_subcommand("pattern", "print a statement pattern");
    pattern_cmd->add_option("--id", id_flag, "pattern id, e.g. I:5")->required();

    CLI::App* search = app.add_subcommand("search", "find a distribution realizing a statement set");
    search->add_option("--id", id_flag, "pattern id target");
    search->add_option("--target", target_flag, "semicolon-separated statements");
    search->add_option("--seed", seed, "random stage seed")->capture_default_str();
    search->add_option("--budget", budget, "candidate budget (default 100000)");
    search->add_option("--denom-bound", denom_bound, "grid denominator bound")->capture_default_str();

    CLI::App* verify = app.add_subcommand("verify-theorem3", "realize the 57 patterns and check conclusions (1)-(10)");
    verify->add_option("--seed", seed, "random stage seed")->capture_default_str();
    verify->add_option("--budget", budget, "per-search candidate budget (default 20000)");
    verify->add_option("--denom-bound", denom_bound, "grid denominator bound")->capture_default_str();

    for (CLI::App* sub : {analyze, classify_cmd, dsep, markov, pc_cmd, examples, pattern_cmd, search, verify})
        sub->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream os, es;
        int code = app.exit(e, os, es);  // --help lands in os with code 0
        if (code == 0) {
            out = os.str();
            return 0;
        }
        err = os.str() + es.str() + app.help();
        return 1;
    }

    const Semantics sem = parse_semantics(semantics_flag);

    if (app.got_subcommand(analyze)) {
        JointTable t = dist.load();
        out = extract_ci_set(t, sem).serialize(t.vars());
        return 0;
    }
    if (app.got_subcommand(classify_cmd)) {
        JointTable t = dist.load();
        out = classify(t, sem).serialize(t.vars());
        return 0;
    }
    if (app.got_subcommand(dsep)) {
        VarSet vars = vars_for_query(vars_flag, dag_spec, query);
        Dag g = Dag::parse(dag_spec, vars);
        Goal goal = parse_goal(query, vars);
        if (goal.is_mutual()) throw ParseError("dsep answers statement queries, not 'mutual'");
        const auto& st = *goal.statement;
        out = d_separated(g, st.a, st.b, st.s) ? "true\n" : "false\n";
        return 0;
    }
    if (app.got_subcommand(markov)) {
        JointTable t = dist.load();
        Dag g = Dag::parse(dag_spec, t.vars());
        out = std::string("dsep: ") + (markov_by_dsep(t, g, sem) ? "true" : "false") + "\n" +
              "factorization: " + (markov_by_factorization(t, g) ? "true" : "false") + "\n";
        return 0;
    }
    if (app.got_subcommand(pc_cmd)) {
        JointTable t = dist.load();
        out = pc_diagnose(t, sem).serialize(t.vars());
        return 0;
    }
    if (app.got_subcommand(examples)) {
        if (dist.example_id != 0) {
            out = example_table(dist.example_id).serialize();
            return 0;
        }
        const VarSet xyz = VarSet::xyz();
        if (!verify_flag) {
            for (const auto& e : example_catalog())
                out += "example " + std::to_string(e.id) + ": " + e.summary + "\n";
            return 0;
        }
        bool all_pass = true;
        for (const auto& e : example_catalog()) {
            JointTable t = example_table(e.id);
            CISet extracted = extract_ci_set(t, sem);
            bool contained = e.listed.statements_subset_of(extracted) &&
                             (!e.listed.mutual() || extracted.mutual());
            all_pass = all_pass && contained;
            out += "example " + std::to_string(e.id) + ": " + (contained ? "PASS" : "FAIL") + " (" +
                   std::to_string(e.listed.size()) + " listed, " + std::to_string(extracted.size()) +
                   " extracted" + (extracted.mutual() ? ", mutual" : "") + ")\n";
            for (const auto& n : e.notes) out += "  note: " + n + "\n";
        }
        return all_pass ? 0 : 2;
    }
    if (app.got_subcommand(pattern_cmd)) {
        out = theorem3_pattern(PatternId::parse(id_flag)).serialize(VarSet::xyz());
        return 0;
    }
    if (app.got_subcommand(search)) {
        if (budget == 0) budget = 100000;
        const VarSet xyz = VarSet::xyz();
        if (id_flag.empty() == target_flag.empty())
            throw ParseError("give exactly one of --id and --target");
        CISet target = id_flag.empty() ? parse_target(target_flag, xyz)
                                       : theorem3_pattern(PatternId::parse(id_flag));
        SearchOutcome res = search_distribution(xyz, target, sem, seed, budget, denom_bound);
        if (!res.found()) {
            std::string detail = res.superset
                                     ? "only supersets of the target were realizable"
                                     : "no candidate attained the goal set";
            throw SearchExhausted{"search exhausted after " + std::to_string(res.tried) +
                                  " candidates: " + detail};
        }
        out = "# goal: " + res.goal.one_line(xyz) + "\n";
        out += std::string("# realized: ") +
               (res.status == SearchOutcome::Status::kExact ? "exact" : "closure of target") + "\n";
        out += res.table->serialize();
        return 0;
    }
    if (app.got_subcommand(verify)) {
        if (budget == 0) budget = 20000;
        out = verify_theorem3(seed, budget, denom_bound, sem).serialize();
        return 0;
    }
    throw ParseError("no command given");
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
    CliResult res;
    try {
        res.exit_code = dispatch(args, res.out, res.err);
    } catch (const ParseError& e) {
        res.out.clear();
        res.err = std::string("error: ") + e.what() + "\n";
        res.exit_code = 1;
    } catch (const InputError& e) {
        res.out.clear();
        res.err = std::string("error: ") + e.what() + "\n";
        res.exit_code = 2;
    } catch (const SearchExhausted& e) {
        res.out.clear();
        res.err = "error: " + e.message + "\n";
        res.exit_code = 3;
    } catch (const std::exception& e) {
        res.out.clear();
        res.err = std::string("error: ") + e.what() + "\n";
        res.exit_code = 1;
    }
    return res;
}

}  // namespace faithcheck
