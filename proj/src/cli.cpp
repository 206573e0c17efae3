#include "vopt/cli.hpp"

#include "vopt/catalog.hpp"
#include "vopt/parallel.hpp"
#include "vopt/report_json.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>

namespace vopt {

namespace {

struct CommonOpts {
    std::string map_path;
    std::string at;
    std::string tbar;
    std::string radii;
    std::vector<std::string> budget;
    std::string out_path;
    std::string format = "json";
    std::uint64_t seed = 0;
    unsigned threads = 0;
};

Vec parse_csv_vec(const std::string& s, const char* what) {
    std::vector<double> vals;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            vals.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw Error(std::string("bad ") + what + " value: '" + item + "'");
        }
    }
    if (vals.empty()) throw Error(std::string("empty ") + what + " list");
    return Eigen::Map<Vec>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

std::vector<double> parse_radii(const std::string& s) {
    Vec v = parse_csv_vec(s, "radii");
    if (v.size() != 3 || v[0] <= 0 || v[1] <= 1 || v[2] < 1)
        throw Error("radii must be 'R0,factor,steps' with R0>0, factor>1, steps>=1");
    return geometric_radii(v[0], v[1], static_cast<int>(v[2]));
}

std::map<std::string, double> parse_budget(const std::vector<std::string>& entries,
                                           const std::map<std::string, double>& from_file) {
    std::map<std::string, double> budget = from_file;
    for (const auto& e : entries) {
        size_t eq = e.find('=');
        if (eq == std::string::npos) throw Error("budget entries must be key=value: '" + e + "'");
        try {
            budget[e.substr(0, eq)] = std::stod(e.substr(eq + 1));
        } catch (const std::exception&) {
            throw Error("bad budget value in '" + e + "'");
        }
    }
    return budget;
}

/// Pulls known keys out of the budget map; leftover keys are config errors.
class BudgetReader {
public:
    explicit BudgetReader(std::map<std::string, double> budget) : budget_(std::move(budget)) {}

    double take(const std::string& key, double fallback) {
        auto it = budget_.find(key);
        if (it == budget_.end()) return fallback;
        double v = it->second;
        budget_.erase(it);
        if (v <= 0) throw Error("budget value for '" + key + "' must be positive");
        return v;
    }
    int take_int(const std::string& key, int fallback) {
        return static_cast<int>(take(key, fallback));
    }
    void finish() const {
        if (!budget_.empty()) throw Error("unknown budget key: '" + budget_.begin()->first + "'");
    }

private:
    std::map<std::string, double> budget_;
};

void emit(const Json& report, const CommonOpts& opts, std::ostream& out) {
    std::string text = report.dump(2);
    if (!opts.out_path.empty()) {
        std::ofstream file(opts.out_path);
        if (!file) throw Error("cannot write output file: " + opts.out_path);
        file << text << "\n";
    }
    out << text << "\n";
}

TangencyConfig tangency_config(BudgetReader& br, const CommonOpts& opts,
                               const std::optional<Vec>& tbar) {
    TangencyConfig tc;
    tc.seed = opts.seed;
    tc.n_seeds = br.take_int("n_seeds", tc.n_seeds);
    tc.n_weights = br.take_int("n_weights", tc.n_weights);
    tc.cluster_tol_rel = br.take("cluster_tol", tc.cluster_tol_rel);
    tc.dependency_tol = br.take("dependency_tol", tc.dependency_tol);
    tc.slack_tol_rel = br.take("slack_tol", tc.slack_tol_rel);
    if (!opts.radii.empty()) tc.radii = parse_radii(opts.radii);
    tc.sublevel = tbar;
    return tc;
}

int cmd_eval(const CommonOpts& opts, const ProblemFile& pf, std::ostream& out) {
    Vec x = parse_csv_vec(opts.at, "--at");
    if (x.size() != pf.map.nvars()) throw Error("--at length does not match vars");
    Vec v = pf.map.eval(x);
    if (opts.format == "json") {
        emit(Json{{"command", "eval"}, {"at", to_json(x)}, {"values", to_json(v)}}, opts, out);
    } else {
        char buf[40];
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", v[i]);
            out << (i ? " " : "") << buf;
        }
        out << "\n";
    }
    return 0;
}

int cmd_rabier(const CommonOpts& opts, const ProblemFile& pf, std::ostream& out) {
    Vec x = parse_csv_vec(opts.at, "--at");
    if (x.size() != pf.map.nvars()) throw Error("--at length does not match vars");
    RabierResult r = rabier_nu(pf.map, x);
    emit(Json{{"command", "rabier"}, {"at", to_json(x)}, {"result", to_json(r)}}, opts, out);
    return 0;
}

int cmd_tangency(const CommonOpts& opts, const ProblemFile& pf, std::ostream& out) {
    BudgetReader br(parse_budget(opts.budget, pf.budget));
    std::optional<Vec> tbar;
    if (!opts.tbar.empty()) tbar = parse_csv_vec(opts.tbar, "--tbar");
    else if (pf.tbar) tbar = pf.tbar;
    TangencyConfig tc = tangency_config(br, opts, tbar);
    br.finish();
    TangencyEstimate est = estimate_tangency_values(pf.map, tc);
    if (opts.format == "csv") {
        if (opts.out_path.empty()) throw Error("--format csv needs --out DIR for trace files");
        std::filesystem::create_directories(opts.out_path);
        int idx = 0;
        for (const auto& trace : est.traces) {
            char name[32];
            std::snprintf(name, sizeof name, "trace_%03d.csv", idx++);
            std::ofstream file(std::filesystem::path(opts.out_path) / name);
            write_trace_csv(file, trace, pf.map.nvars(), pf.map.ncomponents());
        }
        out << Json{{"command", "tangency"}, {"traces_written", idx}}.dump(2) << "\n";
        return 0;
    }
    emit(Json{{"command", "tangency"}, {"estimate", to_json(est)}, {"seed", opts.seed}}, opts, out);
    return 0;
}

int cmd_sublevel(const CommonOpts& opts, const ProblemFile& pf, std::ostream& out) {
    BudgetReader br(parse_budget(opts.budget, pf.budget));
    Vec tbar;
    if (!opts.tbar.empty()) tbar = parse_csv_vec(opts.tbar, "--tbar");
    else if (pf.tbar) tbar = *pf.tbar;
    else throw Error("sublevel needs --tbar (or a tbar: line in the map file)");
    if (tbar.size() != pf.map.ncomponents()) throw Error("--tbar length does not match components");

    SectionBudget sb;
    sb.seed = opts.seed;
    sb.n_starts = br.take_int("n_starts", sb.n_starts);
    sb.iter_cap = br.take_int("iter_cap", sb.iter_cap);
    sb.r_max = br.take("r_max", sb.r_max);
    sb.penalty_base = br.take("penalty", sb.penalty_base);
    SectionProbeReport section = probe_bounded_section(pf.map, tbar, sb);

    TangencyConfig tc;
    tc.seed = opts.seed;
    if (!opts.radii.empty()) tc.radii = parse_radii(opts.radii);
    TangencyEstimate full = estimate_tangency_values(pf.map, tc);
    std::vector<Vec> hints;
    for (const auto& c : full.clusters) hints.push_back(c.center);

    PropernessBudget prb;
    prb.seed = opts.seed;
    prb.n_targets = br.take_int("n_targets", prb.n_targets);
    prb.witness_tol_rel = br.take("witness_tol", prb.witness_tol_rel);
    if (!opts.radii.empty()) prb.radii = parse_radii(opts.radii);
    br.finish();
    PropernessProbeReport properness = probe_properness(pf.map, tbar, prb, hints);

    emit(Json{{"command", "sublevel"},
              {"tbar", to_json(tbar)},
              {"section", to_json(section)},
              {"properness", to_json(properness)},
              {"seed", opts.seed}},
         opts, out);
    return section.verdict == SectionVerdict::inconclusive ? 3 : 0;
}

int cmd_newton(const CommonOpts& opts, const ProblemFile& pf, std::ostream& out) {
    BudgetReader br(parse_budget(opts.budget, pf.budget));
    KhovanskiiBudget kb;
    kb.seed = opts.seed;
    kb.n_starts = br.take_int("n_starts", kb.n_starts);
    kb.root_tol_rel = br.take("root_tol", kb.root_tol_rel);
    kb.rank_tol_rel = br.take("rank_tol", kb.rank_tol_rel);
    br.finish();
    NewtonComplex cx = faces_at_infinity(pf.map);
    ConvenienceReport conv = is_convenient(pf.map);
    KhovanskiiResult kres = check_khovanskii(pf.map, kb);
    emit(Json{{"command", "newton"},
              {"complex", to_json(cx)},
              {"convenience", to_json(conv)},
              {"khovanskii", to_json(kres)},
              {"seed", opts.seed}},
         opts, out);
    return 0;
}

int cmd_pareto(const CommonOpts& opts, const ProblemFile& pf, std::ostream& out) {
    BudgetReader br(parse_budget(opts.budget, pf.budget));
    CandidateConfig cc;
    cc.critical.seed = opts.seed;
    cc.critical.n_starts = br.take_int("n_starts", cc.critical.n_starts);
    cc.critical.box_radius = br.take("box_radius", cc.critical.box_radius);
    cc.critical.refine_rounds = br.take_int("refine_rounds", cc.critical.refine_rounds);
    cc.tangency.seed = opts.seed;
    cc.tangency.n_seeds = br.take_int("n_seeds", cc.tangency.n_seeds);
    cc.tangency.n_weights = br.take_int("n_weights", cc.tangency.n_weights);
    if (!opts.radii.empty()) cc.tangency.radii = parse_radii(opts.radii);
    CandidateValueSet cs = candidate_pareto_values(pf.map, cc);

    Json j{{"command", "pareto"}, {"candidates", to_json(cs)}, {"seed", opts.seed}};
    std::optional<Vec> tbar;
    if (!opts.tbar.empty()) tbar = parse_csv_vec(opts.tbar, "--tbar");
    else if (pf.tbar) tbar = pf.tbar;
    if (tbar) {
        if (tbar->size() != pf.map.ncomponents())
            throw Error("--tbar length does not match components");
        ParetoSearchBudget sb;
        sb.seed = opts.seed;
        sb.n_weights = br.take_int("search_weights", sb.n_weights);
        sb.n_starts = br.take_int("search_starts", sb.n_starts);
        sb.verify_samples = br.take_int("verify_samples", sb.verify_samples);
        sb.box_radius = cc.critical.box_radius;
        j["search"] = to_json(find_pareto_points(pf.map, *tbar, sb));
    }
    br.finish();
    emit(j, opts, out);
    return 0;
}

int cmd_existence(const CommonOpts& opts, const ProblemFile& pf, std::ostream& out) {
    BudgetReader br(parse_budget(opts.budget, pf.budget));
    ExistenceConfig ec;
    ec.seed = opts.seed;
    if (!opts.tbar.empty()) ec.tbar = parse_csv_vec(opts.tbar, "--tbar");
    else if (pf.tbar) ec.tbar = pf.tbar;
    if (ec.tbar && ec.tbar->size() != pf.map.ncomponents())
        throw Error("--tbar length does not match components");
    ec.tbar_samples = br.take_int("tbar_samples", ec.tbar_samples);
    ec.search.n_weights = br.take_int("search_weights", ec.search.n_weights);
    ec.search.n_starts = br.take_int("search_starts", ec.search.n_starts);
    ec.search.verify_samples = br.take_int("verify_samples", ec.search.verify_samples);
    ec.search.box_radius = br.take("box_radius", ec.search.box_radius);
    ec.tangency.n_seeds = br.take_int("n_seeds", ec.tangency.n_seeds);
    ec.tangency.n_weights = br.take_int("n_weights", ec.tangency.n_weights);
    if (!opts.radii.empty()) {
        ec.tangency.radii = parse_radii(opts.radii);
        ec.properness.radii = ec.tangency.radii;
        ec.ps.radii = ec.tangency.radii;
    }
    br.finish();
    ExistenceReport rep = existence_verdict(pf.map, ec);
    emit(Json{{"command", "existence"}, {"report", to_json(rep)}}, opts, out);
    return rep.verdict == ExistenceVerdict::no_conclusion ? 3 : 0;
}

int cmd_catalog(const CommonOpts& opts, std::ostream& out) {
    CatalogResult result = run_catalog(opts.seed);
    for (const auto& c : result.criteria) {
        out << (c.passed ? "[PASS] " : "[FAIL] ") << "criterion " << c.id << " (" << c.name
            << "): " << c.details << "\n";
    }
    if (!opts.out_path.empty()) {
        std::ofstream file(opts.out_path);
        if (!file) throw Error("cannot write output file: " + opts.out_path);
        Json criteria = Json::array();
        for (const auto& c : result.criteria)
            criteria.push_back(Json{{"id", c.id},
                                    {"name", c.name},
                                    {"passed", c.passed},
                                    {"details", c.details}});
        file << Json{{"criteria", criteria}, {"report", result.report}}.dump(2) << "\n";
    }
    return result.all_passed ? 0 : 1;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"polynomial vector optimization analyzer"};
    app.require_subcommand(1);
    CommonOpts opts;

    auto add_common = [&](CLI::App* sub, bool needs_map) {
        auto* map = sub->add_option("--map", opts.map_path, "problem file (.vp)");
        if (needs_map) map->required();
        sub->add_option("--tbar", opts.tbar, "sublevel point, comma-separated");
        sub->add_option("--seed", opts.seed, "RNG seed");
        sub->add_option("--threads", opts.threads, "worker threads (0 = hardware)");
        sub->add_option("--radii", opts.radii, "radius schedule 'R0,factor,steps'");
        sub->add_option("--budget", opts.budget, "budget overrides key=value")
            ->take_all();
        sub->add_option("--out", opts.out_path, "write the JSON report here");
        sub->add_option("--format", opts.format, "json|csv")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    CLI::App* c_eval = app.add_subcommand("eval", "evaluate the map at a point");
    add_common(c_eval, true);
    c_eval->add_option("--at", opts.at, "evaluation point, comma-separated")->required();
    CLI::App* c_rabier = app.add_subcommand("rabier", "Rabier function at a point");
    add_common(c_rabier, true);
    c_rabier->add_option("--at", opts.at, "evaluation point, comma-separated")->required();
    CLI::App* c_tang = app.add_subcommand("tangency", "estimate tangency values at infinity");
    add_common(c_tang, true);
    CLI::App* c_sub = app.add_subcommand("sublevel", "bounded-section and properness probes");
    add_common(c_sub, true);
    CLI::App* c_newton = app.add_subcommand("newton", "Newton polytopes and non-degeneracy");
    add_common(c_newton, true);
    CLI::App* c_pareto = app.add_subcommand("pareto", "candidate Pareto values and points");
    add_common(c_pareto, true);
    CLI::App* c_exist = app.add_subcommand("existence", "Pareto solution existence verdict");
    add_common(c_exist, true);
    CLI::App* c_catalog = app.add_subcommand("catalog", "run the bundled example catalog");
    add_common(c_catalog, false);

    std::vector<const char*> argv;
    argv.push_back("vopt");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    if (opts.threads > 0) set_max_threads(static_cast<int>(opts.threads));

    try {
        if (c_catalog->parsed()) return cmd_catalog(opts, out);
        ProblemFile pf = load_problem_file(opts.map_path);
        if (c_eval->parsed()) return cmd_eval(opts, pf, out);
        if (c_rabier->parsed()) return cmd_rabier(opts, pf, out);
        if (c_tang->parsed()) return cmd_tangency(opts, pf, out);
        if (c_sub->parsed()) return cmd_sublevel(opts, pf, out);
        if (c_newton->parsed()) return cmd_newton(opts, pf, out);
        if (c_pareto->parsed()) return cmd_pareto(opts, pf, out);
        if (c_exist->parsed()) return cmd_existence(opts, pf, out);
        err << "error: no subcommand\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace vopt
