#include "bo/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "bo/axioms.hpp"
#include "bo/bo_verify.hpp"
#include "bo/covering.hpp"
#include "bo/csv.hpp"
#include "bo/domination.hpp"
#include "bo/fixtures.hpp"
#include "bo/norms.hpp"
#include "bo/operators.hpp"
#include "bo/rng.hpp"
#include "bo/weights.hpp"

namespace bo {

namespace {

const std::map<std::string, std::set<std::string>>& scenario_schema() {
    static const std::map<std::string, std::set<std::string>> schema = {
        {"axioms", {"fixture", "depth", "n", "atoms"}},
        {"covering", {"depth"}},
        {"bo-constants", {"fixture", "depth", "n", "atoms", "operator", "signs", "r", "seed", "trials"}},
        {"domination", {"fixture", "depth", "atoms", "signs", "r", "seed", "lambda", "runs"}},
        {"weights", {"depth", "p", "weight", "wparam", "seed", "trials"}},
        {"buckley", {"depth", "p", "grid_min", "grid_max", "grid_step", "seed"}},
        {"modulation", {"depth", "signs", "seed", "lambda"}},
        {"cz-demo", {"n", "r", "seed", "trials"}},
    };
    return schema;
}

const std::set<std::string>& randomized_scenarios() {
    static const std::set<std::string> s = {"bo-constants", "domination", "weights",
                                            "buckley", "modulation", "cz-demo"};
    return s;
}

double parse_num(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid numeric value for key '" + key + "': " + value);
    }
}

std::string out_path(const std::string& dir, const std::string& file) {
    if (dir.empty() || dir == ".") return file;
    return dir + "/" + file;
}

TreeBasis make_tree_fixture(const ScenarioConfig& cfg) {
    std::string fixture = cfg.get("fixture", "dyadic");
    if (fixture == "dyadic") return fixtures::dyadic(static_cast<int>(cfg.get_num("depth", 3)));
    if (fixture == "two-atom") return fixtures::two_atom();
    if (fixture == "lopsided") return fixtures::lopsided(static_cast<int>(cfg.get_num("atoms", 12)));
    throw ConfigError("unknown tree fixture: " + fixture);
}

std::map<BallId, int> make_signs(const TreeBasis& tree, const std::string& kind, Rng& rng) {
    std::map<BallId, int> signs;
    for (BallId node : tree.internal_nodes())
        signs[node] = (kind == "all-ones") ? 1 : rng.sign();
    return signs;
}

std::string fixture_label(const ScenarioConfig& cfg) {
    std::string fixture = cfg.get("fixture", "dyadic");
    if (fixture == "dyadic")
        return "dyadic-" + std::to_string(static_cast<int>(cfg.get_num("depth", 3)));
    if (fixture == "lopsided")
        return "lopsided-" + std::to_string(static_cast<int>(cfg.get_num("atoms", 12)));
    if (fixture == "arc") return "arc-" + std::to_string(static_cast<int>(cfg.get_num("n", 8)));
    return fixture;
}

ScenarioResult run_axioms(const ScenarioConfig& cfg, const std::string& out_dir) {
    ScenarioResult result;
    CsvTable table({"fixture", "balls", "K", "eta", "besicovitch_D", "besicovitch_kind", "pass"});
    std::string fixture = cfg.get("fixture", "dyadic");
    std::shared_ptr<BallBasis> basis;
    if (fixture == "arc") {
        basis = fixtures::cyclic_arc(static_cast<int>(cfg.get_num("n", 8))).basis_ptr();
    } else {
        ScenarioConfig tree_cfg = cfg;
        basis = make_tree_fixture(tree_cfg).basis_ptr();
    }
    AxiomReport report = verify_axioms(*basis);
    const char* kind = report.besicovitch.kind == BesicovitchResult::Kind::laminar_certificate
                           ? "laminar"
                           : (report.besicovitch.kind == BesicovitchResult::Kind::exhaustive_certificate
                                  ? "exhaustive"
                                  : "estimate");
    table.add_row({fixture_label(cfg), std::to_string(basis->ball_count()),
                   CsvTable::number(report.measured_K), CsvTable::number(report.doubling_eta),
                   std::to_string(report.besicovitch.value), kind,
                   report.pass() ? "1" : "0"});
    std::string path = out_path(out_dir, "axioms.csv");
    table.write_file(path);
    result.output_files.push_back(path);
    if (!report.pass()) {
        result.exit_code = 1;
        result.failure = "axiom check failed";
    }
    return result;
}

ScenarioResult run_covering(const ScenarioConfig& cfg, const std::string& out_dir) {
    ScenarioResult result;
    const int depth = static_cast<int>(cfg.get_num("depth", 3));
    if (depth > 4) throw ConfigError("covering: exhaustive sweep supports depth <= 4");
    TreeBasis tree = fixtures::dyadic(depth);
    const BallBasis& basis = tree.basis();
    const int n = basis.space().atom_count();
    std::vector<BallId> all_balls;
    for (int i = 0; i < basis.ball_count(); ++i) all_balls.push_back(i);

    long long checked = 0;
    bool all_ok = true;
    double worst_ratio = 0.0;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        AtomSet target;
        for (int a = 0; a < n; ++a)
            if (mask & (1u << a)) target.push_back(a);
        CoverSelection sel = greedy_disjoint_subcover(basis, all_balls, target);
        AtomSet seen;
        for (BallId id : sel.chosen) {
            if (sets_intersect(seen, basis.ball(id).atoms)) all_ok = false;
            seen = set_union_of(seen, basis.ball(id).atoms);
        }
        std::vector<BallId> cover = economical_cover(basis, target);
        double total = 0.0;
        AtomSet covered;
        for (BallId id : cover) {
            total += basis.ball(id).measure;
            covered = set_union_of(covered, basis.ball(id).atoms);
        }
        if (!is_subset(target, covered)) all_ok = false;
        double bound = 2.0 * basis.K() * basis.space().measure(target);
        if (total > bound * (1.0 + 1e-12)) all_ok = false;
        worst_ratio = std::max(worst_ratio, total / bound);
        ++checked;
    }
    CsvTable table({"fixture", "targets_checked", "all_ok", "worst_cover_ratio"});
    table.add_row({"dyadic-" + std::to_string(depth), std::to_string(checked),
                   all_ok ? "1" : "0", CsvTable::number(worst_ratio)});
    std::string path = out_path(out_dir, "covering.csv");
    table.write_file(path);
    result.output_files.push_back(path);
    if (!all_ok) {
        result.exit_code = 1;
        result.failure = "covering sweep failed";
    }
    return result;
}

ScenarioResult run_bo_constants(const ScenarioConfig& cfg, const std::string& out_dir) {
    ScenarioResult result;
    Rng rng(cfg.seed());
    const double r = cfg.get_num("r", 1.0);
    std::shared_ptr<const SublinearOperator> op;
    std::shared_ptr<const BallBasis> basis;
    std::string op_kind = cfg.get("operator", "martingale");
    if (cfg.get("fixture", "dyadic") == "arc") {
        ArcBasis arc = fixtures::cyclic_arc(static_cast<int>(cfg.get_num("n", 16)));
        basis = arc.basis_ptr();
        if (op_kind == "hilbert") op = discrete_hilbert(basis->space().atom_count());
        else if (op_kind == "maximal") op = std::make_shared<MaximalOperator>(basis, r);
        else throw ConfigError("bo-constants: operator '" + op_kind + "' needs a tree fixture");
    } else {
        TreeBasis tree = make_tree_fixture(cfg);
        basis = tree.basis_ptr();
        if (op_kind == "martingale")
            op = std::make_shared<MartingaleTransform>(std::make_shared<TreeBasis>(tree),
                                                       make_signs(tree, cfg.get("signs", "all-ones"), rng));
        else if (op_kind == "maximal") op = std::make_shared<MaximalOperator>(basis, r);
        else throw ConfigError("bo-constants: unknown operator " + op_kind);
    }
    BOVerifyOptions opts;
    opts.seed = cfg.seed();
    opts.trials = static_cast<int>(cfg.get_num("trials", 48));
    BOReport report = verify_bo(op, basis, r, opts);
    CsvTable table({"fixture", "operator", "L1", "L1_method", "L2", "L2_method", "weak_norm",
                    "l4_max_ratio", "t6_max_gap"});
    table.add_row({fixture_label(cfg), op->name(), CsvTable::number(report.l1_estimate),
                   method_tag(report.l1_method), CsvTable::number(report.l2_estimate),
                   method_tag(report.l2_method), CsvTable::number(report.weak_norm),
                   CsvTable::number(report.l4_max_ratio), CsvTable::number(report.t6_max_gap)});
    std::string path = out_path(out_dir, "bo_constants.csv");
    table.write_file(path);
    result.output_files.push_back(path);
    if (!report.l4_finite || !report.t6_sound) {
        result.exit_code = 1;
        result.failure = "bounded-oscillation cross-checks failed";
    }
    return result;
}

ScenarioResult run_domination(const ScenarioConfig& cfg, const std::string& out_dir) {
    ScenarioResult result;
    TreeBasis tree = make_tree_fixture(cfg);
    auto tree_ptr = std::make_shared<TreeBasis>(tree);
    auto basis = tree.basis_ptr();
    const double r = cfg.get_num("r", 1.0);
    const double k = basis->K();
    const double lambda = cfg.get_num("lambda", 3.0 * k * k * k * k);
    const int runs = static_cast<int>(cfg.get_num("runs", 8));
    Rng rng(cfg.seed());

    CsvTable table({"fixture", "operator", "seed", "lambda", "beta_final", "gamma_certified",
                    "C_domination", "tree_size", "pruned_size"});
    bool ok = true;
    for (int run = 0; run < runs; ++run) {
        std::uint64_t run_seed = cfg.seed() + static_cast<std::uint64_t>(run);
        Rng run_rng(run_seed);
        auto op = std::make_shared<MartingaleTransform>(
            tree_ptr, make_signs(tree, cfg.get("signs", "random"), run_rng));
        Function f = run_rng.function(basis->space());
        BOVerifyOptions vopts;
        vopts.seed = run_seed;
        vopts.trials = 16;
        vopts.run_l4_check = false;
        vopts.run_t6_check = false;
        BOReport bo = verify_bo(op, basis, r, vopts);
        Theorem1Result t1 = theorem1_sparse(op, basis, f, basis->whole_space_id(), r, lambda,
                                            BOConstants::from_report(bo));
        if (!t1.families_certified) ok = false;
        table.add_row({fixture_label(cfg), "martingale", std::to_string(run_seed),
                       CsvTable::number(lambda), CsvTable::number(t1.beta_final),
                       CsvTable::number(t1.gamma_reported),
                       CsvTable::number(t1.domination_constant), std::to_string(t1.tree_size),
                       std::to_string(t1.pruned_size)});
    }
    std::string path = out_path(out_dir, "domination.csv");
    table.write_file(path);
    result.output_files.push_back(path);
    if (!ok) {
        result.exit_code = 1;
        result.failure = "sparse certification failed";
    }
    return result;
}

ScenarioResult run_weights(const ScenarioConfig& cfg, const std::string& out_dir) {
    ScenarioResult result;
    TreeBasis tree = fixtures::dyadic(static_cast<int>(cfg.get_num("depth", 4)));
    auto basis = tree.basis_ptr();
    AxiomReport axioms = verify_axioms(*basis);
    if (axioms.besicovitch.is_certificate())
        basis->set_besicovitch_D(axioms.besicovitch.value);
    const double p = cfg.get_num("p", 2.0);
    const int n = basis->space().atom_count();

    Weight w = [&]() {
        std::string kind = cfg.get("weight", "power");
        if (kind == "ones") return Weight(basis->space(), 1.0);
        if (kind == "power") return power_weight(n, cfg.get_num("wparam", 0.5));
        if (kind == "random") {
            Rng rng(cfg.seed());
            std::vector<double> v(static_cast<std::size_t>(n));
            for (auto& x : v) x = std::exp(rng.uniform(-1.0, 1.0));
            return Weight(std::move(v));
        }
        throw ConfigError("weights: unknown weight kind");
    }();

    WeightLemmaReport lemmas = check_weight_lemmas(*basis, w, p,
                                                   static_cast<int>(cfg.get_num("trials", 48)),
                                                   cfg.seed());
    Rng rng(cfg.seed() ^ 0x9e3779b97f4a7c15ull);
    Function probe = rng.function(basis->space());
    SparseCollection s = oracle_dyadic_sparse(tree, probe, 1.0);
    NormSearchOptions nopts;
    nopts.seed = cfg.seed();
    SparseWeightedReport sparse = sparse_weighted_bound_check(basis, s, w, p, 0.5, 1.0, nopts);

    CsvTable table({"p", "characteristic", "dual_identity_gap", "ratio_bound_pass",
                    "mw_weak_norm", "mw_weak_bound", "sparse_norm", "norm_method", "general_c",
                    "besicovitch_c", "duality_gap"});
    table.add_row({CsvTable::number(p), CsvTable::number(ap_characteristic(*basis, w, p)),
                   CsvTable::number(lemmas.dual_identity_gap),
                   lemmas.ratio_bound_pass ? "1" : "0",
                   CsvTable::number(lemmas.weighted_maximal_weak_norm),
                   CsvTable::number(lemmas.weak_bound), CsvTable::number(sparse.norm),
                   method_tag(sparse.norm_method), CsvTable::number(sparse.general_c),
                   sparse.besicovitch_c ? CsvTable::number(*sparse.besicovitch_c) : "",
                   CsvTable::number(sparse.duality_gap)});
    std::string path = out_path(out_dir, "weights.csv");
    table.write_file(path);
    result.output_files.push_back(path);
    if (!lemmas.ratio_bound_pass || !lemmas.weak_bound_pass || !sparse.duality_within_tolerance ||
        lemmas.dual_identity_gap > 1e-9) {
        result.exit_code = 1;
        result.failure = "weighted inequality check failed";
    }
    return result;
}

ScenarioResult run_buckley(const ScenarioConfig& cfg, const std::string& out_dir) {
    ScenarioResult result;
    TreeBasis tree = fixtures::dyadic(static_cast<int>(cfg.get_num("depth", 6)));
    auto basis = tree.basis_ptr();
    const double p = cfg.get_num("p", 2.0);
    const double lo = cfg.get_num("grid_min", -0.9);
    const double hi = cfg.get_num("grid_max", 0.9);
    const double step = cfg.get_num("grid_step", 0.1);
    if (!(step > 0.0)) throw ConfigError("buckley: grid_step must be positive");
    std::vector<double> grid;
    for (double a = lo; a <= hi + 1e-12; a += step) grid.push_back(a);
    NormSearchOptions opts;
    opts.seed = cfg.seed();
    auto rows = buckley_sweep(basis, p, grid, opts);
    CsvTable table = buckley_csv(rows);
    std::string path = out_path(out_dir, "buckley.csv");
    table.write_file(path);
    result.output_files.push_back(path);
    for (const auto& row : rows)
        if (!std::isfinite(row.ratio)) {
            result.exit_code = 1;
            result.failure = "non-finite sweep ratio";
        }
    return result;
}

ScenarioResult run_modulation(const ScenarioConfig& cfg, const std::string& out_dir) {
    ScenarioResult result;
    TreeBasis tree = fixtures::dyadic(static_cast<int>(cfg.get_num("depth", 3)));
    auto tree_ptr = std::make_shared<TreeBasis>(tree);
    auto basis = tree.basis_ptr();
    Rng rng(cfg.seed());
    auto base = std::make_shared<MartingaleTransform>(
        tree_ptr, make_signs(tree, cfg.get("signs", "all-ones"), rng));
    auto modulated = maximal_modulation(base, walsh_modulators(basis->space()));

    // Localization differences must vanish exactly for inputs supported
    // outside each hull.
    double worst_difference = 0.0;
    const AtomSet everything = basis->space().all_atoms();
    for (const Ball& b : basis->balls()) {
        AtomSet outside = set_difference_of(everything, basis->ball(basis->hull(b.id)).atoms);
        if (outside.empty() || b.atoms.size() < 2) continue;
        for (int t = 0; t < 8; ++t) {
            Function f(basis->space(), 0.0);
            for (AtomId y : outside) f[y] = rng.uniform(-2.0, 2.0);
            Function tf = modulated->apply(f);
            double lo = tf[b.atoms.front()], hi = lo;
            for (AtomId x : b.atoms) {
                lo = std::min(lo, tf[x]);
                hi = std::max(hi, tf[x]);
            }
            worst_difference = std::max(worst_difference, hi - lo);
        }
    }

    const double k = basis->K();
    const double lambda = cfg.get_num("lambda", 3.0 * k * k * k * k);
    Function f = rng.function(basis->space());
    BOVerifyOptions vopts;
    vopts.seed = cfg.seed();
    vopts.trials = 16;
    BOReport bo = verify_bo(modulated, basis, 1.0, vopts);
    Theorem1Result t1 = theorem1_sparse(modulated, basis, f, basis->whole_space_id(), 1.0, lambda,
                                        BOConstants::from_report(bo));

    CsvTable table({"fixture", "modulators", "localization_difference", "gamma_certified",
                    "C_domination", "certified"});
    table.add_row({fixture_label(cfg), std::to_string(basis->space().atom_count()),
                   CsvTable::number(worst_difference), CsvTable::number(t1.gamma_reported),
                   CsvTable::number(t1.domination_constant),
                   t1.families_certified ? "1" : "0"});
    std::string path = out_path(out_dir, "modulation.csv");
    table.write_file(path);
    result.output_files.push_back(path);
    if (worst_difference > 1e-12 || !t1.families_certified) {
        result.exit_code = 1;
        result.failure = "modulation checks failed";
    }
    return result;
}

ScenarioResult run_cz_demo(const ScenarioConfig& cfg, const std::string& out_dir) {
    ScenarioResult result;
    const int n = static_cast<int>(cfg.get_num("n", 16));
    ArcBasis arc = fixtures::cyclic_arc(n);
    auto basis = arc.basis_ptr();
    AxiomReport axioms = verify_axioms(*basis);
    basis->set_doubling_eta(axioms.doubling_eta);
    auto op = discrete_hilbert(n);
    BOVerifyOptions opts;
    opts.seed = cfg.seed();
    opts.trials = static_cast<int>(cfg.get_num("trials", 24));
    // The T/T* agreement search multiplies every probe by a full pass over the
    // basis; past Z_32 it dominates the run without changing the report shape.
    opts.run_t6_check = (n <= 32);
    BOReport report = verify_bo(op, basis, cfg.get_num("r", 1.0), opts);

    // Delta monotonicity over sampled nested triples A in B in C.
    bool monotone = true;
    Rng rng(cfg.seed() + 1);
    int sampled = 0;
    for (int attempt = 0; attempt < 4000 && sampled < 60; ++attempt) {
        BallId a = rng.uniform_int(0, basis->ball_count() - 1);
        BallId b = rng.uniform_int(0, basis->ball_count() - 1);
        BallId c = rng.uniform_int(0, basis->ball_count() - 1);
        if (!is_subset(basis->ball(a).atoms, basis->ball(b).atoms)) continue;
        if (!is_subset(basis->ball(b).atoms, basis->ball(c).atoms)) continue;
        DeltaResult ab = delta(*op, *basis, a, b, 1.0);
        DeltaResult ac = delta(*op, *basis, a, c, 1.0);
        if (ab.value > ac.value * (1.0 + 1e-9) + 1e-12) monotone = false;
        ++sampled;
    }

    CsvTable table({"fixture", "L1", "L2", "weak_norm", "l4_max_ratio", "delta_monotone",
                    "axioms_pass", "K"});
    table.add_row({"arc-" + std::to_string(n), CsvTable::number(report.l1_estimate),
                   CsvTable::number(report.l2_estimate), CsvTable::number(report.weak_norm),
                   CsvTable::number(report.l4_max_ratio), monotone ? "1" : "0",
                   axioms.pass() ? "1" : "0", CsvTable::number(axioms.measured_K)});
    std::string path = out_path(out_dir, "cz_demo.csv");
    table.write_file(path);
    result.output_files.push_back(path);
    bool finite = std::isfinite(report.l1_estimate) && std::isfinite(report.l2_estimate) &&
                  std::isfinite(report.weak_norm) && report.l4_finite;
    if (!finite || !monotone || !axioms.pass()) {
        result.exit_code = 1;
        result.failure = "cz-demo checks failed";
    }
    return result;
}

} // namespace

ScenarioConfig ScenarioConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    ScenarioConfig cfg;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream is(line);
        std::string key;
        if (!(is >> key)) continue;
        if (key[0] == '#') continue;
        if (!header_seen) {
            std::string version;
            if (key != "scenario" || !(is >> version) || version != "v1")
                throw ConfigError("config line 1: expected header 'scenario v1'");
            header_seen = true;
            continue;
        }
        std::string value;
        if (!(is >> value))
            throw ConfigError("config line " + std::to_string(line_no) + ": missing value for '" +
                              key + "'");
        std::string extra;
        if (is >> extra)
            throw ConfigError("config line " + std::to_string(line_no) + ": unexpected token '" +
                              extra + "'");
        if (key == "name") cfg.name = value;
        else cfg.settings[key] = value;
    }
    if (!header_seen) throw ConfigError("config: missing header 'scenario v1'");
    if (cfg.name.empty()) throw ConfigError("config: missing 'name'");
    cfg.validate();
    return cfg;
}

ScenarioConfig ScenarioConfig::from_name(const std::string& name) {
    ScenarioConfig cfg;
    cfg.name = name;
    if (!scenario_schema().count(name)) throw ConfigError("unknown scenario: " + name);
    return cfg;
}

void ScenarioConfig::set(const std::string& key, const std::string& value) {
    settings[key] = value;
}

void ScenarioConfig::validate() const {
    auto it = scenario_schema().find(name);
    if (it == scenario_schema().end()) throw ConfigError("unknown scenario: " + name);
    for (const auto& [key, value] : settings) {
        (void)value;
        if (key == "seed") continue;
        if (!it->second.count(key))
            throw ConfigError("unknown key '" + key + "' for scenario " + name);
    }
    if (randomized_scenarios().count(name) && !settings.count("seed"))
        throw ConfigError("scenario " + name + " requires an explicit seed");
}

std::string ScenarioConfig::get(const std::string& key, const std::string& fallback) const {
    auto it = settings.find(key);
    return it == settings.end() ? fallback : it->second;
}

double ScenarioConfig::get_num(const std::string& key, double fallback) const {
    auto it = settings.find(key);
    if (it == settings.end()) return fallback;
    return parse_num(key, it->second);
}

std::uint64_t ScenarioConfig::seed() const {
    auto it = settings.find("seed");
    if (it == settings.end()) return 0;
    try {
        return std::stoull(it->second);
    } catch (const std::exception&) {
        throw ConfigError("invalid seed: " + it->second);
    }
}

ScenarioResult run_scenario(const ScenarioConfig& config, const std::string& out_dir) {
    config.validate();
    try {
        if (config.name == "axioms") return run_axioms(config, out_dir);
        if (config.name == "covering") return run_covering(config, out_dir);
        if (config.name == "bo-constants") return run_bo_constants(config, out_dir);
        if (config.name == "domination") return run_domination(config, out_dir);
        if (config.name == "weights") return run_weights(config, out_dir);
        if (config.name == "buckley") return run_buckley(config, out_dir);
        if (config.name == "modulation") return run_modulation(config, out_dir);
        if (config.name == "cz-demo") return run_cz_demo(config, out_dir);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        ScenarioResult failed;
        failed.exit_code = 1;
        failed.failure = e.what();
        return failed;
    }
    throw ConfigError("unknown scenario: " + config.name);
}

} // namespace bo
