// Command-line front door: every subcommand reads one JSON config
// (flags mirror config keys 1:1 and win on conflict), runs one
// analysis, and writes one report that embeds the fully resolved
// config.  Reports are byte-stable for a fixed config and seed.

#include "lienard/acceptance.hpp"
#include "lienard/cycles.hpp"
#include "lienard/flow.hpp"
#include "lienard/json_io.hpp"
#include "lienard/rotate.hpp"
#include "lienard/singular.hpp"
#include "lienard/system.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using lienard::json_io::json;

constexpr int kOk = 0;
constexpr int kAnalysisError = 1;
constexpr int kConfigError = 2;

int fail(int code, const std::string& category, const std::string& message) {
    std::cerr << lienard::error_json(category, message).dump() << "\n";
    return code;
}

void emit_report(const std::string& out, const std::string& command, const json& config,
                 const json& report) {
    const json doc{{"command", command}, {"config", config}, {"report", report}};
    lienard::save_text(out, doc.dump(2) + "\n");
}

json load_config(const std::string& path) {
    if (path.empty()) {
        return json::object();
    }
    json cfg = lienard::load_json(path);
    if (!cfg.is_object()) {
        throw std::invalid_argument("config must be a JSON object");
    }
    return cfg;
}

double num_key(const json& cfg, const std::string& key, double fallback) {
    if (!cfg.contains(key)) {
        return fallback;
    }
    if (!cfg.at(key).is_number()) {
        throw std::invalid_argument("config key \"" + key + "\" must be a number");
    }
    return cfg.at(key).get<double>();
}

int int_key(const json& cfg, const std::string& key, int fallback) {
    if (!cfg.contains(key)) {
        return fallback;
    }
    if (!cfg.at(key).is_number_integer()) {
        throw std::invalid_argument("config key \"" + key + "\" must be an integer");
    }
    return cfg.at(key).get<int>();
}

std::string str_key(const json& cfg, const std::string& key, const std::string& fallback) {
    if (!cfg.contains(key)) {
        return fallback;
    }
    if (!cfg.at(key).is_string()) {
        throw std::invalid_argument("config key \"" + key + "\" must be a string");
    }
    return cfg.at(key).get<std::string>();
}

/// Sign tokens compose from '+'/'-' characters, optionally written as
/// +1/-1: "+", "-1", "+-" are all valid and "+-" names two slots.
std::vector<int> parse_sign_tokens(const std::vector<std::string>& tokens) {
    std::vector<int> signs;
    for (const std::string& tok : tokens) {
        for (std::size_t i = 0; i < tok.size(); ++i) {
            if (tok[i] != '+' && tok[i] != '-') {
                throw std::invalid_argument("even sign token \"" + tok +
                                            "\" must be built from '+' and '-'");
            }
            signs.push_back(tok[i] == '+' ? 1 : -1);
            if (i + 1 < tok.size() && tok[i + 1] == '1') {
                ++i;
            }
        }
    }
    return signs;
}

// -- inline system description -------------------------------------------

struct SystemFlags {
    std::vector<double> alpha;
    std::vector<double> beta;
    std::vector<double> alpha_even;
    std::vector<double> beta_odd;
    std::vector<std::string> sign_tokens;

    void attach(CLI::App& cmd) {
        cmd.add_option("--alpha", alpha, "general damping coefficients a0 a1 ... a2k")
            ->expected(-1);
        cmd.add_option("--beta", beta, "general restoring coefficients b1 ... b2l")
            ->expected(-1);
        cmd.add_option("--alpha-even", alpha_even, "canonical even damping values a0 a2 ... a2k")
            ->expected(-1);
        cmd.add_option("--beta-odd", beta_odd, "canonical odd restoring values b1 b3 ...")
            ->expected(-1);
        cmd.add_option("--even-signs", sign_tokens,
                       "signs of the pinned even restoring slots, e.g. + or +-")
            ->expected(-1);
    }

    bool any() const {
        return !alpha.empty() || !beta.empty() || !alpha_even.empty() || !beta_odd.empty() ||
               !sign_tokens.empty();
    }

    /// System-description fragment in whichever group the flags used;
    /// mixed groups are left in place for system_from_json to reject.
    json to_json() const {
        json j = json::object();
        if (!alpha.empty() || !beta.empty()) {
            j["alpha"] = alpha;
            j["beta"] = beta;
        }
        if (!alpha_even.empty() || !beta_odd.empty() || !sign_tokens.empty()) {
            j["alpha_even"] = alpha_even;
            j["beta_odd"] = beta_odd;
            j["even_signs"] = parse_sign_tokens(sign_tokens);
        }
        return j;
    }
};

lienard::LienardSystem resolve_system(json& cfg, const SystemFlags& flags) {
    if (flags.any()) {
        cfg["system"] = flags.to_json();
    }
    if (!cfg.contains("system")) {
        throw std::invalid_argument(
            "no system given: use --config or inline coefficient flags");
    }
    return lienard::system_from_json(cfg.at("system"));
}

// -- census option overlay -------------------------------------------------

struct OptionFlags {
    double tol = 0.0;
    int samples = 0;
    CLI::Option* tol_opt = nullptr;
    CLI::Option* samples_opt = nullptr;

    void attach(CLI::App& cmd) {
        tol_opt = cmd.add_option("--tol", tol, "integration tolerance (options.tol)");
        samples_opt =
            cmd.add_option("--samples", samples, "radius grid size (options.samples)");
    }

    void overlay(json& opts) const {
        if (tol_opt->count() > 0) {
            opts["tol"] = tol;
        }
        if (samples_opt->count() > 0) {
            opts["samples"] = samples;
        }
    }
};

lienard::CycleOptions resolve_options(json& cfg, const OptionFlags& flags) {
    json opts = cfg.contains("options") ? cfg.at("options") : json::object();
    flags.overlay(opts);
    cfg["options"] = opts;
    return lienard::options_from_json(opts);
}

// -- subcommand runners ------------------------------------------------------

int run_singular(const std::string& config_path, const SystemFlags& sysf,
                 const std::string& out) {
    json cfg = load_config(config_path);
    const lienard::LienardSystem sys = resolve_system(cfg, sysf);
    const json config{{"system", lienard::system_to_json(sys)}};
    emit_report(out, "singular", config, lienard::singular_report_json(sys));
    return kOk;
}

struct IndexFlags {
    double x = 0.0, y = 0.0, radius = 0.1;
    int samples = 4096;
    CLI::Option *x_opt = nullptr, *y_opt = nullptr, *radius_opt = nullptr,
                *samples_opt = nullptr;

    void attach(CLI::App& cmd) {
        x_opt = cmd.add_option("--x", x, "contour center x");
        y_opt = cmd.add_option("--y", y, "contour center y");
        radius_opt = cmd.add_option("--radius", radius, "contour radius");
        samples_opt = cmd.add_option("--samples", samples, "contour sample count");
    }
};

int run_index(const std::string& config_path, const SystemFlags& sysf, const IndexFlags& f,
              const std::string& out) {
    json cfg = load_config(config_path);
    const lienard::LienardSystem sys = resolve_system(cfg, sysf);
    if (f.x_opt->count() > 0) cfg["x"] = f.x;
    if (f.y_opt->count() > 0) cfg["y"] = f.y;
    if (f.radius_opt->count() > 0) cfg["radius"] = f.radius;
    if (f.samples_opt->count() > 0) cfg["samples"] = f.samples;

    const double cx = num_key(cfg, "x", 0.0);
    const double cy = num_key(cfg, "y", 0.0);
    const double radius = num_key(cfg, "radius", 0.1);
    const int samples = int_key(cfg, "samples", 4096);

    const int index = lienard::poincare_index(sys, cx, cy, radius, samples);
    const json config{{"radius", radius},
                      {"samples", samples},
                      {"system", lienard::system_to_json(sys)},
                      {"x", cx},
                      {"y", cy}};
    emit_report(out, "index", config, json{{"index", index}});
    return kOk;
}

struct CyclesFlags {
    double anchor = 0.0;
    std::string profile_out;
    CLI::Option *anchor_opt = nullptr, *profile_opt = nullptr;

    void attach(CLI::App& cmd) {
        anchor_opt = cmd.add_option("--anchor", anchor, "anchor for the profile CSV");
        profile_opt = cmd.add_option("--profile-out", profile_out,
                                     "also write the displacement profile CSV here");
    }
};

int run_cycles(const std::string& config_path, const SystemFlags& sysf,
               const OptionFlags& optf, const CyclesFlags& f, const std::string& out) {
    json cfg = load_config(config_path);
    const lienard::LienardSystem sys = resolve_system(cfg, sysf);
    const lienard::CycleOptions opt = resolve_options(cfg, optf);
    if (f.anchor_opt->count() > 0) cfg["anchor"] = f.anchor;
    if (f.profile_opt->count() > 0) cfg["profile_out"] = f.profile_out;

    json config{{"options", lienard::options_to_json(opt)},
                {"system", lienard::system_to_json(sys)}};

    const lienard::CycleCensus census = lienard::census(sys, opt);
    if (cfg.contains("profile_out")) {
        const std::string path = str_key(cfg, "profile_out", "");
        if (path.empty()) {
            throw std::invalid_argument("profile_out must name a file");
        }
        const double anchor = num_key(cfg, "anchor", 0.0);
        const auto profile = lienard::displacement_profile(sys, anchor, opt);
        lienard::save_text(path, lienard::profile_to_csv(profile));
        config["anchor"] = anchor;
        config["profile_out"] = path;
    }
    emit_report(out, "cycles", config, lienard::census_to_json(census));
    return kOk;
}

int run_sweep(const std::string& config_path, const std::string& plan_path,
              const OptionFlags& optf, const std::string& out) {
    json cfg = load_config(config_path);
    if (!plan_path.empty()) {
        cfg["plan"] = lienard::load_json(plan_path);
    }
    if (!cfg.contains("plan")) {
        throw std::invalid_argument("no sweep plan given: use --config or --plan");
    }
    json plan_j = cfg.at("plan");
    if (!plan_j.is_object()) {
        throw std::invalid_argument("plan must be a JSON object");
    }
    json opts = plan_j.contains("options") ? plan_j.at("options") : json::object();
    optf.overlay(opts);
    plan_j["options"] = opts;

    const lienard::rotate::SweepPlan plan = lienard::plan_from_json(plan_j);
    plan.validate();
    const lienard::rotate::SweepLog log = lienard::rotate::sweep(plan);

    const json config{{"plan", lienard::plan_to_json(plan)}};
    emit_report(out, "sweep", config, lienard::sweep_log_to_json(log));
    return log.aborted ? kAnalysisError : kOk;
}

struct ConstructFlags {
    int k = 0, l = 0;
    std::vector<double> beta_odd;
    std::vector<std::string> sign_tokens;
    CLI::Option *k_opt = nullptr, *l_opt = nullptr, *beta_opt = nullptr, *signs_opt = nullptr;

    void attach(CLI::App& cmd) {
        k_opt = cmd.add_option("--k", k, "number of origin cycles requested");
        l_opt = cmd.add_option("--l", l, "number of non-origin anti-saddle cycles");
        beta_opt = cmd.add_option("--beta-odd", beta_odd, "odd restoring values b1 b3 ...")
                       ->expected(-1);
        signs_opt = cmd.add_option("--even-signs", sign_tokens,
                                   "signs of the pinned even restoring slots")
                        ->expected(-1);
    }
};

int run_construct(const std::string& config_path, const ConstructFlags& f,
                  const OptionFlags& optf, const std::string& out) {
    json cfg = load_config(config_path);
    if (f.k_opt->count() > 0) cfg["k"] = f.k;
    if (f.l_opt->count() > 0) cfg["l"] = f.l;
    if (f.beta_opt->count() > 0) cfg["beta_odd"] = f.beta_odd;
    if (f.signs_opt->count() > 0) cfg["even_signs"] = parse_sign_tokens(f.sign_tokens);
    if (!cfg.contains("k")) {
        throw std::invalid_argument("construct needs a cycle target: give --k");
    }
    const lienard::CycleOptions opt = resolve_options(cfg, optf);

    const int k = int_key(cfg, "k", 0);
    const int l = int_key(cfg, "l", 0);
    std::vector<double> beta_odd;
    if (cfg.contains("beta_odd")) {
        if (!cfg.at("beta_odd").is_array()) {
            throw std::invalid_argument("config key \"beta_odd\" must be an array");
        }
        beta_odd = cfg.at("beta_odd").get<std::vector<double>>();
    }
    std::vector<int> even_signs;
    if (cfg.contains("even_signs")) {
        for (const json& s : cfg.at("even_signs")) {
            if (s.is_string()) {
                const auto parsed = parse_sign_tokens({s.get<std::string>()});
                even_signs.insert(even_signs.end(), parsed.begin(), parsed.end());
            } else if (s.is_number() && (s.get<double>() == 1.0 || s.get<double>() == -1.0)) {
                even_signs.push_back(s.get<double>() > 0 ? 1 : -1);
            } else {
                throw std::invalid_argument("even_signs entries must be +-1 or '+'/'-'");
            }
        }
    }

    const auto result = lienard::construct_configuration(k, l, beta_odd, even_signs, opt);
    const json config{{"beta_odd", beta_odd},
                      {"even_signs", even_signs},
                      {"k", k},
                      {"l", l},
                      {"options", lienard::options_to_json(opt)}};
    emit_report(out, "construct", config, lienard::construct_to_json(result));
    return result.achieved ? kOk : kAnalysisError;
}

struct CertifyFlags {
    std::string slot;
    std::vector<double> values;
    double anchor = 0.0;
    CLI::Option *slot_opt = nullptr, *values_opt = nullptr, *anchor_opt = nullptr;

    void attach(CLI::App& cmd) {
        slot_opt = cmd.add_option("--slot", slot, "even damping slot to rotate, e.g. a2");
        values_opt = cmd.add_option("--values", values, "parameter values for the rotation leg")
                         ->expected(-1);
        anchor_opt = cmd.add_option("--anchor", anchor, "anchor whose cycles are tracked");
    }
};

/// Rotation determinants of every slot of the (k, l) canonical shape,
/// compared against their exact monomial form.  The determinants do not
/// depend on the coefficient values, only on the shape.
json delta_section(int k, int l) {
    lienard::CanonicalSystem shape;
    shape.k = k;
    shape.l = l;
    shape.alpha_even.assign(static_cast<std::size_t>(k) + 1, 0.0);
    shape.beta_odd.assign(static_cast<std::size_t>(l), 0.0);
    shape.even_signs.assign(static_cast<std::size_t>(l), 1);

    json alpha_rows = json::array();
    for (int i = 0; i <= k; ++i) {
        lienard::ParamSlot slot;
        slot.kind = lienard::ParamSlot::alpha;
        slot.index = 2 * i;
        const auto [p, q] = lienard::canonical_field_with_slot(shape, slot);
        const auto delta = lienard::rotation_determinant(p, q);
        const auto expected = lienard::BivariatePoly::term(2 * i, 2, 1.0);
        alpha_rows.push_back({{"delta", delta.str()},
                              {"exact", delta == expected},
                              {"expected", expected.str()},
                              {"slot", lienard::rotate::slot_name(slot)}});
    }
    json beta_rows = json::array();
    for (int j = 1; j <= l; ++j) {
        lienard::ParamSlot slot;
        slot.kind = lienard::ParamSlot::beta;
        slot.index = 2 * j - 1;
        const auto [p, q] = lienard::beta_rotation_field_with_slot(shape, slot);
        const auto delta = lienard::rotation_determinant(p, q);
        const auto expected = lienard::BivariatePoly::term(2 * j, 1, -1.0);
        beta_rows.push_back({{"delta", delta.str()},
                             {"exact", delta == expected},
                             {"expected", expected.str()},
                             {"slot", lienard::rotate::slot_name(slot)}});
    }
    return {{"alpha", alpha_rows}, {"beta", beta_rows}};
}

int run_certify(const std::string& config_path, const SystemFlags& sysf,
                const CertifyFlags& f, const OptionFlags& optf, const std::string& out) {
    json cfg = load_config(config_path);
    const lienard::LienardSystem sys = resolve_system(cfg, sysf);
    const lienard::CycleOptions opt = resolve_options(cfg, optf);
    if (f.slot_opt->count() > 0) cfg["slot"] = f.slot;
    if (f.values_opt->count() > 0) cfg["values"] = f.values;
    if (f.anchor_opt->count() > 0) cfg["anchor"] = f.anchor;

    json config{{"options", lienard::options_to_json(opt)},
                {"system", lienard::system_to_json(sys)}};
    json report{{"deltas", delta_section(sys.k, sys.l)},
                {"symmetry", lienard::symmetry_name(lienard::symmetry_class(sys))}};

    bool ok = true;
    for (const char* group : {"alpha", "beta"}) {
        for (const json& row : report.at("deltas").at(group)) {
            ok = ok && row.at("exact").get<bool>();
        }
    }

    if (cfg.contains("slot") || cfg.contains("values")) {
        if (!cfg.contains("slot") || !cfg.contains("values")) {
            throw std::invalid_argument("rotation certification needs both slot and values");
        }
        if (!cfg.at("values").is_array()) {
            throw std::invalid_argument("config key \"values\" must be an array");
        }
        const auto slot = lienard::rotate::parse_slot(str_key(cfg, "slot", ""));
        const auto values = cfg.at("values").get<std::vector<double>>();
        const double anchor = num_key(cfg, "anchor", 0.0);
        const auto rep =
            lienard::rotate::certify_rotation_monotonicity(sys, slot, values, anchor, opt);
        report["rotation"] = lienard::certify_to_json(rep);
        config["anchor"] = anchor;
        config["slot"] = lienard::rotate::slot_name(slot);
        config["values"] = values;
        ok = ok && rep.verdict == lienard::rotate::CertifyVerdict::pass;
    }

    emit_report(out, "certify", config, report);
    return ok ? kOk : kAnalysisError;
}

struct PortraitFlags {
    std::vector<double> points;
    int random = 0;
    std::vector<double> box;
    double t_max = 0.0, tol = 0.0;
    int seed = 0;
    std::string prefix;
    CLI::Option *points_opt = nullptr, *random_opt = nullptr, *box_opt = nullptr,
                *t_max_opt = nullptr, *tol_opt = nullptr, *seed_opt = nullptr,
                *prefix_opt = nullptr;

    void attach(CLI::App& cmd) {
        points_opt = cmd.add_option("--points", points, "seed points as a flat x y list")
                         ->expected(-1);
        random_opt = cmd.add_option("--random", random, "number of random seed points");
        box_opt = cmd.add_option("--box", box, "random box xmin xmax ymin ymax")->expected(4);
        t_max_opt = cmd.add_option("--t-max", t_max, "integration time per trajectory");
        tol_opt = cmd.add_option("--tol", tol, "integration tolerance");
        seed_opt = cmd.add_option("--seed", seed, "random point generator seed");
        prefix_opt = cmd.add_option("--prefix", prefix, "trajectory CSV path prefix");
    }
};

int run_portrait(const std::string& config_path, const SystemFlags& sysf,
                 const PortraitFlags& f, const std::string& out) {
    json cfg = load_config(config_path);
    const lienard::LienardSystem sys = resolve_system(cfg, sysf);
    if (f.points_opt->count() > 0) {
        if (f.points.size() % 2 != 0) {
            throw std::invalid_argument("--points needs an even number of values");
        }
        json pts = json::array();
        for (std::size_t i = 0; i + 1 < f.points.size(); i += 2) {
            pts.push_back({f.points[i], f.points[i + 1]});
        }
        cfg["points"] = pts;
    }
    if (f.random_opt->count() > 0) cfg["random"] = f.random;
    if (f.box_opt->count() > 0) cfg["box"] = f.box;
    if (f.t_max_opt->count() > 0) cfg["t_max"] = f.t_max;
    if (f.tol_opt->count() > 0) cfg["tol"] = f.tol;
    if (f.seed_opt->count() > 0) cfg["seed"] = f.seed;
    if (f.prefix_opt->count() > 0) cfg["prefix"] = f.prefix;

    std::vector<std::pair<double, double>> seeds;
    if (cfg.contains("points")) {
        if (!cfg.at("points").is_array()) {
            throw std::invalid_argument("config key \"points\" must be an array of [x, y]");
        }
        for (const json& p : cfg.at("points")) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
                throw std::invalid_argument("each seed point must be a [x, y] number pair");
            }
            seeds.emplace_back(p[0].get<double>(), p[1].get<double>());
        }
    }
    const int random_count = int_key(cfg, "random", 0);
    const int seed = int_key(cfg, "seed", 0);
    std::vector<double> box{-3.0, 3.0, -3.0, 3.0};
    if (cfg.contains("box")) {
        if (!cfg.at("box").is_array() || cfg.at("box").size() != 4) {
            throw std::invalid_argument("config key \"box\" must be [xmin, xmax, ymin, ymax]");
        }
        box = cfg.at("box").get<std::vector<double>>();
    }
    if (random_count > 0) {
        std::mt19937 rng(static_cast<std::uint32_t>(seed));
        std::uniform_real_distribution<double> ux(box[0], box[1]);
        std::uniform_real_distribution<double> uy(box[2], box[3]);
        for (int i = 0; i < random_count; ++i) {
            const double x = ux(rng);
            seeds.emplace_back(x, uy(rng));
        }
    }
    if (seeds.empty()) {
        throw std::invalid_argument("no seed points: give --points or --random");
    }

    lienard::FlowOptions fo;
    fo.t_max = num_key(cfg, "t_max", 50.0);
    fo.tol = num_key(cfg, "tol", fo.tol);
    const std::string prefix = str_key(cfg, "prefix", "portrait");

    json points = json::array();
    for (const auto& [x, y] : seeds) {
        points.push_back({x, y});
    }
    json config{{"box", box},          {"points", points}, {"prefix", prefix},
                {"random", random_count}, {"seed", seed},   {"system", lienard::system_to_json(sys)},
                {"t_max", fo.t_max},   {"tol", fo.tol}};

    json rows = json::array();
    bool any_failed = false;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        const auto traj = lienard::integrate(sys, seeds[i].first, seeds[i].second, fo);
        char name[32];
        std::snprintf(name, sizeof name, "_%03zu.csv", i);
        const std::string path = prefix + name;
        lienard::save_text(path, lienard::trajectory_to_csv(traj));
        rows.push_back({{"failed", traj.failed},
                        {"file", path},
                        {"steps", traj.samples.size()},
                        {"terminal", lienard::terminal_name(traj.terminal)},
                        {"x0", seeds[i].first},
                        {"y0", seeds[i].second}});
        any_failed = any_failed || traj.failed;
    }
    emit_report(out, "portrait", config, json{{"trajectories", rows}});
    return any_failed ? kAnalysisError : kOk;
}

int run_verify(const std::string& only, const std::string& out) {
    const auto results = lienard::run_suite(
        only, [](const lienard::CriterionResult& r) { std::cout << format_line(r) << "\n"; });
    if (results.empty()) {
        throw std::invalid_argument("no criterion matches filter \"" + only + "\"");
    }
    bool all = true;
    json rows = json::array();
    for (const auto& r : results) {
        all = all && r.passed;
        rows.push_back({{"budget_seconds", r.budget_seconds},
                        {"detail", r.detail},
                        {"name", r.name},
                        {"passed", r.passed},
                        {"seconds", r.seconds}});
    }
    std::cout << (all ? "all criteria passed" : "some criteria FAILED") << "\n";
    if (!out.empty()) {
        emit_report(out, "verify", json{{"only", only}},
                    json{{"criteria", rows}, {"passed", all}});
    }
    return all ? kOk : kAnalysisError;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Analysis toolkit for polynomial Liénard systems"};
    app.require_subcommand(1);

    std::string config_path, out_path, plan_path, only;

    auto* sub_singular =
        app.add_subcommand("singular", "classify singular points and check the index ledger");
    auto* sub_index = app.add_subcommand("index", "contour winding index at a point");
    auto* sub_cycles = app.add_subcommand("cycles", "limit cycle census over every anti-saddle");
    auto* sub_sweep = app.add_subcommand("sweep", "replay a parameter sweep plan");
    auto* sub_construct =
        app.add_subcommand("construct", "build a configuration with a requested cycle census");
    auto* sub_certify =
        app.add_subcommand("certify", "rotation determinants, symmetry, monotonicity");
    auto* sub_portrait = app.add_subcommand("portrait", "trajectory CSVs from seed points");
    auto* sub_verify = app.add_subcommand("verify", "run the acceptance criteria");

    SystemFlags sys_singular, sys_index, sys_cycles, sys_certify, sys_portrait;
    OptionFlags opt_cycles, opt_sweep, opt_construct, opt_certify;
    IndexFlags index_flags;
    CyclesFlags cycles_flags;
    ConstructFlags construct_flags;
    CertifyFlags certify_flags;
    PortraitFlags portrait_flags;

    for (CLI::App* sub : {sub_singular, sub_index, sub_cycles, sub_sweep, sub_construct,
                          sub_certify, sub_portrait}) {
        sub->add_option("--config", config_path, "JSON config path");
        sub->add_option("--out", out_path, "report path (default: stdout)");
    }
    sys_singular.attach(*sub_singular);
    sys_index.attach(*sub_index);
    index_flags.attach(*sub_index);
    sys_cycles.attach(*sub_cycles);
    opt_cycles.attach(*sub_cycles);
    cycles_flags.attach(*sub_cycles);
    sub_sweep->add_option("--plan", plan_path, "standalone sweep plan JSON path");
    opt_sweep.attach(*sub_sweep);
    construct_flags.attach(*sub_construct);
    opt_construct.attach(*sub_construct);
    sys_certify.attach(*sub_certify);
    certify_flags.attach(*sub_certify);
    opt_certify.attach(*sub_certify);
    sys_portrait.attach(*sub_portrait);
    portrait_flags.attach(*sub_portrait);
    sub_verify->add_option("--only", only, "run only criteria whose name contains this");
    sub_verify->add_option("--out", out_path, "summary JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);
        }
        return fail(kConfigError, "usage", e.what());
    }

    try {
        if (sub_singular->parsed()) return run_singular(config_path, sys_singular, out_path);
        if (sub_index->parsed()) return run_index(config_path, sys_index, index_flags, out_path);
        if (sub_cycles->parsed())
            return run_cycles(config_path, sys_cycles, opt_cycles, cycles_flags, out_path);
        if (sub_sweep->parsed()) return run_sweep(config_path, plan_path, opt_sweep, out_path);
        if (sub_construct->parsed())
            return run_construct(config_path, construct_flags, opt_construct, out_path);
        if (sub_certify->parsed())
            return run_certify(config_path, sys_certify, certify_flags, opt_certify, out_path);
        if (sub_portrait->parsed())
            return run_portrait(config_path, sys_portrait, portrait_flags, out_path);
        if (sub_verify->parsed()) return run_verify(only, out_path);
    } catch (const std::invalid_argument& e) {
        return fail(kConfigError, "config", e.what());
    } catch (const std::exception& e) {
        return fail(kAnalysisError, "analysis", e.what());
    }
    return kOk;
}
