#include "lienard/json_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lienard::json_io {

namespace {

[[noreturn]] void bad(const std::string& what) {
    throw std::invalid_argument("json: " + what);
}

const json& want(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end())
        bad(std::string("missing field \"") + key + "\"");
    return *it;
}

double as_num(const json& v, const char* what) {
    if (!v.is_number())
        bad(std::string(what) + " must be a number");
    return v.get<double>();
}

int as_int(const json& v, const char* what) {
    if (!v.is_number_integer())
        bad(std::string(what) + " must be an integer");
    return v.get<int>();
}

std::vector<double> as_num_list(const json& v, const char* what) {
    if (!v.is_array())
        bad(std::string(what) + " must be an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const json& e : v)
        out.push_back(as_num(e, what));
    return out;
}

int as_sign(const json& v) {
    if (v.is_number()) {
        double s = v.get<double>();
        if (s == 1.0 || s == -1.0)
            return s > 0 ? 1 : -1;
    } else if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "+" || s == "+1" || s == "1")
            return 1;
        if (s == "-" || s == "-1")
            return -1;
    }
    bad("even_signs entries must be +-1 (or \"+\"/\"-\")");
}

// Shortest round-trip rendering, matching the JSON serializer so CSV
// and JSON copies of the same value compare equal as text.
std::string fmt(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

} // namespace

json system_to_json(const polysys::LienardSystem& sys) {
    sys.validate();
    return {{"form", "general"},
            {"k", sys.k},
            {"l", sys.l},
            {"alpha", sys.alpha},
            {"beta", sys.beta}};
}

json canonical_to_json(const polysys::CanonicalSystem& c) {
    c.validate();
    return {{"form", "canonical"},
            {"k", c.k},
            {"l", c.l},
            {"alpha_even", c.alpha_even},
            {"beta_odd", c.beta_odd},
            {"even_signs", c.even_signs}};
}

polysys::CanonicalSystem canonical_from_json(const json& j) {
    if (!j.is_object())
        bad("system description must be an object");
    polysys::CanonicalSystem c;
    c.alpha_even = as_num_list(want(j, "alpha_even"), "alpha_even");
    if (auto it = j.find("beta_odd"); it != j.end())
        c.beta_odd = as_num_list(*it, "beta_odd");
    if (auto it = j.find("even_signs"); it != j.end()) {
        if (!it->is_array())
            bad("even_signs must be an array");
        for (const json& e : *it)
            c.even_signs.push_back(as_sign(e));
    }
    c.k = j.contains("k") ? as_int(j["k"], "k") : static_cast<int>(c.alpha_even.size()) - 1;
    c.l = j.contains("l") ? as_int(j["l"], "l") : static_cast<int>(c.beta_odd.size());
    c.validate();
    return c;
}

polysys::LienardSystem system_from_json(const json& j) {
    if (!j.is_object())
        bad("system description must be an object");
    const bool general = j.contains("alpha") || j.contains("beta");
    const bool canonical =
        j.contains("alpha_even") || j.contains("beta_odd") || j.contains("even_signs");
    if (general && canonical)
        bad("system mixes the general (alpha/beta) and canonical "
            "(alpha_even/beta_odd/even_signs) field groups");
    if (!general && !canonical)
        bad("system needs either the alpha/beta or the "
            "alpha_even/beta_odd/even_signs field group");
    if (auto it = j.find("form"); it != j.end()) {
        if (!it->is_string())
            bad("form must be \"general\" or \"canonical\"");
        const std::string form = it->get<std::string>();
        const char* actual = general ? "general" : "canonical";
        if (form != actual)
            bad("form \"" + form + "\" contradicts the fields present (" + actual + ")");
    }
    if (canonical)
        return expand_canonical(canonical_from_json(j));

    polysys::LienardSystem sys;
    sys.alpha = as_num_list(want(j, "alpha"), "alpha");
    if (auto it = j.find("beta"); it != j.end())
        sys.beta = as_num_list(*it, "beta");
    sys.k = j.contains("k") ? as_int(j["k"], "k")
                            : (static_cast<int>(sys.alpha.size()) - 1) / 2;
    sys.l = j.contains("l") ? as_int(j["l"], "l") : static_cast<int>(sys.beta.size()) / 2;
    sys.validate();
    return sys;
}

json options_to_json(const cycles::CycleOptions& opt) {
    return {{"samples", opt.n_samples},
            {"r_min", opt.r_min},
            {"r_max", opt.r_max},
            {"tol", opt.flow_tol},
            {"fixed_point_tol", opt.fixed_point_tol},
            {"signal_floor", opt.signal_floor},
            {"tangency_tol", opt.tangency_tol},
            {"t_max", opt.t_max},
            {"threads", opt.threads}};
}

cycles::CycleOptions options_from_json(const json& j, cycles::CycleOptions base) {
    if (!j.is_object())
        bad("options must be an object");
    if (auto it = j.find("samples"); it != j.end()) {
        base.n_samples = as_int(*it, "samples");
        if (base.n_samples < 4)
            bad("samples must be at least 4");
    }
    if (auto it = j.find("tol"); it != j.end()) {
        base.flow_tol = as_num(*it, "tol");
        base.fixed_point_tol = base.flow_tol * 100.0;
    }
    auto positive = [&](const char* key, double& slot) {
        auto it = j.find(key);
        if (it == j.end())
            return;
        slot = as_num(*it, key);
        if (!(slot > 0.0))
            bad(std::string(key) + " must be positive");
    };
    positive("fixed_point_tol", base.fixed_point_tol);
    positive("signal_floor", base.signal_floor);
    positive("tangency_tol", base.tangency_tol);
    positive("t_max", base.t_max);
    positive("r_min", base.r_min);
    if (auto it = j.find("r_max"); it != j.end())
        base.r_max = as_num(*it, "r_max"); // <= 0 keeps the automatic cap
    if (auto it = j.find("threads"); it != j.end()) {
        int t = as_int(*it, "threads");
        if (t < 0)
            bad("threads must be non-negative");
        base.threads = static_cast<unsigned>(t);
    }
    if (!(base.flow_tol > 0.0) || !(base.fixed_point_tol > 0.0))
        bad("tol must be positive");
    return base;
}

json singular_report_json(const polysys::LienardSystem& sys) {
    json finite = json::array();
    for (const auto& p : singular::find_finite_singularities(sys))
        finite.push_back({{"x", p.x},
                          {"trace", p.jacobian_trace},
                          {"det", p.jacobian_det},
                          {"kind", singular::kind_name(p.kind)},
                          {"index", p.index}});
    json infinite = json::array();
    for (const auto& q : singular::classify_infinite(sys))
        infinite.push_back(
            {{"axis", singular::axis_name(q.axis)}, {"kind", singular::infinite_kind_name(q.kind)}});
    const auto report = singular::check_first_index_theorem(sys);
    const auto& lg = report.ledger;
    return {{"finite", finite},
            {"infinite", infinite},
            {"ledger",
             {{"N", lg.N},
              {"Nf", lg.N_f},
              {"Nc", lg.N_c},
              {"C", lg.C},
              {"Np", lg.N_prime},
              {"Cp", lg.C_prime},
              {"balanced", lg.balanced()}}},
            {"alternation", singular::check_name(singular::check_alternation(sys))}};
}

json census_to_json(const cycles::CycleCensus& census) {
    json anchors = json::array();
    for (const auto& a : census.anchors) {
        json cyc = json::array();
        for (const auto& c : a.cycles)
            cyc.push_back({{"r", c.r_star},
                           {"stability", cycles::stability_name(c.stability)},
                           {"multiplier", c.multiplier_estimate}});
        anchors.push_back({{"x", a.anchor}, {"cycles", cyc}});
    }
    return {{"anchors", anchors},
            {"totals",
             {{"origin", census.cycles_at_origin}, {"others", census.cycles_elsewhere}}}};
}

json event_to_json(const rotate::BifurcationEvent& ev) {
    return {{"kind", rotate::event_kind_name(ev.kind)},
            {"slot", rotate::slot_name(ev.slot)},
            {"value", ev.param_value},
            {"anchor", ev.anchor.x},
            {"detail", ev.detail},
            {"count_before", ev.count_before},
            {"count_after", ev.count_after}};
}

json sweep_log_to_json(const rotate::SweepLog& log) {
    json snapshots = json::array();
    for (const auto& s : log.snapshots)
        snapshots.push_back({{"slot", rotate::slot_name(s.slot)},
                             {"value", s.value},
                             {"census", census_to_json(s.census)}});
    json events = json::array();
    for (const auto& ev : log.events)
        events.push_back(event_to_json(ev));
    return {{"snapshots", snapshots},
            {"events", events},
            {"aborted", log.aborted},
            {"monotonicity_ok", log.monotonicity_ok},
            {"note", log.note}};
}

json construct_to_json(const rotate::ConstructResult& result) {
    return {{"system", system_to_json(result.system)},
            {"census", census_to_json(result.census)},
            {"achieved", result.achieved},
            {"attempts", result.attempts},
            {"note", result.note}};
}

json certify_to_json(const rotate::CertifyReport& report) {
    json tracks = json::array();
    for (const auto& t : report.tracks)
        tracks.push_back({{"stability", cycles::stability_name(t.stability)},
                          {"r", t.r_by_value},
                          {"lost", t.lost}});
    return {{"verdict", rotate::certify_verdict_name(report.verdict)},
            {"slot", rotate::slot_name(report.slot)},
            {"anchor", report.anchor},
            {"values", report.values},
            {"tracks", tracks},
            {"note", report.note}};
}

rotate::SweepPlan plan_from_json(const json& j) {
    if (!j.is_object())
        bad("plan must be an object");
    rotate::SweepPlan plan;
    plan.base = system_from_json(want(j, "template"));
    const json& order = want(j, "order");
    if (!order.is_array())
        bad("order must be an array of sweep legs");
    for (const json& leg : order) {
        if (!leg.is_object())
            bad("each sweep leg must be an object");
        rotate::SweepSlot s;
        const json& name = want(leg, "slot");
        if (!name.is_string())
            bad("slot must be a name like \"a2\"");
        s.slot = rotate::parse_slot(name.get<std::string>());
        s.from = leg.contains("from") ? as_num(leg["from"], "from")
                                      : rotate::get_slot(plan.base, s.slot);
        s.to = as_num(want(leg, "to"), "to");
        s.steps = leg.contains("steps") ? as_int(leg["steps"], "steps") : 50;
        plan.slots.push_back(s);
    }
    if (auto it = j.find("options"); it != j.end())
        plan.census_options = options_from_json(*it, plan.census_options);
    return plan;
}

json plan_to_json(const rotate::SweepPlan& plan) {
    json order = json::array();
    for (const auto& s : plan.slots)
        order.push_back({{"slot", rotate::slot_name(s.slot)},
                         {"from", s.from},
                         {"to", s.to},
                         {"steps", s.steps}});
    return {{"template", system_to_json(plan.base)},
            {"order", order},
            {"options", options_to_json(plan.census_options)}};
}

std::string profile_to_csv(const cycles::DisplacementProfile& profile) {
    std::string out = "r,d,status\n";
    for (const auto& s : profile.samples) {
        out += fmt(s.r);
        out += ',';
        out += fmt(s.d);
        out += ',';
        out += cycles::sample_status_name(s.status);
        out += '\n';
    }
    return out;
}

std::string trajectory_to_csv(const flow::Trajectory& traj) {
    std::string out = "t,x,y\n";
    for (const auto& s : traj.samples) {
        out += fmt(s.t);
        out += ',';
        out += fmt(s.x);
        out += ',';
        out += fmt(s.y);
        out += '\n';
    }
    return out;
}

json error_json(const std::string& category, const std::string& message) {
    return {{"error", {{"category", category}, {"message", message}}}};
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        bad("cannot read \"" + path + "\"");
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return json::parse(text.str());
    } catch (const json::parse_error& e) {
        bad("\"" + path + "\": " + e.what());
    }
}

void save_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write \"" + path + "\"");
    out << text;
    if (!out)
        throw std::runtime_error("write failed for \"" + path + "\"");
}

} // namespace lienard::json_io
