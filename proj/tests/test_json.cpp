#include "lienard/json_io.hpp"

#include <doctest.h>

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

using namespace lienard;
using json_io::json;

namespace {

LienardSystem example_system() {
    return LienardSystem{1, 1, {-0.01, 1.0, -0.384326691025}, {-3.0, 1.0}};
}

} // namespace

TEST_CASE("general system round-trips through json") {
    const LienardSystem sys = example_system();
    const json j = system_to_json(sys);
    CHECK(j.at("form") == "general");
    CHECK(j.at("k") == 1);
    CHECK(j.at("l") == 1);
    CHECK(j.at("alpha").size() == 3);
    CHECK(j.at("beta").size() == 2);

    const LienardSystem back = system_from_json(j);
    CHECK(back.k == sys.k);
    CHECK(back.l == sys.l);
    CHECK(back.alpha == sys.alpha);
    CHECK(back.beta == sys.beta);
}

TEST_CASE("canonical description expands on parse") {
    CanonicalSystem c;
    c.k = 1;
    c.l = 1;
    c.alpha_even = {-0.01, -0.384326691025};
    c.beta_odd = {-3.0};
    c.even_signs = {1};

    const json j = canonical_to_json(c);
    CHECK(j.at("form") == "canonical");
    CHECK(j.at("even_signs") == json::array({1}));

    const LienardSystem expanded = system_from_json(j);
    const LienardSystem expected = expand_canonical(c);
    CHECK(expanded.alpha == expected.alpha);
    CHECK(expanded.beta == expected.beta);

    const CanonicalSystem back = canonical_from_json(j);
    CHECK(back.alpha_even == c.alpha_even);
    CHECK(back.beta_odd == c.beta_odd);
    CHECK(back.even_signs == c.even_signs);
}

TEST_CASE("even_signs accepts sign strings") {
    json j = {{"alpha_even", {0.1, -1.0}},
              {"beta_odd", {-3.0}},
              {"even_signs", {"+"}}};
    CHECK(canonical_from_json(j).even_signs == std::vector<int>{1});

    j["even_signs"] = {"-"};
    CHECK(canonical_from_json(j).even_signs == std::vector<int>{-1});

    j["even_signs"] = {0};
    CHECK_THROWS_AS((void)canonical_from_json(j), std::invalid_argument);
    j["even_signs"] = {2};
    CHECK_THROWS_AS((void)canonical_from_json(j), std::invalid_argument);
}

TEST_CASE("k and l are derived from the coefficient lists when absent") {
    const json j = {{"alpha", {0.1, 1.0, -1.0}}};
    const LienardSystem sys = system_from_json(j);
    CHECK(sys.k == 1);
    CHECK(sys.l == 0);
    CHECK(sys.beta.empty());

    const json jc = {{"alpha_even", {0.1, -1.0}}, {"beta_odd", {-3.0}}, {"even_signs", {1}}};
    const LienardSystem sys2 = system_from_json(jc);
    CHECK(sys2.k == 1);
    CHECK(sys2.l == 1);
}

TEST_CASE("exactly one field group may be present") {
    CHECK_THROWS_AS((void)system_from_json(json{{"k", 1}, {"l", 0}}), std::invalid_argument);
    CHECK_THROWS_AS(
        (void)system_from_json(json{{"alpha", {0.0}}, {"alpha_even", {0.0}}}),
        std::invalid_argument);
    CHECK_THROWS_AS((void)system_from_json(json::array({1, 2})), std::invalid_argument);
}

TEST_CASE("a form tag must match the fields present") {
    json j = {{"form", "canonical"}, {"alpha", {0.0}}};
    CHECK_THROWS_AS((void)system_from_json(j), std::invalid_argument);
    j["form"] = "general";
    CHECK(system_from_json(j).k == 0);
}

TEST_CASE("malformed descriptions are refused with invalid_argument") {
    CHECK_THROWS_AS((void)system_from_json(json{{"alpha", "x"}}), std::invalid_argument);
    CHECK_THROWS_AS((void)system_from_json(json{{"alpha", {1.0, "x"}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)system_from_json(json{{"alpha", {0.0}}, {"k", 1.5}}),
                    std::invalid_argument);
    // size mismatch surfaces through the system's own validation
    CHECK_THROWS_AS((void)system_from_json(json{{"alpha", {0.0, 1.0}}}),
                    std::invalid_argument);
}

TEST_CASE("options overrides update only the supplied keys") {
    const json j = {{"samples", 128}, {"tol", 1e-12}};
    const CycleOptions opt = options_from_json(j);
    CHECK(opt.n_samples == 128);
    CHECK(opt.flow_tol == 1e-12);
    CHECK(opt.fixed_point_tol == 1e-10); // dragged two decades up
    CHECK(opt.r_min == CycleOptions{}.r_min);

    const CycleOptions opt2 =
        options_from_json(json{{"tol", 1e-12}, {"fixed_point_tol", 1e-8}});
    CHECK(opt2.fixed_point_tol == 1e-8);

    const CycleOptions round = options_from_json(options_to_json(opt), CycleOptions{});
    CHECK(round.n_samples == opt.n_samples);
    CHECK(round.flow_tol == opt.flow_tol);
    CHECK(round.threads == opt.threads);
}

TEST_CASE("options rejections") {
    CHECK_THROWS_AS((void)options_from_json(json{{"samples", 2}}), std::invalid_argument);
    CHECK_THROWS_AS((void)options_from_json(json{{"tol", -1e-9}}), std::invalid_argument);
    CHECK_THROWS_AS((void)options_from_json(json{{"t_max", 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS((void)options_from_json(json{{"threads", -1}}), std::invalid_argument);
    CHECK_NOTHROW((void)options_from_json(json{{"r_max", 0.0}})); // 0 keeps the auto cap
}

TEST_CASE("singularity fragment mirrors the classification calls") {
    const LienardSystem sys = example_system();
    const json j = singular_report_json(sys);

    const auto points = singular::find_finite_singularities(sys);
    REQUIRE(j.at("finite").size() == points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const json& p = j.at("finite").at(i);
        CHECK(p.at("x") == points[i].x);
        CHECK(p.at("trace") == points[i].jacobian_trace);
        CHECK(p.at("det") == points[i].jacobian_det);
        CHECK(p.at("kind") == singular::kind_name(points[i].kind));
        CHECK(p.at("index") == points[i].index);
    }

    CHECK(j.at("infinite").size() == 2);
    CHECK(j.at("infinite").at(0).at("axis") == "x-ends");
    CHECK(j.at("infinite").at(1).at("axis") == "y-ends");

    const auto report = singular::check_first_index_theorem(sys);
    const json& lg = j.at("ledger");
    CHECK(lg.at("N") == report.ledger.N);
    CHECK(lg.at("Nf") == report.ledger.N_f);
    CHECK(lg.at("Nc") == report.ledger.N_c);
    CHECK(lg.at("C") == report.ledger.C);
    CHECK(lg.at("Np") == report.ledger.N_prime);
    CHECK(lg.at("Cp") == report.ledger.C_prime);
    CHECK(lg.at("balanced") == report.ledger.balanced());

    CHECK(j.at("alternation") == "pass");
}

TEST_CASE("census json carries anchors and totals") {
    CycleCensus cen;
    AnchorCensus a;
    a.anchor = 0.0;
    a.cycles.push_back({0.0, 0.648, Stability::stable, 0.51});
    cen.anchors.push_back(a);
    AnchorCensus b;
    b.anchor = 2.618;
    cen.anchors.push_back(b);
    cen.cycles_at_origin = 1;
    cen.cycles_elsewhere = 0;

    const json j = census_to_json(cen);
    REQUIRE(j.at("anchors").size() == 2);
    CHECK(j.at("anchors").at(0).at("x") == 0.0);
    const json& cyc = j.at("anchors").at(0).at("cycles").at(0);
    CHECK(cyc.at("r") == 0.648);
    CHECK(cyc.at("stability") == "stable");
    CHECK(cyc.at("multiplier") == 0.51);
    CHECK(j.at("anchors").at(1).at("cycles").empty());
    CHECK(j.at("totals").at("origin") == 1);
    CHECK(j.at("totals").at("others") == 0);
}

TEST_CASE("sweep log json lists snapshots and events") {
    rotate::SweepLog log;
    rotate::SweepSnapshot snap;
    snap.slot = rotate::parse_slot("a2");
    snap.value = 0.5;
    log.snapshots.push_back(snap);

    rotate::BifurcationEvent ev;
    ev.kind = rotate::EventKind::hopf;
    ev.slot = rotate::parse_slot("a0");
    ev.param_value = 0.0;
    ev.detail = 0.0;
    ev.count_before = 0;
    ev.count_after = 1;
    log.events.push_back(ev);

    const json j = sweep_log_to_json(log);
    CHECK(j.at("snapshots").at(0).at("slot") == "a2");
    CHECK(j.at("snapshots").at(0).at("value") == 0.5);
    CHECK(j.at("snapshots").at(0).at("census").contains("totals"));
    REQUIRE(j.at("events").size() == 1);
    CHECK(j.at("events").at(0).at("kind") == "hopf");
    CHECK(j.at("events").at(0).at("slot") == "a0");
    CHECK(j.at("events").at(0).at("count_after") == 1);
    CHECK(j.at("aborted") == false);
    CHECK(j.at("monotonicity_ok") == true);
}

TEST_CASE("construct and certify fragments") {
    rotate::ConstructResult res;
    res.system = example_system();
    res.achieved = true;
    res.attempts = 2;
    const json jc = construct_to_json(res);
    CHECK(jc.at("system").at("form") == "general");
    CHECK(jc.at("achieved") == true);
    CHECK(jc.at("attempts") == 2);

    rotate::CertifyReport rep;
    rep.verdict = rotate::CertifyVerdict::pass;
    rep.slot = rotate::parse_slot("a2");
    rep.values = {0.1, 0.11};
    rotate::CycleTrack tr;
    tr.stability = Stability::unstable;
    tr.r_by_value = {0.23, 0.20};
    rep.tracks.push_back(tr);
    const json jr = certify_to_json(rep);
    CHECK(jr.at("verdict") == "pass");
    CHECK(jr.at("slot") == "a2");
    CHECK(jr.at("values").size() == 2);
    CHECK(jr.at("tracks").at(0).at("stability") == "unstable");
    CHECK(jr.at("tracks").at(0).at("r").size() == 2);
    CHECK(jr.at("tracks").at(0).at("lost") == false);
}

TEST_CASE("plan json resolves leg defaults from the template") {
    const json j = {{"template", {{"alpha", {0.5, 1.0, 0.0, 1.0, -1.0}}, {"beta", json::array()}}},
                    {"order",
                     {{{"slot", "a4"}, {"to", 1.0}, {"steps", 5}},
                      {{"slot", "a2"}, {"to", -0.1}}}}};
    const rotate::SweepPlan plan = plan_from_json(j);
    CHECK(plan.base.k == 2);
    REQUIRE(plan.slots.size() == 2);
    CHECK(plan.slots[0].slot.index == 4);
    CHECK(plan.slots[0].from == -1.0); // template value of a4
    CHECK(plan.slots[0].to == 1.0);
    CHECK(plan.slots[0].steps == 5);
    CHECK(plan.slots[1].from == 0.0);
    CHECK(plan.slots[1].steps == 50);

    const rotate::SweepPlan back = plan_from_json(plan_to_json(plan));
    REQUIRE(back.slots.size() == plan.slots.size());
    for (std::size_t i = 0; i < plan.slots.size(); ++i) {
        CHECK(back.slots[i].from == plan.slots[i].from);
        CHECK(back.slots[i].to == plan.slots[i].to);
        CHECK(back.slots[i].steps == plan.slots[i].steps);
    }

    json bad = j;
    bad["order"][0]["slot"] = "b1"; // parses fine, refused by plan validation
    CHECK_THROWS_AS(plan_from_json(bad).validate(), std::invalid_argument);
    bad["order"][0].erase("slot");
    CHECK_THROWS_AS((void)plan_from_json(bad), std::invalid_argument);
}

TEST_CASE("profile csv rows") {
    DisplacementProfile p;
    p.anchor = 0.0;
    p.samples.push_back({0.1, 0.05, SampleStatus::ok});
    p.samples.push_back({0.2, 0.0, SampleStatus::escaped});
    p.samples.push_back({0.4, 0.0, SampleStatus::hit_other_basin});
    CHECK(profile_to_csv(p) ==
          "r,d,status\n0.1,0.05,ok\n0.2,0,escaped\n0.4,0,hit-other-basin\n");
}

TEST_CASE("trajectory csv rows") {
    flow::Trajectory t;
    t.samples.push_back({0.0, 1.0, 0.0});
    t.samples.push_back({0.25, 0.5, -0.125});
    CHECK(trajectory_to_csv(t) == "t,x,y\n0,1,0\n0.25,0.5,-0.125\n");
}

TEST_CASE("serialization is byte-stable") {
    const json j = singular_report_json(example_system());
    const std::string once = j.dump(2);
    CHECK(json::parse(once).dump(2) == once);
    CHECK(singular_report_json(example_system()).dump(2) == once);
    // alphabetical key order puts the finite list before the ledger
    CHECK(once.find("\"finite\"") < once.find("\"infinite\""));
    CHECK(once.find("\"infinite\"") < once.find("\"ledger\""));
}

TEST_CASE("error payloads name a category") {
    const json e = error_json("config", "unknown flag");
    CHECK(e.at("error").at("category") == "config");
    CHECK(e.at("error").at("message") == "unknown flag");
}

TEST_CASE("json files round-trip through disk") {
    const std::string path = "test_json_scratch.json";
    const json j = system_to_json(example_system());
    save_text(path, j.dump(2) + "\n");
    const json back = load_json(path);
    CHECK(back == j);
    std::remove(path.c_str());

    CHECK_THROWS_AS((void)load_json("does_not_exist.json"), std::invalid_argument);
    save_text(path, "{ not json");
    CHECK_THROWS_WITH_AS((void)load_json(path), doctest::Contains(path.c_str()),
                         std::invalid_argument);
    std::remove(path.c_str());
}
