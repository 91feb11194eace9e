#include "lienard/acceptance.hpp"

#include "lienard/cycles.hpp"
#include "lienard/rotate.hpp"
#include "lienard/singular.hpp"
#include "lienard/system.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <utility>

namespace lienard::acceptance {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::vector<double> zeros(int n) { return std::vector<double>(static_cast<std::size_t>(n), 0.0); }

polysys::CanonicalSystem shape(int k, int l) {
    polysys::CanonicalSystem c;
    c.k = k;
    c.l = l;
    c.alpha_even = zeros(k + 1);
    c.beta_odd = zeros(l);
    c.even_signs.assign(static_cast<std::size_t>(l), 1);
    return c;
}

bool all_simple(const std::vector<singular::SingularPoint>& pts) {
    for (const auto& p : pts)
        if (p.multiple || p.kind == singular::PointKind::saddle_node ||
            p.kind == singular::PointKind::degenerate)
            return false;
    return true;
}

std::pair<int, int> totals(const cycles::CycleCensus& c) {
    return {c.cycles_at_origin, c.cycles_elsewhere};
}

// The running odd-restoring example: beta_odd = (-3), damping tuned so
// both anti-saddles carry a cycle.
LienardSystem odd_restoring_example() {
    return LienardSystem{1, 1, {-0.01, 1.0, -0.384326691025}, {-3.0, 1.0}};
}

using Verdict = std::pair<bool, std::string>;

// All canonical rotation determinants must come out as single exact
// monomials: x^{2i} y^2 for the even damping slots and -x^{2j} y for
// the odd restoring slots of the reduced form.
Verdict crit_delta_identities() {
    int checked = 0;
    for (int k = 0; k <= 3; ++k) {
        for (int l = 0; l <= 2; ++l) {
            const polysys::CanonicalSystem c = shape(k, l);
            for (int i = 0; i <= k; ++i) {
                polysys::ParamSlot slot;
                slot.kind = polysys::ParamSlot::alpha;
                slot.index = 2 * i;
                const auto [p, q] = canonical_field_with_slot(c, slot);
                if (!(rotation_determinant(p, q) == BivariatePoly::term(2 * i, 2, 1.0)))
                    return {false, "damping slot a" + std::to_string(2 * i) + " at k=" +
                                       std::to_string(k) + ", l=" + std::to_string(l) +
                                       " is not x^{2i} y^2"};
                ++checked;
            }
            for (int j = 1; j <= l; ++j) {
                polysys::ParamSlot slot;
                slot.kind = polysys::ParamSlot::beta;
                slot.index = 2 * j - 1;
                const auto [p, q] = beta_rotation_field_with_slot(c, slot);
                if (!(rotation_determinant(p, q) == BivariatePoly::term(2 * j, 1, -1.0)))
                    return {false, "restoring slot b" + std::to_string(2 * j - 1) + " at k=" +
                                       std::to_string(k) + ", l=" + std::to_string(l) +
                                       " is not -x^{2j} y"};
                ++checked;
            }
        }
    }
    return {true, std::to_string(checked) + " slot determinants exact"};
}

// Contour winding on the odd-restoring example plus the index ledger
// on seeded random systems with conclusive classifications.
Verdict crit_index_ledger() {
    const LienardSystem ex = odd_restoring_example();
    const double saddle_x = (3.0 - std::sqrt(5.0)) / 2.0;
    const double far_x = (3.0 + std::sqrt(5.0)) / 2.0;

    if (singular::poincare_index(ex, 0.0, 0.0, 0.19) != 1)
        return {false, "origin contour index is not +1"};
    if (singular::poincare_index(ex, saddle_x, 0.0, 0.12) != -1)
        return {false, "saddle contour index is not -1"};
    const double cx = far_x / 2.0;
    if (singular::poincare_index(ex, cx, 0.0, cx + 1.5) != 1)
        return {false, "enclosing contour index is not +1"};

    std::mt19937 rng(101);
    std::uniform_int_distribution<int> deg(0, 2);
    std::uniform_real_distribution<double> ua(-1.0, 1.0);
    std::uniform_real_distribution<double> ub(-1.5, 1.5);
    int kept = 0, skipped = 0, draws = 0;
    while (kept < 20 && draws < 1000) {
        ++draws;
        LienardSystem sys;
        sys.k = deg(rng);
        sys.l = deg(rng);
        sys.alpha.clear();
        sys.beta.clear();
        for (int i = 0; i < 2 * sys.k + 1; ++i)
            sys.alpha.push_back(ua(rng));
        for (int i = 0; i < 2 * sys.l; ++i)
            sys.beta.push_back(ub(rng));
        if (!all_simple(singular::find_finite_singularities(sys)))
            continue;
        const auto report = singular::check_first_index_theorem(sys);
        if (report.verdict == singular::LedgerVerdict::inconclusive) {
            ++skipped; // equator classification came back `other`
            continue;
        }
        if (report.verdict != singular::LedgerVerdict::pass || !report.ledger.balanced())
            return {false, "ledger unbalanced on seeded draw " + std::to_string(draws)};
        ++kept;
    }
    if (kept < 20)
        return {false, "only " + std::to_string(kept) + " conclusive systems in " +
                           std::to_string(draws) + " draws"};
    return {true, "example indices +1/-1/+1; 20 seeded ledgers balanced (" +
                      std::to_string(skipped) + " skipped as inconclusive)"};
}

// Saddles and anti-saddles must alternate along the axis for every
// all-simple seeded canonical system.
Verdict crit_alternation() {
    std::mt19937 rng(202);
    std::uniform_int_distribution<int> deg(0, 2);
    std::uniform_real_distribution<double> ua(-1.0, 1.0);
    std::uniform_real_distribution<double> ub(-3.0, 3.0);
    std::bernoulli_distribution coin;
    int kept = 0, draws = 0;
    while (kept < 100 && draws < 2000) {
        ++draws;
        polysys::CanonicalSystem c = shape(deg(rng), deg(rng));
        for (auto& a : c.alpha_even)
            a = ua(rng);
        for (auto& b : c.beta_odd)
            b = ub(rng);
        for (auto& s : c.even_signs)
            s = coin(rng) ? 1 : -1;
        const LienardSystem sys = expand_canonical(c);
        if (!all_simple(singular::find_finite_singularities(sys)))
            continue;
        if (singular::check_alternation(sys) != singular::CheckResult::pass)
            return {false, "alternation failed on seeded draw " + std::to_string(draws)};
        ++kept;
    }
    if (kept < 100)
        return {false, "only " + std::to_string(kept) + " all-simple systems in " +
                           std::to_string(draws) + " draws"};
    return {true, "100 all-simple seeded systems alternate (" + std::to_string(draws) +
                      " draws)"};
}

// Vanishing damping makes the system time-reversible about the x-axis:
// the displacement map must vanish to integrator precision and the
// census must come back empty, for every shape up to (2,2).
Verdict crit_center_symmetry() {
    double worst = 0.0;
    for (int k = 0; k <= 2; ++k) {
        for (int l = 0; l <= 2; ++l) {
            polysys::CanonicalSystem c = shape(k, l);
            if (l >= 1)
                c.beta_odd[0] = -3.0;
            if (l >= 2)
                c.beta_odd[1] = 1.0;
            LienardSystem sys = expand_canonical(c);
            for (auto& a : sys.alpha)
                a = 0.0;
            if (symmetry_class(sys) != SymmetryClass::x_axis)
                return {false, "zero damping not recognized as reversible"};

            const auto profile = cycles::displacement_profile(sys, 0.0);
            int ok = 0;
            for (const auto& s : profile.samples) {
                if (s.status != cycles::SampleStatus::ok)
                    continue;
                ++ok;
                worst = std::max(worst, std::abs(s.d));
            }
            if (ok < 2)
                return {false, "fewer than two returning samples at shape (" +
                                   std::to_string(k) + "," + std::to_string(l) + ")"};
            if (worst >= 1e-8)
                return {false, "|d| reaches " + num(worst) + " at shape (" +
                                   std::to_string(k) + "," + std::to_string(l) + ")"};
            if (totals(cycles::census(sys)) != std::pair<int, int>{0, 0})
                return {false, "census not empty at shape (" + std::to_string(k) + "," +
                                   std::to_string(l) + ")"};
        }
    }
    return {true, "9 shapes: max |d| = " + num(worst) + ", all censuses empty"};
}

// The origin's small cycle is born at a damping root placed exactly,
// and its amplitude grows like the square root of the offset.
Verdict crit_hopf_amplitude() {
    polysys::ParamSlot a0;
    a0.kind = polysys::ParamSlot::alpha;
    a0.index = 0;
    const LienardSystem tmpl{1, 0, {0.3, 1.0, -1.0}, {}};
    const auto events = rotate::hopf_scan(tmpl, a0, -0.5, 0.5);
    if (events.size() != 1)
        return {false, std::to_string(events.size()) + " trace roots found, expected 1"};
    if (std::abs(events[0].param_value) >= 1e-10)
        return {false, "trace root at " + num(events[0].param_value)};

    cycles::CycleOptions opt;
    opt.r_max = 1.0;
    auto radius_at = [&](double eps) -> double {
        const LienardSystem sys{1, 0, {eps, 1.0, -1.0}, {}};
        const auto found = cycles::count_cycles(sys, 0.0, opt);
        if (found.size() != 1)
            throw std::runtime_error("expected one small cycle at offset " + num(eps));
        return found[0].r_star;
    };
    const double r1 = radius_at(0.0025);
    const double r4 = radius_at(0.01);
    const double ratio = r4 / r1;
    if (!(ratio > 1.6 && ratio < 2.4))
        return {false, "amplitude ratio " + num(ratio) + " outside [1.6, 2.4]"};
    return {true, "trace root at " + num(events[0].param_value) + ", amplitude ratio " +
                      num(ratio)};
}

// Sign-split damping at k=1 gives exactly one cycle around the origin;
// same-sign damping gives none.  A five-fold denser radius grid must
// agree at every seeded grid point.
Verdict crit_uniqueness_k1() {
    std::mt19937 rng(303);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto magnitude = [&] { return std::pow(10.0, -3.0 * u(rng)); };

    cycles::CycleOptions coarse;
    coarse.n_samples = 64;
    cycles::CycleOptions dense;
    dense.n_samples = 400;

    for (int i = 0; i < 16; ++i) {
        const double s = (i % 2 == 0) ? 1.0 : -1.0;
        const LienardSystem sys{1, 0, {s * magnitude(), 1.0, -s * magnitude()}, {}};
        const auto c = totals(cycles::census(sys, coarse));
        const auto d = totals(cycles::census(sys, dense));
        if (c != std::pair<int, int>{1, 0} || d != c)
            return {false, "opposite-sign point " + std::to_string(i) + ": coarse (" +
                               std::to_string(c.first) + "," + std::to_string(c.second) +
                               "), dense (" + std::to_string(d.first) + "," +
                               std::to_string(d.second) + ")"};
    }
    for (int i = 0; i < 16; ++i) {
        const double s = (i % 2 == 0) ? 1.0 : -1.0;
        const LienardSystem sys{1, 0, {s * magnitude(), 1.0, s * magnitude()}, {}};
        const auto c = totals(cycles::census(sys, coarse));
        const auto d = totals(cycles::census(sys, dense));
        if (c != std::pair<int, int>{0, 0} || d != c)
            return {false, "same-sign point " + std::to_string(i) + " is not cycle-free"};
    }
    return {true, "16 split-sign points: exactly 1; 16 same-sign points: 0; dense grid agrees"};
}

// The constructive lower bound: requested (origin, elsewhere) censuses
// are reached and survive a five-fold denser recount.
Verdict crit_construction() {
    struct Target {
        int k, l;
        std::vector<double> beta_odd;
        std::vector<int> signs;
        cycles::CycleOptions opt;
    };
    std::vector<Target> targets(3);
    targets[0] = {1, 0, {}, {}, {}};
    targets[0].opt.r_max = 1.2;
    targets[1] = {1, 1, {-3.0}, {1}, {}};
    targets[2] = {2, 0, {}, {}, {}};
    targets[2].opt.r_max = 1.0;
    targets[2].opt.n_samples = 96;

    std::string summary;
    for (const auto& t : targets) {
        const auto res = rotate::construct_configuration(t.k, t.l, t.beta_odd, t.signs, t.opt);
        const std::string tag = "(" + std::to_string(t.k) + "," + std::to_string(t.l) + ")";
        if (!res.achieved || totals(res.census) != std::pair<int, int>{t.k, t.l})
            return {false, tag + " not reached: " + res.note};
        cycles::CycleOptions dense = t.opt;
        dense.n_samples = 400;
        if (totals(cycles::census(res.system, dense)) != std::pair<int, int>{t.k, t.l})
            return {false, tag + " failed the dense recount"};
        if (t.k == 2) {
            const auto& cyc = res.census.anchors.front().cycles;
            if (cyc.size() != 2 || cyc[0].stability != cycles::Stability::unstable ||
                cyc[1].stability != cycles::Stability::stable)
                return {false, "(2,0) ordering is not inner-unstable/outer-stable"};
        }
        summary += tag + " in " + std::to_string(res.attempts) + (t.k == 2 ? "" : ", ");
    }
    return {true, summary + " censuses; dense recounts agree"};
}

// Turning the top even damping slot must expand the stable cycle and
// contract the unstable one on the two-cycle configuration.
Verdict crit_rotation_monotonicity() {
    const LienardSystem two{2, 0, {-0.001, 1.0, 0.1, 1.0, -1.0}, {}};
    polysys::ParamSlot a2;
    a2.kind = polysys::ParamSlot::alpha;
    a2.index = 2;
    const std::vector<double> values{0.100, 0.105, 0.110, 0.115, 0.120};
    cycles::CycleOptions opt;
    opt.r_max = 0.8;
    const auto rep = rotate::certify_rotation_monotonicity(two, a2, values, 0.0, opt);
    if (rep.verdict != rotate::CertifyVerdict::pass)
        return {false, std::string("verdict ") + rotate::certify_verdict_name(rep.verdict) +
                           ": " + rep.note};
    double spread_unstable = 0.0, spread_stable = 0.0;
    for (const auto& t : rep.tracks) {
        if (t.r_by_value.size() < 2)
            continue;
        const double delta = t.r_by_value.back() - t.r_by_value.front();
        if (t.stability == cycles::Stability::unstable)
            spread_unstable = delta;
        else
            spread_stable = delta;
    }
    if (!(spread_unstable < 0.0) || !(spread_stable > 0.0))
        return {false, "tracks moved the wrong way: unstable " + num(spread_unstable) +
                           ", stable " + num(spread_stable)};
    return {true, "pass over 5 values; unstable shrank " + num(-spread_unstable) +
                      ", stable grew " + num(spread_stable)};
}

// Halving the integration tolerance must leave every census count in
// place and move no cycle radius by more than 1e-4 relative.
Verdict crit_numerical_hygiene() {
    struct Case {
        LienardSystem sys;
        cycles::CycleOptions opt;
    };
    std::vector<Case> cases(3);
    cases[0].sys = LienardSystem{1, 0, {0.1, 1.0, -1.0}, {}};
    cases[0].opt.r_max = 1.2;
    cases[1].sys = LienardSystem{2, 0, {-0.001, 1.0, 0.1, 1.0, -1.0}, {}};
    cases[1].opt.r_max = 1.0;
    cases[1].opt.n_samples = 96;
    cases[2].sys = odd_restoring_example();

    double worst = 0.0;
    for (const auto& c : cases) {
        const auto base = cycles::census(c.sys, c.opt);
        cycles::CycleOptions halved = c.opt;
        halved.flow_tol *= 0.5;
        const auto fine = cycles::census(c.sys, halved);
        if (totals(base) != totals(fine))
            return {false, "census counts changed under tolerance halving"};
        if (base.anchors.size() != fine.anchors.size())
            return {false, "anchor lists changed under tolerance halving"};
        for (std::size_t a = 0; a < base.anchors.size(); ++a) {
            const auto& cb = base.anchors[a].cycles;
            const auto& cf = fine.anchors[a].cycles;
            if (cb.size() != cf.size())
                return {false, "per-anchor counts changed under tolerance halving"};
            for (std::size_t i = 0; i < cb.size(); ++i) {
                const double rel =
                    std::abs(cb[i].r_star - cf[i].r_star) / std::max(cb[i].r_star, 1e-12);
                worst = std::max(worst, rel);
            }
        }
    }
    if (worst >= 1e-4)
        return {false, "radius shift " + num(worst) + " relative"};
    return {true, "max radius shift " + num(worst) + " relative, counts stable"};
}

struct Criterion {
    const char* name;
    double budget_seconds;
    Verdict (*fn)();
};

constexpr Criterion kCriteria[] = {
    {"delta-identities", 1.0, crit_delta_identities},
    {"index-ledger", 30.0, crit_index_ledger},
    {"alternation", 30.0, crit_alternation},
    {"center-symmetry", 60.0, crit_center_symmetry},
    {"hopf-amplitude", 60.0, crit_hopf_amplitude},
    {"uniqueness-k1", 600.0, crit_uniqueness_k1},
    {"construction", 900.0, crit_construction},
    {"rotation-monotonicity", 300.0, crit_rotation_monotonicity},
    {"numerical-hygiene", 0.0, crit_numerical_hygiene},
};

} // namespace

std::vector<std::string> criterion_names() {
    std::vector<std::string> names;
    for (const auto& c : kCriteria)
        names.emplace_back(c.name);
    return names;
}

std::vector<CriterionResult> run_suite(const std::string& name_filter, const Progress& on_done) {
    std::vector<CriterionResult> results;
    for (const auto& c : kCriteria) {
        if (!name_filter.empty() && std::string(c.name).find(name_filter) == std::string::npos)
            continue;
        CriterionResult r;
        r.name = c.name;
        r.budget_seconds = c.budget_seconds;
        const auto start = std::chrono::steady_clock::now();
        try {
            const Verdict v = c.fn();
            r.passed = v.first;
            r.detail = v.second;
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (r.budget_seconds > 0.0 && r.seconds >= r.budget_seconds) {
            r.passed = false;
            r.detail += " [over the " + num(r.budget_seconds) + " s budget]";
        }
        if (on_done)
            on_done(r);
        results.push_back(std::move(r));
    }
    return results;
}

std::string format_line(const CriterionResult& r) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s  %-22s  (%8.2f s)  ", r.passed ? "PASS" : "FAIL",
                  r.name.c_str(), r.seconds);
    return buf + r.detail;
}

} // namespace lienard::acceptance
