#include "lienard/singular.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

using namespace lienard;

namespace {

LienardSystem make(int k, int l, std::vector<double> alpha, std::vector<double> beta) {
    LienardSystem sys;
    sys.k = k;
    sys.l = l;
    sys.alpha = std::move(alpha);
    sys.beta = std::move(beta);
    sys.validate();
    return sys;
}

int finite_index_sum(const LienardSystem& sys) {
    int s = 0;
    for (const SingularPoint& p : find_finite_singularities(sys)) s += p.index;
    return s;
}

} // namespace

TEST_CASE("linear center: one center candidate with unit determinant") {
    const auto sys = make(0, 0, {0.0}, {});
    const auto pts = find_finite_singularities(sys);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].x == 0.0);
    CHECK(pts[0].jacobian_det == 1.0);
    CHECK(pts[0].jacobian_trace == 0.0);
    CHECK(pts[0].kind == PointKind::center_candidate);
    CHECK(pts[0].index == 1);
    CHECK(!pts[0].multiple);
    CHECK(poincare_index(sys, 0.0, 0.0, 1.0) == 1);
}

TEST_CASE("linear focus and node split on the discriminant") {
    const auto focus = find_finite_singularities(make(0, 0, {0.1}, {}));
    REQUIRE(focus.size() == 1);
    CHECK(focus[0].kind == PointKind::focus);

    const auto node = find_finite_singularities(make(0, 0, {3.0}, {}));
    REQUIRE(node.size() == 1);
    CHECK(node[0].kind == PointKind::node);
    CHECK(node[0].index == 1);
}

TEST_CASE("cubic restoring force: saddles at +-1 flank the origin") {
    const auto sys = make(0, 1, {0.1}, {0.0, -1.0}); // g = x - x^3
    const auto pts = find_finite_singularities(sys);
    REQUIRE(pts.size() == 3);

    CHECK(pts[0].x == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(pts[0].kind == PointKind::saddle);
    CHECK(pts[0].index == -1);
    CHECK(pts[0].jacobian_det == doctest::Approx(-2.0).epsilon(1e-12));

    CHECK(pts[1].x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(pts[1].kind == PointKind::focus);
    CHECK(pts[1].jacobian_det == 1.0);

    CHECK(pts[2].x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pts[2].kind == PointKind::saddle);

    CHECK(check_alternation(sys) == CheckResult::pass);
}

TEST_CASE("quadratic factor roots at (3 +- sqrt 5)/2 classify as saddle and focus") {
    const auto sys = make(1, 1, {0.1, 1.0, -1.0}, {-3.0, 1.0});
    const auto pts = find_finite_singularities(sys);
    REQUIRE(pts.size() == 3);

    CHECK(pts[0].x == 0.0);
    CHECK(pts[0].jacobian_det == 1.0);
    CHECK(pts[0].jacobian_trace == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(pts[0].kind == PointKind::focus);

    CHECK(pts[1].x == doctest::Approx(0.38196601125010515).epsilon(1e-12));
    CHECK(pts[1].jacobian_det == doctest::Approx(-0.8541019662496845).epsilon(1e-11));
    CHECK(pts[1].kind == PointKind::saddle);
    CHECK(pts[1].index == -1);

    CHECK(pts[2].x == doctest::Approx(2.618033988749895).epsilon(1e-12));
    CHECK(pts[2].jacobian_det == doctest::Approx(5.854101966249685).epsilon(1e-11));
    CHECK(pts[2].jacobian_trace == doctest::Approx(-4.1360679774997896).epsilon(1e-11));
    CHECK(pts[2].kind == PointKind::focus);
    CHECK(pts[2].index == 1);

    CHECK(check_alternation(sys) == CheckResult::pass);
    // Indices add over a contour enclosing all three points.
    CHECK(poincare_index(sys, 1.3, 0.0, 2.0, 8192) == 1);
}

TEST_CASE("big contour around x - x^3 system sums the three indices to -1") {
    const auto sys = make(0, 1, {0.1}, {0.0, -1.0});
    CHECK(poincare_index(sys, 0.0, 0.0, 3.0, 8192) == -1);
    CHECK(poincare_index(sys, -1.0, 0.0, 0.5, 4096) == -1);
    CHECK(poincare_index(sys, 1.0, 0.0, 0.5, 4096) == -1);
    CHECK(poincare_index(sys, 0.0, 0.0, 0.5, 4096) == 1);
}

TEST_CASE("double factor root merges into a saddle-node with contour index zero") {
    const auto sys = make(0, 1, {0.1}, {-2.0, 1.0}); // g = x (1 - x)^2
    const auto pts = find_finite_singularities(sys);
    REQUIRE(pts.size() == 2);

    CHECK(pts[0].x == 0.0);
    CHECK(pts[0].kind == PointKind::focus);

    CHECK(pts[1].x == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(pts[1].kind == PointKind::saddle_node);
    CHECK(pts[1].multiple);
    CHECK(pts[1].index == 0);

    CHECK(check_alternation(sys) == CheckResult::not_applicable);

    const auto rep = check_first_index_theorem(sys);
    CHECK(rep.verdict == LedgerVerdict::inconclusive);
    CHECK(rep.note.find("non-simple") != std::string::npos);
}

TEST_CASE("alternation verdicts on explicit kind sequences") {
    using K = PointKind;
    CHECK(alternation_of({K::focus}) == CheckResult::pass);
    CHECK(alternation_of({K::saddle, K::focus, K::saddle}) == CheckResult::pass);
    CHECK(alternation_of({K::node, K::saddle, K::center_candidate}) == CheckResult::pass);
    CHECK(alternation_of({K::focus, K::focus}) == CheckResult::fail);
    CHECK(alternation_of({K::saddle, K::saddle}) == CheckResult::fail);
    CHECK(alternation_of({K::focus, K::saddle_node}) == CheckResult::not_applicable);
    CHECK(alternation_of({K::degenerate}) == CheckResult::not_applicable);
}

TEST_CASE("winding index of synthetic fields matches the complex-power degree") {
    // (x^2 - y^2, 2xy) is the square of x + iy.
    BivariatePoly fx = BivariatePoly::term(2, 0, 1.0) + BivariatePoly::term(0, 2, -1.0);
    BivariatePoly fy = BivariatePoly::term(1, 1, 2.0);
    CHECK(winding_index(fx, fy, 0.0, 0.0, 1.0, 256) == 2);

    BivariatePoly cx = BivariatePoly::term(3, 0, 1.0) + BivariatePoly::term(1, 2, -3.0);
    BivariatePoly cy = BivariatePoly::term(2, 1, 3.0) + BivariatePoly::term(0, 3, -1.0);
    CHECK(winding_index(cx, cy, 0.0, 0.0, 1.0, 256) == 3);
}

TEST_CASE("winding guards: bad radius, contour through a zero, under-sampling") {
    const auto sys = make(0, 0, {0.0}, {});
    CHECK_THROWS_AS(poincare_index(sys, 0.0, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(poincare_index(sys, 0.5, 0.0, 0.5, 4096), std::domain_error);

    // Fifth complex power turns five times; 16 samples cannot track it.
    BivariatePoly fx = BivariatePoly::term(5, 0, 1.0) + BivariatePoly::term(3, 2, -10.0) +
                       BivariatePoly::term(1, 4, 5.0);
    BivariatePoly fy = BivariatePoly::term(4, 1, 5.0) + BivariatePoly::term(2, 3, -10.0) +
                       BivariatePoly::term(0, 5, 1.0);
    CHECK(winding_index(fx, fy, 0.0, 0.0, 1.0, 512) == 5);
    CHECK_THROWS_AS(winding_index(fx, fy, 0.0, 0.0, 1.0, 16), std::domain_error);
}

TEST_CASE("x-direction chart of the cubic-damping system, frozen by hand") {
    const auto sys = make(1, 0, {0.1, 1.0, -1.0}, {});
    const auto [du, dz] = infinity_chart(sys, InfiniteAxis::x_ends);

    BivariatePoly expected_du = BivariatePoly::term(0, 2, -1.0) +
                                BivariatePoly::term(1, 2, 0.1) +
                                BivariatePoly::term(1, 1, 1.0) +
                                BivariatePoly::term(1, 0, -1.0) +
                                BivariatePoly::term(2, 2, -1.0);
    CHECK(du == expected_du);
    CHECK(dz == BivariatePoly::term(1, 3, -1.0));

    const auto [dv, dw] = infinity_chart(sys, InfiniteAxis::y_ends);
    BivariatePoly expected_dv = BivariatePoly::term(0, 2, 1.0) +
                                BivariatePoly::term(2, 2, 1.0) +
                                BivariatePoly::term(1, 2, -0.1) +
                                BivariatePoly::term(2, 1, -1.0) +
                                BivariatePoly::term(3, 0, 1.0);
    CHECK(dv == expected_dv);
    BivariatePoly expected_dw = BivariatePoly::term(1, 3, 1.0) +
                                BivariatePoly::term(0, 3, -0.1) +
                                BivariatePoly::term(1, 2, -1.0) +
                                BivariatePoly::term(2, 1, 1.0);
    CHECK(dw == expected_dw);
}

TEST_CASE("chart-origin classification on synthetic linearizations") {
    const auto node = classify_chart_origin(BivariatePoly::term(1, 0, -1.0),
                                            BivariatePoly::term(0, 1, -2.0));
    CHECK(node.equilibrium);
    CHECK(node.kind == InfiniteKind::node);
    CHECK(node.eig1.real() == doctest::Approx(-2.0));
    CHECK(node.eig2.real() == doctest::Approx(-1.0));

    const auto saddle = classify_chart_origin(BivariatePoly::term(1, 0, 1.0),
                                              BivariatePoly::term(0, 1, -1.0));
    CHECK(saddle.kind == InfiniteKind::saddle);

    const auto rot = classify_chart_origin(BivariatePoly::term(0, 1, -1.0),
                                           BivariatePoly::term(1, 0, 1.0));
    CHECK(rot.kind == InfiniteKind::other);
    CHECK(rot.note.find("complex") != std::string::npos);
    CHECK(rot.eig2.imag() == doctest::Approx(1.0));

    const auto notequi = classify_chart_origin(
        BivariatePoly::term(0, 0, 1.0) + BivariatePoly::term(1, 0, -1.0),
        BivariatePoly::term(0, 1, -1.0));
    CHECK(!notequi.equilibrium);
    CHECK(notequi.kind == InfiniteKind::other);
}

TEST_CASE("equator points of the cubic-damping system are degenerate but indexed") {
    const auto sys = make(1, 0, {0.1, 1.0, -1.0}, {});
    const auto inf = classify_infinite(sys);
    REQUIRE(inf.size() == 2);

    CHECK(inf[0].axis == InfiniteAxis::x_ends);
    CHECK(inf[0].equilibrium);
    CHECK(inf[0].kind == InfiniteKind::other);
    CHECK(inf[0].eig1.real() == doctest::Approx(-1.0));
    CHECK(inf[0].eig2.real() == doctest::Approx(0.0));
    REQUIRE(inf[0].has_chart_index);
    CHECK(inf[0].chart_index == -1);

    CHECK(inf[1].axis == InfiniteAxis::y_ends);
    CHECK(inf[1].equilibrium);
    CHECK(inf[1].kind == InfiniteKind::other);
    CHECK(inf[1].note.find("singular") != std::string::npos);
    REQUIRE(inf[1].has_chart_index);
    CHECK(inf[1].chart_index == 1);
}

TEST_CASE("lower damping degree leaves no equilibrium at the x ends") {
    // deg g > deg damping term: the equator flow has no rest point in
    // the x direction, which is a conclusive (empty) classification.
    const auto sys = make(0, 1, {0.1}, {0.0, -1.0});
    const auto inf = classify_infinite(sys);
    CHECK(!inf[0].equilibrium);
    CHECK(inf[0].kind == InfiniteKind::other);
    REQUIRE(inf[0].has_chart_index);
    CHECK(inf[0].chart_index == 0);

    const auto canon = expand_canonical({1, 1, {0.1, -1.0}, {-3.0}, {1}});
    const auto inf2 = classify_infinite(canon);
    CHECK(!inf2[0].equilibrium); // equal degrees: x^{2l+1} survives in the chart
    CHECK(inf2[1].equilibrium);
    CHECK(inf2[1].kind == InfiniteKind::other);
}

TEST_CASE("sphere index bookkeeping: equator pair indices balance the plane sum") {
    // Twice the finite sum plus twice each equator pair index must give
    // the Euler characteristic 2 of the sphere.  When the damping and
    // restoring degrees differ, the axis ends are the only equator
    // candidates, so the pair indices close the books on their own.
    const std::vector<LienardSystem> cases = {
        make(1, 0, {0.1, 1.0, -1.0}, {}),
        make(0, 1, {0.1}, {0.0, -1.0}),
        make(2, 0, {-0.5, 1.0, 0.3, 1.0, -0.2}, {}),
        make(2, 1, {0.1, 1.0, -0.3, 1.0, -0.7}, {-3.0, 1.0}),
    };
    for (const auto& sys : cases) {
        const auto inf = classify_infinite(sys);
        REQUIRE(inf.size() == 2);
        if (!inf[0].has_chart_index || !inf[1].has_chart_index) continue;
        const int sum = finite_index_sum(sys) + inf[0].chart_index + inf[1].chart_index;
        CHECK(sum == 1);
    }
}

TEST_CASE("equal degrees add an off-axis equator pair that closes the books") {
    // With k == l the top-degree chart slice -beta_2l + alpha_2k u has
    // a nonzero root: an equator equilibrium off both axes.
    const auto sys = make(1, 1, {0.1, 1.0, -1.0}, {-3.0, 1.0});
    const auto inf = classify_infinite(sys);
    REQUIRE(inf[0].has_chart_index);
    REQUIRE(inf[1].has_chart_index);
    CHECK(!inf[0].equilibrium);
    CHECK(inf[0].chart_index == 0);

    const auto [du, dz] = infinity_chart(sys, InfiniteAxis::x_ends);
    const int off_axis = winding_index(du, dz, -1.0, 0.0, 0.1, 4096, true);
    CHECK(off_axis == -1);

    const int sum =
        finite_index_sum(sys) + inf[0].chart_index + inf[1].chart_index + off_axis;
    CHECK(sum == 1);

    const auto rep = check_first_index_theorem(sys);
    CHECK(rep.verdict == LedgerVerdict::inconclusive);
    CHECK(rep.note.find("away from the coordinate axes") != std::string::npos);
}

TEST_CASE("index ledger closes for linear members and stays open for cubic ones") {
    const auto lin = check_first_index_theorem(make(0, 0, {0.1}, {}));
    CHECK(lin.verdict == LedgerVerdict::pass);
    CHECK(lin.ledger.N_f == 1);
    CHECK(lin.ledger.balanced());

    const auto lin_center = check_first_index_theorem(make(0, 0, {0.0}, {}));
    CHECK(lin_center.verdict == LedgerVerdict::pass);
    CHECK(lin_center.ledger.N_c == 1);

    const auto cubic = check_first_index_theorem(make(0, 1, {0.1}, {0.0, -1.0}));
    CHECK(cubic.verdict == LedgerVerdict::inconclusive);
    CHECK(cubic.ledger.N_f == 1);
    CHECK(cubic.ledger.C == 2);
    CHECK(!cubic.ledger.balanced()); // needs two more positive points at infinity
    CHECK(cubic.note.find("equator") != std::string::npos);
}

TEST_CASE("seeded systems: root residuals stay below the contract bound") {
    std::mt19937_64 rng(20240819ull);
    std::uniform_real_distribution<double> ab(-2.0, 2.0);
    std::uniform_int_distribution<int> kd(0, 2), ld(1, 2);

    for (int trial = 0; trial < 50; ++trial) {
        const int k = kd(rng), l = ld(rng);
        std::vector<double> alpha(2 * k + 1), beta(2 * l);
        for (double& a : alpha) a = 0.5 * ab(rng);
        for (double& b : beta) b = ab(rng);
        const auto sys = make(k, l, alpha, beta);
        const auto g = sys.restoring();

        bool origin_seen = false;
        for (const auto& p : find_finite_singularities(sys)) {
            CHECK(std::abs(g.eval(p.x)) <
                  1e-10 * (1.0 + std::pow(std::abs(p.x), 2 * l + 1)));
            if (p.x == 0.0) {
                origin_seen = true;
                CHECK(p.jacobian_det == 1.0);
            }
        }
        CHECK(origin_seen);
    }
}

TEST_CASE("seeded simple-root systems always alternate along the axis") {
    std::mt19937_64 rng(424242ull);
    std::uniform_real_distribution<double> bdist(-3.0, 3.0), adist(-1.0, 1.0);
    std::uniform_int_distribution<int> kd(0, 2), ld(0, 2), sign(0, 1);

    int checked = 0;
    while (checked < 30) {
        CanonicalSystem c;
        c.k = kd(rng);
        c.l = ld(rng);
        c.alpha_even.resize(c.k + 1);
        for (double& a : c.alpha_even) a = adist(rng);
        c.beta_odd.resize(c.l);
        for (double& b : c.beta_odd) b = bdist(rng);
        c.even_signs.resize(c.l);
        for (int& s : c.even_signs) s = sign(rng) ? 1 : -1;

        const auto sys = expand_canonical(c);
        const auto pts = find_finite_singularities(sys);
        bool simple = true;
        for (const auto& p : pts)
            if (p.multiple || p.kind == PointKind::degenerate) simple = false;
        if (!simple) continue;
        ++checked;
        CHECK(check_alternation(sys) == CheckResult::pass);
    }
}

TEST_CASE("name helpers spell the report vocabulary") {
    CHECK(std::string(kind_name(PointKind::center_candidate)) == "center-candidate");
    CHECK(std::string(kind_name(PointKind::saddle_node)) == "saddle-node");
    CHECK(std::string(check_name(CheckResult::not_applicable)) == "n/a");
    CHECK(std::string(axis_name(InfiniteAxis::y_ends)) == "y-ends");
    CHECK(std::string(infinite_kind_name(InfiniteKind::other)) == "other");
    CHECK(std::string(verdict_name(LedgerVerdict::inconclusive)) == "inconclusive");
    CHECK(is_anti_saddle(PointKind::node));
    CHECK(is_anti_saddle(PointKind::center_candidate));
    CHECK(!is_anti_saddle(PointKind::saddle));
    CHECK(!is_anti_saddle(PointKind::saddle_node));
}
