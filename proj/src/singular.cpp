#include "lienard/singular.hpp"

#include "lienard/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace lienard::singular {

namespace {

constexpr double kMergeTol = 1e-7;  // root separation below this is one point
constexpr double kTraceTol = 1e-10; // |trace| below this is a center candidate
constexpr double kDetTol = 1e-12;   // |det| below this is degenerate

// Branch-tracked angle change along one circle arc.  In adaptive mode
// an unresolvable increment is bisected (the field is continuous and
// nonzero on the contour, so the swing flattens out at some depth);
// otherwise the contract is strict and the caller must supply enough
// samples.
template <typename Field>
double arc_increment(Field& field, double cx, double cy, double radius, double th_a,
                     double ang_a, double th_b, double ang_b, int depth) {
    const double d = std::remainder(ang_b - ang_a, 2.0 * std::numbers::pi);
    if (std::abs(d) <= 0.5 * std::numbers::pi) return d;
    if (depth <= 0) throw std::domain_error("winding: contour under-sampled");
    const double th_m = 0.5 * (th_a + th_b);
    const auto [fx, fy] = field(cx + radius * std::cos(th_m), cy + radius * std::sin(th_m));
    if (fx == 0.0 && fy == 0.0)
        throw std::domain_error("winding: field underflows on the contour");
    const double ang_m = std::atan2(fy, fx);
    return arc_increment(field, cx, cy, radius, th_a, ang_a, th_m, ang_m, depth - 1) +
           arc_increment(field, cx, cy, radius, th_m, ang_m, th_b, ang_b, depth - 1);
}

// Winding of a generic callable field along a circle; shared by the
// public entry points and the chart diagnostics.
template <typename Field>
int winding_of(Field&& field, double cx, double cy, double radius, int samples,
               bool adaptive) {
    if (!(radius > 0.0)) throw std::invalid_argument("winding: radius must be positive");
    if (samples < 16) throw std::invalid_argument("winding: too few samples");

    std::vector<double> angle(static_cast<std::size_t>(samples));
    double max_mag = 0.0;
    double min_mag = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        const double th = 2.0 * std::numbers::pi * i / samples;
        const auto [fx, fy] = field(cx + radius * std::cos(th), cy + radius * std::sin(th));
        const double mag = std::hypot(fx, fy);
        max_mag = std::max(max_mag, mag);
        min_mag = std::min(min_mag, mag);
        angle[static_cast<std::size_t>(i)] = std::atan2(fy, fx);
    }
    if (!(min_mag > 1e-13 * (1.0 + max_mag)))
        throw std::domain_error("winding: field underflows on the contour");

    double total = 0.0;
    for (int i = 1; i <= samples; ++i) {
        const double th_a = 2.0 * std::numbers::pi * (i - 1) / samples;
        const double th_b = 2.0 * std::numbers::pi * i / samples;
        const double ang_a = angle[static_cast<std::size_t>(i - 1)];
        const double ang_b = angle[static_cast<std::size_t>(i % samples)];
        if (adaptive) {
            total += arc_increment(field, cx, cy, radius, th_a, ang_a, th_b, ang_b, 48);
        } else {
            const double d = std::remainder(ang_b - ang_a, 2.0 * std::numbers::pi);
            if (std::abs(d) > 0.5 * std::numbers::pi)
                throw std::domain_error("winding: contour under-sampled");
            total += d;
        }
    }
    const double turns = total / (2.0 * std::numbers::pi);
    const long idx = std::lround(turns);
    if (std::abs(turns - static_cast<double>(idx)) >= 0.25)
        throw std::domain_error("winding: accumulated angle is not near an integer turn");
    return static_cast<int>(idx);
}

// Contour index for merged clusters: adaptive tracking, with
// shrinking-radius retries in case the contour grazes another zero.
int contour_index(const LienardSystem& sys, double x, double radius) {
    auto field = [&sys](double px, double py) { return sys.vector_field(px, py); };
    double r = radius;
    for (int attempt = 0; attempt < 5; ++attempt) {
        try {
            return winding_of(field, x, 0.0, r, 4096, true);
        } catch (const std::domain_error&) {
            r *= 0.5;
        }
    }
    return 0;
}

} // namespace

const char* kind_name(PointKind k) {
    switch (k) {
    case PointKind::saddle: return "saddle";
    case PointKind::node: return "node";
    case PointKind::focus: return "focus";
    case PointKind::center_candidate: return "center-candidate";
    case PointKind::saddle_node: return "saddle-node";
    case PointKind::degenerate: return "degenerate";
    }
    return "?";
}

bool is_anti_saddle(PointKind k) {
    return k == PointKind::node || k == PointKind::focus || k == PointKind::center_candidate;
}

std::vector<SingularPoint> find_finite_singularities(const LienardSystem& sys) {
    sys.validate();

    std::vector<double> roots{0.0};
    if (sys.l > 0) {
        std::vector<double> fc(sys.beta.size() + 1, 0.0);
        fc[0] = 1.0;
        std::copy(sys.beta.begin(), sys.beta.end(), fc.begin() + 1);
        const Polynomial factor(fc);
        if (factor.degree() >= 1)
            for (double r : real_roots(factor)) roots.push_back(r);
    }
    std::sort(roots.begin(), roots.end());

    // Merge chains of roots separated by less than the merge tolerance.
    struct Cluster {
        double x = 0.0;
        int count = 0;
    };
    std::vector<Cluster> clusters;
    for (std::size_t i = 0; i < roots.size();) {
        std::size_t j = i + 1;
        while (j < roots.size() && roots[j] - roots[j - 1] < kMergeTol) ++j;
        double mean = 0.0;
        for (std::size_t m = i; m < j; ++m) mean += roots[m];
        mean /= static_cast<double>(j - i);
        clusters.push_back({mean, static_cast<int>(j - i)});
        i = j;
    }

    const Polynomial h = sys.damping();
    const Polynomial gp = sys.restoring().derivative();

    std::vector<SingularPoint> out;
    out.reserve(clusters.size());
    for (const Cluster& c : clusters) {
        SingularPoint p;
        p.x = c.x;
        p.jacobian_trace = h.eval(c.x);
        p.jacobian_det = gp.eval(c.x);
        p.multiple = c.count > 1;
        if (c.count > 1) {
            p.kind = PointKind::saddle_node;
        } else if (p.jacobian_det < -kDetTol) {
            p.kind = PointKind::saddle;
            p.index = -1;
        } else if (p.jacobian_det > kDetTol) {
            p.kind = std::abs(p.jacobian_trace) < kTraceTol ? PointKind::center_candidate
                     : p.jacobian_trace * p.jacobian_trace >= 4.0 * p.jacobian_det
                         ? PointKind::node
                         : PointKind::focus;
            p.index = 1;
        } else {
            p.kind = PointKind::degenerate;
        }
        out.push_back(p);
    }

    // Non-simple points get their index from a small contour whose
    // radius keeps every other singularity outside.
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].kind != PointKind::saddle_node && out[i].kind != PointKind::degenerate)
            continue;
        double gap = std::numeric_limits<double>::infinity();
        if (i > 0) gap = std::min(gap, out[i].x - out[i - 1].x);
        if (i + 1 < out.size()) gap = std::min(gap, out[i + 1].x - out[i].x);
        const double radius = std::isfinite(gap) ? 0.5 * gap : 0.25;
        out[i].index = contour_index(sys, out[i].x, radius);
    }
    return out;
}

int poincare_index(const LienardSystem& sys, double cx, double cy, double radius,
                   int samples) {
    return winding_of([&sys](double x, double y) { return sys.vector_field(x, y); }, cx, cy,
                      radius, samples, false);
}

int winding_index(const BivariatePoly& fx, const BivariatePoly& fy, double cx, double cy,
                  double radius, int samples, bool adaptive) {
    return winding_of(
        [&fx, &fy](double x, double y) { return std::pair{fx.eval(x, y), fy.eval(x, y)}; },
        cx, cy, radius, samples, adaptive);
}

const char* check_name(CheckResult r) {
    switch (r) {
    case CheckResult::pass: return "pass";
    case CheckResult::fail: return "fail";
    case CheckResult::not_applicable: return "n/a";
    }
    return "?";
}

CheckResult alternation_of(const std::vector<PointKind>& kinds) {
    for (PointKind k : kinds)
        if (k == PointKind::saddle_node || k == PointKind::degenerate)
            return CheckResult::not_applicable;
    for (std::size_t i = 1; i < kinds.size(); ++i)
        if ((kinds[i] == PointKind::saddle) == (kinds[i - 1] == PointKind::saddle))
            return CheckResult::fail;
    return CheckResult::pass;
}

CheckResult check_alternation(const LienardSystem& sys) {
    std::vector<PointKind> kinds;
    for (const SingularPoint& p : find_finite_singularities(sys)) kinds.push_back(p.kind);
    return alternation_of(kinds);
}

const char* axis_name(InfiniteAxis a) {
    return a == InfiniteAxis::x_ends ? "x-ends" : "y-ends";
}

const char* infinite_kind_name(InfiniteKind k) {
    switch (k) {
    case InfiniteKind::node: return "node";
    case InfiniteKind::saddle: return "saddle";
    case InfiniteKind::other: return "other";
    }
    return "?";
}

namespace {

// Substitute (x, y) = (1/z, u/z) [x chart] or (v/w, 1/w) [y chart] into
// a polynomial and clear denominators with the d-th power of the new
// second coordinate: term x^i y^j picks up exponent d - i - j on it.
BivariatePoly chart_transform(const BivariatePoly& f, int d, bool x_chart) {
    BivariatePoly out;
    for (const auto& [key, c] : f.terms()) {
        const auto [i, j] = key;
        out.add_term(x_chart ? j : i, d - i - j, c);
    }
    return out;
}

int min_second_degree(const BivariatePoly& f) {
    int m = std::numeric_limits<int>::max();
    for (const auto& kv : f.terms()) m = std::min(m, kv.first.second);
    return m;
}

BivariatePoly shift_second_degree(const BivariatePoly& f, int s) {
    if (s == 0) return f;
    BivariatePoly out;
    for (const auto& [key, c] : f.terms()) out.add_term(key.first, key.second - s, c);
    return out;
}

} // namespace

std::pair<BivariatePoly, BivariatePoly> infinity_chart(const LienardSystem& sys,
                                                       InfiniteAxis axis) {
    const auto [P, Q] = field_polynomials(sys);
    int d = 1;
    for (const auto& kv : P.terms()) d = std::max(d, kv.first.first + kv.first.second);
    for (const auto& kv : Q.terms()) d = std::max(d, kv.first.first + kv.first.second);

    const bool x_chart = axis == InfiniteAxis::x_ends;
    const BivariatePoly cp = chart_transform(P, d, x_chart);
    const BivariatePoly cq = chart_transform(Q, d, x_chart);
    const BivariatePoly first = BivariatePoly::term(1, 0, 1.0);  // u or v
    const BivariatePoly second = BivariatePoly::term(0, 1, 1.0); // z or w

    BivariatePoly da, db;
    if (x_chart) {
        da = cq - first * cp;       // u' = z^d (Q - u P)
        db = second * cp * (-1.0);  // z' = -z^{d+1} P
    } else {
        da = cp - first * cq;       // v' = w^d (P - v Q)
        db = second * cq * (-1.0);  // w' = -w^{d+1} Q
    }

    int s = std::numeric_limits<int>::max();
    if (!da.is_zero()) s = std::min(s, min_second_degree(da));
    if (!db.is_zero()) s = std::min(s, min_second_degree(db));
    if (s == std::numeric_limits<int>::max()) s = 0;
    return {shift_second_degree(da, s), shift_second_degree(db, s)};
}

InfinitePoint classify_chart_origin(const BivariatePoly& du, const BivariatePoly& dv) {
    InfinitePoint p;

    double scale = 0.0;
    for (const auto& kv : du.terms()) scale = std::max(scale, std::abs(kv.second));
    for (const auto& kv : dv.terms()) scale = std::max(scale, std::abs(kv.second));
    const double zero_tol = 1e-14 * (1.0 + scale);

    if (std::abs(du.coeff(0, 0)) > zero_tol || std::abs(dv.coeff(0, 0)) > zero_tol) {
        p.kind = InfiniteKind::other;
        p.equilibrium = false;
        p.note = "not an equilibrium of the chart field";
        return p;
    }
    p.equilibrium = true;

    const double a = du.coeff(1, 0);
    const double b = du.coeff(0, 1);
    const double c = dv.coeff(1, 0);
    const double d = dv.coeff(0, 1);
    const double tr = a + d;
    const double det = a * d - b * c;
    const double m = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
    const double det_tol = 1e-9 * (1.0 + m * m);

    const double disc = tr * tr - 4.0 * det;
    if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        p.eig1 = {0.5 * (tr - root), 0.0};
        p.eig2 = {0.5 * (tr + root), 0.0};
    } else {
        const double root = std::sqrt(-disc);
        p.eig1 = {0.5 * tr, -0.5 * root};
        p.eig2 = {0.5 * tr, 0.5 * root};
    }

    if (det < -det_tol) {
        p.kind = InfiniteKind::saddle;
    } else if (det > det_tol && disc >= 0.0) {
        p.kind = InfiniteKind::node;
    } else if (det > det_tol) {
        p.kind = InfiniteKind::other;
        p.note = "complex linearization eigenvalues";
    } else {
        p.kind = InfiniteKind::other;
        p.note = "singular chart linearization";
    }
    return p;
}

std::vector<InfinitePoint> classify_infinite(const LienardSystem& sys) {
    // Keep the diagnostic contour small enough that no finite singular
    // point (at chart ordinate 1/x) can fall inside it.
    double far = 1.0;
    for (const SingularPoint& p : find_finite_singularities(sys))
        far = std::max(far, std::abs(p.x));
    const double radius = std::min(1e-2, 0.5 / far);

    std::vector<InfinitePoint> out;
    for (InfiniteAxis axis : {InfiniteAxis::x_ends, InfiniteAxis::y_ends}) {
        const auto [da, db] = infinity_chart(sys, axis);
        InfinitePoint p = classify_chart_origin(da, db);
        p.axis = axis;
        auto field = [&da, &db](double x, double y) {
            return std::pair{da.eval(x, y), db.eval(x, y)};
        };
        try {
            p.chart_index = winding_of(field, 0.0, 0.0, radius, 4096, true);
            p.has_chart_index = true;
        } catch (const std::domain_error&) {
            p.has_chart_index = false;
            if (!p.note.empty()) p.note += "; ";
            p.note += "chart winding not measurable";
        }
        out.push_back(std::move(p));
    }
    return out;
}

const char* verdict_name(LedgerVerdict v) {
    switch (v) {
    case LedgerVerdict::pass: return "pass";
    case LedgerVerdict::fail: return "fail";
    case LedgerVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

// Equator equilibria away from both axes show up as nonzero roots of
// the z^0 slice of the x-direction chart; they are outside the
// axis-ends bookkeeping, so their presence must poison the verdict.
bool has_off_axis_equator_points(const LienardSystem& sys) {
    const auto [du, dz] = infinity_chart(sys, InfiniteAxis::x_ends);
    std::vector<double> slice;
    for (const auto& [key, c] : du.terms()) {
        if (key.second != 0) continue;
        if (static_cast<std::size_t>(key.first) >= slice.size())
            slice.resize(static_cast<std::size_t>(key.first) + 1, 0.0);
        slice[static_cast<std::size_t>(key.first)] = c;
    }
    const Polynomial p(slice);
    if (p.is_zero() || p.degree() < 1) return false;
    for (double r : real_roots(p))
        if (std::abs(r) > 1e-9) return true;
    return false;
}

IndexTheoremReport check_first_index_theorem(const LienardSystem& sys) {
    IndexTheoremReport rep;

    bool conclusive = true;
    for (const SingularPoint& p : find_finite_singularities(sys)) {
        switch (p.kind) {
        case PointKind::node: ++rep.ledger.N; break;
        case PointKind::focus: ++rep.ledger.N_f; break;
        case PointKind::center_candidate: ++rep.ledger.N_c; break;
        case PointKind::saddle: ++rep.ledger.C; break;
        case PointKind::saddle_node:
        case PointKind::degenerate:
            conclusive = false;
            rep.note = "non-simple finite point";
            break;
        }
    }

    for (const InfinitePoint& p : classify_infinite(sys)) {
        if (!p.equilibrium) continue; // conclusively no equator point there
        switch (p.kind) {
        case InfiniteKind::node: ++rep.ledger.N_prime; break;
        case InfiniteKind::saddle: ++rep.ledger.C_prime; break;
        case InfiniteKind::other:
            conclusive = false;
            if (!rep.note.empty()) rep.note += "; ";
            rep.note += std::string("unresolved equator point (") + axis_name(p.axis) + ")";
            break;
        }
    }

    if (has_off_axis_equator_points(sys)) {
        conclusive = false;
        if (!rep.note.empty()) rep.note += "; ";
        rep.note += "equator equilibria away from the coordinate axes";
    }

    rep.verdict = !conclusive             ? LedgerVerdict::inconclusive
                  : rep.ledger.balanced() ? LedgerVerdict::pass
                                          : LedgerVerdict::fail;
    return rep;
}

} // namespace lienard::singular
