#pragma once

#include "lienard/system.hpp"

#include <complex>
#include <string>
#include <vector>

namespace lienard::singular {

enum class PointKind {
    saddle,
    node,
    focus,
    center_candidate,
    saddle_node,
    degenerate,
};

const char* kind_name(PointKind k);

/// True for every kind of index +1 (node, focus, center candidate).
bool is_anti_saddle(PointKind k);

/**
 * Finite singular point of the system.  All finite singularities lie
 * on the x-axis, so only the abscissa is stored.  For a simple point
 * the index follows the Jacobian (saddle -1, anti-saddle +1); for a
 * merged root cluster (kind saddle_node or degenerate) the index is
 * measured by a winding contour instead, never from the Jacobian.
 */
struct SingularPoint {
    double x = 0.0;
    double jacobian_trace = 0.0;
    double jacobian_det = 0.0;
    PointKind kind = PointKind::degenerate;
    int index = 0;
    bool multiple = false; // merged from nearly coincident roots
};

/**
 * Roots of g sorted ascending, classified from the on-axis Jacobian
 * {trace, det} = {h(x*), g'(x*)}.  Roots closer than 1e-7 are merged
 * into a single flagged point.  At most 2l+1 points; the origin is
 * always among them with det exactly 1.
 */
std::vector<SingularPoint> find_finite_singularities(const LienardSystem& sys);

/**
 * Winding number of the field along the circle of given radius around
 * (cx, cy), from branch-tracked angle increments at `samples` points.
 *
 * Throws std::domain_error when a consecutive increment exceeds pi/2
 * (under-sampled contour), when the field magnitude on the contour
 * underflows (singular point on or too close to the contour), or when
 * the accumulated angle is farther than 0.25 turns from an integer.
 */
int poincare_index(const LienardSystem& sys, double cx, double cy, double radius,
                   int samples = 4096);

/// Same contour winding for an arbitrary polynomial field.  In
/// adaptive mode an over-steep increment is bisected instead of
/// refused, which resolves contours that graze semi-degenerate zeros.
int winding_index(const BivariatePoly& fx, const BivariatePoly& fy, double cx,
                  double cy, double radius, int samples = 4096, bool adaptive = false);

enum class CheckResult { pass, fail, not_applicable };

const char* check_name(CheckResult r);

/// Alternation of kinds along the x-axis (exposed for negative controls).
CheckResult alternation_of(const std::vector<PointKind>& kinds);

/**
 * Saddles and anti-saddles must alternate along the x-axis when all
 * finite points are simple; not_applicable when a merged or degenerate
 * root is present.
 */
CheckResult check_alternation(const LienardSystem& sys);

enum class InfiniteAxis { x_ends, y_ends };

enum class InfiniteKind { node, saddle, other };

const char* axis_name(InfiniteAxis a);
const char* infinite_kind_name(InfiniteKind k);

/**
 * Chart vector field near one equator point: the x-direction chart
 * (u, z) = (y/x, 1/x) or the y-direction chart (v, w) = (x/y, 1/y),
 * with denominators cleared by z^d (resp. w^d) for d the total degree
 * of the field, and any common z (resp. w) power removed.  Components
 * are returned in chart coordinates; the equator point of interest is
 * the chart origin.
 */
std::pair<BivariatePoly, BivariatePoly> infinity_chart(const LienardSystem& sys,
                                                       InfiniteAxis axis);

/**
 * Equator point of one compactification chart.  kind is decided by the
 * chart linearization at (0,0) alone; whenever that matrix is singular
 * (or the point is not an equilibrium of the chart field) the kind is
 * `other` and the eigen-data plus note record why.  A numerically
 * measured chart winding index is attached as an extra diagnostic when
 * it can be computed.
 */
struct InfinitePoint {
    InfiniteAxis axis = InfiniteAxis::x_ends;
    InfiniteKind kind = InfiniteKind::other;
    bool equilibrium = false;
    std::complex<double> eig1{0.0, 0.0};
    std::complex<double> eig2{0.0, 0.0};
    bool has_chart_index = false;
    int chart_index = 0;
    std::string note;
};

/// Linearization verdict at the chart origin (axis and diagnostics unfilled).
InfinitePoint classify_chart_origin(const BivariatePoly& du, const BivariatePoly& dv);

/// Classifies both axis-end equator points; element 0 is x_ends, 1 is y_ends.
std::vector<InfinitePoint> classify_infinite(const LienardSystem& sys);

struct IndexLedger {
    int N = 0;       // finite nodes
    int N_f = 0;     // finite foci
    int N_c = 0;     // finite centers (center candidates)
    int C = 0;       // finite saddles
    int N_prime = 0; // conclusive nodes at infinity (antipodal pairs)
    int C_prime = 0; // conclusive saddles at infinity

    bool balanced() const { return N + N_f + N_c + N_prime == C + C_prime + 1; }
};

enum class LedgerVerdict { pass, fail, inconclusive };

const char* verdict_name(LedgerVerdict v);

struct IndexTheoremReport {
    IndexLedger ledger;
    LedgerVerdict verdict = LedgerVerdict::inconclusive;
    std::string note;
};

/**
 * Fills the ledger from classified finite and infinite points and
 * evaluates the balance N + N_f + N_c + N' = C + C' + 1.  The verdict
 * is inconclusive when any finite point is non-simple or any equator
 * equilibrium came back `other`; an equator point that is not an
 * equilibrium at all is a conclusive (empty) answer.
 */
IndexTheoremReport check_first_index_theorem(const LienardSystem& sys);

} // namespace lienard::singular

namespace lienard {
using singular::CheckResult;
using singular::IndexLedger;
using singular::IndexTheoremReport;
using singular::InfiniteAxis;
using singular::InfiniteKind;
using singular::InfinitePoint;
using singular::LedgerVerdict;
using singular::PointKind;
using singular::SingularPoint;
using singular::alternation_of;
using singular::axis_name;
using singular::check_alternation;
using singular::check_first_index_theorem;
using singular::check_name;
using singular::classify_chart_origin;
using singular::classify_infinite;
using singular::find_finite_singularities;
using singular::infinite_kind_name;
using singular::infinity_chart;
using singular::is_anti_saddle;
using singular::kind_name;
using singular::poincare_index;
using singular::verdict_name;
using singular::winding_index;
} // namespace lienard
