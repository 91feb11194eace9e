#include "lienard/rotate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace lienard::rotate {

namespace {

using polysys::ParamSlot;

// Nearest singular point to x, re-located from scratch; the restoring
// polynomial alone decides the point set, so damping sweeps never move it.
singular::SingularPoint locate_anchor(const LienardSystem& sys, double x) {
    const auto pts = singular::find_finite_singularities(sys);
    const singular::SingularPoint* best = &pts.front();
    for (const auto& p : pts) {
        if (std::abs(p.x - x) < std::abs(best->x - x)) best = &p;
    }
    return *best;
}

double anchor_trace(const LienardSystem& tmpl, const ParamSlot& slot, double value,
                    double anchor_x) {
    LienardSystem sys = tmpl;
    set_slot(sys, slot, value);
    return locate_anchor(sys, anchor_x).jacobian_trace;
}

std::vector<int> census_counts(const cycles::CycleCensus& c) {
    std::vector<int> out;
    out.reserve(c.anchors.size());
    for (const auto& a : c.anchors) out.push_back(static_cast<int>(a.cycles.size()));
    return out;
}

// Cycles of one anchor on the richer side with no radius match (relative
// gate 0.3, any stability) on the poorer side; these are the ones the
// event consumed or produced.
std::vector<double> unmatched_radii(const std::vector<cycles::LimitCycle>& rich,
                                    const std::vector<cycles::LimitCycle>& poor) {
    std::vector<double> out;
    for (const auto& c : rich) {
        bool matched = false;
        for (const auto& p : poor) {
            if (std::abs(c.r_star - p.r_star) <= 0.3 * std::max(c.r_star, p.r_star)) {
                matched = true;
                break;
            }
        }
        if (!matched) out.push_back(c.r_star);
    }
    return out;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

} // namespace

std::string slot_name(const ParamSlot& slot) {
    return (slot.kind == ParamSlot::alpha ? "a" : "b") + std::to_string(slot.index);
}

ParamSlot parse_slot(const std::string& name) {
    if (name.size() < 2 || name.size() > 10 || (name[0] != 'a' && name[0] != 'b'))
        throw std::invalid_argument("rotate: slot name must look like a0, a2, or b1");
    long idx = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
        if (name[i] < '0' || name[i] > '9')
            throw std::invalid_argument("rotate: slot name must look like a0, a2, or b1");
        idx = idx * 10 + (name[i] - '0');
    }
    ParamSlot slot;
    slot.kind = name[0] == 'a' ? ParamSlot::alpha : ParamSlot::beta;
    slot.index = static_cast<int>(idx);
    if (slot.kind == ParamSlot::beta && slot.index < 1)
        throw std::invalid_argument("rotate: restoring slots are numbered from b1");
    return slot;
}

double get_slot(const LienardSystem& sys, const ParamSlot& slot) {
    if (slot.kind == ParamSlot::alpha) {
        if (slot.index < 0 || slot.index >= static_cast<int>(sys.alpha.size()))
            throw std::invalid_argument("rotate: damping slot out of range");
        return sys.alpha[static_cast<std::size_t>(slot.index)];
    }
    if (slot.index < 1 || slot.index > static_cast<int>(sys.beta.size()))
        throw std::invalid_argument("rotate: restoring slot out of range");
    return sys.beta[static_cast<std::size_t>(slot.index - 1)];
}

void set_slot(LienardSystem& sys, const ParamSlot& slot, double value) {
    if (slot.kind == ParamSlot::alpha) {
        if (slot.index < 0 || slot.index >= static_cast<int>(sys.alpha.size()))
            throw std::invalid_argument("rotate: damping slot out of range");
        sys.alpha[static_cast<std::size_t>(slot.index)] = value;
        return;
    }
    if (slot.index < 1 || slot.index > static_cast<int>(sys.beta.size()))
        throw std::invalid_argument("rotate: restoring slot out of range");
    sys.beta[static_cast<std::size_t>(slot.index - 1)] = value;
}

const char* event_kind_name(EventKind k) {
    switch (k) {
    case EventKind::hopf: return "hopf";
    case EventKind::fold: return "fold";
    case EventKind::escape_to_separatrix: return "escape-to-separatrix";
    }
    return "?";
}

std::vector<BifurcationEvent> hopf_scan(const LienardSystem& tmpl, const ParamSlot& slot,
                                        double lo, double hi, double anchor_x) {
    tmpl.validate();
    get_slot(tmpl, slot); // existence check
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo == hi)
        throw std::invalid_argument("rotate: scan range must be a nondegenerate interval");
    if (lo > hi) std::swap(lo, hi);

    constexpr int kGridPoints = 400;
    std::vector<BifurcationEvent> events;

    auto emit = [&](double value) {
        LienardSystem sys = tmpl;
        set_slot(sys, slot, value);
        const auto pt = locate_anchor(sys, anchor_x);
        if (pt.jacobian_det <= 0.0) return; // trace zero at a saddle is not a birth
        BifurcationEvent ev;
        ev.kind = EventKind::hopf;
        ev.slot = slot;
        ev.param_value = value;
        ev.anchor = pt;
        ev.detail = std::abs(pt.jacobian_trace);
        events.push_back(ev);
    };

    double track_x = anchor_x;
    double prev_v = lo;
    double prev_t = 0.0;
    for (int i = 0; i <= kGridPoints; ++i) {
        const double v = lo + (hi - lo) * i / kGridPoints;
        LienardSystem sys = tmpl;
        set_slot(sys, slot, v);
        const auto pt = locate_anchor(sys, track_x);
        track_x = pt.x;
        const double t = pt.jacobian_trace;

        if (t == 0.0) {
            emit(v);
        } else if (i > 0 && prev_t != 0.0 && prev_t * t < 0.0) {
            // Bracket to 1e-8, then polish by regula falsi; for damping
            // slots the trace is affine in the parameter, so the first
            // falsi step is already exact.
            double a = prev_v, b = v, ta = prev_t, tb = t;
            while (b - a > 1e-8) {
                const double m = 0.5 * (a + b);
                const double tm = anchor_trace(tmpl, slot, m, track_x);
                if (tm == 0.0) {
                    a = b = m;
                    ta = tb = 0.0;
                    break;
                }
                if (ta * tm < 0.0) {
                    b = m;
                    tb = tm;
                } else {
                    a = m;
                    ta = tm;
                }
            }
            double root = 0.5 * (a + b);
            for (int it = 0; it < 40 && ta != tb; ++it) {
                const double c = a - ta * (b - a) / (tb - ta);
                const double tc = anchor_trace(tmpl, slot, c, track_x);
                root = c;
                if (tc == 0.0 || b - a < 1e-15 * std::max(1.0, std::abs(c))) break;
                if (ta * tc < 0.0) {
                    b = c;
                    tb = tc;
                } else {
                    a = c;
                    ta = tc;
                }
            }
            emit(root);
        }
        prev_v = v;
        prev_t = t;
    }

    std::sort(events.begin(), events.end(),
              [](const BifurcationEvent& x, const BifurcationEvent& y) {
                  return x.param_value < y.param_value;
              });
    return events;
}

void SweepPlan::validate() const {
    base.validate();
    if (slots.empty()) throw std::invalid_argument("rotate: sweep plan has no slots");
    std::vector<const SweepSlot*> order;
    for (const auto& s : slots) {
        if (s.slot.kind != ParamSlot::alpha || s.slot.index % 2 != 0)
            throw std::invalid_argument("rotate: sweep slots must be even damping slots");
        if (s.slot.index < 0 || s.slot.index >= static_cast<int>(base.alpha.size()))
            throw std::invalid_argument("rotate: sweep slot out of range for the base system");
        if (s.steps < 1) throw std::invalid_argument("rotate: sweep slot needs at least one step");
        if (!std::isfinite(s.from) || !std::isfinite(s.to) || s.from == s.to)
            throw std::invalid_argument("rotate: sweep slot range is degenerate");
        if (s.to == 0.0)
            throw std::invalid_argument("rotate: sweep targets must be nonzero (signs alternate)");
        for (const auto* q : order)
            if (q->slot.index == s.slot.index)
                throw std::invalid_argument("rotate: sweep slots must be distinct");
        order.push_back(&s);
    }
    std::sort(order.begin(), order.end(),
              [](const SweepSlot* x, const SweepSlot* y) { return x->slot.index > y->slot.index; });
    double expected = 1.0;
    for (const auto* s : order) {
        if (s->to * expected <= 0.0)
            throw std::invalid_argument(
                "rotate: target signs must alternate starting positive at the highest slot");
        expected = -expected;
    }
}

namespace {

// Tracked-cycle direction check between two consecutive snapshots.
void check_rotation_direction(SweepLog& log, const cycles::CycleCensus& before,
                              const cycles::CycleCensus& after, double v_before,
                              double v_after) {
    const double dir = v_after > v_before ? 1.0 : -1.0;
    const std::size_t n = std::min(before.anchors.size(), after.anchors.size());
    for (std::size_t a = 0; a < n; ++a) {
        for (const auto& c0 : before.anchors[a].cycles) {
            const cycles::LimitCycle* match = nullptr;
            for (const auto& c1 : after.anchors[a].cycles) {
                if (c1.stability != c0.stability) continue;
                if (std::abs(c1.r_star - c0.r_star) > 0.3 * std::max(c0.r_star, c1.r_star))
                    continue;
                if (!match || std::abs(c1.r_star - c0.r_star) < std::abs(match->r_star - c0.r_star))
                    match = &c1;
            }
            if (!match || c0.stability == cycles::Stability::semi_stable) continue;
            const double expected =
                dir * (c0.stability == cycles::Stability::stable ? 1.0 : -1.0);
            if ((match->r_star - c0.r_star) * expected < -1e-6 * std::max(1.0, c0.r_star)) {
                if (log.monotonicity_ok) {
                    log.note += "rotation direction violated near value " + fmt(v_after) +
                                " (anchor " + fmt(before.anchors[a].anchor) + ", r " +
                                fmt(c0.r_star) + " -> " + fmt(match->r_star) + "); ";
                }
                log.monotonicity_ok = false;
            }
        }
    }
}

// Localizes every count boundary inside [v_lo, v_hi] (snapshot interval)
// and appends classified events.  Returns false when the sweep must abort.
bool localize_interval(SweepLog& log, LienardSystem sys, const SweepSlot& ss,
                       double v_lo, double v_hi, const cycles::CycleCensus& cen_lo,
                       const cycles::CycleCensus& cen_hi,
                       const cycles::CycleOptions& copt) {
    const double range = std::abs(ss.to - ss.from);
    const double width = 1e-6 * range;

    auto census_at = [&](double v) {
        set_slot(sys, ss.slot, v);
        return cycles::census(sys, copt);
    };
    auto trace_at = [&](double v, double x) {
        set_slot(sys, ss.slot, v);
        return sys.jacobian_on_axis(x).first;
    };

    double a = v_lo, b = v_hi;
    cycles::CycleCensus cen_a = cen_lo, cen_b = cen_hi;
    auto ca = census_counts(cen_a), cb = census_counts(cen_b);
    if (ca.size() != cb.size()) {
        log.aborted = true;
        log.note += "anchor structure changed under a damping sweep near " + fmt(b) + "; ";
        return false;
    }

    struct Boundary {
        double lo = 0.0, hi = 0.0;
        cycles::CycleCensus cen_lo, cen_hi;
        std::vector<int> c_lo, c_hi;
    };
    std::vector<Boundary> bounds;

    while (ca != cb && bounds.size() < 8) {
        // Earliest boundary in [a, b].
        double tl = a, th = b;
        cycles::CycleCensus cen_tl = cen_a, cen_th = cen_b;
        auto c_tl = ca, c_th = cb;
        while (std::abs(th - tl) > width) {
            const double tm = 0.5 * (tl + th);
            auto cen_tm = census_at(tm);
            auto c_tm = census_counts(cen_tm);
            if (c_tm != c_tl) {
                th = tm;
                cen_th = std::move(cen_tm);
                c_th = std::move(c_tm);
            } else {
                tl = tm;
                cen_tl = std::move(cen_tm);
            }
        }
        bounds.push_back({tl, th, std::move(cen_tl), cen_th, std::move(c_tl), c_th});
        a = th;
        cen_a = std::move(cen_th);
        ca = std::move(c_th);
    }

    // A fold resolved at finite sampling sheds its pair one cycle at a
    // time through a semi-stable hair; boundaries that nearly touch are
    // one event, not two.
    const double coalesce_gap = std::max(1e-3 * range, 10.0 * width);
    std::vector<Boundary> merged;
    for (auto& bd : bounds) {
        if (!merged.empty() && bd.lo - merged.back().hi <= coalesce_gap) {
            merged.back().hi = bd.hi;
            merged.back().cen_hi = std::move(bd.cen_hi);
            merged.back().c_hi = std::move(bd.c_hi);
        } else {
            merged.push_back(std::move(bd));
        }
    }

    for (const auto& bd : merged) {
        const double tl = bd.lo, th = bd.hi;
        const auto& cen_tl = bd.cen_lo;
        const auto& cen_th = bd.cen_hi;
        const auto& c_tl = bd.c_lo;
        const auto& c_th = bd.c_hi;

        for (std::size_t i = 0; i < c_tl.size(); ++i) {
            const int delta = c_th[i] - c_tl[i];
            if (delta == 0) continue;
            if (std::abs(delta) > 2) {
                log.aborted = true;
                log.note += "cycle count jumped by " + std::to_string(delta) +
                            " inside one localization bracket near " + fmt(tl) +
                            " (coincident events); ";
                return false;
            }

            const double anchor_x = cen_tl.anchors[i].anchor;
            BifurcationEvent ev;
            ev.slot = ss.slot;
            ev.count_before = c_tl[i];
            ev.count_after = c_th[i];
            {
                set_slot(sys, ss.slot, 0.5 * (tl + th));
                ev.anchor = locate_anchor(sys, anchor_x);
            }

            const auto& rich = (delta < 0 ? cen_tl : cen_th).anchors[i].cycles;
            const auto& poor = (delta < 0 ? cen_th : cen_tl).anchors[i].cycles;
            const auto lost = unmatched_radii(rich, poor);

            const double t_lo = trace_at(v_lo, anchor_x);
            const double t_hi = trace_at(v_hi, anchor_x);
            const double t_mid = trace_at(0.5 * (tl + th), anchor_x);
            const double scale = std::max({std::abs(t_lo), std::abs(t_hi), 1e-12});

            if (std::abs(delta) == 1 &&
                (t_lo * t_hi < 0.0 || std::abs(t_mid) < 0.05 * scale)) {
                ev.kind = EventKind::hopf;
                // The trace of a fixed anchor is affine in a damping slot.
                ev.param_value =
                    t_hi != t_lo ? v_lo - t_lo * (v_hi - v_lo) / (t_hi - t_lo)
                                 : 0.5 * (tl + th);
                ev.detail = std::abs(trace_at(ev.param_value, anchor_x));
            } else if (std::abs(delta) == 2) {
                ev.kind = EventKind::fold;
                ev.param_value = 0.5 * (tl + th);
                ev.detail = lost.size() == 2 ? 0.5 * (lost[0] + lost[1])
                                             : (lost.empty() ? 0.0 : lost[0]);
            } else {
                ev.kind = EventKind::escape_to_separatrix;
                ev.param_value = 0.5 * (tl + th);
                ev.detail = lost.empty() ? 0.0 : lost[0];
            }
            log.events.push_back(ev);
        }
    }
    return true;
}

} // namespace

SweepLog sweep(const SweepPlan& plan) {
    plan.validate();
    SweepLog log;
    LienardSystem cur = plan.base;

    try {
        for (const auto& ss : plan.slots) {
            set_slot(cur, ss.slot, ss.from);
            auto prev = cycles::census(cur, plan.census_options);
            log.snapshots.push_back({ss.slot, ss.from, prev});
            double v_prev = ss.from;

            for (int j = 1; j <= ss.steps; ++j) {
                const double v = ss.from + (ss.to - ss.from) * j / ss.steps;
                set_slot(cur, ss.slot, v);
                auto cen = cycles::census(cur, plan.census_options);

                check_rotation_direction(log, prev, cen, v_prev, v);
                if (census_counts(prev) != census_counts(cen)) {
                    if (!localize_interval(log, cur, ss, v_prev, v, prev, cen,
                                           plan.census_options))
                        return log;
                }

                log.snapshots.push_back({ss.slot, v, cen});
                prev = std::move(cen);
                v_prev = v;
            }
            set_slot(cur, ss.slot, ss.to);
        }
    } catch (const std::exception& e) {
        log.aborted = true;
        log.note += std::string("census failure: ") + e.what();
    }
    return log;
}

namespace {

// Sign of the innermost trustworthy displacement sample at the origin.
// Zero when the whole grid stays below the signal floor.
int inner_displacement_sign(const LienardSystem& sys, const cycles::CycleOptions& opt) {
    const auto prof = cycles::displacement_profile(sys, 0.0, opt);
    for (const auto& s : prof.samples) {
        if (s.status == cycles::SampleStatus::ok && std::abs(s.d) >= opt.signal_floor)
            return s.d > 0.0 ? 1 : -1;
    }
    return 0;
}

} // namespace

ConstructResult construct_configuration(int k, int l, const std::vector<double>& beta_odd,
                                        const std::vector<int>& even_signs,
                                        const cycles::CycleOptions& census_options) {
    if (k < 0 || l < 0)
        throw std::invalid_argument("rotate: k and l must be nonnegative");
    if (static_cast<int>(beta_odd.size()) != l)
        throw std::invalid_argument("rotate: beta_odd needs one value per odd restoring slot");
    if (static_cast<int>(even_signs.size()) != l)
        throw std::invalid_argument("rotate: even_signs needs one sign per even restoring slot");
    for (int s : even_signs)
        if (s != 1 && s != -1)
            throw std::invalid_argument("rotate: even_signs entries must be +1 or -1");

    LienardSystem sys;
    sys.k = k;
    sys.l = l;
    sys.alpha.assign(static_cast<std::size_t>(2 * k + 1), 0.0);
    for (int i = 1; i < 2 * k + 1; i += 2) sys.alpha[static_cast<std::size_t>(i)] = 1.0;
    sys.beta.assign(static_cast<std::size_t>(2 * l), 0.0);
    for (int j = 1; j <= 2 * l; ++j)
        sys.beta[static_cast<std::size_t>(j - 1)] =
            (j % 2 == 1) ? beta_odd[static_cast<std::size_t>((j - 1) / 2)]
                         : static_cast<double>(even_signs[static_cast<std::size_t>(j / 2 - 1)]);
    sys.validate();

    double x_star = 0.0;
    if (l > 0) {
        bool found = false;
        for (const auto& p : singular::find_finite_singularities(sys)) {
            if (std::abs(p.x) < 1e-9 || !singular::is_anti_saddle(p.kind)) continue;
            if (!found || std::abs(p.x) > std::abs(x_star)) x_star = p.x;
            found = true;
        }
        if (!found)
            throw std::invalid_argument(
                "rotate: restoring polynomial provides no anti-saddle besides the origin");
    }
    const bool have_window = l > 0 && k >= 1;

    // Keep the outermost anti-saddle just inside its Hopf window: a
    // slightly negative trace leaves it weakly attracting with room for
    // the cycle around it.  The top rung absorbs whatever value makes
    // that trace land on target, re-solved whenever a lower rung moves.
    double tau = -0.01 * std::abs(x_star);
    auto place_top = [&] {
        if (!have_window) return;
        sys.alpha[static_cast<std::size_t>(2 * k)] = 0.0;
        const double rest = sys.jacobian_on_axis(x_star).first;
        sys.alpha[static_cast<std::size_t>(2 * k)] =
            (tau - rest) / std::pow(x_star, 2 * k);
    };
    if (have_window) {
        place_top();
    } else if (k >= 1) {
        sys.alpha[static_cast<std::size_t>(2 * k)] = -1.0; // contracting far field
    }

    constexpr int kBudget = 10;
    int censuses = 0;
    ConstructResult best;
    int best_score = std::numeric_limits<int>::max();

    auto take_census = [&] {
        ++censuses;
        auto cen = cycles::census(sys, census_options);
        const int score = 2 * std::abs(cen.cycles_at_origin - k) +
                          std::abs(cen.cycles_elsewhere - l);
        if (score < best_score) {
            best_score = score;
            best.system = sys;
            best.census = cen;
        }
        return cen;
    };

    // Rungs below the top are placed by successive opposition: each new
    // alpha_{2i} must push the innermost displacement the other way, so
    // its sign is read off a fresh profile rather than assumed.
    bool out_of_budget = false;
    for (int i = k - 1; i >= 0 && !out_of_budget; --i) {
        int s = inner_displacement_sign(sys, census_options);
        if (s == 0) {
            const double above = sys.alpha[static_cast<std::size_t>(2 * (i + 1))];
            s = above >= 0.0 ? 1 : -1;
        }
        sys.alpha[static_cast<std::size_t>(2 * i)] = -s * std::pow(10.0, i - k);
        place_top();

        const int expected = k - i;
        while (true) {
            if (censuses >= kBudget) {
                out_of_budget = true;
                break;
            }
            auto cen = take_census();
            const int o = cen.cycles_at_origin;
            const int e = cen.cycles_elsewhere;
            if (i == 0 && o == k && e == l) {
                best.system = sys;
                best.census = std::move(cen);
                best.achieved = true;
                best.attempts = censuses;
                best.note.clear();
                return best;
            }
            if (i > 0 && o == expected) break;

            if (o < expected) {
                sys.alpha[static_cast<std::size_t>(2 * i)] *= 0.1;
                if (std::abs(sys.alpha[static_cast<std::size_t>(2 * i)]) < 1e-12) {
                    out_of_budget = true;
                    break;
                }
            } else if (o > expected) {
                sys.alpha[static_cast<std::size_t>(2 * i)] *= 10.0;
            } else if (e < l) {
                tau *= 0.5; // closer to the anchor's Hopf
            } else {
                tau *= 2.0; // deeper into stability, shedding extra cycles
            }
            place_top();
        }
    }

    if (k == 0 && censuses < kBudget) {
        auto cen = take_census();
        if (cen.cycles_at_origin == 0 && cen.cycles_elsewhere == l) {
            best.system = sys;
            best.census = std::move(cen);
            best.achieved = true;
            best.attempts = censuses;
            best.note.clear();
            return best;
        }
    }

    best.achieved = false;
    best.attempts = censuses;
    best.note = "adaptation budget exhausted; census (" +
                std::to_string(best.census.cycles_at_origin) + "," +
                std::to_string(best.census.cycles_elsewhere) + ") vs target (" +
                std::to_string(k) + "," + std::to_string(l) + ")";
    return best;
}

const char* certify_verdict_name(CertifyVerdict v) {
    switch (v) {
    case CertifyVerdict::pass: return "pass";
    case CertifyVerdict::fail: return "fail";
    case CertifyVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

CertifyReport certify_rotation_monotonicity(const LienardSystem& tmpl,
                                            const ParamSlot& slot,
                                            const std::vector<double>& values,
                                            double anchor,
                                            const cycles::CycleOptions& census_options) {
    if (slot.kind != ParamSlot::alpha || slot.index % 2 != 0)
        throw std::invalid_argument("rotate: certification requires an even damping slot");
    if (values.size() < 2)
        throw std::invalid_argument("rotate: certification needs at least two values");
    get_slot(tmpl, slot); // existence check

    CertifyReport rep;
    rep.slot = slot;
    rep.anchor = anchor;
    rep.values = values;

    bool all_identical = true;
    for (const double v : values) all_identical = all_identical && v == values.front();

    LienardSystem sys = tmpl;
    set_slot(sys, slot, values.front());
    std::vector<cycles::LimitCycle> current;
    try {
        current = cycles::count_cycles(sys, anchor, census_options);
    } catch (const std::exception& e) {
        rep.verdict = CertifyVerdict::inconclusive;
        rep.note = std::string("census failure at the initial value: ") + e.what();
        return rep;
    }

    for (const auto& c : current) {
        CycleTrack t;
        t.stability = c.stability;
        t.r_by_value.push_back(c.r_star);
        rep.tracks.push_back(t);
    }

    if (current.empty() && !all_identical) {
        rep.verdict = CertifyVerdict::inconclusive;
        rep.note = "no cycles at the initial value";
        return rep;
    }

    bool violation = false;
    bool loss = false;

    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] == values[i - 1]) {
            for (auto& t : rep.tracks)
                if (!t.lost) t.r_by_value.push_back(t.r_by_value.back());
            continue;
        }

        set_slot(sys, slot, values[i]);
        std::vector<cycles::LimitCycle> next;
        try {
            next = cycles::count_cycles(sys, anchor, census_options);
        } catch (const std::exception& e) {
            for (auto& t : rep.tracks) t.lost = true;
            loss = true;
            rep.note += std::string("census failure at value ") + fmt(values[i]) + ": " +
                        e.what() + "; ";
            break;
        }

        const double dir = values[i] > values[i - 1] ? 1.0 : -1.0;
        std::vector<bool> used(next.size(), false);

        for (auto& t : rep.tracks) {
            if (t.lost) continue;
            const double r_old = t.r_by_value.back();
            int pick = -1;
            for (std::size_t j = 0; j < next.size(); ++j) {
                if (used[j] || next[j].stability != t.stability) continue;
                if (std::abs(next[j].r_star - r_old) >
                    0.3 * std::max(r_old, next[j].r_star))
                    continue;
                if (pick < 0 || std::abs(next[j].r_star - r_old) <
                                    std::abs(next[static_cast<std::size_t>(pick)].r_star - r_old))
                    pick = static_cast<int>(j);
            }
            if (pick < 0) {
                t.lost = true;
                loss = true;
                rep.note += std::string(cycles::stability_name(t.stability)) +
                            " cycle track lost at value " + fmt(values[i]) + "; ";
                continue;
            }
            used[static_cast<std::size_t>(pick)] = true;
            const double r_new = next[static_cast<std::size_t>(pick)].r_star;
            if (t.stability != cycles::Stability::semi_stable) {
                const double expected =
                    dir * (t.stability == cycles::Stability::stable ? 1.0 : -1.0);
                if ((r_new - r_old) * expected < -1e-6 * std::max(1.0, r_old)) {
                    violation = true;
                    rep.note += "direction violated at value " + fmt(values[i]) + " (r " +
                                fmt(r_old) + " -> " + fmt(r_new) + "); ";
                }
            }
            t.r_by_value.push_back(r_new);
        }

        for (std::size_t j = 0; j < next.size(); ++j) {
            if (!used[j] && rep.note.find("cycle born") == std::string::npos)
                rep.note += "cycle born mid-certification at value " + fmt(values[i]) + "; ";
        }
    }

    rep.verdict = violation ? CertifyVerdict::fail
                            : (loss ? CertifyVerdict::inconclusive : CertifyVerdict::pass);
    return rep;
}

} // namespace lienard::rotate
