#include "lienard/flow.hpp"

#include "lienard/singular.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>

namespace lienard::flow {

namespace {

// Dormand–Prince 5(4) tableau; the field is autonomous, so the stage
// abscissae never enter the stage evaluations.
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0,
                 kA53 = 64448.0 / 6561.0, kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0, kA63 = 46732.0 / 5247.0,
                 kA64 = 49.0 / 176.0, kA65 = -5103.0 / 18656.0;

// Fifth-order weights (the advancing solution; sixth stage lands on t+h).
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                 kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;

// Difference against the embedded fourth-order weights.
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0, kE4 = 71.0 / 1920.0,
                 kE5 = -17253.0 / 339200.0, kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;

// Dense-output weights for the quartic interpolant.
constexpr double kD1 = -12715105075.0 / 11282082432.0;
constexpr double kD3 = 87487479700.0 / 32700410799.0;
constexpr double kD4 = -10690763975.0 / 1880347072.0;
constexpr double kD5 = 701980252875.0 / 199316789632.0;
constexpr double kD6 = -1453857185.0 / 822651844.0;
constexpr double kD7 = 69997945.0 / 29380423.0;

constexpr double kMinStepFactor = 1e-14;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// Quartic interpolant over one accepted step, exact at both ends.
struct DenseStep {
    double t0 = 0.0;
    double h = 0.0;
    std::array<double, 5> cx{};
    std::array<double, 5> cy{};

    Vec2 eval(double theta) const {
        const double th1 = 1.0 - theta;
        return {cx[0] + theta * (cx[1] + th1 * (cx[2] + theta * (cx[3] + th1 * cx[4]))),
                cy[0] + theta * (cy[1] + th1 * (cy[2] + theta * (cy[3] + th1 * cy[4])))};
    }
};

double error_norm(double ex, double ey, const Vec2& y0, const Vec2& y1, double tol) {
    const double sx = tol + tol * std::max(std::abs(y0.x), std::abs(y1.x));
    const double sy = tol + tol * std::max(std::abs(y0.y), std::abs(y1.y));
    const double rx = ex / sx;
    const double ry = ey / sy;
    return std::sqrt(0.5 * (rx * rx + ry * ry));
}

/// Startup step size: a curvature-probing heuristic in the scaled norm.
template <typename Field>
double initial_step(const Field& f, const Vec2& y0, const Vec2& f0, double dir, double tol,
                    double span) {
    const double sx = tol + tol * std::abs(y0.x);
    const double sy = tol + tol * std::abs(y0.y);
    auto scaled = [&](double vx, double vy) {
        const double rx = vx / sx;
        const double ry = vy / sy;
        return std::sqrt(0.5 * (rx * rx + ry * ry));
    };
    const double d0 = scaled(y0.x, y0.y);
    const double d1 = scaled(f0.x, f0.y);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * (d0 / d1);
    h0 = std::min(h0, span);
    const Vec2 y1{y0.x + dir * h0 * f0.x, y0.y + dir * h0 * f0.y};
    const Vec2 f1 = f(y1.x, y1.y);
    const double d2 = scaled(f1.x - f0.x, f1.y - f0.y) / h0;
    double h1;
    if (std::max(d1, d2) <= 1e-15) {
        h1 = std::max(1e-6, h0 * 1e-3);
    } else {
        h1 = std::pow(0.01 / std::max(d1, d2), 0.2);
    }
    return dir * std::min({100.0 * h0, h1, span});
}

/**
 * Core stepping loop shared by integrate() and crossings().  The
 * watcher sees every accepted step (dense interpolant plus endpoint)
 * and may return a theta in (0, 1] to stop there with terminal
 * event-count-reached.
 */
template <typename Watcher>
Trajectory integrate_core(const LienardSystem& sys, double x0, double y0,
                          const FlowOptions& opt, Watcher&& watch) {
    if (!(opt.tol > 0.0)) {
        throw std::invalid_argument("flow: tol must be positive");
    }
    const double r_escape = opt.r_escape > 0.0 ? opt.r_escape : default_r_escape(sys);
    if (!(r_escape > std::hypot(x0, y0))) {
        throw std::invalid_argument("flow: start must lie inside the escape radius");
    }

    const auto points = singular::find_finite_singularities(sys);
    auto field = [&sys](double px, double py) {
        const auto v = sys.vector_field(px, py);
        return Vec2{v.first, v.second};
    };

    Trajectory out;
    const double t_end = opt.t_max;
    const double dir = t_end >= 0.0 ? 1.0 : -1.0;
    double t = 0.0;
    Vec2 y{x0, y0};
    Vec2 k1 = field(y.x, y.y);
    out.samples.push_back({t, y.x, y.y});
    out.x_min = out.x_max = x0;
    if (t_end == 0.0) {
        return out;
    }

    if (!opt.store_samples) {
        out.samples.push_back(out.samples.front());
    }
    auto push_sample = [&](double st, double sx, double sy) {
        if (opt.store_samples) {
            out.samples.push_back({st, sx, sy});
        } else {
            out.samples.back() = {st, sx, sy};
        }
    };

    double h = initial_step(field, y, k1, dir, opt.tol, std::abs(t_end));
    std::size_t steps = 0;

    while (dir * (t_end - t) > 0.0) {
        if (++steps > opt.max_steps) {
            out.failed = true;
            out.note = "step budget exhausted";
            return out;
        }
        if (std::abs(h) < kMinStepFactor * std::max(1.0, std::abs(t))) {
            out.failed = true;
            out.note = "step size underflow";
            return out;
        }
        bool last = false;
        if (dir * (t + h - t_end) >= 0.0) {
            h = t_end - t;
            last = true;
        }

        const Vec2 k2 = field(y.x + h * kA21 * k1.x, y.y + h * kA21 * k1.y);
        const Vec2 k3 = field(y.x + h * (kA31 * k1.x + kA32 * k2.x),
                              y.y + h * (kA31 * k1.y + kA32 * k2.y));
        const Vec2 k4 = field(y.x + h * (kA41 * k1.x + kA42 * k2.x + kA43 * k3.x),
                              y.y + h * (kA41 * k1.y + kA42 * k2.y + kA43 * k3.y));
        const Vec2 k5 =
            field(y.x + h * (kA51 * k1.x + kA52 * k2.x + kA53 * k3.x + kA54 * k4.x),
                  y.y + h * (kA51 * k1.y + kA52 * k2.y + kA53 * k3.y + kA54 * k4.y));
        const Vec2 k6 = field(
            y.x + h * (kA61 * k1.x + kA62 * k2.x + kA63 * k3.x + kA64 * k4.x + kA65 * k5.x),
            y.y + h * (kA61 * k1.y + kA62 * k2.y + kA63 * k3.y + kA64 * k4.y + kA65 * k5.y));
        const Vec2 y1{
            y.x + h * (kB1 * k1.x + kB3 * k3.x + kB4 * k4.x + kB5 * k5.x + kB6 * k6.x),
            y.y + h * (kB1 * k1.y + kB3 * k3.y + kB4 * k4.y + kB5 * k5.y + kB6 * k6.y)};
        const Vec2 k7 = field(y1.x, y1.y);

        const double ex =
            h * (kE1 * k1.x + kE3 * k3.x + kE4 * k4.x + kE5 * k5.x + kE6 * k6.x + kE7 * k7.x);
        const double ey =
            h * (kE1 * k1.y + kE3 * k3.y + kE4 * k4.y + kE5 * k5.y + kE6 * k6.y + kE7 * k7.y);
        const double err = error_norm(ex, ey, y, y1, opt.tol);

        if (!std::isfinite(err) || !std::isfinite(y1.x) || !std::isfinite(y1.y)) {
            h *= 0.2;
            continue;
        }
        if (err > 1.0) {
            const double fac = std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
            h *= fac;
            continue;
        }

        DenseStep dense;
        dense.t0 = t;
        dense.h = h;
        {
            const double dx = y1.x - y.x;
            const double dy = y1.y - y.y;
            dense.cx = {y.x, dx, h * k1.x - dx, dx - h * k7.x - (h * k1.x - dx),
                        h * (kD1 * k1.x + kD3 * k3.x + kD4 * k4.x + kD5 * k5.x + kD6 * k6.x +
                             kD7 * k7.x)};
            dense.cy = {y.y, dy, h * k1.y - dy, dy - h * k7.y - (h * k1.y - dy),
                        h * (kD1 * k1.y + kD3 * k3.y + kD4 * k4.y + kD5 * k5.y + kD6 * k6.y +
                             kD7 * k7.y)};
        }

        if (const std::optional<double> stop = watch(dense, y1)) {
            const Vec2 ye = dense.eval(*stop);
            push_sample(t + *stop * h, ye.x, ye.y);
            out.x_min = std::min(out.x_min, ye.x);
            out.x_max = std::max(out.x_max, ye.x);
            out.terminal = Terminal::event_count_reached;
            return out;
        }
        out.x_min = std::min(out.x_min, y1.x);
        out.x_max = std::max(out.x_max, y1.x);

        // Convergence is a property of the continuous trajectory, so a
        // step passing near a singular point is scanned along its dense
        // interpolant, not just at its endpoint.
        for (const auto& p : points) {
            const double d_end = std::hypot(y1.x - p.x, y1.y);
            const double d_begin = std::hypot(y.x - p.x, y.y);
            if (d_end < opt.converge_tol) {
                push_sample(t + h, y1.x, y1.y);
                out.terminal = Terminal::converged_to_point;
                return out;
            }
            if (std::min(d_begin, d_end) < 64.0 * opt.converge_tol) {
                for (int node = 1; node < 16; ++node) {
                    const double theta = node / 16.0;
                    const Vec2 q = dense.eval(theta);
                    if (std::hypot(q.x - p.x, q.y) < opt.converge_tol) {
                        push_sample(t + theta * h, q.x, q.y);
                        out.terminal = Terminal::converged_to_point;
                        return out;
                    }
                }
            }
        }

        t = last ? t_end : t + h;
        y = y1;
        k1 = k7; // first-same-as-last
        push_sample(t, y.x, y.y);
        if (std::hypot(y.x, y.y) > r_escape) {
            out.terminal = Terminal::escaped;
            return out;
        }

        const double fac = std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        h *= fac;
    }

    out.terminal = Terminal::time_limit;
    return out;
}

/// Branch-tracked angle swept about (ox, oy) across one dense step.
double swept_angle(const DenseStep& d, double ox, double oy, double ta, double tb, int depth) {
    const Vec2 a = d.eval(ta);
    const Vec2 b = d.eval(tb);
    const double ang_a = std::atan2(a.y - oy, a.x - ox);
    const double ang_b = std::atan2(b.y - oy, b.x - ox);
    const double delta = std::remainder(ang_b - ang_a, 2.0 * M_PI);
    if (std::abs(delta) <= M_PI_2 || depth <= 0) {
        return delta;
    }
    const double tm = 0.5 * (ta + tb);
    return swept_angle(d, ox, oy, ta, tm, depth - 1) + swept_angle(d, ox, oy, tm, tb, depth - 1);
}

} // namespace

const char* terminal_name(Terminal t) {
    switch (t) {
    case Terminal::time_limit:
        return "time-limit";
    case Terminal::escaped:
        return "escaped";
    case Terminal::converged_to_point:
        return "converged-to-point";
    case Terminal::event_count_reached:
        return "event-count-reached";
    }
    return "unknown";
}

double default_r_escape(const LienardSystem& sys) {
    double far = 0.0;
    for (const auto& p : singular::find_finite_singularities(sys)) {
        far = std::max(far, std::abs(p.x));
    }
    return 10.0 * far + 10.0;
}

Trajectory integrate(const LienardSystem& sys, double x0, double y0, const FlowOptions& opt) {
    return integrate_core(sys, x0, y0, opt,
                          [](const DenseStep&, const Vec2&) { return std::optional<double>{}; });
}

CrossingRun crossings(const LienardSystem& sys, double x0, double y0, const Ray& ray, int count,
                      const FlowOptions& opt) {
    if (count <= 0) {
        throw std::invalid_argument("flow: crossing count must be positive");
    }
    const double dnorm = std::hypot(ray.dx, ray.dy);
    if (!(std::abs(dnorm - 1.0) < 1e-9)) {
        throw std::invalid_argument("flow: ray direction must be a unit vector");
    }

    CrossingRun run;
    auto field = [&sys](double px, double py) {
        const auto v = sys.vector_field(px, py);
        return Vec2{v.first, v.second};
    };
    auto cross_of = [&ray](double px, double py) {
        return (px - ray.ox) * ray.dy - (py - ray.oy) * ray.dx;
    };

    double prev_cross = cross_of(x0, y0);
    double swept_total = 0.0;

    auto watch = [&](const DenseStep& d, const Vec2& y1) -> std::optional<double> {
        const double c1 = cross_of(y1.x, y1.y);
        std::optional<double> stop;
        if (prev_cross * c1 < 0.0 || (c1 == 0.0 && prev_cross != 0.0)) {
            double lo = 0.0, hi = 1.0;
            double clo = prev_cross;
            Vec2 p = y1;
            double cm = c1;
            double theta = 1.0;
            for (int it = 0; it < 200 && std::abs(cm) >= 1e-10; ++it) {
                theta = 0.5 * (lo + hi);
                p = d.eval(theta);
                cm = cross_of(p.x, p.y);
                if ((cm < 0.0) == (clo < 0.0)) {
                    lo = theta;
                    clo = cm;
                } else {
                    hi = theta;
                }
            }
            if (std::abs(cm) >= 1e-10) {
                theta = hi;
                p = d.eval(theta);
            }
            const double along = (p.x - ray.ox) * ray.dx + (p.y - ray.oy) * ray.dy;
            const Vec2 f = field(p.x, p.y);
            const double outward = f.x * ray.dy - f.y * ray.dx;
            if (along > 0.0 && outward > 0.0) {
                RayEvent ev;
                ev.t = d.t0 + theta * d.h;
                ev.r = along;
                ev.x = p.x;
                ev.y = p.y;
                ev.swept = swept_total + swept_angle(d, ray.ox, ray.oy, 0.0, theta, 12);
                ev.direction = CrossDirection::same_sense;
                run.events.push_back(ev);
                if (static_cast<int>(run.events.size()) >= count) {
                    stop = theta;
                }
            }
        }
        if (!stop) {
            swept_total += swept_angle(d, ray.ox, ray.oy, 0.0, 1.0, 12);
            prev_cross = c1;
        }
        return stop;
    };

    run.trajectory = integrate_core(sys, x0, y0, opt, watch);
    return run;
}

} // namespace lienard::flow
