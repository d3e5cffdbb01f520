#include "fbmono/optimizer.hpp"

#include "fbmono/error.hpp"
#include "fbmono/parallel.hpp"

#include <cmath>
#include <limits>

namespace fbmono {

void OptimizerConfig::validate() const
{
    if (!(p > 1.0 && p <= 8.0)) throw InvalidArgument("p must lie in (1, 8]");
    if (max_iters < 0) throw InvalidArgument("max_iters must be non-negative");
    if (!(initial_step > 0.0)) throw InvalidArgument("initial_step must be positive");
    if (!(shrink > 0.0 && shrink < 1.0)) throw InvalidArgument("shrink must lie in (0, 1)");
    if (!(growth >= 1.0)) throw InvalidArgument("growth must be at least 1");
    if (!(sufficient_decrease > 0.0 && sufficient_decrease < 1.0)) throw InvalidArgument("sufficient_decrease must lie in (0, 1)");
    if (!(tolerance > 0.0)) throw InvalidArgument("tolerance must be positive");
    if (!(gradient_tolerance > 0.0)) throw InvalidArgument("gradient_tolerance must be positive");
    if (resample_every < 0) throw InvalidArgument("resample_every must be non-negative");
}

namespace {

struct MengerGrad {
    double value;
    Vec3 da, db, dc;
};

MengerGrad menger_with_gradient(const Vec3& a, const Vec3& b, const Vec3& c)
{
    const Vec3 u = a - b;
    const Vec3 v = c - b;
    const Vec3 m = c - a;
    const Vec3 w = cross(u, v);
    const double N = norm(w);
    const double lu = norm(u), lv = norm(v), lm = norm(m);
    if (!(N > 1e-300) || !(lu > 0.0 && lv > 0.0 && lm > 0.0)) return {0.0, {}, {}, {}};
    const double k = 2.0 * N / (lu * lv * lm);
    const Vec3 gu = k * (cross(v, w) / (N * N) - u / (lu * lu));
    const Vec3 gv = k * (cross(w, u) / (N * N) - v / (lv * lv));
    const Vec3 gm = -k * m / (lm * lm);
    return {k, gu - gm, -1.0 * gu - gv, gv + gm};
}

// Backpropagates through a unit vector e/|e|.
Vec3 unit_backprop(const Vec3& g, const Vec3& e)
{
    const double l = norm(e);
    const Vec3 u = e / l;
    return (g - dot(g, u) * u) / l;
}

}  // namespace

ObjectiveGradient objective_and_gradient(const ClosedPolyline& curve, double p)
{
    if (!(p > 1.0)) throw InvalidArgument("p must exceed 1");
    const int n = curve.size();
    if (n < 8) throw InvalidArgument("tangent-point energy needs at least 8 vertices");
    const auto un = static_cast<std::size_t>(n);

    std::vector<MengerGrad> mg(un);
    for (int i = 0; i < n; ++i) {
        mg[static_cast<std::size_t>(i)] = menger_with_gradient(curve.point(curve.prev(i)), curve.point(i), curve.point(curve.next(i)));
    }

    // Per-row adjoints (row i owns the tangent and Menger adjoint at i).
    struct Row {
        double energy = 0.0;
        double g_weight_i = 0.0;
        Vec3 g_tangent;
        double g_kappa = 0.0;
    };
    std::vector<Row> rows(un);
    // Column contributions are accumulated per row into a private buffer and
    // reduced in row order afterwards.
    std::vector<std::vector<double>> col_weight(un);
    std::vector<std::vector<Vec3>> col_point(un);
    std::vector<Vec3> row_point(un);

    parallel_blocks(un, 8, [&](std::size_t b, std::size_t e) {
        for (std::size_t ui = b; ui < e; ++ui) {
            const int i = static_cast<int>(ui);
            Row row;
            auto& cw = col_weight[ui];
            auto& cp = col_point[ui];
            cw.assign(un, 0.0);
            cp.assign(un, Vec3{});
            Vec3 gxi{};
            const Vec3& xi = curve.point(i);
            const Vec3& ti = curve.tangent(i);
            const double li = curve.weight(i);
            for (int j = 0; j < n; ++j) {
                const auto uj = static_cast<std::size_t>(j);
                const double lj = curve.weight(j);
                const bool near = j == i || j == curve.next(i) || j == curve.prev(i);
                if (near) {
                    const double k = mg[ui].value;
                    const double kp = std::pow(k, p);
                    row.energy += li * lj * kp;
                    row.g_weight_i += lj * kp;
                    cw[uj] += li * kp;
                    row.g_kappa += li * lj * p * (k > 0.0 ? kp / k : 0.0);
                    continue;
                }
                const Vec3 r = curve.point(j) - xi;
                const double rt = dot(r, ti);
                const Vec3 q = r - rt * ti;
                const double d = norm(q);
                const double s = norm2(r);
                const double K = 2.0 * d / s;
                const double Kp = std::pow(K, p);
                row.energy += li * lj * Kp;
                row.g_weight_i += lj * Kp;
                cw[uj] += li * Kp;
                if (!(d > 0.0)) continue;
                const double gK = li * lj * p * Kp / K;
                const Vec3 dKdr = (2.0 / (d * s)) * q - (4.0 * d / (s * s)) * r;
                cp[uj] += gK * dKdr;
                gxi -= gK * dKdr;
                row.g_tangent += (-2.0 * rt * gK / (d * s)) * q;
            }
            row_point[ui] = gxi;
            rows[ui] = row;
        }
    });

    double E = 0.0;
    std::vector<double> g_weight(un, 0.0);
    std::vector<Vec3> g(un);
    for (std::size_t i = 0; i < un; ++i) {
        E += rows[i].energy;
        g_weight[i] += rows[i].g_weight_i;
        g[i] += row_point[i];
    }
    for (std::size_t i = 0; i < un; ++i) {
        for (std::size_t j = 0; j < un; ++j) {
            g_weight[j] += col_weight[i][j];
            g[j] += col_point[i][j];
        }
    }

    // Menger closures.
    for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        const double a = rows[ui].g_kappa;
        if (a == 0.0) continue;
        g[static_cast<std::size_t>(curve.prev(i))] += a * mg[ui].da;
        g[ui] += a * mg[ui].db;
        g[static_cast<std::size_t>(curve.next(i))] += a * mg[ui].dc;
    }

    // Tangents t_i = normalize(ê_{i-1} + ê_i) and arc weights ℓ_i = (|e_{i-1}| + |e_i|)/2.
    std::vector<double> g_edge_len(un, 0.0);  // edge i runs from i to i+1
    for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        const int ip = curve.prev(i), in = curve.next(i);
        const Vec3 e_prev = curve.point(i) - curve.point(ip);
        const Vec3 e_next = curve.point(in) - curve.point(i);
        g_edge_len[static_cast<std::size_t>(ip)] += 0.5 * g_weight[ui];
        g_edge_len[ui] += 0.5 * g_weight[ui];
        const Vec3 u = e_prev / norm(e_prev) + e_next / norm(e_next);
        const Vec3 gu = unit_backprop(rows[ui].g_tangent, u);
        const Vec3 gp = unit_backprop(gu, e_prev);
        const Vec3 gn = unit_backprop(gu, e_next);
        g[ui] += gp - gn;
        g[static_cast<std::size_t>(ip)] -= gp;
        g[static_cast<std::size_t>(in)] += gn;
    }

    const double L = curve.length();
    for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        const Vec3 e = curve.point(curve.next(i)) - curve.point(i);
        const Vec3 de = e / norm(e);
        g[static_cast<std::size_t>(curve.next(i))] += g_edge_len[ui] * de;
        g[ui] -= g_edge_len[ui] * de;
    }

    ObjectiveGradient out;
    out.energy = E;
    out.length = L;
    out.value = std::pow(E, 1.0 / p) * std::pow(L, 1.0 - 2.0 / p);
    const double cE = out.value / (p * E);
    const double cL = out.value * (1.0 - 2.0 / p) / L;
    out.gradient.resize(un);
    for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        const Vec3 e_prev = curve.point(i) - curve.point(curve.prev(i));
        const Vec3 e_next = curve.point(curve.next(i)) - curve.point(i);
        const Vec3 dL = e_prev / norm(e_prev) - e_next / norm(e_next);
        out.gradient[ui] = cE * g[ui] + cL * dL;
    }
    return out;
}

double objective_value(const ClosedPolyline& curve, double p)
{
    return objective_and_gradient(curve, p).value;
}

double gradient_check(const ClosedPolyline& curve, double p, double h)
{
    const ObjectiveGradient og = objective_and_gradient(curve, p);
    const double step = h * curve.length();
    std::vector<Vec3> pts(curve.points().begin(), curve.points().end());
    double gmax = 0.0;
    for (const Vec3& g : og.gradient) gmax = std::max({gmax, std::abs(g.x), std::abs(g.y), std::abs(g.z)});
    double worst = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (int c = 0; c < 3; ++c) {
            const double x0 = pts[i][c];
            pts[i][c] = x0 + step;
            const double fp = objective_value(ClosedPolyline(pts), p);
            pts[i][c] = x0 - step;
            const double fm = objective_value(ClosedPolyline(pts), p);
            pts[i][c] = x0;
            const double fd = (fp - fm) / (2.0 * step);
            worst = std::max(worst, std::abs(fd - og.gradient[i][c]) / gmax);
        }
    }
    return worst;
}

ClosedPolyline resample_uniform(const ClosedPolyline& curve)
{
    const int n = curve.size();
    std::vector<double> cum(static_cast<std::size_t>(n) + 1, 0.0);
    for (int i = 0; i < n; ++i) {
        cum[static_cast<std::size_t>(i) + 1] = cum[static_cast<std::size_t>(i)] + norm(curve.point(curve.next(i)) - curve.point(i));
    }
    const double L = cum.back();
    std::vector<Vec3> pts;
    pts.reserve(static_cast<std::size_t>(n));
    int seg = 0;
    for (int k = 0; k < n; ++k) {
        const double s = L * k / n;
        while (seg + 1 < n && cum[static_cast<std::size_t>(seg) + 1] <= s) ++seg;
        const double len = cum[static_cast<std::size_t>(seg) + 1] - cum[static_cast<std::size_t>(seg)];
        const double t = len > 0.0 ? (s - cum[static_cast<std::size_t>(seg)]) / len : 0.0;
        const Vec3& a = curve.point(seg);
        const Vec3& b = curve.point(curve.next(seg));
        pts.push_back(a + t * (b - a));
    }
    return ClosedPolyline(std::move(pts));
}

double roundness(const ClosedPolyline& curve)
{
    Vec3 c{};
    for (const Vec3& p : curve.points()) c += p;
    c = c / static_cast<double>(curve.size());
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const Vec3& p : curve.points()) {
        lo = std::min(lo, norm(p - c));
        hi = std::max(hi, norm(p - c));
    }
    return hi / lo;
}

namespace {

double dot_all(const std::vector<Vec3>& a, const std::vector<Vec3>& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += dot(a[i], b[i]);
    return s;
}

double max_abs(const std::vector<Vec3>& g)
{
    double m = 0.0;
    for (const Vec3& v : g) m = std::max({m, std::abs(v.x), std::abs(v.y), std::abs(v.z)});
    return m;
}

}  // namespace

OptimizerTrace minimize(const ClosedPolyline& start, const OptimizerConfig& cfg)
{
    cfg.validate();
    OptimizerTrace trace;
    ClosedPolyline curve = start;
    ObjectiveGradient og = objective_and_gradient(curve, cfg.p);
    double step = cfg.initial_step * curve.length() * curve.length();
    std::vector<Vec3> prev_x, prev_g;

    auto record = [&] {
        trace.objective.push_back(og.value);
        trace.grad_norm.push_back(std::sqrt(dot_all(og.gradient, og.gradient)));
        trace.length.push_back(og.length);
    };
    record();

    for (int it = 0; it < cfg.max_iters; ++it) {
        if (max_abs(og.gradient) * og.length < cfg.gradient_tolerance) {
            trace.converged = true;
            trace.stop_reason = "gradient below tolerance";
            break;
        }
        std::vector<Vec3> x(curve.points().begin(), curve.points().end());
        if (cfg.step_rule == StepRule::BarzilaiBorwein && !prev_x.empty()) {
            double ss = 0.0, sy = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                const Vec3 s = x[i] - prev_x[i];
                const Vec3 y = og.gradient[i] - prev_g[i];
                ss += dot(s, s);
                sy += dot(s, y);
            }
            if (sy > 0.0) step = std::min(ss / sy, 1e3 * step);
            else step *= cfg.growth;
        } else if (it > 0) {
            step *= cfg.growth;
        }
        const double g2 = dot_all(og.gradient, og.gradient);
        const double min_step = 1e-18 * og.length * og.length;
        bool accepted = false;
        ObjectiveGradient trial_og;
        ClosedPolyline trial;
        while (step > min_step) {
            std::vector<Vec3> y = x;
            for (std::size_t i = 0; i < y.size(); ++i) y[i] -= step * og.gradient[i];
            try {
                trial = ClosedPolyline(std::move(y));
                const double f = objective_value(trial, cfg.p);
                if (std::isfinite(f) && f <= og.value - cfg.sufficient_decrease * step * g2) {
                    trial_og = objective_and_gradient(trial, cfg.p);
                    accepted = true;
                    break;
                }
            } catch (const Error&) {
                // Degenerate trial curve: shrink.
            }
            step *= cfg.shrink;
        }
        if (!accepted) {
            trace.line_search_failed = true;
            trace.stop_reason = "line search failed";
            break;
        }
        prev_x = std::move(x);
        prev_g = og.gradient;
        const double change = std::abs(og.value - trial_og.value) / og.value;
        curve = std::move(trial);
        og = std::move(trial_og);

        if (cfg.resample_every > 0 && (it + 1) % cfg.resample_every == 0) {
            ResampleEvent ev;
            ev.iteration = it + 1;
            ev.length_before = og.length;
            ev.objective_before = og.value;
            ClosedPolyline rs = resample_uniform(curve);
            ObjectiveGradient rog = objective_and_gradient(rs, cfg.p);
            ev.length_after = rog.length;
            ev.objective_after = rog.value;
            ev.accepted = rog.value <= og.value;
            if (ev.accepted) {
                curve = std::move(rs);
                og = std::move(rog);
                prev_x.clear();
                prev_g.clear();
            }
            trace.resamples.push_back(ev);
        }
        record();
        if (change < cfg.tolerance) {
            trace.converged = true;
            trace.stop_reason = "objective change below tolerance";
            break;
        }
    }
    if (trace.stop_reason.empty()) trace.stop_reason = "iteration limit";
    trace.final_curve = curve;
    return trace;
}

}  // namespace fbmono
