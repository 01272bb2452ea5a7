// sweep.hpp
// Deterministic parameter sweeps over the 3-to-1 POM family: depolarising and
// per-axis dephasing robustness tables, hemisphere scaling, and the random
// dephasing-axis audit. CSV is the authoritative output format.

#pragma once

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "contextlab/errors.hpp"
#include "contextlab/pom.hpp"
#include "contextlab/robustness.hpp"

namespace contextlab {

// Order-preserving parallel map; CONTEXTLAB_THREADS caps the worker count.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    std::size_t workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    if (const char* env = std::getenv("CONTEXTLAB_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap > 0) workers = std::min<std::size_t>(workers, static_cast<std::size_t>(cap));
    }
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& t : pool) t.join();
}

struct SweepRecord {
    double theta = 0.0;
    double s = 0.0;
    double r_depol = 0.0;
    std::optional<double> r_deph_x, r_deph_y, r_deph_z;
    std::optional<double> r_deph_min;
    std::string argmin_axis;
    std::string error;  // nonempty when the solver failed for this row
};

struct SweepOptions {
    int grid = 200;
    bool depolarising = true;
    std::vector<AxisSpec> axes = {axis_x(), axis_y(), axis_z()};
    // Hook for auditing model soundness of every certificate produced.
    // May be invoked from worker threads; the callback must be thread-safe.
    std::function<void(const SweepRecord&, const RobustnessCertificate&,
                       const GptFragment&, const NoiseMap&)>
        on_certificate;
};

inline std::vector<double> theta_grid(int grid) {
    if (grid < 2) throw InvalidParameter("theta_grid: grid must be >= 2");
    std::vector<double> g(static_cast<std::size_t>(grid));
    for (int i = 0; i < grid; ++i)
        g[static_cast<std::size_t>(i)] = (M_PI / 2.0) * i / (grid - 1);
    return g;
}

// Figs. 2-4 style sweep over the uniform theta grid on [0, pi/2].
inline std::vector<SweepRecord> sweep_theta(const SweepOptions& opt = {}) {
    const std::vector<double> grid = theta_grid(opt.grid);
    std::vector<SweepRecord> rows(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        SweepRecord& row = rows[i];
        row.theta = grid[i];
        try {
            const PomScenario sc = pom3_scenario(row.theta);
            row.s = success_rate(sc);
            const AccessibleFragment acc = accessible(sc.fragment);
            if (opt.depolarising) {
                const NoiseMap depol =
                    depolarising_map(sc.fragment.max_mixed, sc.fragment.unit);
                const RobustnessCertificate cert =
                    solve_robustness(acc, sc.fragment, depol);
                row.r_depol = cert.r_min;
                if (opt.on_certificate) opt.on_certificate(row, cert, sc.fragment, depol);
            }
            for (const auto& axis : opt.axes) {
                std::optional<double> r;
                try {
                    const NoiseMap nm = dephasing_map_for_axis(axis, sc.fragment.unit);
                    const RobustnessCertificate cert =
                        solve_robustness(acc, sc.fragment, nm);
                    r = cert.r_min;
                    if (opt.on_certificate) opt.on_certificate(row, cert, sc.fragment, nm);
                } catch (const NoFiniteRobustness&) {
                    r = std::nullopt;
                }
                if (axis.name == "X") row.r_deph_x = r;
                else if (axis.name == "Y") row.r_deph_y = r;
                else if (axis.name == "Z") row.r_deph_z = r;
                if (r && (!row.r_deph_min || *r < *row.r_deph_min)) {
                    row.r_deph_min = *r;
                    row.argmin_axis = axis.name;
                }
            }
        } catch (const Error& e) {
            row.error = e.what();
        }
    });
    return rows;
}

struct ScalingRecord {
    int n = 0;
    int two_n = 0;
    double r_depol = 0.0;
};

// Depolarising robustness of the real-hemisphere fragments for each n.
inline std::vector<ScalingRecord> hemisphere_scaling(const std::vector<int>& n_list) {
    std::vector<ScalingRecord> rows(n_list.size());
    parallel_for(n_list.size(), [&](std::size_t i) {
        const int n = n_list[i];
        const GptFragment frag = hemisphere_fragment(n);
        const AccessibleFragment acc = accessible(frag);
        const NoiseMap depol = depolarising_map(frag.max_mixed, frag.unit);
        rows[i] = {n, 2 * n, solve_robustness(acc, frag, depol).r_min};
    });
    return rows;
}

struct AuditRecord {
    double theta = 0.0;
    double r_min_xyz = 0.0;
    double r_min_aug = 0.0;
    double abs_diff = 0.0;
};

// Draws `extra_axes` random dephasing axes from a seeded generator and
// compares the axis-minimised robustness with and without them. The optional
// hook sees every per-axis certificate (called from worker threads).
inline std::vector<AuditRecord> random_axis_audit(
    int grid, int extra_axes, unsigned long long seed,
    const std::function<void(const AxisResult&, const GptFragment&)>& on_axis_result =
        {}) {
    if (extra_axes < 0)
        throw InvalidParameter("random_axis_audit: extra_axes must be >= 0");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> utheta(0.0, M_PI);
    std::uniform_real_distribution<double> uphi(0.0, 2.0 * M_PI);
    std::vector<AxisSpec> augmented = {axis_x(), axis_y(), axis_z()};
    for (int i = 0; i < extra_axes; ++i) {
        const double t = utheta(rng);
        const double p = uphi(rng);
        std::ostringstream name;
        name << "custom:" << t << "," << p;
        augmented.push_back({name.str(), t, p});
    }

    const std::vector<double> thetas = theta_grid(grid);
    std::vector<AuditRecord> rows(thetas.size());
    parallel_for(thetas.size(), [&](std::size_t i) {
        const PomScenario sc = pom3_scenario(thetas[i]);
        const AxisMinimum base = min_over_axes(sc.fragment,
                                               {axis_x(), axis_y(), axis_z()});
        const AxisMinimum aug = min_over_axes(sc.fragment, augmented);
        if (on_axis_result) {
            for (const auto& res : base.table) on_axis_result(res, sc.fragment);
            for (const auto& res : aug.table) on_axis_result(res, sc.fragment);
        }
        rows[i] = {thetas[i], base.r_min, aug.r_min,
                   std::abs(base.r_min - aug.r_min)};
    });
    return rows;
}

// ---------------------------------------------------------------------------
// Table output. Column layouts are fixed; empty cells mark NoFiniteRobustness.

namespace swdetail {

inline std::string num(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

inline std::string cell(const std::optional<double>& v) {
    return v ? num(*v) : std::string{};
}

}  // namespace swdetail

inline std::string sweep_csv(const std::vector<SweepRecord>& rows) {
    std::ostringstream os;
    os << "theta,s,r_depol,r_deph_x,r_deph_y,r_deph_z,r_deph_min,argmin_axis\n";
    for (const auto& r : rows)
        os << swdetail::num(r.theta) << ',' << swdetail::num(r.s) << ','
           << swdetail::num(r.r_depol) << ',' << swdetail::cell(r.r_deph_x) << ','
           << swdetail::cell(r.r_deph_y) << ',' << swdetail::cell(r.r_deph_z) << ','
           << swdetail::cell(r.r_deph_min) << ',' << r.argmin_axis << '\n';
    return os.str();
}

inline std::string scaling_csv(const std::vector<ScalingRecord>& rows) {
    std::ostringstream os;
    os << "n,two_n,r_depol\n";
    for (const auto& r : rows)
        os << r.n << ',' << r.two_n << ',' << swdetail::num(r.r_depol) << '\n';
    return os.str();
}

inline std::string audit_csv(const std::vector<AuditRecord>& rows) {
    std::ostringstream os;
    os << "theta,r_min_xyz,r_min_aug,abs_diff\n";
    for (const auto& r : rows)
        os << swdetail::num(r.theta) << ',' << swdetail::num(r.r_min_xyz) << ','
           << swdetail::num(r.r_min_aug) << ',' << swdetail::num(r.abs_diff) << '\n';
    return os.str();
}

// Minimal single-series SVG line chart; the CSV is the authoritative output.
inline std::string svg_line_chart(const std::vector<double>& xs,
                                  const std::vector<double>& ys,
                                  const std::string& xlabel,
                                  const std::string& ylabel,
                                  const std::string& title) {
    const int w = 640, h = 440, ml = 70, mr = 20, mt = 40, mb = 50;
    double xmin = xs.empty() ? 0 : xs.front(), xmax = xmin;
    double ymin = 0.0, ymax = 1e-12;
    for (double x : xs) { xmin = std::min(xmin, x); xmax = std::max(xmax, x); }
    for (double y : ys) { ymin = std::min(ymin, y); ymax = std::max(ymax, y); }
    if (xmax - xmin < 1e-12) xmax = xmin + 1.0;
    if (ymax - ymin < 1e-12) ymax = ymin + 1.0;
    const auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr); };
    const auto py = [&](double y) { return h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb); };
    std::ostringstream os;
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h
       << "'>\n<rect width='100%' height='100%' fill='white'/>\n"
       << "<text x='" << w / 2 << "' y='24' text-anchor='middle' font-size='16'>"
       << title << "</text>\n"
       << "<line x1='" << ml << "' y1='" << h - mb << "' x2='" << w - mr << "' y2='"
       << h - mb << "' stroke='black'/>\n"
       << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << h - mb
       << "' stroke='black'/>\n"
       << "<text x='" << (ml + w - mr) / 2 << "' y='" << h - 12
       << "' text-anchor='middle' font-size='13'>" << xlabel << "</text>\n"
       << "<text x='18' y='" << (mt + h - mb) / 2
       << "' text-anchor='middle' font-size='13' transform='rotate(-90 18 "
       << (mt + h - mb) / 2 << ")'>" << ylabel << "</text>\n<polyline fill='none' "
       << "stroke='crimson' stroke-width='1.5' points='";
    for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i)
        os << px(xs[i]) << ',' << py(ys[i]) << ' ';
    os << "'/>\n</svg>\n";
    return os.str();
}

}  // namespace contextlab
