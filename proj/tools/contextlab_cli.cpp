// contextlab_cli.cpp
// Command-line front end: robustness certificates for fragment files and the
// POM sweep/scaling/audit experiment tables.
//
// Exit codes: 0 success, 1 invalid input, 2 solver failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "contextlab/contextlab.hpp"

namespace {

using namespace contextlab;

struct CliInputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliInputError("cannot open input file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw CliInputError("cannot parse " + path + ": " + e.what());
    }
    return j;
}

void write_output(const std::string& out, const std::string& content) {
    if (out.empty() || out == "-") {
        std::cout << content;
        return;
    }
    std::ofstream f(out);
    if (!f) throw CliInputError("cannot open output file: " + out);
    f << content;
}

AxisSpec parse_axis(const std::string& token) {
    if (token == "X" || token == "x") return axis_x();
    if (token == "Y" || token == "y") return axis_y();
    if (token == "Z" || token == "z") return axis_z();
    if (token.rfind("custom:", 0) == 0) {
        const std::string args = token.substr(7);
        const auto comma = args.find(',');
        if (comma == std::string::npos)
            throw CliInputError("axis syntax: custom:theta_r,phi_r");
        try {
            AxisSpec spec;
            spec.name = token;
            spec.theta = std::stod(args.substr(0, comma));
            spec.phi = std::stod(args.substr(comma + 1));
            return spec;
        } catch (const std::exception&) {
            throw CliInputError("axis syntax: custom:theta_r,phi_r (radians)");
        }
    }
    throw CliInputError("unknown axis '" + token + "' (expected X|Y|Z|custom:t,p)");
}

NoiseMap parse_noise(const std::string& spec, const GptFragment& frag) {
    if (spec == "depol") return depolarising_map(frag.max_mixed, frag.unit);
    if (spec.rfind("deph:", 0) == 0)
        return dephasing_map_for_axis(parse_axis(spec.substr(5)), frag.unit);
    throw CliInputError("unknown noise '" + spec + "' (expected depol or deph:<axis>)");
}

std::vector<AxisSpec> parse_axis_list(const std::string& csv) {
    std::vector<AxisSpec> axes;
    std::stringstream ss(csv);
    std::string token;
    while (std::getline(ss, token, ','))
        if (!token.empty()) axes.push_back(parse_axis(token));
    if (axes.empty()) throw CliInputError("empty axis list");
    return axes;
}

json sweep_rows_json(const std::vector<SweepRecord>& rows) {
    json out = json::array();
    const auto opt = [](const std::optional<double>& v) {
        return v ? json(*v) : json(nullptr);
    };
    for (const auto& r : rows)
        out.push_back({{"theta", r.theta},
                       {"s", r.s},
                       {"r_depol", r.r_depol},
                       {"r_deph_x", opt(r.r_deph_x)},
                       {"r_deph_y", opt(r.r_deph_y)},
                       {"r_deph_z", opt(r.r_deph_z)},
                       {"r_deph_min", opt(r.r_deph_min)},
                       {"argmin_axis", r.argmin_axis}});
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"Noncontextuality (simplex-embedding) robustness toolkit"};
    app.require_subcommand(1);

    std::string fragment_path, noise_spec = "depol";
    std::string out = "-", format = "csv", plot_path;
    int grid = 200, extra_axes = 10, nmin = 2, nmax = 32;
    unsigned long long seed = 1;
    std::string axes_csv = "X,Y,Z";

    auto* robust = app.add_subcommand("robustness",
                                      "Robustness certificate for a fragment file");
    robust->add_option("--fragment", fragment_path, "fragment JSON file")->required();
    robust->add_option("--noise", noise_spec, "depol | deph:X|Y|Z|custom:t,p");
    robust->add_option("--out", out, "output path (default stdout)");

    auto* model = app.add_subcommand("model",
                                     "Dump the extracted noncontextual ontological model");
    model->add_option("--fragment", fragment_path, "fragment JSON file")->required();
    model->add_option("--noise", noise_spec, "depol | deph:X|Y|Z|custom:t,p");
    model->add_option("--out", out, "output path (default stdout)");

    auto* pom = app.add_subcommand("pom", "POM experiment sweeps");
    pom->require_subcommand(1);

    auto* sweep = pom->add_subcommand("sweep", "theta sweep of the 3-to-1 family");
    sweep->add_option("--grid", grid, "grid points on [0, pi/2]");
    sweep->add_option("--axes", axes_csv, "comma-separated dephasing axes");
    sweep->add_option("--out", out, "output path (default stdout)");
    sweep->add_option("--format", format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--plot", plot_path, "write an SVG line chart here");

    auto* scaling = pom->add_subcommand("scaling", "hemisphere scaling study");
    scaling->add_option("--nmin", nmin, "smallest n");
    scaling->add_option("--nmax", nmax, "largest n");
    scaling->add_option("--out", out, "output path (default stdout)");
    scaling->add_option("--format", format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    scaling->add_option("--plot", plot_path, "write an SVG line chart here");

    auto* audit = pom->add_subcommand("axes-audit", "random dephasing-axis audit");
    audit->add_option("--grid", grid, "grid points on [0, pi/2]");
    audit->add_option("--extra-axes", extra_axes, "number of random extra axes");
    audit->add_option("--seed", seed, "RNG seed for the random axes");
    audit->add_option("--out", out, "output path (default stdout)");
    audit->add_option("--format", format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (robust->parsed() || model->parsed()) {
        const GptFragment frag = fragment_from_json(load_json_file(fragment_path));
        const NoiseMap noise = parse_noise(noise_spec, frag);
        const AccessibleFragment acc = accessible(frag);
        json j;
        try {
            const RobustnessCertificate cert = solve_robustness(acc, frag, noise);
            j = certificate_to_json(cert);
            if (model->parsed()) j = j["model"];
        } catch (const NoFiniteRobustness&) {
            j = {{"status", "no_finite_robustness"}, {"noise", noise.name}};
        }
        write_output(out, j.dump(2) + "\n");
        return 0;
    }

    if (sweep->parsed()) {
        SweepOptions opt;
        opt.grid = grid;
        opt.axes = parse_axis_list(axes_csv);
        const std::vector<SweepRecord> rows = sweep_theta(opt);
        for (const auto& r : rows)
            if (!r.error.empty()) throw SolverError("sweep row failed: " + r.error);
        if (format == "csv")
            write_output(out, sweep_csv(rows));
        else
            write_output(out, sweep_rows_json(rows).dump(2) + "\n");
        if (!plot_path.empty()) {
            std::vector<double> xs, ys;
            for (const auto& r : rows) { xs.push_back(r.theta); ys.push_back(r.r_depol); }
            write_output(plot_path,
                         svg_line_chart(xs, ys, "theta (rad)",
                                        "robustness to depolarising noise",
                                        "3-to-1 POM sweep"));
        }
        return 0;
    }

    if (scaling->parsed()) {
        if (nmin < 2 || nmax < nmin) throw CliInputError("need 2 <= nmin <= nmax");
        std::vector<int> ns;
        for (int n = nmin; n <= nmax; ++n) ns.push_back(n);
        const std::vector<ScalingRecord> rows = hemisphere_scaling(ns);
        double r_max = 0.0;
        for (const auto& r : rows) r_max = std::max(r_max, r.r_depol);
        std::ostringstream body;
        if (format == "csv") {
            body << scaling_csv(rows);
            body << "# max observed r_depol = " << r_max << " < 0.5\n"
                 << "# premise r < 0.5 => max_encodable_bits(0.5) = "
                 << max_encodable_bits(0.5) << " (n < 4 for a qubit)\n";
        } else {
            json j;
            j["rows"] = json::array();
            for (const auto& r : rows)
                j["rows"].push_back({{"n", r.n}, {"two_n", r.two_n}, {"r_depol", r.r_depol}});
            j["max_r_depol"] = r_max;
            j["premise"] = "r < 0.5";
            j["max_encodable_bits_at_0.5"] = max_encodable_bits(0.5);
            body << j.dump(2) << "\n";
        }
        write_output(out, body.str());
        if (!plot_path.empty()) {
            std::vector<double> xs, ys;
            for (const auto& r : rows) { xs.push_back(r.two_n); ys.push_back(r.r_depol); }
            write_output(plot_path,
                         svg_line_chart(xs, ys, "number of preparations (2n)",
                                        "robustness to depolarising noise",
                                        "hemisphere scaling"));
        }
        return 0;
    }

    if (audit->parsed()) {
        const std::vector<AuditRecord> rows = random_axis_audit(grid, extra_axes, seed);
        if (format == "csv") {
            std::ostringstream body;
            body << "# seed=" << seed << " extra_axes=" << extra_axes << "\n"
                 << audit_csv(rows);
            write_output(out, body.str());
        } else {
            json j;
            j["seed"] = seed;
            j["extra_axes"] = extra_axes;
            j["rows"] = json::array();
            for (const auto& r : rows)
                j["rows"].push_back({{"theta", r.theta},
                                     {"r_min_xyz", r.r_min_xyz},
                                     {"r_min_aug", r.r_min_aug},
                                     {"abs_diff", r.abs_diff}});
            write_output(out, j.dump(2) + "\n");
        }
        return 0;
    }

    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CliInputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const contextlab::SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 2;
    } catch (const contextlab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
