#include "gpick/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include "gpick/corona.hpp"
#include "gpick/gdomain.hpp"
#include "gpick/interpolation.hpp"
#include "gpick/json_io.hpp"
#include "gpick/kernels.hpp"
#include "gpick/realization.hpp"

namespace gpick::cli {

using io::Json;

namespace {

void build_app(CLI::App& app, CommandConfig& config) {
    app.require_subcommand(1);
    app.add_option("--input", config.input_path, "input JSON file ('-' for stdin)");
    app.add_option("--output", config.output_path, "output file ('-' for stdout)");
    app.add_option("--seed", config.seed, "random seed");
    for (auto& [name, value] : config.tolerances) app.add_option("--tol." + name, value, "tolerance '" + name + "'");
    for (auto& [name, value] : config.grids) app.add_option("--grid." + name, value, "grid size '" + name + "'")->check(CLI::PositiveNumber);
    app.add_option("--family-size", config.family_size, "admissible kernels in the Pick screen")->check(CLI::PositiveNumber);
    app.add_option("--atoms", config.atoms, "equispaced circle atoms for the feasibility solver")->check(CLI::PositiveNumber);
    app.add_flag("!--no-center", config.include_center, "drop the centre atom 0");
    app.add_option("--samples", config.samples, "sample count (norm estimates, held-out checks, sample-region)");
    app.add_option("--max-iters", config.max_iters, "feasibility iteration cap")->check(CLI::PositiveNumber);
    app.add_option("--polish-iters", config.polish_iters, "factored polish iterations after the projections (0 = off)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--mode", config.mode, "membership mode")->check(CLI::IsMember({"roots", "phi_sup"}));
    app.add_flag("!--skip-screen", config.screen, "skip the Pick screen before the feasibility solver");

    static const std::map<std::string, std::string> help = {
        {"membership", "membership test for a point or points in G"},
        {"phi-eval", "evaluate phi(alpha, s, p)"},
        {"szego-gram", "Szego Gram matrix on a node set"},
        {"admissibility-check", "admissibility test for a kernel sample"},
        {"pick-check", "Pick screen for interpolation data"},
        {"interpolate", "solve a Pick interpolation problem"},
        {"realize-eval", "evaluate a stored colligation"},
        {"corona-solve", "solve a division problem Phi Psi = Theta"},
        {"toeplitz-corona", "Toeplitz corona: sum phi_k psi_k = 1"},
        {"sample-region", "CSV of random (s, p) with membership margin"},
    };
    for (const auto& name : commands()) {
        auto* sub = app.add_subcommand(name, help.at(name));
        sub->fallthrough();
        sub->callback([&config, name]() { config.command = name; });
    }
}

Json config_json(const CommandConfig& config) {
    Json tol = Json::object();
    for (const auto& [name, value] : config.tolerances) tol[name] = value;
    Json grid = Json::object();
    for (const auto& [name, value] : config.grids) grid[name] = value;
    return Json{{"command", config.command}, {"seed", config.seed},          {"tol", tol},
                {"grid", grid},             {"family_size", config.family_size}, {"atoms", config.atoms},
                {"include_center", config.include_center}, {"samples", config.samples},
                {"max_iters", config.max_iters}, {"polish_iters", config.polish_iters}, {"mode", config.mode},      {"screen", config.screen}};
}

Json number_or_null(double v) {
    if (std::isnan(v)) return nullptr;
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

SolverConfig solver_config(const CommandConfig& config) {
    SolverConfig sc;
    sc.family_size = config.family_size;
    sc.seed = config.seed;
    sc.circle_atoms = config.atoms;
    sc.include_center = config.include_center;
    sc.screen = config.screen;
    sc.screen_tol = config.tolerances.at("screen");
    sc.interp_tol = config.tolerances.at("interp");
    sc.norm_samples = config.samples;
    sc.feasibility.max_iters = config.max_iters;
    sc.feasibility.polish_iters = config.polish_iters;
    sc.feasibility.affine_tol = config.tolerances.at("affine");
    sc.feasibility.stall_decrease = config.tolerances.at("stall");
    sc.feasibility.stall_window = config.grids.at("stall");
    sc.synthesis.gram_tol = config.tolerances.at("gram");
    sc.synthesis.rank_tol = config.tolerances.at("psd");
    return sc;
}

/// An "atoms" array in the problem JSON replaces the circle grid.
SolverConfig solver_config(const CommandConfig& config, const Json& input) {
    SolverConfig sc = solver_config(config);
    if (input.contains("atoms")) {
        sc.atoms = io::complex_list_from(input.at("atoms"));
        if (sc.atoms.empty()) throw InvalidInputError("'atoms' must not be empty");
        for (const auto& a : sc.atoms) {
            if (std::abs(a) > 1.0) throw InvalidInputError("atoms must lie in the closed unit disk");
        }
    }
    return sc;
}

int exit_for(SolveStatus status) {
    switch (status) {
        case SolveStatus::feasible: return exit_ok;
        case SolveStatus::infeasible_screen: return exit_negative;
        case SolveStatus::solver_failed: return exit_gave_up;
    }
    return exit_gave_up;
}

Json read_input(const CommandConfig& config, std::istream& in) {
    std::ifstream file;
    std::istream* src = &in;
    if (config.input_path != "-") {
        file.open(config.input_path);
        if (!file) throw InvalidInputError("cannot open input '" + config.input_path + "'");
        src = &file;
    }
    try {
        return Json::parse(*src);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInputError(std::string("malformed JSON: ") + e.what());
    }
}

NodeSet points_of(const Json& input) {
    if (input.contains("point")) return {io::point_from(input.at("point"))};
    if (input.contains("points")) return io::nodes_from(input.at("points"));
    throw InvalidInputError("missing field 'point' or 'points'");
}

void merge(Json& into, const Json& from) {
    for (const auto& [key, value] : from.items()) into[key] = value;
}

struct Outcome {
    Json payload;
    int code = exit_ok;
};

Outcome cmd_membership(const CommandConfig& config, const Json& input) {
    MembershipOptions options;
    options.mode = config.mode == "phi_sup" ? MembershipMode::phi_sup : MembershipMode::roots;
    options.circle_grid = config.grids.at("circle");
    options.phi_tol = config.tolerances.at("membership");
    if (options.circle_grid < 8) throw InvalidInputError("--grid.circle must be at least 8");

    auto entry = [&](const GPoint& point) {
        const MembershipReport r = in_G(point, options);
        const auto [z1, z2] = roots(point);
        return Json{{"point", io::to_json(point)},
                    {"inside", r.inside},
                    {"margin", r.margin},
                    {"sup_phi", number_or_null(r.sup_phi)},
                    {"roots", Json::array({io::to_json(z1), io::to_json(z2)})}};
    };

    Outcome outcome;
    outcome.payload["config"] = config_json(config);
    if (input.contains("point")) {
        const Json e = entry(io::point_from(input.at("point")));
        merge(outcome.payload, e);
        outcome.code = e.at("inside").get<bool>() ? exit_ok : exit_negative;
        return outcome;
    }
    Json results = Json::array();
    int inside = 0;
    for (const auto& point : points_of(input)) {
        results.push_back(entry(point));
        inside += results.back().at("inside").get<bool>() ? 1 : 0;
    }
    outcome.payload["inside_count"] = inside;
    outcome.payload["results"] = results;
    outcome.code = inside == static_cast<int>(results.size()) ? exit_ok : exit_negative;
    return outcome;
}

Outcome cmd_phi_eval(const CommandConfig& config, const Json& input) {
    if (!input.contains("alpha")) throw InvalidInputError("missing field 'alpha'");
    const Complex alpha = io::complex_from(input.at("alpha"));
    Outcome outcome;
    outcome.payload["config"] = config_json(config);
    outcome.payload["alpha"] = io::to_json(alpha);
    try {
        if (input.contains("point")) {
            const GPoint point = io::point_from(input.at("point"));
            outcome.payload["point"] = io::to_json(point);
            outcome.payload["value"] = io::to_json(phi(alpha, point));
        } else {
            const NodeSet points = points_of(input);
            Json values = Json::array();
            for (const auto& point : points) values.push_back(io::to_json(phi(alpha, point)));
            outcome.payload["points"] = io::to_json(points);
            outcome.payload["values"] = values;
        }
    } catch (const PoleError& e) {
        throw InvalidInputError(e.what());
    }
    return outcome;
}

void require_in_G(const NodeSet& nodes) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!in_G(nodes[i]).inside) throw InvalidInputError("node " + std::to_string(i) + " is not in G");
    }
}

Outcome cmd_szego_gram(const CommandConfig& config, const Json& input) {
    if (!input.contains("nodes")) throw InvalidInputError("missing field 'nodes'");
    const NodeSet nodes = io::nodes_from(input.at("nodes"));
    require_in_G(nodes);
    Outcome outcome;
    outcome.payload["config"] = config_json(config);
    merge(outcome.payload, io::to_json(szego_gram(nodes)));
    return outcome;
}

Outcome cmd_admissibility(const CommandConfig& config, const Json& input) {
    const KernelSample sample = io::kernel_sample_from(input);
    require_in_G(sample.nodes);
    const AdmissibilityReport report =
        admissibility_check(sample, config.grids.at("admissibility"), config.tolerances.at("admissibility"));
    Outcome outcome;
    outcome.payload["config"] = config_json(config);
    merge(outcome.payload, io::to_json(report));
    outcome.code = report.pass ? exit_ok : exit_negative;
    return outcome;
}

Outcome cmd_pick_check(const CommandConfig& config, const Json& input) {
    const InterpolationProblem problem = io::interpolation_problem_from(input);
    const ScreenReport report = pick_check(problem, config.family_size, config.seed, config.tolerances.at("screen"));
    Outcome outcome;
    outcome.payload["config"] = config_json(config);
    merge(outcome.payload, io::to_json(report));
    outcome.code = report.pass ? exit_ok : exit_negative;
    return outcome;
}

Outcome cmd_interpolate(const CommandConfig& config, const Json& input) {
    const InterpolationProblem problem = io::interpolation_problem_from(input);
    const SolverConfig sc = solver_config(config, input);
    const SolveReport report = solve(problem, sc);
    Outcome outcome;
    outcome.payload["config"] = config_json(config);
    outcome.payload["atoms_used"] = io::to_json(sc.resolved_atoms());
    merge(outcome.payload, io::to_json(report));
    outcome.code = exit_for(report.status);
    return outcome;
}

Outcome cmd_realize_eval(const CommandConfig& config, const Json& input) {
    if (!input.contains("colligation")) throw InvalidInputError("missing field 'colligation'");
    const Colligation col = io::colligation_from(input.at("colligation"));
    const NodeSet points = points_of(input);
    require_in_G(points);
    Json values = Json::array();
    Json norms = Json::array();
    for (const auto& point : points) {
        const CMatrix f = transfer_eval(col, point);
        values.push_back(io::to_json(f));
        norms.push_back(spectral_norm(f));
    }
    Outcome outcome;
    outcome.payload["config"] = config_json(config);
    outcome.payload["points"] = io::to_json(points);
    outcome.payload["values"] = values;
    outcome.payload["norms"] = norms;
    outcome.payload["unitarity_defect"] = col.unitarity_defect();
    return outcome;
}

Outcome cmd_corona_solve(const CommandConfig& config, const Json& input) {
    const DivisionProblem problem = io::division_problem_from(input);
    const SolverConfig sc = solver_config(config, input);
    const DivisionReport report = corona_synthesize(problem, sc);
    Outcome outcome;
    outcome.payload["config"] = config_json(config);
    outcome.payload["atoms_used"] = io::to_json(sc.resolved_atoms());
    merge(outcome.payload, io::to_json(report));
    outcome.code = exit_for(report.status);
    return outcome;
}

Outcome cmd_toeplitz_corona(const CommandConfig& config, const Json& input) {
    if (!input.contains("nodes") || !input.contains("phis") || !input.contains("delta")) {
        throw InvalidInputError("toeplitz-corona needs 'nodes', 'phis' and 'delta'");
    }
    const NodeSet nodes = io::nodes_from(input.at("nodes"));
    const Json& phis = input.at("phis");
    if (!phis.is_array()) throw InvalidInputError("'phis' must be an array (one entry per node)");
    std::vector<std::vector<Complex>> values;
    for (const auto& row : phis) {
        // A bare complex stands for a single function.
        if (row.is_number() || (row.is_array() && row.size() == 2 && row[0].is_number())) {
            values.push_back({io::complex_from(row)});
        } else {
            values.push_back(io::complex_list_from(row));
        }
    }
    if (!input.at("delta").is_number()) throw InvalidInputError("'delta' must be a number");
    const double delta = input.at("delta").get<double>();

    const SolverConfig sc = solver_config(config, input);
    const ToeplitzCoronaReport report = toeplitz_corona(nodes, values, delta, sc);
    Outcome outcome;
    outcome.payload["config"] = config_json(config);
    outcome.payload["atoms_used"] = io::to_json(sc.resolved_atoms());
    outcome.payload["delta"] = delta;
    outcome.payload["psi_energy_bound"] = 1.0 / delta;
    if (report.division.status == SolveStatus::feasible) {
        outcome.payload["node_identity_error"] = report.node_identity_error;
        outcome.payload["sampled_psi_energy"] = report.sampled_psi_energy;
        outcome.payload["held_out"] = report.held_out;
    }
    outcome.payload["division"] = io::to_json(report.division);
    outcome.code = exit_for(report.division.status);
    return outcome;
}

void write_sample_region(const CommandConfig& config, std::ostream& out) {
    MembershipOptions options;
    options.mode = config.mode == "phi_sup" ? MembershipMode::phi_sup : MembershipMode::roots;
    options.circle_grid = config.grids.at("circle");
    options.phi_tol = config.tolerances.at("membership");
    if (options.circle_grid < 8) throw InvalidInputError("--grid.circle must be at least 8");
    const NodeSet points = sample_box(config.samples, config.seed);

    std::ostringstream body;
    body << "# " << config_json(config).dump() << '\n';
    body << "re_s,im_s,re_p,im_p,margin\n";
    body << std::setprecision(17);
    for (const auto& point : points) {
        const MembershipReport r = in_G(point, options);
        body << point.s.real() << ',' << point.s.imag() << ',' << point.p.real() << ',' << point.p.imag() << ','
             << r.margin << '\n';
    }
    out << body.str();
}

void emit(const CommandConfig& config, const std::string& text, std::ostream& out) {
    if (config.output_path == "-") {
        out << text;
        out.flush();
        return;
    }
    std::ofstream file(config.output_path, std::ios::binary);
    if (!file) throw InvalidInputError("cannot open output '" + config.output_path + "'");
    file << text;
}

}  // namespace

const std::vector<std::string>& commands() {
    static const std::vector<std::string> names = {"membership",   "phi-eval",      "szego-gram",  "admissibility-check",
                                                   "pick-check",   "interpolate",   "realize-eval", "corona-solve",
                                                   "toeplitz-corona", "sample-region"};
    return names;
}

CommandConfig default_config() {
    CommandConfig config;
    config.tolerances = {{"membership", 1e-10}, {"admissibility", 1e-9}, {"screen", 1e-9}, {"affine", 1e-8},
                         {"psd", 1e-9},         {"interp", 1e-6},        {"gram", 1e-7},   {"stall", 1e-3}};
    config.grids = {{"circle", 256}, {"admissibility", 128}, {"stall", 50}};
    return config;
}

CommandConfig parse_args(const std::vector<std::string>& args) {
    CommandConfig config = default_config();
    CLI::App app{"gpick"};
    build_app(app, config);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        throw InvalidInputError(e.what());
    }
    return config;
}

int run(const CommandConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
    try {
        if (config.command == "sample-region") {
            std::ostringstream csv;
            write_sample_region(config, csv);
            emit(config, csv.str(), out);
            return exit_ok;
        }
        const Json input = read_input(config, in);
        if (!input.is_object()) throw InvalidInputError("input must be a JSON object");

        Outcome outcome;
        const std::string& c = config.command;
        if (c == "membership") outcome = cmd_membership(config, input);
        else if (c == "phi-eval") outcome = cmd_phi_eval(config, input);
        else if (c == "szego-gram") outcome = cmd_szego_gram(config, input);
        else if (c == "admissibility-check") outcome = cmd_admissibility(config, input);
        else if (c == "pick-check") outcome = cmd_pick_check(config, input);
        else if (c == "interpolate") outcome = cmd_interpolate(config, input);
        else if (c == "realize-eval") outcome = cmd_realize_eval(config, input);
        else if (c == "corona-solve") outcome = cmd_corona_solve(config, input);
        else if (c == "toeplitz-corona") outcome = cmd_toeplitz_corona(config, input);
        else throw InvalidInputError("unknown command '" + c + "'");

        emit(config, outcome.payload.dump(2) + "\n", out);
        return outcome.code;
    } catch (const InvalidInputError& e) {
        err << "gpick: invalid input: " << e.what() << '\n';
        return exit_invalid;
    } catch (const nlohmann::json::exception& e) {
        err << "gpick: invalid input: " << e.what() << '\n';
        return exit_invalid;
    } catch (const Error& e) {
        err << "gpick: " << e.what() << '\n';
        return exit_gave_up;
    }
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CommandConfig config = default_config();
    CLI::App app{"gpick: function theory on the symmetrized bidisk"};
    build_app(app, config);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Success&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "gpick: " << e.what() << '\n';
        return exit_invalid;
    }
    return run(config, in, out, err);
}

}  // namespace gpick::cli
