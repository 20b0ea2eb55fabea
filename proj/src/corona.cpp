#include "gpick/corona.hpp"

#include <cmath>

#include "gpick/gdomain.hpp"

namespace gpick {

void DivisionProblem::validate() const {
    if (nodes.empty()) throw InvalidInputError("division problem: no nodes");
    if (phi.size() != nodes.size() || theta.size() != nodes.size()) {
        throw InvalidInputError("division problem: Phi and Theta need one value per node");
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!in_G(nodes[i]).inside) throw InvalidInputError("division problem: node " + std::to_string(i) + " is not in G");
        for (std::size_t j = 0; j < i; ++j) {
            if (nodes[i] == nodes[j]) throw InvalidInputError("division problem: repeated node");
        }
        if (phi[i].rows() != dim_range() || phi[i].cols() != dim_phi_in() || theta[i].rows() != dim_range() ||
            theta[i].cols() != dim_theta_in() || phi[i].size() == 0 || theta[i].size() == 0) {
            throw InvalidInputError("division problem: inconsistent shapes");
        }
    }
}

BlockHermitian DivisionProblem::defect_kernel() const {
    const int n = static_cast<int>(nodes.size());
    const int d = dim_range();
    CMatrix flat(n * d, n * d);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            flat.block(i * d, j * d, d, d) = phi[i] * phi[j].adjoint() - theta[i] * theta[j].adjoint();
        }
    }
    return BlockHermitian(flat, d);
}

ScreenReport corona_check(const DivisionProblem& problem, int family_size, std::uint64_t seed, double tol) {
    problem.validate();
    return kernel_screen(problem.nodes, problem.defect_kernel(), family_size, seed, tol);
}

DivisionReport corona_synthesize(const DivisionProblem& problem, const SolverConfig& config) {
    problem.validate();
    DivisionReport report;
    if (config.screen) {
        report.screen = corona_check(problem, config.family_size, config.seed, config.screen_tol);
        if (!report.screen->pass) {
            report.status = SolveStatus::infeasible_screen;
            report.reason = "corona_screen";
            return report;
        }
    }

    report.feasibility =
        delta_feasibility(problem.nodes, problem.defect_kernel(), config.resolved_atoms(), config.feasibility);
    switch (report.feasibility->status) {
        case FeasibilityStatus::feasible: break;
        case FeasibilityStatus::infeasible_sign:
            report.status = SolveStatus::infeasible_screen;
            report.reason = "sign_obstruction";
            return report;
        case FeasibilityStatus::stalled:
        case FeasibilityStatus::max_iterations:
            report.status = SolveStatus::solver_failed;
            report.reason = to_string(report.feasibility->status);
            return report;
    }
    report.certificate = report.feasibility->certificate;

    try {
        report.colligation = lurking_isometry_colligation(problem.phi, problem.theta, *report.certificate, config.synthesis);
    } catch (const Error& e) {
        report.status = SolveStatus::solver_failed;
        report.reason = std::string("synthesis: ") + e.what();
        return report;
    }

    for (std::size_t i = 0; i < problem.nodes.size(); ++i) {
        const CMatrix err = problem.phi[i] * transfer_eval(*report.colligation, problem.nodes[i]) - problem.theta[i];
        report.max_division_error = std::max(report.max_division_error, spectral_norm(err));
    }
    report.sampled_norm = sup_norm_estimate(*report.colligation, config.norm_samples, config.seed).value;
    if (report.max_division_error <= config.interp_tol) {
        report.status = SolveStatus::feasible;
        report.reason = "certificate";
    } else {
        report.status = SolveStatus::solver_failed;
        report.reason = "division_error";
    }
    return report;
}

DivisionProblem toeplitz_division_problem(const NodeSet& nodes, const std::vector<std::vector<Complex>>& values,
                                          double delta) {
    if (!(delta > 0.0)) throw InvalidInputError("toeplitz_corona: delta must be positive");
    if (values.size() != nodes.size()) throw InvalidInputError("toeplitz_corona: one row of values per node required");
    DivisionProblem problem;
    problem.nodes = nodes;
    const auto count = values.empty() ? 0 : static_cast<Eigen::Index>(values.front().size());
    if (count == 0) throw InvalidInputError("toeplitz_corona: no functions given");
    for (const auto& row : values) {
        if (static_cast<Eigen::Index>(row.size()) != count) throw InvalidInputError("toeplitz_corona: ragged values");
        CMatrix phi_row(1, count);
        for (Eigen::Index k = 0; k < count; ++k) phi_row(0, k) = row[static_cast<std::size_t>(k)];
        problem.phi.push_back(phi_row);
        problem.theta.push_back(CMatrix::Constant(1, 1, Complex(std::sqrt(delta))));
    }
    return problem;
}

CVector toeplitz_psi(const Colligation& psi_colligation, double delta, const GPoint& point) {
    return transfer_eval(psi_colligation, point).col(0) / std::sqrt(delta);
}

ToeplitzCoronaReport toeplitz_corona(const NodeSet& nodes, const std::vector<std::vector<Complex>>& values, double delta,
                                     const SolverConfig& config) {
    const DivisionProblem problem = toeplitz_division_problem(nodes, values, delta);
    ToeplitzCoronaReport report;
    report.delta = delta;
    report.division = corona_synthesize(problem, config);
    if (report.division.status != SolveStatus::feasible) return report;

    const Colligation& psi = *report.division.colligation;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const CVector v = toeplitz_psi(psi, delta, nodes[i]);
        Complex total = 0.0;
        for (Eigen::Index k = 0; k < v.size(); ++k) total += values[i][static_cast<std::size_t>(k)] * v(k);
        report.node_identity_error = std::max(report.node_identity_error, std::abs(total - 1.0));
    }
    report.held_out = config.norm_samples;
    // Held-out draws use a seed distinct from the norm estimate inside corona_synthesize.
    for (const auto& point : sample_G(config.norm_samples, config.seed + 1)) {
        report.sampled_psi_energy = std::max(report.sampled_psi_energy, toeplitz_psi(psi, delta, point).squaredNorm());
    }
    return report;
}

}  // namespace gpick
