#pragma once

#include <cstdint>

#include "gpick/interpolation.hpp"

namespace gpick {

/// Division data on a finite node set: find a contractive Psi with
/// Phi(lambda) Psi(lambda) = Theta(lambda) at every node.
struct DivisionProblem {
    NodeSet nodes;
    std::vector<CMatrix> phi;    // l2 x l1 per node
    std::vector<CMatrix> theta;  // l2 x l3 per node

    int dim_range() const { return phi.empty() ? 1 : static_cast<int>(phi.front().rows()); }   // l2
    int dim_phi_in() const { return phi.empty() ? 1 : static_cast<int>(phi.front().cols()); }  // l1
    int dim_theta_in() const { return theta.empty() ? 1 : static_cast<int>(theta.front().cols()); }  // l3

    void validate() const;
    /// [Phi_i Phi_j^* - Theta_i Theta_j^*] with block_dim l2.
    BlockHermitian defect_kernel() const;
};

/// Necessary condition for contractive division; a failure is a definitive no.
ScreenReport corona_check(const DivisionProblem& problem, int family_size, std::uint64_t seed, double tol);

struct DivisionReport {
    SolveStatus status = SolveStatus::solver_failed;
    std::string reason;
    std::optional<ScreenReport> screen;
    std::optional<FeasibilityResult> feasibility;
    std::optional<CPCertificate> certificate;
    /// Realization of Psi : C^l3 -> C^l1.
    std::optional<Colligation> colligation;
    /// max_i ||Phi_i Psi(lambda_i) - Theta_i||
    double max_division_error = 0.0;
    double sampled_norm = 0.0;
};

DivisionReport corona_synthesize(const DivisionProblem& problem, const SolverConfig& config = {});

struct ToeplitzCoronaReport {
    DivisionReport division;
    double delta = 0.0;
    /// max_i |sum_k phi_k(lambda_i) psi_k(lambda_i) - 1| for psi = Psi / sqrt(delta).
    double node_identity_error = 0.0;
    /// max over held-out samples of sum_k |psi_k|^2; bounded by 1/delta.
    double sampled_psi_energy = 0.0;
    std::size_t held_out = 0;
};

/// Corona data phi_1..phi_N sampled at the nodes (values[i][k] = phi_k(lambda_i))
/// with lower bound delta: solves Phi Psi = sqrt(delta) for the row
/// Phi = (phi_1, ..., phi_N) and reports psi_k = Psi_k / sqrt(delta).
ToeplitzCoronaReport toeplitz_corona(const NodeSet& nodes, const std::vector<std::vector<Complex>>& values, double delta,
                                     const SolverConfig& config = {});

/// The division problem assembled by toeplitz_corona.
DivisionProblem toeplitz_division_problem(const NodeSet& nodes, const std::vector<std::vector<Complex>>& values,
                                          double delta);

/// psi(lambda) = Psi(lambda) / sqrt(delta) as an N-vector.
CVector toeplitz_psi(const Colligation& psi_colligation, double delta, const GPoint& point);

}  // namespace gpick
