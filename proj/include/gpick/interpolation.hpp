#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "gpick/cp_model.hpp"
#include "gpick/hermlin.hpp"
#include "gpick/realization.hpp"
#include "gpick/types.hpp"

namespace gpick {

/// Pick data: W_i (dim_out x dim_in) prescribed at distinct nodes of G.
struct InterpolationProblem {
    NodeSet nodes;
    std::vector<CMatrix> targets;

    int dim_in() const { return targets.empty() ? 1 : static_cast<int>(targets.front().cols()); }
    int dim_out() const { return targets.empty() ? 1 : static_cast<int>(targets.front().rows()); }

    /// Distinct nodes in G, one target per node, common target shape.
    void validate() const;
    /// [I - W_i W_j^*] as a block matrix with block_dim = dim_out.
    BlockHermitian defect_kernel() const;
};

struct ScreenReport {
    double worst_eig = 0.0;
    /// Index of the family member attaining worst_eig.
    int worst_kernel = 0;
    int kernels_checked = 0;
    bool pass = false;
};

/// Worst eigenvalue of [J(i,j) (x) k(i,j)] (Kronecker product per block)
/// over admissible_family(nodes, family_size, seed, J.block_dim()).
ScreenReport kernel_screen(const NodeSet& nodes, const BlockHermitian& J, int family_size, std::uint64_t seed,
                           double tol);

/// Necessary Pick condition; a failure is a definitive no.
ScreenReport pick_check(const InterpolationProblem& problem, int family_size, std::uint64_t seed, double tol);

/// The default atom grid: `circle` equispaced points on the unit circle,
/// starting at 1, followed by the centre when `include_center` is set.
std::vector<Complex> default_atoms(int circle, bool include_center = true);

enum class FeasibilityStatus {
    feasible,
    /// A diagonal block J(i,i) is not PSD; no completely positive Delta can exist.
    infeasible_sign,
    /// Residuals stopped decreasing: no certificate on this atom grid was found.
    stalled,
    max_iterations,
};

std::string to_string(FeasibilityStatus status);

struct FeasibilityOptions {
    int max_iters = 20000;
    double affine_tol = 1e-8;
    int stall_window = 50;
    double stall_decrease = 1e-3;
    /// Levenberg-Marquardt iterations on Gamma = L L^* after a stall or the
    /// iteration cap; 0 disables the polish.
    int polish_iters = 100;
};

struct FeasibilityResult {
    FeasibilityStatus status = FeasibilityStatus::stalled;
    /// PSD-projected blocks; present whenever an iterate exists.
    std::optional<CPCertificate> certificate;
    double affine_residual = 0.0;  // max |residual_of(cert) - J|
    double psd_residual = 0.0;     // Frobenius distance of the affine iterate to the PSD cones
    int iterations = 0;
    /// The certificate came from the factored polish rather than the projections.
    bool polished = false;
};

/// Finds PSD blocks Gamma_alpha with
///   sum_alpha (1 - phi(alpha, lambda_i) conj(phi(alpha, lambda_j))) Gamma_alpha(i, j) = J(i, j)
/// by Dykstra's alternating projections between the affine constraint set
/// (entrywise least-squares projection) and the product of PSD cones. When the
/// projections stall or hit the cap, a Levenberg-Marquardt polish on the
/// factored blocks L L^* is tried from the last PSD iterate; the result is
/// accepted only if its affine residual meets affine_tol.
FeasibilityResult delta_feasibility(const NodeSet& nodes, const BlockHermitian& J, const std::vector<Complex>& atoms,
                                    const FeasibilityOptions& options = {});

FeasibilityResult delta_feasibility(const InterpolationProblem& problem, const std::vector<Complex>& atoms,
                                    const FeasibilityOptions& options = {});

struct SynthesisOptions {
    /// Gram defect tolerance for the lurking isometry.
    double gram_tol = 1e-7;
    /// Relative eigenvalue cutoff for the semidefinite factors.
    double rank_tol = 1e-9;
};

/// Lurking-isometry synthesis for certificates of
///   P_i P_j^* - Q_i Q_j^* = Delta(lambda_i, lambda_j)(1 - phi_i conj(phi_j)),
/// P_i : d x a, Q_i : d x b. Sends [P_i^* e ; pi(phi_i)^* L_i(1)^* e] to
/// [Q_i^* e ; L_i(1)^* e], completes to a unitary V1 and returns V = V1^*
/// (rows/columns of padding coordinates removed) as a colligation C^b -> C^a
/// whose transfer function G satisfies P_i G(lambda_i) = Q_i.
Colligation lurking_isometry_colligation(const std::vector<CMatrix>& P, const std::vector<CMatrix>& Q,
                                         const CPCertificate& cert, const SynthesisOptions& options = {});

/// Realization of an interpolant from a certificate of I - W_i W_j^*.
Colligation synthesize(const InterpolationProblem& problem, const CPCertificate& cert,
                       const SynthesisOptions& options = {});
Colligation synthesize(const InterpolationProblem& problem, const CPCertificate& cert, double tol);

struct SolverConfig {
    int family_size = 8;
    std::uint64_t seed = 0;
    int circle_atoms = 16;
    bool include_center = true;
    /// Explicit atom list; overrides circle_atoms/include_center when non-empty.
    std::vector<Complex> atoms;
    bool screen = true;
    double screen_tol = 1e-9;
    double interp_tol = 1e-6;
    std::size_t norm_samples = 200;
    FeasibilityOptions feasibility;
    SynthesisOptions synthesis;

    std::vector<Complex> resolved_atoms() const;
};

enum class SolveStatus { feasible, infeasible_screen, solver_failed };

std::string to_string(SolveStatus status);

struct SolveReport {
    SolveStatus status = SolveStatus::solver_failed;
    /// Which stage decided the outcome ("pick_screen", "sign_obstruction", "stalled", ...).
    std::string reason;
    std::optional<ScreenReport> screen;
    std::optional<FeasibilityResult> feasibility;
    std::optional<CPCertificate> certificate;
    std::optional<Colligation> colligation;
    double max_interp_error = 0.0;
    double sampled_norm = 0.0;
};

SolveReport solve(const InterpolationProblem& problem, const SolverConfig& config = {});

}  // namespace gpick
