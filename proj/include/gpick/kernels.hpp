#pragma once

#include <cstdint>
#include <functional>

#include "gpick/hermlin.hpp"
#include "gpick/types.hpp"

namespace gpick {

/// A kernel restricted to finitely many nodes.
struct KernelSample {
    NodeSet nodes;
    BlockHermitian gram;
};

struct AdmissibilityReport {
    Complex worst_alpha{};
    double worst_eig = 0.0;
    bool pass = false;
};

/// Szego kernel of the symmetrized bidisk,
/// 1 / [(1 - p conj(q))^2 - (s - conj(t) p) conj(t - conj(s) q)].
Complex szego(const GPoint& lambda, const GPoint& mu);

/// prod_{i,j} (1 - z_i conj(w_j)) over the root pairs of lambda and mu;
/// equals the Szego denominator.
Complex szego_denominator_product(const GPoint& lambda, const GPoint& mu);

KernelSample szego_gram(const NodeSet& nodes);

/// 1 / (1 - phi(alpha, lambda) conj(phi(alpha, mu))).
Complex b_kernel(Complex alpha, const GPoint& lambda, const GPoint& mu);

using VectorField = std::function<CVector(const GPoint&)>;

/// The dyad u(lambda) u(mu)^* scaled by b_kernel(alpha, lambda, mu).
CMatrix d_kernel(Complex alpha, const VectorField& u, const GPoint& lambda, const GPoint& mu);

/// Block Gram [kernel(alpha, node_i, node_j)] of d_kernel over a node set.
KernelSample d_kernel_gram(Complex alpha, const VectorField& u, const NodeSet& nodes);

/// Scalar matrix [1 - phi(alpha, lambda_i) conj(phi(alpha, lambda_j))].
CMatrix phi_schur_weights(Complex alpha, const NodeSet& nodes);

/// Kernel sample whose block (i,j) is scaled by weights(i,j).
BlockHermitian schur_scale(const BlockHermitian& gram, const CMatrix& weights);

/// Worst eigenvalue over alpha on the circle grid of the Schur-scaled Gram
/// [(1 - phi_i conj(phi_j)) k_ij]. Passing means the sample is consistent
/// with an admissible kernel.
AdmissibilityReport admissibility_check(const KernelSample& sample, int circle_grid = 128, double tol = 1e-9);

/// Block-wise Schur product of a kernel sample with a block PSD multiplier
/// (scalar gram times d x d blocks when gram has block_dim 1).
KernelSample schur_multiply(const KernelSample& sample, const BlockHermitian& multiplier);

/// Test family of admissible kernels on `nodes`: the Szego Gram (times the
/// block identity) followed by count - 1 Schur products of it with random
/// PSD correlation matrices (unit block diagonal).
std::vector<KernelSample> admissible_family(const NodeSet& nodes, int count, std::uint64_t seed, int block_dim = 1);

}  // namespace gpick
