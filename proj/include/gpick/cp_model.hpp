#pragma once

#include <cstdint>
#include <functional>

#include "gpick/hermlin.hpp"
#include "gpick/types.hpp"

namespace gpick {

/// Finite positive measure on the closed disk.
struct AtomicMeasure {
    std::vector<Complex> atoms;
    std::vector<double> weights;

    /// Checks distinct atoms in the closed disk and positive weights.
    void validate() const;
};

/// Completely positive function with finite atomic support:
///   Delta(lambda_i, lambda_j)(h) = sum_alpha h(alpha) Gamma_alpha(i, j),
/// with the measure weights absorbed into the blocks.
struct CPCertificate {
    NodeSet nodes;
    std::vector<Complex> atoms;
    std::vector<BlockHermitian> blocks;

    int block_dim() const { return blocks.empty() ? 1 : blocks.front().block_dim(); }
    void validate() const;
};

/// Certificate with Gamma_alpha = w_alpha * [kernel(alpha, lambda_i, lambda_j)].
CPCertificate certificate_from_measure(const NodeSet& nodes, const AtomicMeasure& measure,
                                       const std::function<BlockHermitian(Complex, const NodeSet&)>& kernel);

/// Delta(lambda_i, lambda_j)(h) for h given by its values on the atoms.
CMatrix delta_eval(const CPCertificate& cert, int i, int j, const std::vector<Complex>& h);

/// Complete positivity screen: every Gamma_alpha is PSD within tol and
/// `trials` random tuples satisfy sum c_i^* Delta(i,j)(conj(a_i) a_j) c_j >= -tol.
bool cp_check(const CPCertificate& cert, int trials, std::uint64_t seed, double tol);

/// [sum_alpha (1 - phi(alpha, lambda_i) conj(phi(alpha, lambda_j))) Gamma_alpha(i, j)]
BlockHermitian residual_of(const CPCertificate& cert);

/// Finite GNS data of a certificate: Gamma_alpha = L_alpha L_alpha^* and the
/// representation pi(h) = direct sum over atoms of h(alpha) I_{r_alpha}.
struct GNSFactor {
    std::vector<Complex> atoms;
    std::vector<CMatrix> factors;  // (N*d) x r_alpha each
    std::vector<int> rep_dims;
    int block_dim = 1;

    int state_dim() const;
    /// L(lambda_i)(h): d x state_dim, the row block i of [h(alpha) L_alpha].
    CMatrix L(int node, const std::vector<Complex>& h) const;
    /// pi(h): state_dim x state_dim diagonal.
    CMatrix pi(const std::vector<Complex>& h) const;
};

GNSFactor gns_factor(const CPCertificate& cert, double tol);

}  // namespace gpick
