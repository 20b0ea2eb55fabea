#include "gpick/kernels.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "gpick/gdomain.hpp"

namespace gpick {

Complex szego(const GPoint& lambda, const GPoint& mu) {
    const Complex s = lambda.s, p = lambda.p;
    const Complex t = mu.s, q = mu.p;
    const Complex one_pq = 1.0 - p * std::conj(q);
    const Complex denom = one_pq * one_pq - (s - std::conj(t) * p) * std::conj(t - std::conj(s) * q);
    if (std::abs(denom) < 1e-14) throw DegenerateDenominatorError("szego: denominator vanishes");
    return 1.0 / denom;
}

Complex szego_denominator_product(const GPoint& lambda, const GPoint& mu) {
    const auto [z1, z2] = roots(lambda);
    const auto [w1, w2] = roots(mu);
    Complex prod = 1.0;
    for (Complex z : {z1, z2}) {
        for (Complex w : {w1, w2}) prod *= 1.0 - z * std::conj(w);
    }
    return prod;
}

KernelSample szego_gram(const NodeSet& nodes) {
    const auto n = static_cast<Eigen::Index>(nodes.size());
    CMatrix gram(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) gram(i, j) = szego(nodes[i], nodes[j]);
    }
    return {nodes, BlockHermitian::scalar(gram)};
}

Complex b_kernel(Complex alpha, const GPoint& lambda, const GPoint& mu) {
    return 1.0 / (1.0 - phi(alpha, lambda) * std::conj(phi(alpha, mu)));
}

CMatrix d_kernel(Complex alpha, const VectorField& u, const GPoint& lambda, const GPoint& mu) {
    const CVector ul = u(lambda);
    const CVector um = u(mu);
    if (ul.size() != um.size()) throw InvalidInputError("d_kernel: vector dimensions differ");
    return (ul * um.adjoint()) * b_kernel(alpha, lambda, mu);
}

KernelSample d_kernel_gram(Complex alpha, const VectorField& u, const NodeSet& nodes) {
    const int n = static_cast<int>(nodes.size());
    std::vector<CVector> values;
    values.reserve(nodes.size());
    for (const auto& node : nodes) values.push_back(u(node));
    const int d = n > 0 ? static_cast<int>(values.front().size()) : 1;
    CMatrix flat(n * d, n * d);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (values[i].size() != d || values[j].size() != d) throw InvalidInputError("d_kernel_gram: vector dimensions differ");
            flat.block(i * d, j * d, d, d) = values[i] * values[j].adjoint() * b_kernel(alpha, nodes[i], nodes[j]);
        }
    }
    return {nodes, BlockHermitian(flat, d)};
}

CMatrix phi_schur_weights(Complex alpha, const NodeSet& nodes) {
    const auto n = static_cast<Eigen::Index>(nodes.size());
    CVector w(n);
    for (Eigen::Index i = 0; i < n; ++i) w(i) = phi(alpha, nodes[i]);
    CMatrix out(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) out(i, j) = 1.0 - w(i) * std::conj(w(j));
    }
    return out;
}

BlockHermitian schur_scale(const BlockHermitian& gram, const CMatrix& weights) {
    const int n = gram.nodes();
    const int d = gram.block_dim();
    if (weights.rows() != n || weights.cols() != n) throw InvalidInputError("schur_scale: weight shape mismatch");
    CMatrix flat = gram.flat();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) flat.block(i * d, j * d, d, d) *= weights(i, j);
    }
    return BlockHermitian(flat, d);
}

AdmissibilityReport admissibility_check(const KernelSample& sample, int circle_grid, double tol) {
    if (circle_grid < 1) throw InvalidInputError("admissibility_check: circle_grid must be positive");
    AdmissibilityReport report;
    report.worst_eig = std::numeric_limits<double>::infinity();
    for (int k = 0; k < circle_grid; ++k) {
        const Complex alpha = std::polar(1.0, 2.0 * std::numbers::pi * k / circle_grid);
        const double e = min_eig(schur_scale(sample.gram, phi_schur_weights(alpha, sample.nodes)));
        if (e < report.worst_eig) {
            report.worst_eig = e;
            report.worst_alpha = alpha;
        }
    }
    report.pass = report.worst_eig >= -tol;
    return report;
}

KernelSample schur_multiply(const KernelSample& sample, const BlockHermitian& multiplier) {
    const int n = sample.gram.nodes();
    if (multiplier.nodes() != n) throw InvalidInputError("schur_multiply: node counts differ");
    const int d = multiplier.block_dim();
    if (sample.gram.block_dim() == d) {
        return {sample.nodes, BlockHermitian(sample.gram.flat().cwiseProduct(multiplier.flat()), d)};
    }
    if (sample.gram.block_dim() != 1) throw InvalidInputError("schur_multiply: block dimensions differ");
    CMatrix flat = multiplier.flat();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) flat.block(i * d, j * d, d, d) *= sample.gram.flat()(i, j);
    }
    return {sample.nodes, BlockHermitian(flat, d)};
}

std::vector<KernelSample> admissible_family(const NodeSet& nodes, int count, std::uint64_t seed, int block_dim) {
    if (count < 1) throw InvalidInputError("admissible_family: count must be positive");
    const int n = static_cast<int>(nodes.size());
    const int size = n * block_dim;
    const KernelSample base = szego_gram(nodes);

    std::vector<KernelSample> family;
    // Operator Szego kernel: scalar kernel times the identity on each block.
    CMatrix block_identity = CMatrix::Zero(size, size);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) block_identity.block(i * block_dim, j * block_dim, block_dim, block_dim).setIdentity();
    }
    family.push_back(schur_multiply(base, BlockHermitian(block_identity, block_dim)));

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    while (static_cast<int>(family.size()) < count) {
        CMatrix g(size, size);
        for (Eigen::Index c = 0; c < g.cols(); ++c) {
            for (Eigen::Index r = 0; r < g.rows(); ++r) g(r, c) = Complex(normal(rng), normal(rng));
        }
        CMatrix corr = g * g.adjoint();
        const Eigen::VectorXd scale = corr.diagonal().real().cwiseSqrt().cwiseInverse();
        corr = scale.asDiagonal() * corr * scale.asDiagonal();
        family.push_back(schur_multiply(base, BlockHermitian(corr, block_dim)));
    }
    return family;
}

}  // namespace gpick
