#include "gpick/cp_model.hpp"

#include <cmath>
#include <random>

#include "gpick/gdomain.hpp"
#include "gpick/kernels.hpp"

namespace gpick {

void AtomicMeasure::validate() const {
    if (atoms.size() != weights.size()) throw InvalidInputError("AtomicMeasure: atoms and weights differ in length");
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        if (std::abs(atoms[k]) > 1.0 + 1e-12) throw InvalidInputError("AtomicMeasure: atom outside the closed disk");
        if (!(weights[k] > 0.0)) throw InvalidInputError("AtomicMeasure: weights must be positive");
        for (std::size_t j = 0; j < k; ++j) {
            if (atoms[j] == atoms[k]) throw InvalidInputError("AtomicMeasure: repeated atom");
        }
    }
}

void CPCertificate::validate() const {
    if (atoms.size() != blocks.size()) throw InvalidInputError("CPCertificate: one block per atom required");
    const int d = block_dim();
    for (const auto& b : blocks) {
        if (b.nodes() != static_cast<int>(nodes.size()) || b.block_dim() != d) {
            throw InvalidInputError("CPCertificate: block shape does not match nodes");
        }
    }
}

CPCertificate certificate_from_measure(const NodeSet& nodes, const AtomicMeasure& measure,
                                       const std::function<BlockHermitian(Complex, const NodeSet&)>& kernel) {
    measure.validate();
    CPCertificate cert;
    cert.nodes = nodes;
    cert.atoms = measure.atoms;
    for (std::size_t k = 0; k < measure.atoms.size(); ++k) {
        const BlockHermitian g = kernel(measure.atoms[k], nodes);
        cert.blocks.emplace_back(measure.weights[k] * g.flat(), g.block_dim());
    }
    return cert;
}

CMatrix delta_eval(const CPCertificate& cert, int i, int j, const std::vector<Complex>& h) {
    if (h.size() != cert.atoms.size()) throw InvalidInputError("delta_eval: need one value of h per atom");
    const int n = static_cast<int>(cert.nodes.size());
    if (i < 0 || j < 0 || i >= n || j >= n) throw InvalidInputError("delta_eval: node index out of range");
    const int d = cert.block_dim();
    CMatrix out = CMatrix::Zero(d, d);
    for (std::size_t k = 0; k < cert.atoms.size(); ++k) out += h[k] * cert.blocks[k].block(i, j);
    return out;
}

bool cp_check(const CPCertificate& cert, int trials, std::uint64_t seed, double tol) {
    cert.validate();
    for (const auto& b : cert.blocks) {
        if (min_eig(b) < -tol) return false;
    }

    const int n = static_cast<int>(cert.nodes.size());
    const int d = cert.block_dim();
    const auto m = cert.atoms.size();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    auto gauss = [&]() { return Complex(normal(rng), normal(rng)); };

    for (int t = 0; t < trials; ++t) {
        // a_i: values on atoms; c_i: d x d coefficients.
        std::vector<std::vector<Complex>> a(static_cast<std::size_t>(n), std::vector<Complex>(m));
        std::vector<CMatrix> c(static_cast<std::size_t>(n), CMatrix(d, d));
        double scale = 0.0;
        for (int i = 0; i < n; ++i) {
            for (auto& v : a[i]) v = gauss();
            for (Eigen::Index r = 0; r < c[i].size(); ++r) c[i](r) = gauss();
        }
        CMatrix total = CMatrix::Zero(d, d);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                std::vector<Complex> h(m);
                for (std::size_t k = 0; k < m; ++k) h[k] = std::conj(a[i][k]) * a[j][k];
                total += c[i].adjoint() * delta_eval(cert, i, j, h) * c[j];
            }
            double amax = 0.0;
            for (const auto& v : a[i]) amax = std::max(amax, std::norm(v));
            scale += amax * c[i].squaredNorm();
        }
        if (min_eig(CMatrix(0.5 * (total + total.adjoint()))) < -tol * std::max(scale, 1.0)) return false;
    }
    return true;
}

BlockHermitian residual_of(const CPCertificate& cert) {
    cert.validate();
    const int n = static_cast<int>(cert.nodes.size());
    BlockHermitian out(n, cert.block_dim());
    if (cert.blocks.empty()) return out;
    CMatrix flat = CMatrix::Zero(out.size(), out.size());
    for (std::size_t k = 0; k < cert.atoms.size(); ++k) {
        flat += schur_scale(cert.blocks[k], phi_schur_weights(cert.atoms[k], cert.nodes)).flat();
    }
    return BlockHermitian(flat, cert.block_dim());
}

int GNSFactor::state_dim() const {
    int total = 0;
    for (int r : rep_dims) total += r;
    return total;
}

CMatrix GNSFactor::L(int node, const std::vector<Complex>& h) const {
    if (h.size() != atoms.size()) throw InvalidInputError("GNSFactor::L: need one value of h per atom");
    CMatrix out(block_dim, state_dim());
    int offset = 0;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        out.middleCols(offset, rep_dims[k]) = h[k] * factors[k].middleRows(node * block_dim, block_dim);
        offset += rep_dims[k];
    }
    return out;
}

CMatrix GNSFactor::pi(const std::vector<Complex>& h) const {
    if (h.size() != atoms.size()) throw InvalidInputError("GNSFactor::pi: need one value of h per atom");
    CVector diag(state_dim());
    int offset = 0;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        diag.segment(offset, rep_dims[k]).setConstant(h[k]);
        offset += rep_dims[k];
    }
    return diag.asDiagonal();
}

GNSFactor gns_factor(const CPCertificate& cert, double tol) {
    cert.validate();
    GNSFactor out;
    out.atoms = cert.atoms;
    out.block_dim = cert.block_dim();
    for (const auto& block : cert.blocks) {
        out.factors.push_back(chol_factor(block, tol));
        out.rep_dims.push_back(static_cast<int>(out.factors.back().cols()));
    }
    return out;
}

}  // namespace gpick
