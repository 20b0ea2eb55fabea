#include "gpick/hermlin.hpp"

#include <algorithm>
#include <cmath>

namespace gpick {

BlockHermitian::BlockHermitian(int nodes, int block_dim)
    : nodes_(nodes), block_dim_(block_dim), flat_(CMatrix::Zero(nodes * block_dim, nodes * block_dim)) {
    if (nodes < 0 || block_dim < 1) throw InvalidInputError("BlockHermitian: bad dimensions");
}

BlockHermitian::BlockHermitian(const CMatrix& flat, int block_dim) : block_dim_(block_dim) {
    if (block_dim < 1 || flat.rows() != flat.cols() || flat.rows() % block_dim != 0) {
        throw InvalidInputError("BlockHermitian: matrix is not square or not divisible into blocks");
    }
    nodes_ = static_cast<int>(flat.rows()) / block_dim;
    flat_ = 0.5 * (flat + flat.adjoint());
}

BlockHermitian BlockHermitian::identity(int nodes, int block_dim) {
    BlockHermitian out(nodes, block_dim);
    out.flat_.setIdentity();
    return out;
}

CMatrix BlockHermitian::block(int i, int j) const {
    if (i < 0 || j < 0 || i >= nodes_ || j >= nodes_) throw InvalidInputError("BlockHermitian: block index out of range");
    return flat_.block(i * block_dim_, j * block_dim_, block_dim_, block_dim_);
}

void BlockHermitian::set_block(int i, int j, const CMatrix& value) {
    if (i < 0 || j < 0 || i >= nodes_ || j >= nodes_) throw InvalidInputError("BlockHermitian: block index out of range");
    if (value.rows() != block_dim_ || value.cols() != block_dim_) throw InvalidInputError("BlockHermitian: block shape mismatch");
    if (i == j) {
        flat_.block(i * block_dim_, i * block_dim_, block_dim_, block_dim_) = 0.5 * (value + value.adjoint());
    } else {
        flat_.block(i * block_dim_, j * block_dim_, block_dim_, block_dim_) = value;
        flat_.block(j * block_dim_, i * block_dim_, block_dim_, block_dim_) = value.adjoint();
    }
}

double min_eig(const CMatrix& hermitian) {
    if (hermitian.size() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

double min_eig(const BlockHermitian& m) { return min_eig(m.flat()); }

double hermitian_norm(const CMatrix& hermitian) {
    if (hermitian.size() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

namespace {

void normalize_phase(Eigen::Ref<CVector> column) {
    Eigen::Index lead = 0;
    double best = -1.0;
    for (Eigen::Index k = 0; k < column.size(); ++k) {
        // Strict comparison with slack keeps the first of (numerically) tied entries.
        if (std::abs(column(k)) > best * (1.0 + 1e-12)) {
            best = std::abs(column(k));
            lead = k;
        }
    }
    if (best > 0.0) column *= std::conj(column(lead)) / std::abs(column(lead));
}

}  // namespace

CMatrix chol_factor(const CMatrix& hermitian, double tol) {
    const Eigen::Index n = hermitian.rows();
    if (n == 0) return CMatrix(0, 0);
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian);
    const auto& ev = solver.eigenvalues();
    const double norm = std::max(std::abs(ev(0)), std::abs(ev(n - 1)));
    if (ev(0) < -tol * std::max(norm, 1.0)) {
        throw NotPsdError("chol_factor: matrix has eigenvalue " + std::to_string(ev(0)));
    }
    const double cutoff = tol * norm;
    // Descending eigenvalue order.
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = n - 1; k >= 0; --k) {
        if (ev(k) > cutoff) keep.push_back(k);
    }
    CMatrix factor(n, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c) {
        const auto k = keep[c];
        factor.col(static_cast<Eigen::Index>(c)) = solver.eigenvectors().col(k) * std::sqrt(ev(k));
        normalize_phase(factor.col(static_cast<Eigen::Index>(c)));
    }
    return factor;
}

CMatrix chol_factor(const BlockHermitian& m, double tol) { return chol_factor(m.flat(), tol); }

CMatrix psd_project(const CMatrix& hermitian) {
    if (hermitian.size() == 0) return hermitian;
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian);
    const Eigen::VectorXd clipped = solver.eigenvalues().cwiseMax(0.0);
    const CMatrix& vecs = solver.eigenvectors();
    CMatrix out = vecs * clipped.cast<Complex>().asDiagonal() * vecs.adjoint();
    return 0.5 * (out + out.adjoint());
}

BlockHermitian psd_project(const BlockHermitian& m) { return BlockHermitian(psd_project(m.flat()), m.block_dim()); }

IsometryData IsometryData::make(CMatrix from, CMatrix to) {
    if (from.cols() != to.cols()) throw InvalidInputError("IsometryData: vector counts differ");
    return IsometryData{std::move(from), std::move(to)};
}

double IsometryData::gram_defect() const {
    if (from.cols() == 0) return 0.0;
    const CMatrix diff = from.adjoint() * from - to.adjoint() * to;
    return diff.cwiseAbs().maxCoeff();
}

namespace {

/// In-place Gram-Schmidt of the columns (two passes), in column order.
void orthonormalize_in_order(CMatrix& m) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index j = 0; j < k; ++j) {
                const Complex c = m.col(j).dot(m.col(k));
                m.col(k) -= c * m.col(j);
            }
        }
        const double nrm = m.col(k).norm();
        if (nrm > 0.0) m.col(k) /= nrm;
    }
}

}  // namespace

PartialIsometry solve_isometry(const IsometryData& data, double tol) {
    const double defect = data.gram_defect();
    if (defect > tol) {
        throw GramMismatchError("solve_isometry: Gram defect " + std::to_string(defect) + " exceeds tolerance");
    }
    const Eigen::Index n = data.from.cols();
    CMatrix residual = data.from;
    CMatrix coeff = CMatrix::Identity(n, n);
    std::vector<bool> used(static_cast<std::size_t>(n), false);

    std::vector<CVector> basis;
    std::vector<CVector> basis_coeff;
    for (Eigen::Index step = 0; step < n; ++step) {
        Eigen::Index pick = -1;
        double best = tol;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (used[static_cast<std::size_t>(j)]) continue;
            const double nrm = residual.col(j).norm();
            if (nrm > best) {
                best = nrm;
                pick = j;
            }
        }
        if (pick < 0) break;
        used[static_cast<std::size_t>(pick)] = true;
        const CVector q = residual.col(pick) / best;
        const CVector c = coeff.col(pick) / best;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (used[static_cast<std::size_t>(j)]) continue;
            const Complex proj = q.dot(residual.col(j));
            residual.col(j) -= proj * q;
            coeff.col(j) -= proj * c;
        }
        basis.push_back(q);
        basis_coeff.push_back(c);
    }

    const auto r = static_cast<Eigen::Index>(basis.size());
    PartialIsometry out;
    out.domain.resize(data.from.rows(), r);
    CMatrix combos(n, r);
    for (Eigen::Index k = 0; k < r; ++k) {
        out.domain.col(k) = basis[static_cast<std::size_t>(k)];
        combos.col(k) = basis_coeff[static_cast<std::size_t>(k)];
    }
    out.range = data.to * combos;
    orthonormalize_in_order(out.domain);
    orthonormalize_in_order(out.range);
    return out;
}

CMatrix orthonormal_complement(const CMatrix& basis, int dim) {
    const Eigen::Index r = basis.cols();
    const Eigen::Index want = dim - r;
    CMatrix full(dim, dim);
    full.leftCols(r) = basis;
    Eigen::Index have = r;

    std::vector<bool> used(static_cast<std::size_t>(dim), false);
    while (have < r + want) {
        // Residuals of the unused standard basis vectors against the current basis.
        Eigen::Index pick = -1;
        double best = -1.0;
        CVector pick_vec;
        for (Eigen::Index k = 0; k < dim; ++k) {
            if (used[static_cast<std::size_t>(k)]) continue;
            CVector v = CVector::Unit(dim, k);
            for (int pass = 0; pass < 2; ++pass) {
                v -= full.leftCols(have) * (full.leftCols(have).adjoint() * v);
            }
            const double nrm = v.norm();
            if (nrm > best * (1.0 + 1e-12)) {
                best = nrm;
                pick = k;
                pick_vec = v;
            }
        }
        used[static_cast<std::size_t>(pick)] = true;
        full.col(have) = pick_vec / best;
        ++have;
    }
    return full.rightCols(want);
}

UnitaryExtension extend_to_unitary(const PartialIsometry& v1) {
    const int d_in = v1.in_dim();
    const int d_out = v1.out_dim();
    const int n = std::max(d_in, d_out);
    UnitaryExtension out;
    out.enlarged_dim = std::abs(d_out - d_in);
    out.padded_domain = d_in < d_out;

    CMatrix domain = CMatrix::Zero(n, v1.rank());
    CMatrix range = CMatrix::Zero(n, v1.rank());
    domain.topRows(d_in) = v1.domain;
    range.topRows(d_out) = v1.range;

    const CMatrix domain_perp = orthonormal_complement(domain, n);
    const CMatrix range_perp = orthonormal_complement(range, n);
    out.unitary = range * domain.adjoint() + range_perp * domain_perp.adjoint();
    return out;
}

}  // namespace gpick
