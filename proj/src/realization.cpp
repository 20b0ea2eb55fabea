#include "gpick/realization.hpp"

#include <cmath>
#include <random>

#include "gpick/gdomain.hpp"

namespace gpick {

Colligation::Colligation(int dim_in, int dim_out, std::vector<Complex> atoms, std::vector<int> mults, CMatrix v)
    : dim_in_(dim_in), dim_out_(dim_out), atoms_(std::move(atoms)), mults_(std::move(mults)), v_(std::move(v)) {
    if (dim_in < 0 || dim_out < 0) throw InvalidInputError("Colligation: negative dimension");
    if (atoms_.size() != mults_.size()) throw InvalidInputError("Colligation: one multiplicity per atom required");
    for (int m : mults_) {
        if (m < 0) throw InvalidInputError("Colligation: negative multiplicity");
        state_dim_ += m;
    }
    for (const auto& a : atoms_) {
        if (std::abs(a) > 1.0 + 1e-12) throw InvalidInputError("Colligation: atom outside the closed disk");
    }
    if (v_.rows() != dim_out_ + state_dim_ || v_.cols() != dim_in_ + state_dim_) {
        throw InvalidInputError("Colligation: V has the wrong shape");
    }
}

double Colligation::unitarity_defect() const {
    double defect = 0.0;
    if (v_.rows() >= v_.cols()) {
        defect = std::max(defect, spectral_norm(v_.adjoint() * v_ - CMatrix::Identity(v_.cols(), v_.cols())));
    }
    if (v_.rows() <= v_.cols()) {
        defect = std::max(defect, spectral_norm(v_ * v_.adjoint() - CMatrix::Identity(v_.rows(), v_.rows())));
    }
    return defect;
}

double spectral_norm(const CMatrix& m) {
    if (m.size() == 0) return 0.0;
    if (m.rows() == 1 || m.cols() == 1) return m.norm();
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
}

CMatrix pi_phi(const Colligation& col, const GPoint& point) {
    CVector diag(col.state_dim());
    int offset = 0;
    for (std::size_t j = 0; j < col.atoms().size(); ++j) {
        diag.segment(offset, col.mults()[j]).setConstant(phi(col.atoms()[j], point));
        offset += col.mults()[j];
    }
    return diag.asDiagonal();
}

namespace {

void require_member(const GPoint& point) {
    if (!in_G(point).inside) throw SingularResolventError("transfer_eval: point is not in G");
}

}  // namespace

CMatrix transfer_eval(const Colligation& col, const GPoint& point) {
    require_member(point);
    if (col.state_dim() == 0) return col.A();
    const CMatrix z = pi_phi(col, point);
    const CMatrix resolvent_arg = CMatrix::Identity(col.state_dim(), col.state_dim()) - col.D() * z;
    return col.A() + col.B() * z * resolvent_arg.partialPivLu().solve(CMatrix(col.C()));
}

CMatrix adjoint_transfer_eval(const Colligation& col, const GPoint& point) {
    require_member(point);
    const CMatrix v1 = col.V().adjoint();
    const int a = col.dim_in();
    const int m = col.state_dim();
    const int b = col.dim_out();
    const CMatrix a1 = v1.topLeftCorner(a, b);
    if (m == 0) return a1;
    const CMatrix b1 = v1.topRightCorner(a, m);
    const CMatrix c1 = v1.bottomLeftCorner(m, b);
    const CMatrix d1 = v1.bottomRightCorner(m, m);
    const CMatrix z_star = pi_phi(col, point).adjoint();
    const CMatrix resolvent_arg = CMatrix::Identity(m, m) - d1 * z_star;
    return a1 + b1 * z_star * resolvent_arg.partialPivLu().solve(c1);
}

Colligation random_colligation(int dim_in, int dim_out, const std::vector<Complex>& atoms,
                               const std::vector<int>& mults, std::uint64_t seed) {
    int state = 0;
    for (int m : mults) state += m;
    const int rows = dim_out + state;
    const int cols = dim_in + state;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    // Orthonormalize along the longer side: tall -> isometry, wide -> co-isometry.
    const int tall = std::max(rows, cols);
    const int thin = std::min(rows, cols);
    CMatrix g(tall, thin);
    for (Eigen::Index c = 0; c < g.cols(); ++c) {
        for (Eigen::Index r = 0; r < g.rows(); ++r) g(r, c) = Complex(normal(rng), normal(rng));
    }
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ() * CMatrix::Identity(tall, thin);
    // Fix the QR sign ambiguity so the result is Haar distributed.
    const CMatrix r_diag = qr.matrixQR().topRows(thin).diagonal();
    for (int k = 0; k < thin; ++k) {
        const Complex d = r_diag(k);
        if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
    }
    CMatrix v = rows >= cols ? q : CMatrix(q.adjoint());
    return Colligation(dim_in, dim_out, atoms, mults, std::move(v));
}

SupNormEstimate sup_norm_estimate(const Colligation& col, std::size_t samples, std::uint64_t seed) {
    SupNormEstimate out;
    out.samples = samples;
    out.empty_sample = samples == 0;
    for (const auto& point : sample_G(samples, seed)) {
        out.value = std::max(out.value, spectral_norm(transfer_eval(col, point)));
    }
    return out;
}

}  // namespace gpick
