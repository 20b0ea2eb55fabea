#pragma once

#include <cstdint>

#include "gpick/types.hpp"

namespace gpick {

/// Colligation V = [[A, B], [C, D]] : C^dim_in (+) H -> C^dim_out (+) H with
/// H = (+)_j C^{mults[j]} and pi(phi) acting as phi(atoms[j]) on the j-th summand.
///
/// V is unitary when dim_in == dim_out. Otherwise finite dimensions only allow
/// an isometry (dim_out > dim_in) or a co-isometry (dim_out < dim_in); either
/// way V is a contraction and the transfer function stays in the unit ball.
class Colligation {
public:
    Colligation() = default;
    Colligation(int dim_in, int dim_out, std::vector<Complex> atoms, std::vector<int> mults, CMatrix v);

    int dim_in() const { return dim_in_; }
    int dim_out() const { return dim_out_; }
    int state_dim() const { return state_dim_; }
    const std::vector<Complex>& atoms() const { return atoms_; }
    const std::vector<int>& mults() const { return mults_; }
    const CMatrix& V() const { return v_; }

    auto A() const { return v_.topLeftCorner(dim_out_, dim_in_); }
    auto B() const { return v_.topRightCorner(dim_out_, state_dim_); }
    auto C() const { return v_.bottomLeftCorner(state_dim_, dim_in_); }
    auto D() const { return v_.bottomRightCorner(state_dim_, state_dim_); }

    /// max(||V^*V - I||, ||VV^* - I||) restricted to the sides that must hold for this shape.
    double unitarity_defect() const;

private:
    int dim_in_ = 0;
    int dim_out_ = 0;
    int state_dim_ = 0;
    std::vector<Complex> atoms_;
    std::vector<int> mults_;
    CMatrix v_;
};

/// Block diagonal (+)_j phi(alpha_j, point) I_{m_j}.
CMatrix pi_phi(const Colligation& col, const GPoint& point);

/// f(point) = A + B pi (I - D pi)^{-1} C, with pi = pi_phi(col, point).
/// Throws SingularResolventError when the point is not in G.
CMatrix transfer_eval(const Colligation& col, const GPoint& point);

/// f(point)^* computed from the blocks of V^* as
/// A1 + B1 pi^* (I - D1 pi^*)^{-1} C1 with [[A1, B1], [C1, D1]] = V^*.
CMatrix adjoint_transfer_eval(const Colligation& col, const GPoint& point);

/// Colligation with V drawn by orthonormalizing a seeded complex Gaussian matrix.
Colligation random_colligation(int dim_in, int dim_out, const std::vector<Complex>& atoms,
                               const std::vector<int>& mults, std::uint64_t seed);

struct SupNormEstimate {
    /// Largest sampled spectral norm; a lower bound for the sup norm over G.
    double value = 0.0;
    std::size_t samples = 0;
    bool empty_sample = true;
};

SupNormEstimate sup_norm_estimate(const Colligation& col, std::size_t samples, std::uint64_t seed);

double spectral_norm(const CMatrix& m);

}  // namespace gpick
