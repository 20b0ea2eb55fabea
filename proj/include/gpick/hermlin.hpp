#pragma once

#include <utility>

#include "gpick/types.hpp"

namespace gpick {

/// An N x N grid of d x d complex blocks with exact Hermitian symmetry.
///
/// Storage is the flattened (N*d) x (N*d) matrix. The constructor averages
/// the input with its conjugate transpose, so entry(i,j) == entry(j,i)^*
/// holds bit-for-bit afterwards.
class BlockHermitian {
public:
    BlockHermitian() = default;
    BlockHermitian(int nodes, int block_dim);
    BlockHermitian(const CMatrix& flat, int block_dim);

    static BlockHermitian identity(int nodes, int block_dim);
    /// Scalar matrix (block_dim 1).
    static BlockHermitian scalar(const CMatrix& m) { return BlockHermitian(m, 1); }

    int nodes() const { return nodes_; }
    int block_dim() const { return block_dim_; }
    int size() const { return nodes_ * block_dim_; }

    const CMatrix& flat() const { return flat_; }
    CMatrix block(int i, int j) const;
    /// Sets block (i,j) and its mirror (j,i).
    void set_block(int i, int j, const CMatrix& value);

private:
    int nodes_ = 0;
    int block_dim_ = 1;
    CMatrix flat_;
};

/// Smallest eigenvalue of the flattened matrix.
double min_eig(const BlockHermitian& m);
double min_eig(const CMatrix& hermitian);

/// Spectral norm of a Hermitian matrix.
double hermitian_norm(const CMatrix& hermitian);

/// Semidefinite factor L with M ~ L L^*.
///
/// Eigenvalues at or below tol * ||M|| count as zero, so L has rank(M)
/// columns. Each column is phase-normalized so that its first entry of
/// largest modulus is real and positive. Throws NotPsdError when
/// min_eig(M) < -tol * max(||M||, 1).
CMatrix chol_factor(const BlockHermitian& m, double tol);
CMatrix chol_factor(const CMatrix& hermitian, double tol);

/// Nearest PSD matrix in Frobenius norm (eigenvalues clipped at zero).
BlockHermitian psd_project(const BlockHermitian& m);
CMatrix psd_project(const CMatrix& hermitian);

/// Claimed correspondence x_i -> y_i, stored column-wise.
struct IsometryData {
    CMatrix from;  // d_in x n
    CMatrix to;    // d_out x n

    static IsometryData make(CMatrix from, CMatrix to);
    /// max |<x_i,x_j> - <y_i,y_j>|
    double gram_defect() const;
};

/// A linear map that is isometric on span(domain) and zero on its complement:
/// V = range * domain^*, with domain and range both having orthonormal columns.
struct PartialIsometry {
    CMatrix domain;  // d_in x r
    CMatrix range;   // d_out x r

    int in_dim() const { return static_cast<int>(domain.rows()); }
    int out_dim() const { return static_cast<int>(range.rows()); }
    int rank() const { return static_cast<int>(domain.cols()); }
    CMatrix matrix() const { return range * domain.adjoint(); }
};

/// The lurking isometry V with V x_i = y_i.
///
/// The from-vectors are orthonormalized by Gram-Schmidt with column pivoting
/// (largest residual first, residual norms <= tol dropped); the same
/// combinations of the to-vectors give the image basis, which is
/// re-orthonormalized in pivot order. Throws GramMismatchError when
/// gram_defect() > tol.
PartialIsometry solve_isometry(const IsometryData& data, double tol);

struct UnitaryExtension {
    CMatrix unitary;
    /// Coordinates appended to the smaller side to make the map square.
    int enlarged_dim = 0;
    /// True when the padding went to the domain side.
    bool padded_domain = false;
};

/// Completes V1 to a unitary by sending an orthonormal basis of the domain
/// complement onto one of the range complement, both taken from the standard
/// basis by pivoted Gram-Schmidt and matched in index order. When the ambient
/// dimensions differ, the smaller side is padded with extra coordinates at the
/// end.
UnitaryExtension extend_to_unitary(const PartialIsometry& v1);

/// Orthonormal basis of the orthogonal complement of span(basis) in C^dim,
/// built from the standard basis vectors in index order.
CMatrix orthonormal_complement(const CMatrix& basis, int dim);

}  // namespace gpick
