#pragma once

#include <array>

#include "lzdeph/linalg2.hpp"
#include "lzdeph/model.hpp"

namespace lzdeph {

/// Matrix of a linear map on 2x2 matrices acting on column-stacked vec(rho).
/// Entries are row-major: m[4*row + col].
struct SuperOp4 {
    std::array<cplx, 16> m{};

    cplx& operator()(int row, int col) { return m[4 * row + col]; }
    const cplx& operator()(int row, int col) const { return m[4 * row + col]; }

    Vec4 apply(const Vec4& v) const;
    /// Row vector u^T M.
    Vec4 apply_left(const Vec4& u) const;
};

/// L_s(rho) = -i[H(s), rho] - hbar*gamma(s) * (P- rho P+ + P+ rho P-).
Mat2 apply_L(double s, const Mat2& rho, const ModelParams& p);

/// L*_s(A) = +i[H(s), A] - hbar*gamma(s) * (P- A P+ + P+ A P-),
/// the adjoint with respect to the Hilbert-Schmidt inner product.
Mat2 apply_Ladj(double s, const Mat2& a, const ModelParams& p);

/// Same generators with the spectral data and the damping rate hbar*gamma
/// supplied by the caller (the hot path of the master-equation RHS).
Mat2 apply_L(const SpectralData& sd, double damping, const Mat2& rho);
Mat2 apply_Ladj(const SpectralData& sd, double damping, const Mat2& a);

/// Matrix M with M vec(rho) = vec(L_s(rho)), assembled from Kronecker products
/// (vec(A X B) = (B^T kron A) vec(X)), independently of apply_L.
SuperOp4 superop_matrix(double s, const ModelParams& p);

enum class Branch { plus, minus };

/// Parallel-transport solution X(s).
///
/// Branch::plus solves L*_s(X) = dP+/ds with
///   X = -i sum_{k!=j} P_k dP+ P_j / (e_k - e_j + i*hbar*gamma).
/// Branch::minus solves L_s(X) = dP-/ds, the same formula with i -> -i and
/// dP+ -> dP-.
///
/// Throws SingularTransport when g(s) < 1e-12 * max(1, |s|).
Mat2 transport_X(double s, const ModelParams& p, Branch which);

/// Solves L*_s(X) = D for a purely off-diagonal D (P+ D P+ = P- D P- = 0).
Mat2 solve_adjoint_offdiag(const SpectralData& sd, double damping, const Mat2& d);
/// Solves L_s(X) = D for a purely off-diagonal D.
Mat2 solve_offdiag(const SpectralData& sd, double damping, const Mat2& d);

}  // namespace lzdeph
