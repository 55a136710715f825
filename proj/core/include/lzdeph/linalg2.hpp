#pragma once

#include <array>
#include <complex>

namespace lzdeph {

using cplx = std::complex<double>;

/// General complex 2x2 matrix, stored row-major (a11, a12, a21, a22).
struct Mat2 {
    std::array<cplx, 4> a{};

    constexpr Mat2() = default;
    constexpr Mat2(cplx a11, cplx a12, cplx a21, cplx a22) : a{a11, a12, a21, a22} {}

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr Mat2 zero() { return {}; }
    static constexpr Mat2 sigma_x() { return {0.0, 1.0, 1.0, 0.0}; }
    static constexpr Mat2 sigma_y() { return {0.0, cplx{0.0, -1.0}, cplx{0.0, 1.0}, 0.0}; }
    static constexpr Mat2 sigma_z() { return {1.0, 0.0, 0.0, -1.0}; }

    constexpr cplx& operator()(int row, int col) { return a[2 * row + col]; }
    constexpr const cplx& operator()(int row, int col) const { return a[2 * row + col]; }

    Mat2& operator+=(const Mat2& o);
    Mat2& operator-=(const Mat2& o);
    Mat2& operator*=(cplx c);

    friend bool operator==(const Mat2&, const Mat2&) = default;
};

Mat2 operator+(Mat2 lhs, const Mat2& rhs);
Mat2 operator-(Mat2 lhs, const Mat2& rhs);
Mat2 operator-(const Mat2& m);
Mat2 operator*(const Mat2& lhs, const Mat2& rhs);
Mat2 operator*(cplx c, Mat2 m);
Mat2 operator*(Mat2 m, cplx c);
Mat2 operator/(Mat2 m, cplx c);

Mat2 adjoint(const Mat2& m);
cplx trace(const Mat2& m);
Mat2 commutator(const Mat2& lhs, const Mat2& rhs);

/// tr(A^dagger B).
cplx hs_inner(const Mat2& lhs, const Mat2& rhs);
/// Hilbert-Schmidt (Frobenius) norm.
double hs_norm(const Mat2& m);

/// Largest |a_ij - conj(a_ji)| over all entries.
double hermiticity_defect(const Mat2& m);

/// Hermitian 2x2 matrix, stored in Pauli form a0*I + ax*sx + ay*sy + az*sz.
///
/// Construction from a general Mat2 is checked: off-diagonals must be
/// conjugate and the diagonal real, both within 1e-14 absolute, otherwise
/// InvalidArgument is thrown.
class HermMat2 {
public:
    constexpr HermMat2() = default;
    explicit HermMat2(const Mat2& m);

    static HermMat2 from_pauli(double a0, double ax, double ay, double az);

    double a0() const { return c_[0]; }
    double ax() const { return c_[1]; }
    double ay() const { return c_[2]; }
    double az() const { return c_[3]; }

    Mat2 mat() const;
    operator Mat2() const { return mat(); }

private:
    std::array<double, 4> c_{};
};

/// Spectral decomposition of a Hermitian 2x2 matrix, e_minus <= e_plus.
struct HermEigen2 {
    double e_minus;
    double e_plus;
    HermMat2 p_minus;
    HermMat2 p_plus;
};

/// Closed-form eigendecomposition via the Pauli (Bloch) vector.
/// Throws DegenerateSpectrum when e_plus - e_minus <= 1e-13 * ||A||_HS.
HermEigen2 eig_herm2(const HermMat2& m);

/// Column-stacking vectorization: vec(rho) = (rho11, rho21, rho12, rho22).
using Vec4 = std::array<cplx, 4>;
Vec4 vec(const Mat2& m);
Mat2 unvec(const Vec4& v);

}  // namespace lzdeph
