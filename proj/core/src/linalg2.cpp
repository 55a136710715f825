#include "lzdeph/linalg2.hpp"

#include <algorithm>
#include <cmath>

#include "lzdeph/error.hpp"

namespace lzdeph {

Mat2& Mat2::operator+=(const Mat2& o) {
    for (int i = 0; i < 4; ++i) a[i] += o.a[i];
    return *this;
}

Mat2& Mat2::operator-=(const Mat2& o) {
    for (int i = 0; i < 4; ++i) a[i] -= o.a[i];
    return *this;
}

Mat2& Mat2::operator*=(cplx c) {
    for (auto& x : a) x *= c;
    return *this;
}

Mat2 operator+(Mat2 lhs, const Mat2& rhs) { return lhs += rhs; }
Mat2 operator-(Mat2 lhs, const Mat2& rhs) { return lhs -= rhs; }
Mat2 operator-(const Mat2& m) { return {-m.a[0], -m.a[1], -m.a[2], -m.a[3]}; }

Mat2 operator*(const Mat2& l, const Mat2& r) {
    return {l.a[0] * r.a[0] + l.a[1] * r.a[2], l.a[0] * r.a[1] + l.a[1] * r.a[3],
            l.a[2] * r.a[0] + l.a[3] * r.a[2], l.a[2] * r.a[1] + l.a[3] * r.a[3]};
}

Mat2 operator*(cplx c, Mat2 m) { return m *= c; }
Mat2 operator*(Mat2 m, cplx c) { return m *= c; }
Mat2 operator/(Mat2 m, cplx c) { return m *= (1.0 / c); }

Mat2 adjoint(const Mat2& m) {
    return {std::conj(m.a[0]), std::conj(m.a[2]), std::conj(m.a[1]), std::conj(m.a[3])};
}

cplx trace(const Mat2& m) { return m.a[0] + m.a[3]; }

Mat2 commutator(const Mat2& lhs, const Mat2& rhs) { return lhs * rhs - rhs * lhs; }

cplx hs_inner(const Mat2& lhs, const Mat2& rhs) {
    cplx sum = 0.0;
    for (int i = 0; i < 4; ++i) sum += std::conj(lhs.a[i]) * rhs.a[i];
    return sum;
}

double hs_norm(const Mat2& m) {
    double sum = 0.0;
    for (const auto& x : m.a) sum += std::norm(x);
    return std::sqrt(sum);
}

double hermiticity_defect(const Mat2& m) {
    return std::max({std::abs(m.a[0].imag()), std::abs(m.a[3].imag()),
                     std::abs(m.a[1] - std::conj(m.a[2]))});
}

namespace {
constexpr double kHermTol = 1e-14;
}

HermMat2::HermMat2(const Mat2& m) {
    if (hermiticity_defect(m) > kHermTol) {
        throw InvalidArgument("HermMat2: matrix is not Hermitian");
    }
    const double d11 = m.a[0].real();
    const double d22 = m.a[3].real();
    // Average the two off-diagonals so tiny asymmetries do not bias the result.
    const cplx off = 0.5 * (m.a[1] + std::conj(m.a[2]));
    c_ = {0.5 * (d11 + d22), off.real(), -off.imag(), 0.5 * (d11 - d22)};
}

HermMat2 HermMat2::from_pauli(double a0, double ax, double ay, double az) {
    HermMat2 h;
    h.c_ = {a0, ax, ay, az};
    return h;
}

Mat2 HermMat2::mat() const {
    const auto [a0, ax, ay, az] = c_;
    return {a0 + az, cplx{ax, -ay}, cplx{ax, ay}, a0 - az};
}

HermEigen2 eig_herm2(const HermMat2& m) {
    const double r = std::hypot(m.ax(), m.ay(), m.az());
    const double norm = hs_norm(m.mat());
    if (2.0 * r <= 1e-13 * norm) {
        throw DegenerateSpectrum("eig_herm2: eigenvalues coincide");
    }
    const double nx = m.ax() / r;
    const double ny = m.ay() / r;
    const double nz = m.az() / r;
    return {m.a0() - r, m.a0() + r, HermMat2::from_pauli(0.5, -0.5 * nx, -0.5 * ny, -0.5 * nz),
            HermMat2::from_pauli(0.5, 0.5 * nx, 0.5 * ny, 0.5 * nz)};
}

Vec4 vec(const Mat2& m) { return {m.a[0], m.a[2], m.a[1], m.a[3]}; }

Mat2 unvec(const Vec4& v) { return {v[0], v[2], v[1], v[3]}; }

}  // namespace lzdeph
