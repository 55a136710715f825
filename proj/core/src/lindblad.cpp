#include "lzdeph/lindblad.hpp"

#include <algorithm>
#include <cmath>

#include "lzdeph/error.hpp"

namespace lzdeph {

namespace {

constexpr cplx kI{0.0, 1.0};

Mat2 hamiltonian_of(const SpectralData& sd) {
    return sd.e_minus * Mat2(sd.p_minus) + sd.e_plus * Mat2(sd.p_plus);
}

Mat2 dephasing_part(const Mat2& pm, const Mat2& pp, const Mat2& x) {
    return pm * x * pp + pp * x * pm;
}

Mat2 transpose(const Mat2& m) { return {m.a[0], m.a[2], m.a[1], m.a[3]}; }

// (B^T kron A) for column-stacked vectorization, accumulated into out.
void add_kron(SuperOp4& out, cplx scale, const Mat2& bt, const Mat2& a) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) += scale * bt(i, j) * a(k, l);
}

void check_gap(double s, double g) {
    if (g < 1e-12 * std::max(1.0, std::abs(s))) {
        throw SingularTransport("transport_X: gap vanishes, transport denominator is singular");
    }
}

}  // namespace

Vec4 SuperOp4::apply(const Vec4& v) const {
    Vec4 out{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out[r] += (*this)(r, c) * v[c];
    return out;
}

Vec4 SuperOp4::apply_left(const Vec4& u) const {
    Vec4 out{};
    for (int c = 0; c < 4; ++c)
        for (int r = 0; r < 4; ++r) out[c] += u[r] * (*this)(r, c);
    return out;
}

Mat2 apply_L(const SpectralData& sd, double damping, const Mat2& rho) {
    const Mat2 pm = sd.p_minus;
    const Mat2 pp = sd.p_plus;
    return -kI * commutator(hamiltonian_of(sd), rho) - damping * dephasing_part(pm, pp, rho);
}

Mat2 apply_Ladj(const SpectralData& sd, double damping, const Mat2& a) {
    const Mat2 pm = sd.p_minus;
    const Mat2 pp = sd.p_plus;
    return kI * commutator(hamiltonian_of(sd), a) - damping * dephasing_part(pm, pp, a);
}

Mat2 apply_L(double s, const Mat2& rho, const ModelParams& p) {
    return apply_L(spectral(s, p), p.hbar * p.gamma.at(s), rho);
}

Mat2 apply_Ladj(double s, const Mat2& a, const ModelParams& p) {
    return apply_Ladj(spectral(s, p), p.hbar * p.gamma.at(s), a);
}

SuperOp4 superop_matrix(double s, const ModelParams& p) {
    const SpectralData sd = spectral(s, p);
    const double damping = p.hbar * p.gamma.at(s);
    const Mat2 h = hamiltonian(s, p);
    const Mat2 id = Mat2::identity();
    const Mat2 pm = sd.p_minus;
    const Mat2 pp = sd.p_plus;

    SuperOp4 m;
    add_kron(m, -kI, id, h);            // -i H rho
    add_kron(m, kI, transpose(h), id);  // +i rho H
    add_kron(m, -damping, transpose(pp), pm);
    add_kron(m, -damping, transpose(pm), pp);
    return m;
}

Mat2 solve_adjoint_offdiag(const SpectralData& sd, double damping, const Mat2& d) {
    const Mat2 pm = sd.p_minus;
    const Mat2 pp = sd.p_plus;
    // L*(P_k B P_j) = i(e_k - e_j + i*damping) P_k B P_j for k != j.
    const cplx den_pm = sd.e_plus - sd.e_minus + kI * damping;
    const cplx den_mp = sd.e_minus - sd.e_plus + kI * damping;
    return -kI * (pp * d * pm / den_pm + pm * d * pp / den_mp);
}

Mat2 solve_offdiag(const SpectralData& sd, double damping, const Mat2& d) {
    const Mat2 pm = sd.p_minus;
    const Mat2 pp = sd.p_plus;
    // L(P_k B P_j) = -i(e_k - e_j - i*damping) P_k B P_j for k != j.
    const cplx den_pm = sd.e_plus - sd.e_minus - kI * damping;
    const cplx den_mp = sd.e_minus - sd.e_plus - kI * damping;
    return kI * (pp * d * pm / den_pm + pm * d * pp / den_mp);
}

Mat2 transport_X(double s, const ModelParams& p, Branch which) {
    check_gap(s, gap(s, p));
    const SpectralData sd = spectral(s, p);
    const double damping = p.hbar * p.gamma.at(s);
    if (which == Branch::plus) return solve_adjoint_offdiag(sd, damping, sd.dp_plus);
    return solve_offdiag(sd, damping, sd.dp_minus);
}

}  // namespace lzdeph
