#include "bohm/quantum_state.hpp"

#include <cmath>
#include <stdexcept>

namespace bohm {
namespace {

// sin(x)/x and its first two derivatives, series-stabilized near zero.
double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
    }
    return std::sin(x) / x;
}

double sinc_d1(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return -x / 3.0 * (1.0 - x2 / 10.0);
    }
    return (x * std::cos(x) - std::sin(x)) / (x * x);
}

double sinc_d2(double x) {
    if (std::abs(x) < 1e-3) {
        const double x2 = x * x;
        return -1.0 / 3.0 + x2 / 10.0 - x2 * x2 / 168.0;
    }
    return ((2.0 - x * x) * std::sin(x) - 2.0 * x * std::cos(x)) / (x * x * x);
}

Complex cdot4(const FourSpinor& a, const FourSpinor& b) {
    Complex s = 0.0;
    for (int i = 0; i < 4; ++i) s += std::conj(a[i]) * b[i];
    return s;
}

FourSpinor matvec(const Mat4& M, const FourSpinor& v) {
    FourSpinor out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i] += M[i][j] * v[j];
    return out;
}

} // namespace

void PhysicalParams::validate() const {
    if (!(a > 0.0 && m > 0.0 && hbar > 0.0 && c > 0.0))
        throw std::domain_error("PhysicalParams: a, m, hbar, c must be positive");
    if (!(L > a))
        throw std::domain_error("PhysicalParams: detector radius L must exceed a");
}

SpinorPair::SpinorPair(Complex u, Complex d) {
    const double n = std::sqrt(std::norm(u) + std::norm(d));
    if (!(n > 0.0))
        throw std::domain_error("SpinorPair: zero spinor");
    up = u / n;
    down = d / n;
}

Vec3 spin_vector(const SpinorPair& chi) {
    const Complex cr = std::conj(chi.up) * chi.down;
    return {2.0 * cr.real(), 2.0 * cr.imag(), std::norm(chi.up) - std::norm(chi.down)};
}

double ground_state_psi(double r, const PhysicalParams& p) {
    if (r < 0.0)
        throw std::domain_error("ground_state_psi: r >= 0 required");
    if (r >= p.a) return 0.0;
    const double k = M_PI / p.a;
    const double norm = 1.0 / std::sqrt(2.0 * M_PI * p.a);
    return norm * k * sinc(k * r);
}

double ground_state_dpsi(double r, const PhysicalParams& p) {
    if (r >= p.a) return 0.0;
    const double k = M_PI / p.a;
    const double norm = 1.0 / std::sqrt(2.0 * M_PI * p.a);
    return norm * k * k * sinc_d1(k * r);
}

double ground_state_d2psi(double r, const PhysicalParams& p) {
    if (r >= p.a) return 0.0;
    const double k = M_PI / p.a;
    const double norm = 1.0 / std::sqrt(2.0 * M_PI * p.a);
    return norm * k * k * k * sinc_d2(k * r);
}

double ground_energy(const PhysicalParams& p) {
    return p.hbar * p.hbar * M_PI * M_PI / (2.0 * p.m * p.a * p.a);
}

double relativistic_energy(const PhysicalParams& p) {
    const double mc2 = p.m * p.c * p.c;
    return mc2 * std::sqrt(1.0 + 2.0 * ground_energy(p) / mc2);
}

double gamma_length(const PhysicalParams& p) {
    return p.hbar * p.c / (relativistic_energy(p) + p.m * p.c * p.c);
}

FourSpinor dirac_ground_state(const Vec3& rvec, double t, const SpinorPair& chi,
                              const PhysicalParams& p) {
    const double r = rvec.norm();
    if (r >= p.a)
        throw std::domain_error("dirac_ground_state: ||rvec|| < a required");
    const double psi = ground_state_psi(r, p);
    const double dpsi = ground_state_dpsi(r, p);
    const double ER = relativistic_energy(p);
    const double phase = -t * ER / p.hbar;
    const Complex ph(std::cos(phase), std::sin(phase));
    // e_r at the origin is undefined, but dpsi -> 0 there; any unit vector works.
    const Vec3 n = (r > 1e-300) ? rvec / r : Vec3{0.0, 0.0, 1.0};
    // (e_r . sigma) chi
    const Complex nz(n.z, 0.0), nm(n.x, -n.y), npl(n.x, n.y);
    const Complex low_up = nz * chi.up + nm * chi.down;
    const Complex low_dn = npl * chi.up - nz * chi.down;
    const Complex f(0.0, -gamma_length(p) * dpsi); // -i gamma dpsi
    return {ph * psi * chi.up, ph * psi * chi.down, ph * f * low_up, ph * f * low_dn};
}

const std::array<Mat4, 3>& alpha_matrices() {
    static const std::array<Mat4, 3> alphas = [] {
        std::array<Mat4, 3> A{};
        const Complex I(0.0, 1.0);
        // sigma_x, sigma_y, sigma_z in the off-diagonal blocks
        auto set = [](Mat4& M, int bi, int bj, Complex m00, Complex m01, Complex m10,
                      Complex m11) {
            M[bi][bj] = m00;
            M[bi][bj + 1] = m01;
            M[bi + 1][bj] = m10;
            M[bi + 1][bj + 1] = m11;
        };
        set(A[0], 0, 2, 0, 1, 1, 0);
        set(A[0], 2, 0, 0, 1, 1, 0);
        set(A[1], 0, 2, 0, -I, I, 0);
        set(A[1], 2, 0, 0, -I, I, 0);
        set(A[2], 0, 2, 1, 0, 0, -1);
        set(A[2], 2, 0, 1, 0, 0, -1);
        return A;
    }();
    return alphas;
}

const Mat4& beta_matrix() {
    static const Mat4 beta = [] {
        Mat4 B{};
        B[0][0] = B[1][1] = 1.0;
        B[2][2] = B[3][3] = -1.0;
        return B;
    }();
    return beta;
}

FierzResult fierz_residual(const FourSpinor& psi4) {
    const auto& alpha = alpha_matrices();
    const auto& beta = beta_matrix();
    const double dens = cdot4(psi4, psi4).real();
    double j2 = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double ji = cdot4(psi4, matvec(alpha[i], psi4)).real();
        j2 += ji * ji;
    }
    const Complex mu = cdot4(psi4, matvec(beta, psi4));
    const FourSpinor bpsi = matvec(beta, psi4);
    const FourSpinor xyz = matvec(alpha[0], matvec(alpha[1], matvec(alpha[2], bpsi)));
    const Complex nu = cdot4(psi4, xyz);
    return {dens * dens - j2, mu.real(), nu.real()};
}

Vec3 dirac_velocity_raw(const FourSpinor& psi4, double c) {
    const auto& alpha = alpha_matrices();
    const double dens = cdot4(psi4, psi4).real();
    Vec3 v;
    v.x = c * cdot4(psi4, matvec(alpha[0], psi4)).real() / dens;
    v.y = c * cdot4(psi4, matvec(alpha[1], psi4)).real() / dens;
    v.z = c * cdot4(psi4, matvec(alpha[2], psi4)).real() / dens;
    return v;
}

} // namespace bohm
