#include "oqsim/zeno.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>

namespace oqsim {
namespace zeno {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr std::complex<double> kI = std::complex<double>(0.0, 1.0);
}  // namespace

double ZenoConfig::theta() const {
    if (n < 1) throw InvalidParams("zeno step count must be at least 1");
    return kPi / (2.0 * n);
}

Mat6 step_unitary(double theta) {
    double c = std::cos(theta), s = std::sin(theta);
    double c2 = std::cos(2.0 * theta), s2 = std::sin(2.0 * theta);
    Mat6 u = Mat6::Zero();
    u(k00, k00) = 1.0;
    u(k01, k01) = c;
    u(k10, k01) = kI * s;
    u(k01, k10) = kI * s;
    u(k10, k10) = c;
    u(k11, k11) = c2;
    u(k20, k11) = kI * s2 / std::sqrt(2.0);
    u(k02, k11) = kI * s2 / std::sqrt(2.0);
    u(k11, k20) = kI * s2 / std::sqrt(2.0);
    u(k20, k20) = c * c;
    u(k02, k20) = -s * s;
    u(k11, k02) = kI * s2 / std::sqrt(2.0);
    u(k20, k02) = -s * s;
    u(k02, k02) = c * c;
    double defect = (u * u.adjoint() - Mat6::Identity()).cwiseAbs().maxCoeff();
    if (defect > 1e-12) throw SimError("zeno step unitary completion failed");
    return u;
}

Mat6 bs_step(const Mat6& rho, double theta) {
    Mat6 u = step_unitary(theta);
    return u * rho * u.adjoint();
}

Mat6 absorb(const Mat6& rho) {
    // Kraus products over both modes. In this basis only three matter:
    // identity on photons <= 1 per mode, |20> -> |00|, |02> -> |00>.
    Mat6 out = Mat6::Zero();
    auto add = [&](const Mat6& k) { out += k * rho * k.adjoint(); };
    Mat6 keep = Mat6::Zero();
    keep(k00, k00) = keep(k01, k01) = keep(k10, k10) = keep(k11, k11) = 1.0;
    add(keep);
    Mat6 absorb_a = Mat6::Zero();
    absorb_a(k00, k20) = 1.0;
    add(absorb_a);
    Mat6 absorb_b = Mat6::Zero();
    absorb_b(k00, k02) = 1.0;
    add(absorb_b);
    return out;
}

Mat6 absorb(const Mat6& rho, const AbsorberModel& model) {
    double e2 = model.two_photon;
    double g = model.single_loss;
    if (e2 < 0 || e2 > 1 || g < 0 || g > 1)
        throw InvalidParams("absorber parameters must lie in [0,1]");

    // Single-mode Kraus sets on span{|0>,|1>,|2>}, applied mode by mode:
    // loss channel first, then the (possibly partial) two-photon absorber.
    using M3 = Eigen::Matrix3cd;
    std::vector<M3> loss(3, M3::Zero());
    loss[0](0, 0) = 1.0;
    loss[0](1, 1) = std::sqrt(1.0 - g);
    loss[0](2, 2) = 1.0 - g;
    loss[1](0, 1) = std::sqrt(g);
    loss[1](1, 2) = std::sqrt(2.0 * g * (1.0 - g));
    loss[2](0, 2) = g;
    std::vector<M3> two(2, M3::Zero());
    two[0](0, 0) = 1.0;
    two[0](1, 1) = 1.0;
    two[0](2, 2) = std::sqrt(1.0 - e2);
    two[1](0, 2) = std::sqrt(e2);

    std::vector<M3> kraus;
    for (const M3& t : two)
        for (const M3& l : loss) {
            M3 k = t * l;
            if (k.cwiseAbs().maxCoeff() > 0) kraus.push_back(k);
        }

    // Occupations per basis state for (mode a, mode b).
    const int occ_a[6] = {0, 0, 1, 1, 2, 0};
    const int occ_b[6] = {0, 1, 0, 1, 0, 2};
    auto index_of = [&](int na, int nb) {
        for (int i = 0; i < 6; ++i)
            if (occ_a[i] == na && occ_b[i] == nb) return i;
        return -1;
    };

    Mat6 out = Mat6::Zero();
    for (const M3& ka : kraus) {
        for (const M3& kb : kraus) {
            Mat6 k6 = Mat6::Zero();
            for (int c = 0; c < 6; ++c) {
                for (int ra = 0; ra < 3; ++ra) {
                    for (int rb = 0; rb < 3; ++rb) {
                        std::complex<double> amp = ka(ra, occ_a[c]) * kb(rb, occ_b[c]);
                        if (std::abs(amp) == 0.0) continue;
                        int r = index_of(ra, rb);
                        if (r >= 0) k6(r, c) += amp;
                    }
                }
            }
            out += k6 * rho * k6.adjoint();
        }
    }
    return out;
}

Mat6 zeno_evolve(const Mat6& rho0, const ZenoConfig& config) {
    Mat6 rho = rho0;
    double theta = config.theta();
    for (int step = 0; step < config.n; ++step) rho = absorb(bs_step(rho, theta));
    return rho;
}

Mat6 pure_density(BasisIndex state) {
    Mat6 rho = Mat6::Zero();
    rho(state, state) = 1.0;
    return rho;
}

double survival_closed_form(int n) {
    // cos^{2n}(pi/n) evaluated in log space for large n.
    double c = std::cos(kPi / n);
    if (c == 0.0) return 0.0;
    return std::exp(2.0 * n * std::log(std::abs(c)));
}

double survival_iterated(const ZenoConfig& config) {
    Mat6 rho = zeno_evolve(pure_density(k11), config);
    return rho(k11, k11).real();
}

EffectiveGate effective_gate(const ZenoConfig& config) {
    // Corrected channel = phases * swap * zeno_evolve, restricted to the
    // qubit subspace {00, 01, 10, 11}.
    auto corrected = [&](const Mat6& rho) {
        Mat6 evolved = zeno_evolve(rho, config);
        Mat6 swapped = Mat6::Zero();
        int perm[6] = {k00, k10, k01, k11, k02, k20};
        for (int r = 0; r < 6; ++r)
            for (int c = 0; c < 6; ++c) swapped(perm[r], perm[c]) = evolved(r, c);
        // e^{-i pi/2} per photon present.
        Eigen::Matrix<std::complex<double>, 6, 1> phase;
        int photons[6] = {0, 1, 1, 2, 2, 2};
        for (int i = 0; i < 6; ++i) phase(i) = std::exp(-kI * (kPi / 2.0) * double(photons[i]));
        for (int r = 0; r < 6; ++r)
            for (int c = 0; c < 6; ++c) swapped(r, c) *= phase(r) * std::conj(phase(c));
        return swapped;
    };

    // Choi operator over the qubit subspace.
    Eigen::MatrixXcd choi = Eigen::MatrixXcd::Zero(16, 16);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            Mat6 unit = Mat6::Zero();
            unit(i, j) = 1.0;
            Mat6 evolved = corrected(unit);
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) choi(4 * i + r, 4 * j + c) = evolved(r, c);
        }
    }
    choi /= 4.0;

    Matrix4 cz = cz_gate();
    Eigen::VectorXcd omega_cz = Eigen::VectorXcd::Zero(16);
    for (int i = 0; i < 4; ++i)
        for (int r = 0; r < 4; ++r) omega_cz(4 * i + r) = cz(r, i) / 2.0;
    double fidelity = (omega_cz.adjoint() * choi * omega_cz)(0).real();

    // Leading Kraus operator from the Choi spectrum, phase-fixed.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(choi);
    Eigen::VectorXcd top = solver.eigenvectors().col(15);
    Matrix4 dominant;
    for (int i = 0; i < 4; ++i)
        for (int r = 0; r < 4; ++r) dominant(r, i) = top(4 * i + r) * 2.0 *
                                                     std::sqrt(solver.eigenvalues()(15));
    int anchor = 0;
    for (int i = 0; i < 4; ++i)
        if (std::abs(dominant(i, i)) > std::abs(dominant(anchor, anchor))) anchor = i;
    std::complex<double> ph = dominant(anchor, anchor) / std::abs(dominant(anchor, anchor));
    dominant /= ph;
    return EffectiveGate{dominant, fidelity};
}

}  // namespace zeno
}  // namespace oqsim
