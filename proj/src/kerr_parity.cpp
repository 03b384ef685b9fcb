#include "oqsim/kerr_parity.hpp"

#include <cmath>

namespace oqsim {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
const double kQuarticRootPi = std::pow(kPi, 0.25);
}  // namespace

HybridState HybridState::attach(const Eigen::Vector4cd& qubits, double alpha, double theta) {
    if (alpha < 0.0) throw InvalidParams("alpha must be non-negative");
    HybridState s;
    s.alpha = alpha;
    s.theta = theta;
    for (int i = 0; i < 4; ++i) {
        s.amplitudes[i] = qubits(i);
        s.label_shift[i] = 0;
    }
    return s;
}

double HybridState::norm2() const {
    // Distinct qubit labels are orthogonal, so probe overlaps only enter at
    // equal labels where they are exactly one.
    double n = 0.0;
    for (int i = 0; i < 4; ++i) n += std::norm(amplitudes[i]);
    return n;
}

HybridState cross_kerr(const HybridState& state, int control_qubit, int sign) {
    if (control_qubit != 0 && control_qubit != 1) throw InvalidSpec("control qubit is 0 or 1");
    if (sign != 1 && sign != -1) throw InvalidSpec("kerr sign is +1 or -1");
    HybridState out = state;
    for (int basis = 0; basis < 4; ++basis) {
        int bit = (control_qubit == 0) ? (basis >> 1) & 1 : basis & 1;
        if (bit == 0 || std::abs(out.amplitudes[basis]) == 0.0) continue;
        int shifted = out.label_shift[basis] + sign;
        if (shifted < -1 || shifted > 1)
            throw LabelOverflow("coherent branch label left {-1,0,+1}");
        out.label_shift[basis] = shifted;
    }
    return out;
}

cd coherent_overlap(double alpha, double theta, int s1, int s2) {
    // <b|c> = exp(-|b|^2/2 - |c|^2/2 + conj(b) c) with b,c on the alpha circle.
    cd phase_diff = std::exp(cd(0.0, (s2 - s1) * theta));
    return std::exp(alpha * alpha * (phase_diff - 1.0));
}

cd x_overlap(double x, int s, double alpha, double theta) {
    double ts = s * theta;
    double mean = std::sqrt(2.0) * alpha * std::cos(ts);
    double gauss = std::exp(-0.5 * (x - mean) * (x - mean));
    double phase = alpha * std::sin(ts) * (std::sqrt(2.0) * x - alpha * std::cos(ts));
    return gauss * std::exp(cd(0.0, phase)) / kQuarticRootPi;
}

double phase_correction(double x, double alpha, double theta) {
    return alpha * std::sin(theta) * (std::sqrt(2.0) * x - alpha * std::cos(theta));
}

double x_even_peak(double alpha) { return std::sqrt(2.0) * alpha; }

double x_odd_peak(double alpha, double theta) { return std::sqrt(2.0) * alpha * std::cos(theta); }

double min_alpha_for_separation(double theta, double separation) {
    double half_angle = std::sin(theta / 2.0);
    double denom = std::sqrt(2.0) * 2.0 * half_angle * half_angle;  // sqrt2 (1 - cos theta)
    if (denom <= 0.0) throw InvalidParams("separation requires a nonzero theta");
    return separation / denom;
}

Conditioned condition_on_x(const HybridState& state, double x) {
    Conditioned c;
    for (int basis = 0; basis < 4; ++basis)
        c.qubits(basis) =
            state.amplitudes[basis] * x_overlap(x, state.label_shift[basis], state.alpha,
                                                state.theta);
    c.density = c.qubits.squaredNorm();
    return c;
}

QuadratureOutcome sample_x(const HybridState& state, RandomStream& rng) {
    double w_even = 0.0, w_odd = 0.0;
    for (int basis = 0; basis < 4; ++basis) {
        double w = std::norm(state.amplitudes[basis]);
        // Labels 0 sit at the even peak, +-1 at the odd peak.
        if (state.label_shift[basis] == 0)
            w_even += w;
        else
            w_odd += w;
    }
    double xe = x_even_peak(state.alpha);
    double xo = x_odd_peak(state.alpha, state.theta);
    double mid = 0.5 * (xe + xo);

    bool from_even = rng.uniform() * (w_even + w_odd) < w_even;
    double mean = from_even ? xe : xo;
    double x = mean + rng.gaussian() / std::sqrt(2.0);

    QuadratureOutcome out;
    out.x = x;
    out.even = x >= mid;
    out.correction_phase = phase_correction(x, state.alpha, state.theta);
    return out;
}

ParityGateResult parity_gate(const Eigen::Vector4cd& psi_ab, double alpha, double theta,
                             RandomStream& rng) {
    HybridState probe = HybridState::attach(psi_ab.normalized(), alpha, theta);
    probe = cross_kerr(probe, 0, +1);
    probe = cross_kerr(probe, 1, -1);

    QuadratureOutcome q = sample_x(probe, rng);
    Conditioned c = condition_on_x(probe, q.x);

    Eigen::Vector4cd corrected = c.qubits;
    corrected(1) *= std::exp(cd(0.0, q.correction_phase));   // |01> carries e^{-i phi}
    corrected(2) *= std::exp(cd(0.0, -q.correction_phase));  // |10> carries e^{+i phi}
    corrected.normalize();
    return ParityGateResult{q.even, corrected, q.x};
}

double misidentification_probability(double separation) {
    return 0.5 * std::erfc(separation / 2.0);
}

double mean_gate_fidelity(const Eigen::Vector4cd& psi_ab, double alpha, double theta,
                          int grid_points) {
    Eigen::Vector4cd psi = psi_ab.normalized();
    HybridState probe = HybridState::attach(psi, alpha, theta);
    probe = cross_kerr(probe, 0, +1);
    probe = cross_kerr(probe, 1, -1);

    double xe = x_even_peak(alpha);
    double xo = x_odd_peak(alpha, theta);
    double mid = 0.5 * (xe + xo);
    double lo = xo - 10.0, hi = xe + 10.0;
    double h = (hi - lo) / (grid_points - 1);

    Eigen::Vector4cd even_target = psi, odd_target = psi;
    even_target(1) = even_target(2) = 0.0;
    odd_target(0) = odd_target(3) = 0.0;
    double even_norm = even_target.norm(), odd_norm = odd_target.norm();
    if (even_norm > 0) even_target /= even_norm;
    if (odd_norm > 0) odd_target /= odd_norm;

    // Trapezoid quadrature of p(x) F(x); the integrand is smooth and decays
    // as a Gaussian at both ends.
    double acc = 0.0;
    for (int i = 0; i < grid_points; ++i) {
        double x = lo + h * i;
        Conditioned c = condition_on_x(probe, x);
        if (c.density < 1e-300) continue;
        Eigen::Vector4cd corrected = c.qubits;
        double phi = phase_correction(x, alpha, theta);
        corrected(1) *= std::exp(cd(0.0, phi));
        corrected(2) *= std::exp(cd(0.0, -phi));
        corrected.normalize();
        const Eigen::Vector4cd& target = (x >= mid) ? even_target : odd_target;
        double target_norm = (x >= mid) ? even_norm : odd_norm;
        double fid = (target_norm > 0) ? std::norm(target.dot(corrected)) : 0.0;
        double weight = (i == 0 || i == grid_points - 1) ? 0.5 : 1.0;
        acc += weight * c.density * fid;
    }
    return acc * h;
}

Matrix4 strong_kerr_two_qubit_matrix(double tau) {
    auto layout = ModeLayout::polar(2);
    auto trunc = TruncationConfig::with_photons(2);
    const Occupation basis_occ[4] = {{1, 0, 1, 0}, {1, 0, 0, 1}, {0, 1, 1, 0}, {0, 1, 0, 1}};
    Matrix4 m = Matrix4::Zero();
    for (int c = 0; c < 4; ++c) {
        auto in = PureState::basis(layout, basis_occ[c], trunc);
        auto out = apply_cross_kerr_phase(in, layout.v(0), layout.v(1), tau);
        for (int r = 0; r < 4; ++r) m(r, c) = out.amplitude(basis_occ[r]);
    }
    return m;
}

}  // namespace oqsim
