#include "oqsim/linear_optics.hpp"

#include <cmath>
#include <numeric>

namespace oqsim {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr cd kI = cd(0.0, 1.0);
}  // namespace

ModeUnitary::ModeUnitary(Matrix m) : matrix(std::move(m)) {
    if (matrix.rows() != matrix.cols()) throw NotUnitary("mode matrix must be square");
    if (unitarity_defect(matrix) > 1e-10) throw NotUnitary("mode matrix is not unitary");
}

ModeUnitary ModeUnitary::identity(int n) { return ModeUnitary(Matrix::Identity(n, n)); }

double ModeUnitary::unitarity_defect(const Matrix& m) {
    return (m * m.adjoint() - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

ElementSpec ElementSpec::phase_shift(ModeId mode, double phi) {
    return ElementSpec{ElementKind::phase, 0.0, phi, {mode}};
}
ElementSpec ElementSpec::beam_splitter(ModeId a, ModeId b, double theta, double phi) {
    return ElementSpec{ElementKind::beam_splitter, theta, phi, {a, b}};
}
ElementSpec ElementSpec::polarization_rotation(ModeId h, ModeId v, double theta, double phi) {
    return ElementSpec{ElementKind::polarization_rotation, theta, phi, {h, v}};
}
ElementSpec ElementSpec::pbs(ModeId spatial_a, ModeId spatial_b) {
    return ElementSpec{ElementKind::pbs, 0.0, 0.0, {spatial_a, spatial_b}};
}
ElementSpec ElementSpec::mirror(ModeId a, ModeId b) {
    return ElementSpec{ElementKind::mirror, kPi / 2.0, 0.0, {a, b}};
}

namespace {

Matrix two_mode_coupler(double theta, double phi) {
    Matrix m(2, 2);
    m(0, 0) = std::cos(theta);
    m(0, 1) = kI * std::exp(cd(0.0, -phi)) * std::sin(theta);
    m(1, 0) = kI * std::exp(cd(0.0, phi)) * std::sin(theta);
    m(1, 1) = std::cos(theta);
    return m;
}

void check_finite(const ElementSpec& spec) {
    if (!std::isfinite(spec.theta) || !std::isfinite(spec.phi))
        throw InvalidSpec("element angles must be finite");
}

}  // namespace

ModeUnitary element_matrix(const ElementSpec& spec) {
    check_finite(spec);
    switch (spec.kind) {
        case ElementKind::phase: {
            if (spec.modes.size() != 1) throw InvalidSpec("phase element takes one mode");
            Matrix m(1, 1);
            m(0, 0) = std::exp(cd(0.0, spec.phi));
            return ModeUnitary(m);
        }
        case ElementKind::beam_splitter:
        case ElementKind::polarization_rotation: {
            if (spec.modes.size() != 2) throw InvalidSpec("two-mode element takes two modes");
            return ModeUnitary(two_mode_coupler(spec.theta, spec.phi));
        }
        case ElementKind::mirror: {
            if (spec.modes.size() != 2) throw InvalidSpec("mirror takes two modes");
            return ModeUnitary(two_mode_coupler(kPi / 2.0, 0.0));
        }
        case ElementKind::pbs: {
            if (spec.modes.size() != 2) throw InvalidSpec("pbs takes two spatial modes");
            // a_H -> a_H, a_V -> b_V, b_H -> b_H, b_V -> a_V on (aH,aV,bH,bV).
            Matrix m = Matrix::Zero(4, 4);
            m(0, 0) = 1.0;
            m(3, 1) = 1.0;
            m(2, 2) = 1.0;
            m(1, 3) = 1.0;
            return ModeUnitary(m);
        }
    }
    throw InvalidSpec("unknown element kind");
}

ModeUnitary embed_element(const ElementSpec& spec, const ModeLayout& layout) {
    ModeUnitary local = element_matrix(spec);
    std::vector<ModeId> flat;
    if (spec.kind == ElementKind::pbs) {
        if (!layout.polarized) throw InvalidSpec("pbs requires a polarized layout");
        flat = {layout.h(spec.modes[0]), layout.v(spec.modes[0]), layout.h(spec.modes[1]),
                layout.v(spec.modes[1])};
    } else {
        flat = spec.modes;
    }
    int n = layout.mode_count();
    for (ModeId m : flat)
        if (m < 0 || m >= n) throw InvalidSpec("element mode out of range");
    Matrix full = Matrix::Identity(n, n);
    for (std::size_t r = 0; r < flat.size(); ++r)
        for (std::size_t c = 0; c < flat.size(); ++c)
            full(flat[r], flat[c]) = local.matrix(static_cast<int>(r), static_cast<int>(c));
    return ModeUnitary(full);
}

ModeUnitary circuit_unitary(const std::vector<ElementSpec>& circuit, const ModeLayout& layout) {
    Matrix acc = Matrix::Identity(layout.mode_count(), layout.mode_count());
    for (const ElementSpec& e : circuit) acc = embed_element(e, layout).matrix * acc;
    return ModeUnitary(acc);
}

ModeUnitary splitter_5050() {
    Matrix m(2, 2);
    double s = 1.0 / std::sqrt(2.0);
    m << s, s, s, -s;
    return ModeUnitary(m);
}

ModeUnitary rotation_45() {
    Matrix m(2, 2);
    double s = 1.0 / std::sqrt(2.0);
    m << s, s, s, -s;
    return ModeUnitary(m);
}

std::vector<ElementSpec> rotation_45_circuit(ModeId h, ModeId v) {
    return {ElementSpec::polarization_rotation(h, v, kPi / 4.0, kPi / 2.0),
            ElementSpec::phase_shift(v, kPi)};
}

PureState apply_interferometer(const PureState& state, const ModeUnitary& u) {
    int n = state.mode_count();
    if (u.dims() != n) throw LayoutMismatch("interferometer dimension != mode count");
    PureState out(state.layout(), state.truncation());
    for (const auto& [occ, amp] : state.terms()) {
        // Normalization of the monomial (a_0^dag)^{n_0} ... |vac>.
        double fact = 1.0;
        for (int m = 0; m < n; ++m)
            for (int k = 2; k <= occ[m]; ++k) fact *= k;
        PureState partial(state.layout(), state.truncation());
        partial.set_term(Occupation(n, 0), amp / std::sqrt(fact));
        for (int m = 0; m < n; ++m) {
            for (int rep = 0; rep < occ[m]; ++rep) {
                // One substituted creation operator: column m of U.
                PureState next(state.layout(), state.truncation());
                for (int j = 0; j < n; ++j) {
                    cd coef = u.matrix(j, m);
                    if (std::abs(coef) < 1e-15) continue;
                    next = next + coef * create(partial, j);
                }
                partial = next;
            }
        }
        out = out + partial;
    }
    out.prune();
    return out;
}

PureState apply_cross_kerr_phase(const PureState& state, ModeId a, ModeId b, double tau) {
    PureState out(state.layout(), state.truncation());
    for (const auto& [occ, amp] : state.terms())
        out.set_term(occ, amp * std::exp(cd(0.0, tau * occ[a] * occ[b])));
    return out;
}

cd permanent(const Matrix& m) {
    int n = static_cast<int>(m.rows());
    if (n == 0) return cd(1.0, 0.0);
    // Ryser with subset enumeration.
    cd total(0.0, 0.0);
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        cd prod(1.0, 0.0);
        int bits = 0;
        for (int r = 0; r < n; ++r) {
            cd row_sum(0.0, 0.0);
            for (int c = 0; c < n; ++c)
                if (mask & (1u << c)) row_sum += m(r, c);
            prod *= row_sum;
        }
        for (int c = 0; c < n; ++c)
            if (mask & (1u << c)) ++bits;
        total += ((n - bits) % 2 == 0 ? 1.0 : -1.0) * prod;
    }
    return total;
}

cd amplitude_oracle(const Occupation& input, const Occupation& output, const ModeUnitary& u) {
    int n_in = std::accumulate(input.begin(), input.end(), 0);
    int n_out = std::accumulate(output.begin(), output.end(), 0);
    if (n_in != n_out) throw PhotonNumberMismatch("amplitude_oracle: photon numbers differ");
    if (n_in == 0) return cd(1.0, 0.0);

    std::vector<int> cols, rows;
    for (int m = 0; m < static_cast<int>(input.size()); ++m)
        for (int k = 0; k < input[m]; ++k) cols.push_back(m);
    for (int m = 0; m < static_cast<int>(output.size()); ++m)
        for (int k = 0; k < output[m]; ++k) rows.push_back(m);

    Matrix sub(n_in, n_in);
    for (int r = 0; r < n_in; ++r)
        for (int c = 0; c < n_in; ++c) sub(r, c) = u.matrix(rows[r], cols[c]);

    double fact = 1.0;
    for (int v : input)
        for (int k = 2; k <= v; ++k) fact *= k;
    for (int v : output)
        for (int k = 2; k <= v; ++k) fact *= k;
    return permanent(sub) / std::sqrt(fact);
}

std::vector<ElementSpec> reck_decompose(const ModeUnitary& u) {
    if (ModeUnitary::unitarity_defect(u.matrix) > 1e-10)
        throw NotUnitary("reck_decompose requires a unitary matrix");
    int n = u.dims();
    Matrix v = u.matrix;
    // Null the strict lower triangle column by column with couplers on
    // adjacent mode pairs; G * v zeroes v(r, c) using rows (r-1, r).
    struct Givens {
        int row;
        double theta;
        double phi;
    };
    std::vector<Givens> ops;
    for (int c = 0; c < n - 1; ++c) {
        for (int r = n - 1; r > c; --r) {
            cd x = v(r - 1, c);
            cd y = v(r, c);
            if (std::abs(y) < 1e-14) continue;
            double theta, phi;
            if (std::abs(x) < 1e-14) {
                theta = kPi / 2.0;
                phi = 0.0;
            } else {
                theta = std::atan2(std::abs(y), std::abs(x));
                phi = std::arg(y) - std::arg(x) + kPi / 2.0;
            }
            Matrix g = two_mode_coupler(theta, phi);
            for (int col = 0; col < n; ++col) {
                cd a = v(r - 1, col), b = v(r, col);
                v(r - 1, col) = g(0, 0) * a + g(0, 1) * b;
                v(r, col) = g(1, 0) * a + g(1, 1) * b;
            }
            ops.push_back({r, theta, phi});
        }
    }
    // v is now diagonal with unit-modulus entries:
    // u = G_1^dag ... G_m^dag diag(v).
    std::vector<ElementSpec> out;
    for (const Givens& g : ops)
        out.push_back(ElementSpec::beam_splitter(g.row - 1, g.row, -g.theta, g.phi));
    for (int m = 0; m < n; ++m) {
        double ph = std::arg(v(m, m));
        out.push_back(ElementSpec::phase_shift(m, ph));
    }
    return out;
}

PureState dual_rail_to_polarization(const PureState& state) {
    if (state.layout().polarized || state.mode_count() != 2)
        throw InvalidEncoding("dual_rail_to_polarization expects two unpolarized spatial modes");
    for (const auto& [occ, amp] : state.terms())
        if (occ[0] + occ[1] != 1)
            throw InvalidEncoding("dual_rail_to_polarization expects exactly one photon");

    // Embed into two polarized spatial modes (aH, aV, bH, bV); the photon
    // starts horizontally polarized on either path.
    ModeLayout two_polar = ModeLayout::polar(2);
    TruncationConfig trunc = state.truncation();
    PureState embedded(two_polar, trunc);
    for (const auto& [occ, amp] : state.terms())
        embedded.set_term(occ[0] == 1 ? Occupation{1, 0, 0, 0} : Occupation{0, 0, 1, 0}, amp);

    // Flip the b rail to V (bH -> bV exactly at theta=pi/2, phi=-pi/2),
    // then merge paths at the pbs. Both b rails come out in vacuum.
    std::vector<ElementSpec> circuit = {
        ElementSpec::polarization_rotation(two_polar.h(1), two_polar.v(1), kPi / 2.0, -kPi / 2.0),
        ElementSpec::pbs(0, 1)};
    PureState routed = apply_interferometer(embedded, circuit_unitary(circuit, two_polar));
    PureState trimmed = post_select(routed, 3, 0).state;
    trimmed = post_select(trimmed, 2, 0).state;
    return trimmed.with_layout(ModeLayout::polar(1));
}

ModeUnitary haar_random_unitary(int n, RandomStream& rng) {
    Matrix z(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) z(r, c) = cd(rng.gaussian(), rng.gaussian());
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < n; ++c) {
        cd d = r(c, c);
        q.col(c) *= d / std::abs(d);
    }
    return ModeUnitary(q);
}

}  // namespace oqsim
