#include "oqsim/density.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace oqsim {

DensityOperator::DensityOperator(ModeLayout layout, std::vector<Occupation> basis, Matrix matrix,
                                 TruncationConfig trunc)
    : layout_(layout), trunc_(trunc), basis_(std::move(basis)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() ||
        matrix_.rows() != static_cast<Eigen::Index>(basis_.size()))
        throw SimError("density matrix dimension does not match basis");
    for (int i = 0; i < dim(); ++i) index_[basis_[i]] = i;
}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
    std::vector<Occupation> basis;
    for (const auto& [occ, amp] : psi.terms()) basis.push_back(occ);
    Eigen::VectorXcd v(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) v(i) = psi.amplitude(basis[i]);
    return DensityOperator(psi.layout(), std::move(basis), v * v.adjoint(), psi.truncation());
}

DensityOperator DensityOperator::mixture(const std::vector<std::pair<double, PureState>>& parts) {
    if (parts.empty()) throw SimError("mixture of nothing");
    std::map<Occupation, int> index;
    std::vector<Occupation> basis;
    for (const auto& [w, psi] : parts) {
        for (const auto& [occ, amp] : psi.terms()) {
            if (index.count(occ)) continue;
            index[occ] = static_cast<int>(basis.size());
            basis.push_back(occ);
        }
    }
    Matrix m = Matrix::Zero(basis.size(), basis.size());
    for (const auto& [w, psi] : parts) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(basis.size());
        for (const auto& [occ, amp] : psi.terms()) v(index[occ]) = amp;
        m += w * (v * v.adjoint()).eval();
    }
    return DensityOperator(parts.front().second.layout(), std::move(basis), std::move(m),
                           parts.front().second.truncation());
}

int DensityOperator::index_of(const Occupation& occ) const {
    auto it = index_.find(occ);
    return it == index_.end() ? -1 : it->second;
}

double DensityOperator::trace() const { return matrix_.trace().real(); }

double DensityOperator::purity() const { return (matrix_ * matrix_).trace().real(); }

double DensityOperator::hermiticity_defect() const {
    return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityOperator::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> solver((matrix_ + matrix_.adjoint()) / 2.0);
    return solver.eigenvalues().minCoeff();
}

DensityOperator DensityOperator::normalized() const {
    double t = trace();
    if (t <= 0.0) throw SimError("normalizing a traceless density operator");
    return DensityOperator(layout_, basis_, matrix_ / t, trunc_);
}

double DensityOperator::expectation(const PureState& psi) const {
    if (psi.layout() != layout_) throw LayoutMismatch("expectation: layouts differ");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim());
    for (const auto& [occ, amp] : psi.terms()) {
        int i = index_of(occ);
        if (i >= 0) v(i) = amp;
    }
    return (v.adjoint() * matrix_ * v)(0).real();
}

DensityOperator DensityOperator::apply_linear_map(
    const std::function<PureState(const PureState&)>& f) const {
    std::vector<PureState> images;
    images.reserve(basis_.size());
    for (const auto& occ : basis_) {
        PureState e(layout_, trunc_);
        e.set_term(occ, cd(1.0, 0.0));
        images.push_back(f(e));
    }

    std::map<Occupation, int> out_index;
    std::vector<Occupation> out_basis;
    for (const auto& img : images) {
        for (const auto& [occ, amp] : img.terms()) {
            if (out_index.count(occ)) continue;
            out_index[occ] = static_cast<int>(out_basis.size());
            out_basis.push_back(occ);
        }
    }
    if (out_basis.empty()) throw SimError("linear map annihilated the whole basis");

    Matrix m = Matrix::Zero(out_basis.size(), basis_.size());
    for (std::size_t c = 0; c < images.size(); ++c)
        for (const auto& [occ, amp] : images[c].terms()) m(out_index[occ], c) = amp;

    return DensityOperator(images.front().layout(), std::move(out_basis),
                           m * matrix_ * m.adjoint(), trunc_);
}

DensityOperator DensityOperator::apply_mode_unitary(const ModeUnitary& u) const {
    return apply_linear_map([&](const PureState& e) { return apply_interferometer(e, u); });
}

DensityOperator DensityOperator::drop_vacuum_modes(const std::vector<ModeId>& modes) const {
    std::vector<ModeId> sorted = modes;
    std::sort(sorted.begin(), sorted.end(), std::greater<ModeId>());
    std::vector<Occupation> out_basis;
    for (const auto& occ : basis_) {
        Occupation next = occ;
        for (ModeId m : sorted) {
            if (next[m] != 0) throw SimError("drop_vacuum_modes: mode is not in vacuum");
            next.erase(next.begin() + m);
        }
        out_basis.push_back(next);
    }
    return DensityOperator(ModeLayout::flat(mode_count() - static_cast<int>(modes.size())),
                           std::move(out_basis), matrix_, trunc_);
}

std::vector<BucketOutcome> bucket_detect_set(const DensityOperator& rho,
                                             const std::vector<ModeId>& modes, double eta,
                                             double dark_count) {
    if (eta < 0.0 || eta > 1.0) throw InvalidParams("bucket detector efficiency must be in [0,1]");
    if (dark_count < 0.0 || dark_count > 1.0)
        throw InvalidParams("dark count probability must be in [0,1]");
    const auto& basis = rho.basis();
    int d = rho.dim();

    // Detector pattern of each basis state: its occupations on the covered
    // modes. Coherence between distinct patterns dies in the absorber.
    std::vector<Occupation> pattern(d);
    std::vector<int> photons(d, 0);
    std::vector<int> absorbed_index(d);
    std::vector<Occupation> absorbed_basis;
    std::map<Occupation, int> absorbed_lookup;
    for (int i = 0; i < d; ++i) {
        Occupation p;
        Occupation cleared = basis[i];
        for (ModeId m : modes) {
            p.push_back(basis[i][m]);
            photons[i] += basis[i][m];
            cleared[m] = 0;
        }
        pattern[i] = std::move(p);
        auto it = absorbed_lookup.find(cleared);
        if (it == absorbed_lookup.end()) {
            absorbed_lookup[cleared] = static_cast<int>(absorbed_basis.size());
            absorbed_index[i] = static_cast<int>(absorbed_basis.size());
            absorbed_basis.push_back(cleared);
        } else {
            absorbed_index[i] = it->second;
        }
    }

    std::vector<BucketOutcome> out;
    double total_trace = rho.trace();
    for (int click = 0; click <= 1; ++click) {
        Matrix m = Matrix::Zero(absorbed_basis.size(), absorbed_basis.size());
        for (int a = 0; a < d; ++a) {
            for (int b = 0; b < d; ++b) {
                if (pattern[a] != pattern[b]) continue;
                double no_click_w = (1.0 - dark_count) * std::pow(1.0 - eta, photons[a]);
                double w = click ? (1.0 - no_click_w) : no_click_w;
                m(absorbed_index[a], absorbed_index[b]) += w * rho.matrix()(a, b);
            }
        }
        double p = m.trace().real() / total_trace;
        DensityOperator cond(rho.layout(), absorbed_basis,
                             p > 1e-15 ? (m / m.trace().real()).eval() : m, rho.truncation());
        out.push_back(BucketOutcome{click == 1, std::move(cond), p});
    }
    return out;
}

std::vector<BucketOutcome> bucket_detect(const DensityOperator& rho, ModeId mode, double eta,
                                         double dark_count) {
    return bucket_detect_set(rho, {mode}, eta, dark_count);
}

}  // namespace oqsim
