#include "oqsim/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace oqsim {

PureState PureState::vacuum(ModeLayout layout, TruncationConfig trunc) {
    PureState s(layout, trunc);
    s.terms_[Occupation(layout.mode_count(), 0)] = cd(1.0, 0.0);
    return s;
}

PureState PureState::basis(ModeLayout layout, Occupation occ, TruncationConfig trunc) {
    if (static_cast<int>(occ.size()) != layout.mode_count())
        throw LayoutMismatch("basis occupation length does not match layout");
    int total = std::accumulate(occ.begin(), occ.end(), 0);
    for (int n : occ)
        if (n < 0 || n > trunc.max_photons_per_mode)
            throw TruncationExceeded("basis state violates per-mode truncation");
    if (total > trunc.max_total_photons)
        throw TruncationExceeded("basis state violates total-photon truncation");
    PureState s(layout, trunc);
    s.terms_[std::move(occ)] = cd(1.0, 0.0);
    return s;
}

double PureState::norm2() const {
    double n = 0.0;
    for (const auto& [occ, amp] : terms_) n += std::norm(amp);
    return n;
}

cd PureState::amplitude(const Occupation& occ) const {
    auto it = terms_.find(occ);
    return it == terms_.end() ? cd(0.0, 0.0) : it->second;
}

PureState PureState::normalized() const {
    double n = std::sqrt(norm2());
    if (n == 0.0) return *this;
    return cd(1.0 / n, 0.0) * (*this);
}

PureState PureState::with_layout(ModeLayout layout) const {
    if (layout.mode_count() != mode_count())
        throw LayoutMismatch("with_layout requires identical mode count");
    PureState s = *this;
    s.layout_ = layout;
    return s;
}

void PureState::set_term(Occupation occ, cd amp) {
    if (static_cast<int>(occ.size()) != layout_.mode_count())
        throw LayoutMismatch("term occupation length does not match layout");
    terms_[std::move(occ)] = amp;
}

void PureState::accumulate(const Occupation& occ, cd amp) {
    terms_[occ] += amp;
}

void PureState::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) < trunc_.prune_epsilon)
            it = terms_.erase(it);
        else
            ++it;
    }
}

PureState operator*(cd c, const PureState& s) {
    PureState r = s;
    for (auto& [occ, amp] : r.terms_) amp *= c;
    r.prune();
    return r;
}

PureState operator+(const PureState& a, const PureState& b) {
    if (a.layout_ != b.layout_) throw LayoutMismatch("adding states with different layouts");
    PureState r = a;
    for (const auto& [occ, amp] : b.terms_) r.terms_[occ] += amp;
    r.prune();
    return r;
}

PureState operator-(const PureState& a, const PureState& b) {
    return a + (cd(-1.0, 0.0) * b);
}

PureState create(const PureState& state, ModeId mode) {
    if (mode < 0 || mode >= state.mode_count()) throw InvalidSpec("create: mode out of range");
    const auto& trunc = state.truncation();
    PureState out(state.layout(), trunc);
    for (const auto& [occ, amp] : state.terms()) {
        int n = occ[mode];
        int total = std::accumulate(occ.begin(), occ.end(), 0);
        if (n + 1 > trunc.max_photons_per_mode)
            throw TruncationExceeded("create: per-mode truncation exceeded on mode " +
                                     std::to_string(mode));
        if (total + 1 > trunc.max_total_photons)
            throw TruncationExceeded("create: total-photon truncation exceeded");
        Occupation next = occ;
        next[mode] = n + 1;
        out.accumulate(next, amp * std::sqrt(static_cast<double>(n + 1)));
    }
    out.prune();
    return out;
}

PureState annihilate(const PureState& state, ModeId mode) {
    if (mode < 0 || mode >= state.mode_count()) throw InvalidSpec("annihilate: mode out of range");
    PureState out(state.layout(), state.truncation());
    for (const auto& [occ, amp] : state.terms()) {
        int n = occ[mode];
        if (n == 0) continue;
        Occupation next = occ;
        next[mode] = n - 1;
        out.accumulate(next, amp * std::sqrt(static_cast<double>(n)));
    }
    out.prune();
    return out;
}

cd inner_product(const PureState& a, const PureState& b) {
    if (a.layout() != b.layout()) throw LayoutMismatch("inner_product: layouts differ");
    // Iterate the smaller map.
    const PureState& small = a.terms().size() <= b.terms().size() ? a : b;
    const PureState& large = a.terms().size() <= b.terms().size() ? b : a;
    cd acc(0.0, 0.0);
    for (const auto& [occ, amp] : small.terms()) {
        cd other = large.amplitude(occ);
        if (&small == &a)
            acc += std::conj(amp) * other;
        else
            acc += std::conj(other) * amp;
    }
    return acc;
}

double number_expectation(const PureState& state, ModeId mode) {
    double acc = 0.0;
    for (const auto& [occ, amp] : state.terms()) acc += occ[mode] * std::norm(amp);
    return acc;
}

PostSelectResult post_select(const PureState& state, ModeId mode, int photons) {
    if (mode < 0 || mode >= state.mode_count()) throw InvalidSpec("post_select: mode out of range");
    double total = state.norm2();
    if (total == 0.0) throw ZeroProbabilityBranch("post_select on the zero vector");

    ModeLayout reduced = ModeLayout::flat(state.mode_count() - 1);
    PureState kept(reduced, state.truncation());
    double kept_norm2 = 0.0;
    for (const auto& [occ, amp] : state.terms()) {
        if (occ[mode] != photons) continue;
        Occupation next;
        next.reserve(occ.size() - 1);
        for (int m = 0; m < static_cast<int>(occ.size()); ++m)
            if (m != mode) next.push_back(occ[m]);
        kept.accumulate(next, amp);
        kept_norm2 += std::norm(amp);
    }
    if (kept.is_zero() || kept_norm2 == 0.0)
        throw ZeroProbabilityBranch("post_select: no terms with " + std::to_string(photons) +
                                    " photons in mode " + std::to_string(mode));
    return PostSelectResult{kept.normalized(), kept_norm2 / total};
}

std::map<std::vector<int>, double> photon_number_distribution(const PureState& state,
                                                              const std::vector<ModeId>& modes) {
    double total = state.norm2();
    std::map<std::vector<int>, double> dist;
    for (const auto& [occ, amp] : state.terms()) {
        std::vector<int> key;
        key.reserve(modes.size());
        for (ModeId m : modes) key.push_back(occ[m]);
        dist[key] += std::norm(amp) / total;
    }
    return dist;
}

SampleResult sample_photon_numbers(const PureState& state, const std::vector<ModeId>& modes,
                                   RandomStream& rng) {
    for (std::size_t i = 0; i < modes.size(); ++i)
        for (std::size_t j = i + 1; j < modes.size(); ++j)
            if (modes[i] == modes[j]) throw InvalidSpec("sample_photon_numbers: repeated mode");

    auto dist = photon_number_distribution(state, modes);
    std::vector<const std::vector<int>*> keys;
    std::vector<double> weights;
    for (const auto& [k, p] : dist) {
        keys.push_back(&k);
        weights.push_back(p);
    }
    std::size_t drawn = rng.pick(weights);
    const std::vector<int>& counts = *keys[drawn];

    // Post-select in descending flat order so earlier removals do not shift
    // the indices still to be selected.
    std::vector<std::pair<ModeId, int>> order;
    for (std::size_t i = 0; i < modes.size(); ++i) order.push_back({modes[i], counts[i]});
    std::sort(order.begin(), order.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    PureState cond = state;
    double prob = 1.0;
    for (const auto& [mode, n] : order) {
        PostSelectResult r = post_select(cond, mode, n);
        cond = r.state;
        prob *= r.probability;
    }
    return SampleResult{counts, cond, prob};
}

std::string to_string(const Occupation& occ) {
    std::ostringstream os;
    os << "|";
    for (std::size_t i = 0; i < occ.size(); ++i) {
        if (i) os << ",";
        os << occ[i];
    }
    os << ">";
    return os.str();
}

}  // namespace oqsim
