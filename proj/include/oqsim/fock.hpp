#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "oqsim/errors.hpp"
#include "oqsim/rng.hpp"

namespace oqsim {

using cd = std::complex<double>;

using ModeId = int;

// Photon count per flat mode, in layout order.
using Occupation = std::vector<int>;

// Flat-mode bookkeeping. A polarized layout interleaves H and V rails:
// flat id = 2 * spatial + (0 for H, 1 for V). Unpolarized layouts are one
// flat mode per spatial mode.
struct ModeLayout {
    int spatial = 0;
    bool polarized = false;

    static ModeLayout flat(int modes) { return ModeLayout{modes, false}; }
    static ModeLayout polar(int spatial_modes) { return ModeLayout{spatial_modes, true}; }

    int mode_count() const { return polarized ? 2 * spatial : spatial; }
    ModeId h(int s) const { return polarized ? 2 * s : s; }
    ModeId v(int s) const { return 2 * s + 1; }

    friend bool operator==(const ModeLayout& a, const ModeLayout& b) {
        return a.spatial == b.spatial && a.polarized == b.polarized;
    }
    friend bool operator!=(const ModeLayout& a, const ModeLayout& b) { return !(a == b); }
};

struct TruncationConfig {
    int max_photons_per_mode = 2;
    int max_total_photons = 4;
    double prune_epsilon = 1e-14;

    static TruncationConfig with_photons(int n) { return TruncationConfig{n, n, 1e-14}; }
};

// Sparse multi-mode Fock state: occupation vector -> complex amplitude.
// States may be sub-normalized after post-selection; the associated branch
// probability is reported by the operation, never folded into amplitudes.
// All operations are pure; a PureState never mutates after construction
// apart from the builder helpers used before first use.
class PureState {
  public:
    using TermMap = std::map<Occupation, cd>;

    PureState() = default;
    PureState(ModeLayout layout, TruncationConfig trunc = {})
        : layout_(layout), trunc_(trunc) {}

    static PureState vacuum(ModeLayout layout, TruncationConfig trunc = {});
    static PureState basis(ModeLayout layout, Occupation occ, TruncationConfig trunc = {});

    const ModeLayout& layout() const { return layout_; }
    const TruncationConfig& truncation() const { return trunc_; }
    const TermMap& terms() const { return terms_; }

    int mode_count() const { return layout_.mode_count(); }
    bool is_zero() const { return terms_.empty(); }

    double norm2() const;
    cd amplitude(const Occupation& occ) const;

    PureState normalized() const;

    // Reinterprets the flat modes under a different layout with the same
    // mode count (e.g. two leftover flat modes viewed as one polarized
    // spatial mode). Amplitudes are untouched.
    PureState with_layout(ModeLayout layout) const;

    // Builder helpers.
    void set_term(Occupation occ, cd amp);
    void accumulate(const Occupation& occ, cd amp);
    void prune();

    friend PureState operator*(cd c, const PureState& s);
    friend PureState operator+(const PureState& a, const PureState& b);
    friend PureState operator-(const PureState& a, const PureState& b);

  private:
    ModeLayout layout_;
    TruncationConfig trunc_;
    TermMap terms_;
};

struct PostSelectResult {
    PureState state;      // renormalized, selected mode removed
    double probability = 0.0;
};

struct SampleResult {
    std::vector<int> counts;  // aligned with the requested mode list
    PureState state;          // conditional state, sampled modes removed
    double probability = 0.0;
};

// a^dag on one mode: |..n..> -> sqrt(n+1)|..n+1..>. Throws TruncationExceeded
// if any resulting term violates the state's truncation.
PureState create(const PureState& state, ModeId mode);

// a on one mode: |..n..> -> sqrt(n)|..n-1..>. May return the zero vector.
PureState annihilate(const PureState& state, ModeId mode);

// Conjugate-linear in the first argument.
cd inner_product(const PureState& a, const PureState& b);

// <n_hat> on one mode for a normalized or sub-normalized state.
double number_expectation(const PureState& state, ModeId mode);

PostSelectResult post_select(const PureState& state, ModeId mode, int photons);

// Joint photon-number measurement of several modes, drawn from the exact
// Born distribution. The conditional state equals sequential post_select
// on the drawn counts.
SampleResult sample_photon_numbers(const PureState& state, const std::vector<ModeId>& modes,
                                   RandomStream& rng);

// Exact marginal distribution over joint photon counts of `modes`.
std::map<std::vector<int>, double> photon_number_distribution(const PureState& state,
                                                              const std::vector<ModeId>& modes);

std::string to_string(const Occupation& occ);

}  // namespace oqsim
