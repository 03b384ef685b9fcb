#pragma once

#include <functional>
#include <map>
#include <vector>

#include "oqsim/fock.hpp"
#include "oqsim/linear_optics.hpp"

namespace oqsim {

// Hermitian positive operator over an explicit list of occupation states.
// Carrier for incoherent evolution: detection with loss, absorption
// channels. Kept dense; the bases in this library stay tiny.
class DensityOperator {
  public:
    DensityOperator() = default;
    DensityOperator(ModeLayout layout, std::vector<Occupation> basis, Matrix matrix,
                    TruncationConfig trunc = {});

    static DensityOperator from_pure(const PureState& psi);
    static DensityOperator mixture(const std::vector<std::pair<double, PureState>>& parts);

    const ModeLayout& layout() const { return layout_; }
    const std::vector<Occupation>& basis() const { return basis_; }
    const Matrix& matrix() const { return matrix_; }
    const TruncationConfig& truncation() const { return trunc_; }

    int mode_count() const { return layout_.mode_count(); }
    int dim() const { return static_cast<int>(basis_.size()); }
    int index_of(const Occupation& occ) const;  // -1 when absent

    double trace() const;
    double purity() const;  // tr(rho^2)
    double hermiticity_defect() const;
    double min_eigenvalue() const;

    DensityOperator normalized() const;

    // <psi|rho|psi> for a pure state on the same layout.
    double expectation(const PureState& psi) const;

    // rho -> M rho M^dag for the linear map defined by `f` on basis states.
    // The output basis is the union of the images' supports.
    DensityOperator apply_linear_map(const std::function<PureState(const PureState&)>& f) const;

    DensityOperator apply_mode_unitary(const ModeUnitary& u) const;

    // Removes modes that are in the vacuum state across the whole basis.
    DensityOperator drop_vacuum_modes(const std::vector<ModeId>& modes) const;

  private:
    ModeLayout layout_;
    TruncationConfig trunc_;
    std::vector<Occupation> basis_;
    std::map<Occupation, int> index_;
    Matrix matrix_;
};

struct BucketOutcome {
    bool click = false;
    DensityOperator conditional;  // photons in the detector absorbed
    double probability = 0.0;
};

// Threshold detector with efficiency eta on one mode: no-click POVM weight
// (1-eta)^n, click weight 1-(1-eta)^n. The detector absorbs the light and
// decoheres distinct photon patterns in its modes. Outcomes ordered
// (no-click, click); probabilities sum to one. `dark_count` is the chance
// of a spurious click per detection window; it defaults to zero and is not
// used anywhere in the shipped experiments.
std::vector<BucketOutcome> bucket_detect(const DensityOperator& rho, ModeId mode, double eta,
                                         double dark_count = 0.0);

// Same detector covering a set of modes (e.g. the internal-label rails of
// one output path); n is the total photon count over the set.
std::vector<BucketOutcome> bucket_detect_set(const DensityOperator& rho,
                                             const std::vector<ModeId>& modes, double eta,
                                             double dark_count = 0.0);

}  // namespace oqsim
