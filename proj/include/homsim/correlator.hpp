#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "homsim/field.hpp"
#include "homsim/phase_process.hpp"
#include "homsim/trial_fields.hpp"

// Closed-form second-order correlations of the beamsplitter outputs. These are
// the analytic references the click-level Monte Carlo is checked against.

namespace homsim::correlation {

/// Thrown when a visibility is requested from all-zero moments.
class UndefinedVisibility : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// First and second moments of the two input intensities.
struct IntensityMoments {
  double mean_a = 0.0;
  double mean_b = 0.0;
  double second_a = 0.0;
  double second_b = 0.0;

  /// Non-fluctuating intensities: <I^2> = <I>^2.
  static IntensityMoments constant(double mu_a, double mu_b);
  /// Exponentially distributed intensities: <I^2> = 2<I>^2.
  static IntensityMoments thermal(double mu_a, double mu_b);

  /// Throws std::invalid_argument on negative values or <I^2> < <I>^2.
  void validate() const;
};

/// Whether <sin dphi(i) sin dphi(j)> takes its interfering value 1/2 or vanishes.
enum class CoherenceRegime { interfering, non_interfering };

constexpr double sin_product_of(CoherenceRegime regime) {
  return regime == CoherenceRegime::interfering ? 0.5 : 0.0;
}

/// <sin dphi(i) sin dphi(j)> for a uniformly random dphi(j) with
/// dphi(i) = dphi(j) + dphi_ij: equal to cos(dphi_ij)/2.
double sin_product_mean(double dphi_ij);

/// <sin dphi(i) sin dphi(s)> seen by the coincidence window of `geometry`,
/// where s = i at zero electronic delay and s = j otherwise.
double coincidence_sin_product(const phase::PhaseProcess& process,
                               const field::DelayGeometry& geometry);

/// <I_C I_D> = <I_A^2>/4 + <I_B^2>/4 + (1/2 - gamma^2 * sin_product) <I_A><I_B>.
///
/// `sin_product` is <sin dphi(i) sin dphi(s)>; for the same slot this is
/// <sin^2 dphi>, which is 1/2 under phase randomisation and 0 without interference.
/// Throws std::invalid_argument on invalid moments, gamma outside [0, 1] or
/// sin_product outside [-1, 1].
double same_slot_correlation(const IntensityMoments& m, double sin_product, double gamma);

/// V_c = 2<I_A><I_B> / (<I_A^2> + <I_B^2> + 2<I_A><I_B>).
/// Throws UndefinedVisibility when every moment is zero.
double classical_visibility(const IntensityMoments& m);

/// A discrete joint distribution of trial fields.
class TrialEnsemble {
 public:
  struct Entry {
    TrialFields fields;
    double weight = 1.0;
  };

  /// Throws std::invalid_argument on a negative intensity or non-positive weight.
  void add(const TrialFields& fields, double weight = 1.0);

  std::span<const Entry> entries() const { return entries_; }
  double total_weight() const { return total_weight_; }
  bool empty() const { return entries_.empty(); }

  /// Weighted intensity law: (value, weight) pairs.
  struct LawPoint {
    double value = 0.0;
    double weight = 1.0;
  };

  /// Product ensemble satisfying I_k(i) = I_k(j) and dphi(i) = dphi(j) + dphi_ij:
  /// input A drawn from `law_a`, input B independently from `law_b`, and dphi(j)
  /// uniform on `phase_points` equally spaced angles starting at `phase_offset`.
  static TrialEnsemble coherent_product(std::span<const LawPoint> law_a,
                                        std::span<const LawPoint> law_b, int phase_points,
                                        double phase_offset, double dphi_ij);

 private:
  std::vector<Entry> entries_;
  double total_weight_ = 0.0;
};

/// Ensemble averages entering the cross-slot correlation, term by term.
struct CrossSlotTerms {
  double aa = 0.0;            // <I_A(i) I_A(j)>
  double ab = 0.0;            // <I_A(i) I_B(j)>
  double ba = 0.0;            // <I_B(i) I_A(j)>
  double bb = 0.0;            // <I_B(i) I_B(j)>
  double amplitude = 0.0;     // <sqrt(I_A(i) I_A(j) I_B(i) I_B(j))>
  double sin_product = 0.0;   // <sin dphi(i) sin dphi(j)>
  double mean_a = 0.0;        // <I_A(i)>
  double mean_b = 0.0;        // <I_B(i)>
  double second_a = 0.0;      // <I_A(i)^2>
  double second_b = 0.0;      // <I_B(i)^2>
  double sin2_i = 0.0;        // <sin^2 dphi(i)>
};

/// Throws std::invalid_argument on an empty ensemble.
CrossSlotTerms cross_slot_terms(const TrialEnsemble& ensemble);

/// <I_C(i) I_D(j)> = (aa + ab + ba + bb)/4 - gamma^2 * amplitude * sin_product.
///
/// Intensities and phases are taken to be independent, so the interference
/// term is the product of their separate averages.
double cross_slot_correlation(const TrialEnsemble& ensemble, double gamma);

struct MeanOutputs {
  double c = 0.0;
  double d = 0.0;
};

/// Phase-averaged output intensities. A synchronized process gives a fringe of
/// period lambda in delta_l under the envelope gamma; randomised processes give
/// (mu_a + mu_b)/2 on both outputs.
MeanOutputs singles_expectation(double mu_a, double mu_b, const phase::PhaseProcess& process,
                                const field::DelayGeometry& geometry,
                                const field::SpectralModel& spectrum);

/// <I_C(i) I_D(s)> for constant input intensities at one scan point.
double coincidence_correlation(double mu_a, double mu_b, const phase::PhaseProcess& process,
                               const field::DelayGeometry& geometry,
                               const field::SpectralModel& spectrum);

}  // namespace homsim::correlation
