#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "risce/channel.hpp"
#include "risce/estimators.hpp"
#include "risce/patterns.hpp"

namespace risce {

/// Stream id reserved for the experiment-wide LoS angles. Trial k uses
/// stream id k.
inline constexpr std::uint64_t kGeometryStream = ~std::uint64_t{0};

struct SystemConfig {
  int M = 10;
  int N = 50;
  int tau_p = 51;
  PathLosses losses = PathLosses::normalized(50, 0.5);
  std::vector<double> snr_grid_db{-20, -15, -10, -5, 0, 5, 10, 15, 20};
  int trials = 10000;
  std::uint64_t master_seed = 0;
  PatternKind pattern = PatternKind::DFT;
  std::vector<EstimatorKind> estimators{EstimatorKind::MvuOnOff,
                                        EstimatorKind::MvuDft,
                                        EstimatorKind::Mmse};
  /// Unit-modulus pilot symbols x_1..x_tau_p; empty means all ones.
  std::vector<Complex> pilots;
  double d_bs_over_lambda = 0.5;
  double d_irs_over_lambda = 0.5;
  /// Redraw LoS angles in every trial instead of once per experiment.
  bool resample_angles = false;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  std::vector<Complex> pilot_sequence() const;
  bool uses(EstimatorKind kind) const;
  bool uses(PatternKind kind) const;

  bool operator==(const SystemConfig&) const = default;
};

/// SNR = 1/N0 with unit-power pilots.
double snr_db_to_n0(double snr_db);

/// State shared by every trial: LoS matrix, prior and activation patterns.
struct Experiment {
  SystemConfig cfg;
  CMatrix H_bs_irs;
  PriorCovariance prior;
  std::optional<ActivationPattern> dft;
  std::optional<ActivationPattern> onoff;

  explicit Experiment(SystemConfig config);
};

/// y_t = (h_bs + H_cascade phi_t) x_t + z_t, despread by conj(x_t) and
/// stacked columnwise: (V kron I_M) h + z with z ~ CN(0, n0 I).
CVector synthesize_pilots(const ChannelRealization& ch,
                          const ActivationPattern& pattern,
                          const std::vector<Complex>& pilots, double n0,
                          RngStream& rng);

struct TrialResult {
  std::uint64_t trial_id = 0;
  std::vector<EstimatorKind> estimators;
  /// [estimator][block] squared error, N+1 blocks each.
  std::vector<std::vector<double>> block_sq_error;
};

TrialResult run_trial(const Experiment& exp, double n0, std::uint64_t trial_id);

struct EstimatorPoint {
  EstimatorKind kind{};
  double direct_emp = 0.0;
  double cascade_emp = 0.0;
  double direct_stderr = 0.0;
  double cascade_stderr = 0.0;
  double direct_cf = 0.0;
  double cascade_cf = 0.0;
};

struct NMSECurve {
  double snr_db = 0.0;
  double n0 = 0.0;
  bool has_empirical = false;
  std::vector<EstimatorPoint> points;

  const EstimatorPoint& at(EstimatorKind kind) const;
};

/// Monte Carlo NMSE for every SNR in the grid. Trials run on up to `threads`
/// workers; the reduction is sequential so the output does not depend on it.
std::vector<NMSECurve> monte_carlo_sweep(const SystemConfig& cfg,
                                         unsigned threads = 1);

/// Closed-form curves only (no sampling).
std::vector<NMSECurve> closed_form_curves(const SystemConfig& cfg);

}  // namespace risce
