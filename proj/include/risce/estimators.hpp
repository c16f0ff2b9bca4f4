#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "risce/channel.hpp"
#include "risce/linalg.hpp"
#include "risce/patterns.hpp"

namespace risce {

enum class EstimatorKind { MvuOnOff, MvuDft, Mmse };
enum class ChannelGroup { Direct, Cascade };

std::string_view to_string(EstimatorKind kind);
/// "mvu-onoff", "mvu-dft" or "mmse".
EstimatorKind parse_estimator(std::string_view name);

/// Activation pattern the estimator consumes.
PatternKind required_pattern(EstimatorKind kind);

/// Composite-channel estimate laid out as N+1 blocks of length M:
/// block 0 is the direct channel, block n the n-th cascade column.
struct Estimate {
  CVector h_hat;
  std::optional<std::vector<double>> per_block_sq_error;

  /// Fills per_block_sq_error against the true composite channel.
  void score(const CVector& truth, int M);
};

struct NoiseModel {
  double n0 = 0.0;
  int tau_p = 1;

  /// Per-entry variance of the DFT least-squares output noise.
  double effective_variance() const { return n0 / tau_p; }
};

/// (V_onoff^{-1} kron I_M) y, using the closed-form inverse blockwise.
Estimate mvu_onoff(const CVector& y_tilde, const ActivationPattern& pattern);

/// (1/tau_p)(F^H kron I_M) y, as M inner products of length tau_p per block.
Estimate mvu_dft(const CVector& y_tilde, const ActivationPattern& pattern);

/// C_H [C_H + (n0/tau_p) I]^{-1} r, one block at a time. Cascade blocks use
/// the rank-one resolvent
///   beta_irs b b^H / (n0/tau_p + beta_irs ||b||^2).
/// With n0 = 0 this degenerates to the identity on the direct block and the
/// orthogonal projector onto span(b_n) on cascade blocks.
Estimate mmse(const CVector& r, const PriorCovariance& prior,
              const NoiseModel& noise);

/// Scalar shrinkage beta_bs / (beta_bs + n0/tau_p) of the first M entries.
CVector mmse_direct(const CVector& r_head, double beta_bs,
                    const NoiseModel& noise);

/// Trace of the MMSE error covariance of one block, from the same
/// block-diagonal / rank-one structure mmse() uses.
double mmse_error_trace(const PriorCovariance& prior, const NoiseModel& noise,
                        int block);

struct NmseParams {
  double n0 = 0.0;
  int tau_p = 1;
  int M = 1;
  double beta_bs = 0.0;
  double beta_irs = 0.0;
  double beta_bs_irs = 0.0;
};

/// Closed-form NMSE of one channel group.
///
/// mvu-dft:   n0/(tau_p beta_bs),  n0/(tau_p beta_irs beta_bs_irs)
/// mmse:      n0/(tau_p beta_bs + n0),  n0/(tau_p M beta_irs beta_bs_irs + n0)
/// mvu-onoff: n0/beta_bs,  2 n0/(beta_irs beta_bs_irs), from the diagonal
///            (1, 2, ..., 2) of V_onoff^{-1} V_onoff^{-H}.
double predict_nmse(EstimatorKind estimator, ChannelGroup group,
                    const NmseParams& params);

}  // namespace risce
