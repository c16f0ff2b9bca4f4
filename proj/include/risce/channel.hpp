#pragma once

#include <cstdint>
#include <vector>

#include "risce/linalg.hpp"

namespace risce {

/// Line-of-sight angles for the BS-RIS link. Departure angles are indexed by
/// RIS element n, arrival angles by BS antenna m, exactly as the LoS phase
/// model is written.
struct LosAngles {
  std::vector<double> elevation_dep;  // N entries, radians in [0, pi]
  std::vector<double> azimuth_dep;    // N entries, radians in [0, 2pi)
  std::vector<double> elevation_arr;  // M entries
  std::vector<double> azimuth_arr;    // M entries
};

struct Geometry {
  int M = 0;
  int N = 0;
  double d_bs_over_lambda = 0.5;
  double d_irs_over_lambda = 0.5;
  LosAngles angles;

  /// Throws std::invalid_argument if spacings or angle ranges are violated.
  void validate() const;
};

struct PathLosses {
  double beta_bs = 0.5;
  double beta_irs = 0.0;
  double beta_bs_irs = 1.0;

  /// Splits unit received power so that beta_bs + N*beta_irs*beta_bs_irs = 1.
  static PathLosses normalized(int N, double beta_bs, double beta_bs_irs = 1.0);

  /// beta_irs * beta_bs_irs, the per-element cascade power.
  double cascade_gain() const { return beta_irs * beta_bs_irs; }

  bool operator==(const PathLosses&) const = default;
};

struct ChannelRealization {
  CVector h_bs;         // M
  CVector h_irs;        // N
  CMatrix H_bs_irs;     // M x N
  CMatrix H_cascade;    // M x N
  CVector h_composite;  // M(N+1): [h_bs; cascade columns]

  int M() const { return static_cast<int>(h_bs.size()); }
  int N() const { return static_cast<int>(h_irs.size()); }
};

/// C_H = blkdiag{beta_bs I_M, beta_irs b_1 b_1^H, ..., beta_irs b_N b_N^H}
/// kept as its factors; the M(N+1)-square matrix is only built by densify().
struct PriorCovariance {
  int M = 0;
  double beta_bs = 0.0;
  double beta_irs = 0.0;
  CMatrix columns;  // b_n = column n of H_bs_irs

  int N() const { return static_cast<int>(columns.cols()); }
  double block_trace(int block) const;
  double trace() const;
  CMatrix densify() const;
};

CVector sample_direct_channel(double beta_bs, int M, RngStream& rng);
CVector sample_irs_channel(double beta_irs, int N, RngStream& rng);

CMatrix build_los_matrix(const Geometry& geom, double beta_bs_irs);

/// Elevations uniform on (0, pi), azimuths uniform on (0, 2pi).
LosAngles sample_angles(int M, int N, RngStream& rng);

/// H_bs_irs * diag(h_irs).
CMatrix cascade_channel(const CMatrix& H_bs_irs, const CVector& h_irs);

CVector composite_vector(const CVector& h_bs, const CMatrix& H_cascade);

PriorCovariance prior_covariance(const PathLosses& losses,
                                 const CMatrix& H_bs_irs);

/// One fading draw over a fixed LoS matrix. h_bs and h_irs come from
/// separate lanes of `rng`.
ChannelRealization draw_realization(const CMatrix& H_bs_irs,
                                    const PathLosses& losses, RngStream& rng);

}  // namespace risce
