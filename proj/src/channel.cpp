#include "risce/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace risce {
namespace {

constexpr double kPi = std::numbers::pi;

void check_range(const std::vector<double>& values, double lo, double hi,
                 bool hi_open, const char* name) {
  for (double v : values) {
    if (!(v >= lo && (hi_open ? v < hi : v <= hi))) {
      throw std::invalid_argument(std::string("Geometry: ") + name +
                                  " out of range");
    }
  }
}

}  // namespace

void Geometry::validate() const {
  if (M < 1 || N < 0) throw std::invalid_argument("Geometry: bad dimensions");
  if (!(d_bs_over_lambda > 0.0) || !(d_irs_over_lambda > 0.0)) {
    throw std::invalid_argument("Geometry: spacings must be positive");
  }
  if (angles.elevation_dep.size() != static_cast<std::size_t>(N) ||
      angles.azimuth_dep.size() != static_cast<std::size_t>(N) ||
      angles.elevation_arr.size() != static_cast<std::size_t>(M) ||
      angles.azimuth_arr.size() != static_cast<std::size_t>(M)) {
    throw std::invalid_argument("Geometry: angle vector sizes do not match M/N");
  }
  check_range(angles.elevation_dep, 0.0, kPi, false, "elevation_dep");
  check_range(angles.elevation_arr, 0.0, kPi, false, "elevation_arr");
  check_range(angles.azimuth_dep, 0.0, 2.0 * kPi, true, "azimuth_dep");
  check_range(angles.azimuth_arr, 0.0, 2.0 * kPi, true, "azimuth_arr");
}

PathLosses PathLosses::normalized(int N, double beta_bs, double beta_bs_irs) {
  if (N < 1) throw std::invalid_argument("PathLosses: N must be >= 1");
  if (!(beta_bs >= 0.0 && beta_bs <= 1.0)) {
    throw std::invalid_argument("PathLosses: beta_bs must lie in [0, 1]");
  }
  if (!(beta_bs_irs > 0.0)) {
    throw std::invalid_argument("PathLosses: beta_bs_irs must be positive");
  }
  return {beta_bs, (1.0 - beta_bs) / (N * beta_bs_irs), beta_bs_irs};
}

double PriorCovariance::block_trace(int block) const {
  if (block == 0) return beta_bs * M;
  return beta_irs * columns.col(block - 1).squaredNorm();
}

double PriorCovariance::trace() const {
  double total = block_trace(0);
  for (int n = 1; n <= N(); ++n) total += block_trace(n);
  return total;
}

CMatrix PriorCovariance::densify() const {
  const Eigen::Index dim = static_cast<Eigen::Index>(M) * (N() + 1);
  CMatrix dense = CMatrix::Zero(dim, dim);
  dense.topLeftCorner(M, M).diagonal().setConstant(beta_bs);
  for (int n = 0; n < N(); ++n) {
    const auto b = columns.col(n);
    dense.block((n + 1) * M, (n + 1) * M, M, M) = beta_irs * b * b.adjoint();
  }
  return dense;
}

CVector sample_direct_channel(double beta_bs, int M, RngStream& rng) {
  if (!(beta_bs >= 0.0)) {
    throw std::invalid_argument("sample_direct_channel: beta_bs must be >= 0");
  }
  return std::sqrt(beta_bs) * sample_cgaussian(M, 1.0, rng);
}

CVector sample_irs_channel(double beta_irs, int N, RngStream& rng) {
  if (!(beta_irs >= 0.0)) {
    throw std::invalid_argument("sample_irs_channel: beta_irs must be >= 0");
  }
  return std::sqrt(beta_irs) * sample_cgaussian(N, 1.0, rng);
}

CMatrix build_los_matrix(const Geometry& geom, double beta_bs_irs) {
  geom.validate();
  const double amplitude = std::sqrt(beta_bs_irs);
  const auto& a = geom.angles;
  CMatrix H(geom.M, geom.N);
  for (int m = 0; m < geom.M; ++m) {
    const double arr = std::sin(a.elevation_arr[m]) * std::sin(a.azimuth_arr[m]);
    for (int n = 0; n < geom.N; ++n) {
      const double dep =
          std::sin(a.elevation_dep[n]) * std::sin(a.azimuth_dep[n]);
      const double phase =
          2.0 * kPi * (m * geom.d_bs_over_lambda * dep +
                       n * geom.d_irs_over_lambda * arr);
      H(m, n) = std::polar(amplitude, phase);
    }
  }
  return H;
}

LosAngles sample_angles(int M, int N, RngStream& rng) {
  LosAngles out;
  auto fill = [&rng](std::vector<double>& v, int count, double hi) {
    v.resize(count);
    for (auto& x : v) x = rng.uniform(0.0, hi);
  };
  fill(out.elevation_dep, N, kPi);
  fill(out.azimuth_dep, N, 2.0 * kPi);
  fill(out.elevation_arr, M, kPi);
  fill(out.azimuth_arr, M, 2.0 * kPi);
  return out;
}

CMatrix cascade_channel(const CMatrix& H_bs_irs, const CVector& h_irs) {
  if (H_bs_irs.cols() != h_irs.size()) {
    throw std::invalid_argument("cascade_channel: H has " +
                                std::to_string(H_bs_irs.cols()) +
                                " columns but h_irs has " +
                                std::to_string(h_irs.size()) + " entries");
  }
  return H_bs_irs * h_irs.asDiagonal();
}

CVector composite_vector(const CVector& h_bs, const CMatrix& H_cascade) {
  if (H_cascade.size() != 0 && H_cascade.rows() != h_bs.size()) {
    throw std::invalid_argument("composite_vector: row count mismatch");
  }
  const Eigen::Index M = h_bs.size();
  CVector out(M * (H_cascade.cols() + 1));
  out.head(M) = h_bs;
  out.tail(M * H_cascade.cols()) = H_cascade.reshaped();
  return out;
}

PriorCovariance prior_covariance(const PathLosses& losses,
                                 const CMatrix& H_bs_irs) {
  return {static_cast<int>(H_bs_irs.rows()), losses.beta_bs, losses.beta_irs,
          H_bs_irs};
}

ChannelRealization draw_realization(const CMatrix& H_bs_irs,
                                    const PathLosses& losses, RngStream& rng) {
  RngStream direct_lane = rng.substream(0);
  RngStream irs_lane = rng.substream(1);
  ChannelRealization ch;
  ch.h_bs = sample_direct_channel(losses.beta_bs,
                                  static_cast<int>(H_bs_irs.rows()), direct_lane);
  ch.h_irs = sample_irs_channel(losses.beta_irs,
                                static_cast<int>(H_bs_irs.cols()), irs_lane);
  ch.H_bs_irs = H_bs_irs;
  ch.H_cascade = cascade_channel(H_bs_irs, ch.h_irs);
  ch.h_composite = composite_vector(ch.h_bs, ch.H_cascade);
  return ch;
}

}  // namespace risce
