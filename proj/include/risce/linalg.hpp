#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace risce {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Kronecker product, (a.rows*b.rows) x (a.cols*b.cols).
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Conjugate transpose.
CMatrix hermitian(const CMatrix& a);

bool all_finite(const CMatrix& a);

/// Counter-based random stream.
///
/// Output i of stream (master_seed, stream_id) is a pure function of
/// (master_seed, stream_id, i), so sub-streams can be handed to any thread
/// in any order and still reproduce the same samples.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Independent child stream; (seed, id, lane) fully determines it.
  RngStream substream(std::uint64_t lane) const;

  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1).
  double next_open_unit();
  /// Uniform on (lo, hi).
  double uniform(double lo, double hi);

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// I.i.d. CN(0, variance) entries: real and imaginary parts each carry
/// variance/2. Throws std::invalid_argument for negative variance.
CVector sample_cgaussian(Eigen::Index dim, double variance, RngStream& rng);

/// Sum in index order. Used for every cross-trial reduction so results do
/// not depend on how trials were scheduled.
double fixed_order_sum(std::span<const double> values);

}  // namespace risce
