#include "risce/linalg.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace risce {
namespace {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t id) {
  return mix64(mix64(seed + kGolden) ^ mix64(id ^ 0xd1b54a32d192ed03ULL));
}

}  // namespace

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix hermitian(const CMatrix& a) { return a.adjoint(); }

bool all_finite(const CMatrix& a) { return a.allFinite(); }

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed),
      stream_id_(stream_id),
      key_(stream_key(master_seed, stream_id)) {}

RngStream RngStream::substream(std::uint64_t lane) const {
  return RngStream(master_seed_, mix64(stream_id_ + kGolden * (lane + 1)));
}

std::uint64_t RngStream::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double RngStream::next_open_unit() {
  // 53 random bits, shifted half a step off zero.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * next_open_unit();
}

CVector sample_cgaussian(Eigen::Index dim, double variance, RngStream& rng) {
  if (!(variance >= 0.0)) {
    throw std::invalid_argument("sample_cgaussian: variance must be >= 0");
  }
  CVector out(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    // Box-Muller in polar form: |z|^2 ~ Exp(variance), phase uniform.
    const double radius = std::sqrt(-variance * std::log(rng.next_open_unit()));
    const double phase = 2.0 * std::numbers::pi * rng.next_open_unit();
    out[i] = Complex(radius * std::cos(phase), radius * std::sin(phase));
  }
  return out;
}

double fixed_order_sum(std::span<const double> values) {
  double total = 0.0;
  for (double v : values) total += v;
  return total;
}

}  // namespace risce
