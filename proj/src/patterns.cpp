#include "risce/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace risce {

std::string_view to_string(PatternKind kind) {
  switch (kind) {
    case PatternKind::OnOff: return "onoff";
    case PatternKind::DFT: return "dft";
    case PatternKind::Custom: return "custom";
  }
  return "custom";
}

PatternKind parse_pattern_kind(std::string_view name) {
  if (name == "onoff") return PatternKind::OnOff;
  if (name == "dft") return PatternKind::DFT;
  throw std::invalid_argument("unknown pattern '" + std::string(name) +
                              "' (expected dft or onoff)");
}

ActivationPattern onoff_pattern(int N) {
  if (N < 1) throw std::invalid_argument("onoff_pattern: N must be >= 1");
  CMatrix V = CMatrix::Zero(N + 1, N + 1);
  V.col(0).setOnes();
  V.bottomRightCorner(N, N).setIdentity();
  return {std::move(V), PatternKind::OnOff};
}

ActivationPattern dft_pattern(int tau_p, int N) {
  if (N < 0 || tau_p < N + 1) {
    throw std::invalid_argument("dft_pattern: need tau_p >= N+1 (tau_p=" +
                                std::to_string(tau_p) +
                                ", N=" + std::to_string(N) + ")");
  }
  CMatrix F(tau_p, N + 1);
  for (int k = 0; k < tau_p; ++k) {
    for (int n = 0; n <= N; ++n) {
      // Reduce k*n mod tau_p first so the trig argument stays in [0, 2pi).
      const auto r = static_cast<long long>(k) * n % tau_p;
      F(k, n) = std::polar(1.0, -2.0 * std::numbers::pi *
                                    static_cast<double>(r) / tau_p);
    }
  }
  return {std::move(F), PatternKind::DFT};
}

PatternReport validate_pattern(const ActivationPattern& p) {
  constexpr double kTol = 1e-12;
  const CMatrix& V = p.V_tilde;
  PatternReport r;
  r.first_column_ones =
      V.cols() > 0 && (V.col(0).array() == Complex(1.0, 0.0)).all();
  r.max_modulus = V.cols() > 1 ? V.rightCols(V.cols() - 1).cwiseAbs().maxCoeff()
                               : 0.0;
  r.amplitude_ok = r.max_modulus <= 1.0 + kTol;
  r.estimable = V.rows() >= V.cols();

  const CMatrix gram = V.adjoint() * V;
  r.gram_trace = gram.trace().real();
  r.trace_bound = static_cast<double>(V.rows()) * V.cols();
  r.bound_attained =
      std::abs(r.gram_trace - r.trace_bound) <= 1e-9 * r.trace_bound;

  double off = 0.0;
  for (Eigen::Index i = 0; i < gram.rows(); ++i) {
    for (Eigen::Index j = 0; j < gram.cols(); ++j) {
      if (i != j) off = std::max(off, std::abs(gram(i, j)));
    }
  }
  r.gram_diagonal = off <= 1e-9 * std::max(1.0, gram.diagonal().cwiseAbs().maxCoeff());
  return r;
}

}  // namespace risce
