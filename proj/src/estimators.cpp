#include "risce/estimators.hpp"

#include <stdexcept>
#include <string>

namespace risce {
namespace {

Eigen::Index block_length(const CVector& y, int tau_p, const char* who) {
  if (tau_p < 1 || y.size() == 0 || y.size() % tau_p != 0) {
    throw std::invalid_argument(std::string(who) + ": observation length " +
                                std::to_string(y.size()) +
                                " is not a multiple of tau_p=" +
                                std::to_string(tau_p));
  }
  return y.size() / tau_p;
}

void require_kind(const ActivationPattern& p, PatternKind kind,
                  const char* who) {
  if (p.kind != kind) {
    throw std::invalid_argument(std::string(who) + ": expected a " +
                                std::string(to_string(kind)) +
                                " pattern, got " + std::string(to_string(p.kind)));
  }
}

}  // namespace

std::string_view to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::MvuOnOff: return "mvu-onoff";
    case EstimatorKind::MvuDft: return "mvu-dft";
    case EstimatorKind::Mmse: return "mmse";
  }
  return "?";
}

EstimatorKind parse_estimator(std::string_view name) {
  if (name == "mvu-onoff") return EstimatorKind::MvuOnOff;
  if (name == "mvu-dft") return EstimatorKind::MvuDft;
  if (name == "mmse") return EstimatorKind::Mmse;
  throw std::invalid_argument("unknown estimator '" + std::string(name) +
                              "' (expected mvu-onoff, mvu-dft or mmse)");
}

PatternKind required_pattern(EstimatorKind kind) {
  return kind == EstimatorKind::MvuOnOff ? PatternKind::OnOff : PatternKind::DFT;
}

void Estimate::score(const CVector& truth, int M) {
  if (truth.size() != h_hat.size() || M < 1 || truth.size() % M != 0) {
    throw std::invalid_argument("Estimate::score: shape mismatch");
  }
  const Eigen::Index blocks = truth.size() / M;
  std::vector<double> err(static_cast<std::size_t>(blocks));
  for (Eigen::Index b = 0; b < blocks; ++b) {
    err[b] = (h_hat.segment(b * M, M) - truth.segment(b * M, M)).squaredNorm();
  }
  per_block_sq_error = std::move(err);
}

Estimate mvu_onoff(const CVector& y_tilde, const ActivationPattern& pattern) {
  require_kind(pattern, PatternKind::OnOff, "mvu_onoff");
  if (pattern.tau_p() != pattern.N() + 1) {
    throw std::invalid_argument("mvu_onoff: on-off training needs tau_p = N+1");
  }
  const Eigen::Index M = block_length(y_tilde, pattern.tau_p(), "mvu_onoff");
  Estimate est;
  est.h_hat = y_tilde;
  const auto head = y_tilde.head(M);
  for (int n = 1; n <= pattern.N(); ++n) est.h_hat.segment(n * M, M) -= head;
  return est;
}

Estimate mvu_dft(const CVector& y_tilde, const ActivationPattern& pattern) {
  require_kind(pattern, PatternKind::DFT, "mvu_dft");
  const int tau_p = pattern.tau_p();
  const Eigen::Index M = block_length(y_tilde, tau_p, "mvu_dft");
  const int blocks = pattern.N() + 1;
  // Y is M x tau_p with column t = despread observation t; H_hat = Y conj(F)/tau_p.
  const auto Y = y_tilde.reshaped(M, tau_p);
  Estimate est;
  est.h_hat.resize(M * blocks);
  auto H = est.h_hat.reshaped(M, blocks);
  H.noalias() = Y * pattern.V_tilde.conjugate();
  H /= static_cast<double>(tau_p);
  return est;
}

CVector mmse_direct(const CVector& r_head, double beta_bs,
                    const NoiseModel& noise) {
  const double c = noise.effective_variance();
  const double gain = beta_bs > 0.0 ? beta_bs / (beta_bs + c) : 0.0;
  return gain * r_head;
}

Estimate mmse(const CVector& r, const PriorCovariance& prior,
              const NoiseModel& noise) {
  const int M = prior.M;
  const int N = prior.N();
  if (r.size() != static_cast<Eigen::Index>(M) * (N + 1)) {
    throw std::invalid_argument("mmse: r has length " + std::to_string(r.size()) +
                                ", expected M(N+1)=" +
                                std::to_string(M * (N + 1)));
  }
  if (!(noise.n0 >= 0.0)) throw std::invalid_argument("mmse: n0 must be >= 0");
  const double c = noise.effective_variance();
  Estimate est;
  est.h_hat.resize(r.size());
  est.h_hat.head(M) = mmse_direct(r.head(M), prior.beta_bs, noise);
  for (int n = 0; n < N; ++n) {
    const auto b = prior.columns.col(n);
    const auto r_n = r.segment((n + 1) * M, M);
    const double lambda = prior.beta_irs * b.squaredNorm();
    auto out = est.h_hat.segment((n + 1) * M, M);
    if (lambda > 0.0) {
      const Complex coeff = prior.beta_irs * b.dot(r_n) / (c + lambda);
      out = coeff * b;
    } else {
      out.setZero();
    }
  }
  return est;
}

double mmse_error_trace(const PriorCovariance& prior, const NoiseModel& noise,
                        int block) {
  if (block < 0 || block > prior.N()) {
    throw std::invalid_argument("mmse_error_trace: block out of range");
  }
  const double c = noise.effective_variance();
  // Nonzero prior eigenvalue lambda with multiplicity k contributes
  // k * lambda c / (lambda + c).
  const double lambda =
      block == 0 ? prior.beta_bs
                 : prior.beta_irs * prior.columns.col(block - 1).squaredNorm();
  const int multiplicity = block == 0 ? prior.M : 1;
  if (lambda <= 0.0) return 0.0;
  return multiplicity * lambda * c / (lambda + c);
}

double predict_nmse(EstimatorKind estimator, ChannelGroup group,
                    const NmseParams& p) {
  if (!(p.n0 >= 0.0) || p.tau_p < 1 || p.M < 1) {
    throw std::invalid_argument("predict_nmse: invalid parameters");
  }
  if (p.n0 == 0.0) return 0.0;
  const double n0 = p.n0;
  const double tau = p.tau_p;
  const double cascade = p.beta_irs * p.beta_bs_irs;
  const bool direct = group == ChannelGroup::Direct;
  switch (estimator) {
    case EstimatorKind::MvuDft:
      return direct ? n0 / (tau * p.beta_bs) : n0 / (tau * cascade);
    case EstimatorKind::Mmse:
      return direct ? n0 / (tau * p.beta_bs + n0)
                    : n0 / (tau * p.M * cascade + n0);
    case EstimatorKind::MvuOnOff:
      return direct ? n0 / p.beta_bs : 2.0 * n0 / cascade;
  }
  throw std::invalid_argument("predict_nmse: unknown estimator");
}

}  // namespace risce
