#include "risce/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

namespace risce {
namespace {

// Lanes of a trial stream.
constexpr std::uint64_t kFadingLane = 0;
constexpr std::uint64_t kDftNoiseLane = 1;
constexpr std::uint64_t kOnOffNoiseLane = 2;
constexpr std::uint64_t kAnglesLane = 3;

CMatrix draw_los(const SystemConfig& cfg, RngStream rng) {
  Geometry geom;
  geom.M = cfg.M;
  geom.N = cfg.N;
  geom.d_bs_over_lambda = cfg.d_bs_over_lambda;
  geom.d_irs_over_lambda = cfg.d_irs_over_lambda;
  geom.angles = sample_angles(cfg.M, cfg.N, rng);
  return build_los_matrix(geom, cfg.losses.beta_bs_irs);
}

NmseParams nmse_params(const SystemConfig& cfg, double n0) {
  return {n0,
          cfg.tau_p,
          cfg.M,
          cfg.losses.beta_bs,
          cfg.losses.beta_irs,
          cfg.losses.beta_bs_irs};
}

struct TrialContext {
  const Experiment& exp;
  ChannelRealization ch;
  PriorCovariance prior;
  RngStream stream;
};

TrialContext make_context(const Experiment& exp, std::uint64_t trial_id) {
  const SystemConfig& cfg = exp.cfg;
  RngStream stream(cfg.master_seed, trial_id);
  CMatrix los = cfg.resample_angles
                    ? draw_los(cfg, stream.substream(kAnglesLane))
                    : exp.H_bs_irs;
  RngStream fading = stream.substream(kFadingLane);
  ChannelRealization ch = draw_realization(los, cfg.losses, fading);
  PriorCovariance prior = cfg.resample_angles
                              ? prior_covariance(cfg.losses, ch.H_bs_irs)
                              : exp.prior;
  return {exp, std::move(ch), std::move(prior), stream};
}

TrialResult evaluate(const TrialContext& ctx, double n0,
                     std::uint64_t trial_id) {
  const SystemConfig& cfg = ctx.exp.cfg;
  const auto pilots = cfg.pilot_sequence();
  TrialResult result;
  result.trial_id = trial_id;

  std::optional<Estimate> dft_estimate;
  if (cfg.uses(PatternKind::DFT)) {
    RngStream noise = ctx.stream.substream(kDftNoiseLane);
    const CVector y = synthesize_pilots(ctx.ch, *ctx.exp.dft, pilots, n0, noise);
    dft_estimate = mvu_dft(y, *ctx.exp.dft);
  }

  for (EstimatorKind kind : cfg.estimators) {
    Estimate est;
    switch (kind) {
      case EstimatorKind::MvuOnOff: {
        RngStream noise = ctx.stream.substream(kOnOffNoiseLane);
        const CVector y =
            synthesize_pilots(ctx.ch, *ctx.exp.onoff, pilots, n0, noise);
        est = mvu_onoff(y, *ctx.exp.onoff);
        break;
      }
      case EstimatorKind::MvuDft:
        est = *dft_estimate;
        break;
      case EstimatorKind::Mmse:
        est = mmse(dft_estimate->h_hat, ctx.prior, NoiseModel{n0, cfg.tau_p});
        break;
    }
    est.score(ctx.ch.h_composite, cfg.M);
    result.estimators.push_back(kind);
    result.block_sq_error.push_back(std::move(*est.per_block_sq_error));
  }
  return result;
}

double sample_stderr(const std::vector<double>& values, double mean) {
  const std::size_t K = values.size();
  if (K < 2) return 0.0;
  std::vector<double> sq(K);
  for (std::size_t k = 0; k < K; ++k) sq[k] = (values[k] - mean) * (values[k] - mean);
  const double var = fixed_order_sum(sq) / static_cast<double>(K - 1);
  return std::sqrt(var / static_cast<double>(K));
}

EstimatorPoint closed_form_point(const SystemConfig& cfg, EstimatorKind kind,
                                 double n0) {
  EstimatorPoint p;
  p.kind = kind;
  const auto params = nmse_params(cfg, n0);
  p.direct_cf = predict_nmse(kind, ChannelGroup::Direct, params);
  p.cascade_cf = predict_nmse(kind, ChannelGroup::Cascade, params);
  return p;
}

}  // namespace

void SystemConfig::validate() const {
  auto fail = [](const std::string& key, const std::string& why) {
    throw std::invalid_argument(key + ": " + why);
  };
  if (M < 1) fail("m", "must be >= 1");
  if (N < 1) fail("n", "must be >= 1");
  if (tau_p < N + 1) {
    fail("tau_p", "must be >= n+1 (tau_p=" + std::to_string(tau_p) +
                      ", n=" + std::to_string(N) + ")");
  }
  if (trials < 1) fail("trials", "must be positive");
  if (!(losses.beta_bs > 0.0 && losses.beta_bs < 1.0)) {
    fail("beta_bs", "must lie strictly between 0 and 1");
  }
  if (!(losses.beta_bs_irs > 0.0)) fail("beta_bs_irs", "must be positive");
  if (std::abs(losses.beta_bs + N * losses.cascade_gain() - 1.0) > 1e-12) {
    fail("beta_bs", "path losses are not normalized to unit total power");
  }
  if (!(d_bs_over_lambda > 0.0)) fail("d_bs", "must be positive");
  if (!(d_irs_over_lambda > 0.0)) fail("d_irs", "must be positive");
  if (snr_grid_db.empty()) fail("snr", "grid is empty");
  for (double s : snr_grid_db) {
    if (!std::isfinite(s)) fail("snr", "values must be finite");
  }
  if (estimators.empty()) fail("estimators", "at least one estimator required");
  if (uses(EstimatorKind::MvuOnOff) && tau_p != N + 1) {
    fail("estimators", "mvu-onoff requires tau_p = n+1");
  }
  if (!pilots.empty()) {
    if (pilots.size() != static_cast<std::size_t>(tau_p)) {
      fail("pilots", "expected " + std::to_string(tau_p) + " symbols, got " +
                         std::to_string(pilots.size()));
    }
    for (const Complex& x : pilots) {
      if (std::abs(std::abs(x) - 1.0) > 1e-9) fail("pilots", "|x_t| must be 1");
    }
  }
}

std::vector<Complex> SystemConfig::pilot_sequence() const {
  if (!pilots.empty()) return pilots;
  return std::vector<Complex>(static_cast<std::size_t>(tau_p), Complex(1.0, 0.0));
}

bool SystemConfig::uses(EstimatorKind kind) const {
  return std::find(estimators.begin(), estimators.end(), kind) !=
         estimators.end();
}

bool SystemConfig::uses(PatternKind kind) const {
  return std::any_of(estimators.begin(), estimators.end(),
                     [kind](EstimatorKind e) { return required_pattern(e) == kind; });
}

double snr_db_to_n0(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

Experiment::Experiment(SystemConfig config) : cfg(std::move(config)) {
  cfg.validate();
  H_bs_irs = draw_los(cfg, RngStream(cfg.master_seed, kGeometryStream));
  prior = prior_covariance(cfg.losses, H_bs_irs);
  if (cfg.uses(PatternKind::DFT)) dft = dft_pattern(cfg.tau_p, cfg.N);
  if (cfg.uses(PatternKind::OnOff)) onoff = onoff_pattern(cfg.N);
}

CVector synthesize_pilots(const ChannelRealization& ch,
                          const ActivationPattern& pattern,
                          const std::vector<Complex>& pilots, double n0,
                          RngStream& rng) {
  const int M = ch.M();
  const int tau_p = pattern.tau_p();
  if (pattern.N() != ch.N()) {
    throw std::invalid_argument("synthesize_pilots: pattern has N=" +
                                std::to_string(pattern.N()) +
                                " but channel has N=" + std::to_string(ch.N()));
  }
  if (pilots.size() != static_cast<std::size_t>(tau_p)) {
    throw std::invalid_argument("synthesize_pilots: need one pilot per slot");
  }
  CMatrix H_comp(M, ch.N() + 1);
  H_comp.col(0) = ch.h_bs;
  H_comp.rightCols(ch.N()) = ch.H_cascade;

  const CMatrix clean = H_comp * pattern.V_tilde.transpose();  // M x tau_p
  const CVector noise = sample_cgaussian(static_cast<Eigen::Index>(M) * tau_p, n0, rng);
  CVector y_tilde(static_cast<Eigen::Index>(M) * tau_p);
  for (int t = 0; t < tau_p; ++t) {
    const Complex x = pilots[t];
    const CVector received = clean.col(t) * x + noise.segment(t * M, M);
    y_tilde.segment(t * M, M) = std::conj(x) * received;
  }
  return y_tilde;
}

TrialResult run_trial(const Experiment& exp, double n0, std::uint64_t trial_id) {
  if (trial_id >= static_cast<std::uint64_t>(exp.cfg.trials)) {
    throw std::invalid_argument("run_trial: trial_id out of range");
  }
  return evaluate(make_context(exp, trial_id), n0, trial_id);
}

const EstimatorPoint& NMSECurve::at(EstimatorKind kind) const {
  for (const auto& p : points) {
    if (p.kind == kind) return p;
  }
  throw std::out_of_range("NMSECurve: estimator not in curve");
}

std::vector<NMSECurve> closed_form_curves(const SystemConfig& cfg) {
  cfg.validate();
  std::vector<NMSECurve> curves;
  for (double snr : cfg.snr_grid_db) {
    NMSECurve c;
    c.snr_db = snr;
    c.n0 = snr_db_to_n0(snr);
    for (EstimatorKind kind : cfg.estimators) {
      c.points.push_back(closed_form_point(cfg, kind, c.n0));
    }
    curves.push_back(std::move(c));
  }
  return curves;
}

std::vector<NMSECurve> monte_carlo_sweep(const SystemConfig& cfg,
                                         unsigned threads) {
  const Experiment exp(cfg);
  const std::size_t K = static_cast<std::size_t>(cfg.trials);
  const std::size_t S = cfg.snr_grid_db.size();
  const std::size_t E = cfg.estimators.size();
  const int N = cfg.N;
  const double direct_power = cfg.M * cfg.losses.beta_bs;
  const double cascade_power = cfg.M * cfg.losses.cascade_gain();

  std::vector<double> n0s(S);
  for (std::size_t s = 0; s < S; ++s) n0s[s] = snr_db_to_n0(cfg.snr_grid_db[s]);

  // Per-trial normalized errors, indexed [(s*E + e)*K + k].
  std::vector<double> direct(S * E * K);
  std::vector<double> cascade(S * E * K);

  auto work = [&](std::size_t k) {
    const TrialContext ctx = make_context(exp, k);
    for (std::size_t s = 0; s < S; ++s) {
      const TrialResult r = evaluate(ctx, n0s[s], k);
      for (std::size_t e = 0; e < E; ++e) {
        const auto& err = r.block_sq_error[e];
        const std::size_t idx = (s * E + e) * K + k;
        direct[idx] = err[0] / direct_power;
        cascade[idx] =
            fixed_order_sum(std::span<const double>(err).subspan(1)) /
            (N * cascade_power);
      }
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, K));
  if (workers == 1) {
    for (std::size_t k = 0; k < K; ++k) work(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < K; k = next++) work(k);
      });
    }
  }

  std::vector<NMSECurve> curves;
  for (std::size_t s = 0; s < S; ++s) {
    NMSECurve c;
    c.snr_db = cfg.snr_grid_db[s];
    c.n0 = n0s[s];
    c.has_empirical = true;
    for (std::size_t e = 0; e < E; ++e) {
      EstimatorPoint p = closed_form_point(cfg, cfg.estimators[e], c.n0);
      const std::size_t off = (s * E + e) * K;
      const std::vector<double> d(direct.begin() + off, direct.begin() + off + K);
      const std::vector<double> g(cascade.begin() + off, cascade.begin() + off + K);
      p.direct_emp = fixed_order_sum(d) / static_cast<double>(K);
      p.cascade_emp = fixed_order_sum(g) / static_cast<double>(K);
      p.direct_stderr = sample_stderr(d, p.direct_emp);
      p.cascade_stderr = sample_stderr(g, p.cascade_emp);
      c.points.push_back(p);
    }
    curves.push_back(std::move(c));
  }
  return curves;
}

}  // namespace risce
