#include <cstring>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "risce/estimators.hpp"

using namespace risce;

namespace {

struct Instance {
  int M, N, tau;
  CVector h;
  CMatrix H_los;
  PathLosses losses;
};

Instance random_instance(std::mt19937_64& gen, int tau_extra = 0) {
  std::uniform_int_distribution<int> md(1, 3), nd(1, 4);
  Instance in;
  in.M = md(gen);
  in.N = nd(gen);
  in.tau = in.N + 1 + tau_extra;
  in.losses = PathLosses::normalized(in.N, 0.5);
  in.H_los = oracle::random_phasors(in.M, in.N, in.losses.beta_bs_irs, gen);
  in.h = oracle::random_matrix(in.M * (in.N + 1), 1, gen);
  return in;
}

CVector apply_pattern(const CMatrix& V, int M, const CVector& h) {
  return kron(V, CMatrix::Identity(M, M)) * h;
}

}  // namespace

TEST_CASE("mvu_onoff: hand example and exact recovery") {
  CVector y(2);
  y << 3, 5;
  const auto est = mvu_onoff(y, onoff_pattern(1));
  CVector expected(2);
  expected << 3, 2;
  CHECK(est.h_hat == expected);

  std::mt19937_64 gen(10);
  for (int k = 0; k < 10; ++k) {
    const auto in = random_instance(gen);
    const auto p = onoff_pattern(in.N);
    const CVector h_hat = mvu_onoff(apply_pattern(p.V_tilde, in.M, in.h), p).h_hat;
    CHECK(oracle::rel_err(h_hat, in.h) <= 1e-10);
  }
}

TEST_CASE("mvu_onoff rejects the wrong pattern") {
  CHECK_THROWS_AS(mvu_onoff(CVector::Ones(4), dft_pattern(2, 1)), std::invalid_argument);
  CHECK_THROWS_AS(mvu_onoff(CVector::Ones(5), onoff_pattern(1)), std::invalid_argument);
}

TEST_CASE("mvu_dft: identity, exact recovery, rejection") {
  CVector y(1);
  y << Complex(0.3, -0.7);
  CHECK(mvu_dft(y, dft_pattern(1, 0)).h_hat == y);

  std::mt19937_64 gen(11);
  for (int k = 0; k < 10; ++k) {
    const auto in = random_instance(gen, k % 3);
    const auto p = dft_pattern(in.tau, in.N);
    const CVector h_hat = mvu_dft(apply_pattern(p.V_tilde, in.M, in.h), p).h_hat;
    CHECK(oracle::rel_err(h_hat, in.h) <= 1e-10);
  }
  CHECK_THROWS_AS(mvu_dft(CVector::Ones(4), onoff_pattern(1)), std::invalid_argument);
  CHECK_THROWS_AS(mvu_dft(CVector::Ones(5), dft_pattern(2, 1)), std::invalid_argument);
}

TEST_CASE("structured least squares matches the dense pseudo-inverse") {
  std::mt19937_64 gen(12);
  SUBCASE("on-off, M=2 N=3") {
    const auto p = onoff_pattern(3);
    const CVector y = oracle::random_matrix(2 * 4, 1, gen);
    CHECK(oracle::rel_err(mvu_onoff(y, p).h_hat, oracle::least_squares(p.V_tilde, 2, y)) < 1e-9);
  }
  SUBCASE("dft, M=2 N=3 tau=4") {
    const auto p = dft_pattern(4, 3);
    const CVector y = oracle::random_matrix(2 * 4, 1, gen);
    CHECK(oracle::rel_err(mvu_dft(y, p).h_hat, oracle::least_squares(p.V_tilde, 2, y)) < 1e-9);
  }
  SUBCASE("dft, overdetermined tau > N+1") {
    const auto p = dft_pattern(8, 3);
    const CVector y = oracle::random_matrix(3 * 8, 1, gen);
    CHECK(oracle::rel_err(mvu_dft(y, p).h_hat, oracle::least_squares(p.V_tilde, 3, y)) < 1e-9);
  }
}

TEST_CASE("mmse: zero prior, noiseless limit, dense oracle") {
  std::mt19937_64 gen(13);
  const auto in = random_instance(gen);
  PriorCovariance zero{in.M, 0.0, 0.0, in.H_los};
  CHECK(mmse(in.h, zero, {1.0, in.tau}).h_hat.cwiseAbs().maxCoeff() == 0.0);

  // Draw h from the prior: cascade columns lie in span(b_n).
  const auto prior = prior_covariance(in.losses, in.H_los);
  CVector h(in.M * (in.N + 1));
  h.head(in.M) = oracle::random_matrix(in.M, 1, gen);
  for (int n = 0; n < in.N; ++n) {
    h.segment((n + 1) * in.M, in.M) = Complex(0.3 * n - 0.2, 0.7) * in.H_los.col(n);
  }
  CHECK(oracle::rel_err(mmse(h, prior, {0.0, in.tau}).h_hat, h) < 1e-9);

  // M=2, N=3 dense comparison.
  const auto losses = PathLosses::normalized(3, 0.5);
  const CMatrix H = oracle::random_phasors(2, 3, 1.0, gen);
  const auto p23 = prior_covariance(losses, H);
  const CVector r = oracle::random_matrix(8, 1, gen);
  const double c = 0.8 / 4;
  CHECK(oracle::rel_err(mmse(r, p23, {0.8, 4}).h_hat, oracle::mmse(p23, c, r)) < 1e-9);

  CHECK_THROWS_AS(mmse(CVector::Ones(3), p23, {1.0, 4}), std::invalid_argument);
}

TEST_CASE("mmse_direct") {
  CVector r(3);
  r << 1, Complex(2, -1), -3;
  CHECK(mmse_direct(r, 0.5, {0.0, 51}) == r);
  CHECK(mmse_direct(r, 0.0, {1.0, 51}).cwiseAbs().maxCoeff() == 0.0);

  // 0.5 / (0.5 + 1/51) = 25.5 / 26.5
  const CVector g = mmse_direct(CVector::Ones(1), 0.5, {1.0, 51});
  CHECK(g[0].real() == doctest::Approx(0.9622641509433962).epsilon(1e-14));

  std::mt19937_64 gen(14);
  const auto in = random_instance(gen);
  const auto prior = prior_covariance(in.losses, in.H_los);
  const NoiseModel noise{0.37, in.tau};
  const CVector full = mmse(in.h, prior, noise).h_hat;
  const CVector head = mmse_direct(in.h.head(in.M), prior.beta_bs, noise);
  CHECK(std::memcmp(full.data(), head.data(), sizeof(Complex) * in.M) == 0);
}

TEST_CASE("oracle equivalence on 100 random instances") {
  std::mt19937_64 gen(15);
  std::uniform_int_distribution<int> extra(0, 3);
  std::uniform_real_distribution<double> n0d(0.01, 10.0);
  for (int k = 0; k < 100; ++k) {
    const auto in = random_instance(gen, extra(gen));
    const CVector y = oracle::random_matrix(in.M * in.tau, 1, gen);
    const auto dft = dft_pattern(in.tau, in.N);
    CHECK(oracle::rel_err(mvu_dft(y, dft).h_hat, oracle::least_squares(dft.V_tilde, in.M, y)) < 1e-9);

    const auto onoff = onoff_pattern(in.N);
    const CVector y_sq = y.head(in.M * (in.N + 1));
    CHECK(oracle::rel_err(mvu_onoff(y_sq, onoff).h_hat,
                          oracle::least_squares(onoff.V_tilde, in.M, y_sq)) < 1e-9);

    const auto prior = prior_covariance(in.losses, in.H_los);
    const double n0 = n0d(gen);
    CHECK(oracle::rel_err(mmse(in.h, prior, {n0, in.tau}).h_hat,
                          oracle::mmse(prior, n0 / in.tau, in.h)) < 1e-9);
  }
}

TEST_CASE("predict_nmse closed forms") {
  NmseParams p{1.0, 51, 10, 0.5, 0.01, 1.0};
  CHECK(predict_nmse(EstimatorKind::MvuDft, ChannelGroup::Direct, p) ==
        doctest::Approx(1.0 / 25.5).epsilon(1e-14));
  CHECK(predict_nmse(EstimatorKind::Mmse, ChannelGroup::Cascade, p) ==
        doctest::Approx(1.0 / 6.1).epsilon(1e-14));
  CHECK(predict_nmse(EstimatorKind::MvuDft, ChannelGroup::Cascade, p) ==
        doctest::Approx(1.0 / 0.51).epsilon(1e-14));
  CHECK(predict_nmse(EstimatorKind::Mmse, ChannelGroup::Direct, p) ==
        doctest::Approx(1.0 / 26.5).epsilon(1e-14));
  CHECK(predict_nmse(EstimatorKind::MvuOnOff, ChannelGroup::Direct, p) == doctest::Approx(2.0));
  CHECK(predict_nmse(EstimatorKind::MvuOnOff, ChannelGroup::Cascade, p) == doctest::Approx(200.0));

  p.n0 = 0.0;
  for (auto e : {EstimatorKind::MvuOnOff, EstimatorKind::MvuDft, EstimatorKind::Mmse}) {
    for (auto g : {ChannelGroup::Direct, ChannelGroup::Cascade}) {
      CHECK(predict_nmse(e, g, p) == 0.0);
    }
  }
  CHECK_THROWS_AS(predict_nmse(static_cast<EstimatorKind>(17), ChannelGroup::Direct,
                               {1.0, 51, 10, 0.5, 0.01, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_estimator("zf"), std::invalid_argument);
}

TEST_CASE("on-off closed form agrees with the diagonal of N0 V^{-1} V^{-H}") {
  const int N = 6;
  const double n0 = 0.7;
  const CMatrix Vinv = onoff_pattern(N).V_tilde.inverse();
  const CMatrix cov = n0 * Vinv * Vinv.adjoint();
  const NmseParams p{n0, N + 1, 3, 0.4, 0.1, 1.0};
  CHECK(predict_nmse(EstimatorKind::MvuOnOff, ChannelGroup::Direct, p) ==
        doctest::Approx(cov(0, 0).real() / 0.4).epsilon(1e-12));
  CHECK(predict_nmse(EstimatorKind::MvuOnOff, ChannelGroup::Cascade, p) ==
        doctest::Approx(cov(3, 3).real() / 0.1).epsilon(1e-12));
}

TEST_CASE("ordering: mmse beats mvu-dft and approaches 1 and 1/M at high SNR") {
  std::mt19937_64 gen(16);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int k = 0; k < 200; ++k) {
    const int M = 1 + static_cast<int>(gen() % 16);
    const int N = 1 + static_cast<int>(gen() % 64);
    const auto l = PathLosses::normalized(N, u(gen));
    NmseParams p{std::pow(10.0, 4 * u(gen) - 2), N + 1 + static_cast<int>(gen() % 5), M,
                 l.beta_bs, l.beta_irs, l.beta_bs_irs};
    for (auto g : {ChannelGroup::Direct, ChannelGroup::Cascade}) {
      CHECK(predict_nmse(EstimatorKind::Mmse, g, p) < predict_nmse(EstimatorKind::MvuDft, g, p));
    }
    p.n0 = 1e-9;
    const double rd = predict_nmse(EstimatorKind::Mmse, ChannelGroup::Direct, p) /
                      predict_nmse(EstimatorKind::MvuDft, ChannelGroup::Direct, p);
    const double rc = predict_nmse(EstimatorKind::Mmse, ChannelGroup::Cascade, p) /
                      predict_nmse(EstimatorKind::MvuDft, ChannelGroup::Cascade, p);
    CHECK(rd == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(rc == doctest::Approx(1.0 / M).epsilon(1e-6));
  }
}

TEST_CASE("mmse error traces reproduce the closed-form NMSE") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int k = 0; k < 50; ++k) {
    const int M = 1 + static_cast<int>(gen() % 12);
    const int N = 1 + static_cast<int>(gen() % 8);
    const int tau = N + 1 + static_cast<int>(gen() % 4);
    const auto l = PathLosses::normalized(N, u(gen), 0.2 + u(gen));
    const CMatrix H = oracle::random_phasors(M, N, l.beta_bs_irs, gen);
    const auto prior = prior_covariance(l, H);
    const double n0 = std::pow(10.0, 4 * u(gen) - 2);
    const NoiseModel noise{n0, tau};
    const NmseParams p{n0, tau, M, l.beta_bs, l.beta_irs, l.beta_bs_irs};

    const double direct = mmse_error_trace(prior, noise, 0) / prior.block_trace(0);
    CHECK(std::abs(direct - predict_nmse(EstimatorKind::Mmse, ChannelGroup::Direct, p)) <
          1e-12 * direct);
    for (int n = 1; n <= N; ++n) {
      const double cas = mmse_error_trace(prior, noise, n) / prior.block_trace(n);
      CHECK(std::abs(cas - predict_nmse(EstimatorKind::Mmse, ChannelGroup::Cascade, p)) <
            1e-12 * cas);
    }
    if (M * (N + 1) <= 30) {
      for (int b = 0; b <= N; ++b) {
        const double dense = oracle::mmse_error_trace(prior, n0 / tau, b);
        CHECK(mmse_error_trace(prior, noise, b) == doctest::Approx(dense).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("Estimate::score") {
  Estimate e;
  e.h_hat = CVector::Zero(6);
  CVector truth(6);
  truth << 1, 1, 0, 0, Complex(0, 2), 0;
  e.score(truth, 2);
  REQUIRE(e.per_block_sq_error);
  CHECK(*e.per_block_sq_error == std::vector<double>{2.0, 0.0, 4.0});
  CHECK_THROWS_AS(e.score(CVector::Zero(5), 2), std::invalid_argument);
}
