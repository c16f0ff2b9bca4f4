#include "doctest.h"
#include "oracles.hpp"
#include "risce/patterns.hpp"

using namespace risce;

namespace {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("onoff_pattern structure") {
  CMatrix n1(2, 2);
  n1 << 1, 0, 1, 1;
  CHECK(onoff_pattern(1).V_tilde == n1);

  CMatrix n2(3, 3);
  n2 << 1, 0, 0, 1, 1, 0, 1, 0, 1;
  const auto p = onoff_pattern(2);
  CHECK(p.V_tilde == n2);
  CHECK(p.kind == PatternKind::OnOff);
  CHECK(p.V_tilde.determinant() == Complex(1.0, 0.0));

  CHECK_THROWS_AS(onoff_pattern(0), std::invalid_argument);
}

TEST_CASE("onoff_pattern has the closed-form inverse [[1,0],[-1,I]]") {
  for (int N : {1, 3, 10, 50}) {
    const CMatrix V = onoff_pattern(N).V_tilde;
    CMatrix inv = CMatrix::Identity(N + 1, N + 1);
    inv.col(0).tail(N).setConstant(-1.0);
    CHECK(max_abs(V * inv - CMatrix::Identity(N + 1, N + 1)) < 1e-12);

    // Diagonal of V^{-1} V^{-H} is (1, 2, ..., 2).
    const CMatrix cov = inv * inv.adjoint();
    CHECK(cov(0, 0) == Complex(1.0, 0.0));
    for (int n = 1; n <= N; ++n) CHECK(cov(n, n) == Complex(2.0, 0.0));
  }
}

TEST_CASE("dft_pattern small cases") {
  CMatrix two(2, 2);
  two << 1, 1, 1, -1;
  CHECK(max_abs(dft_pattern(2, 1).V_tilde - two) < 1e-15);

  CMatrix four(4, 2);
  four << 1, 1, 1, Complex(0, -1), 1, -1, 1, Complex(0, 1);
  CHECK(max_abs(dft_pattern(4, 1).V_tilde - four) < 1e-15);

  CHECK_THROWS_AS(dft_pattern(3, 3), std::invalid_argument);
  CHECK(dft_pattern(1, 0).V_tilde(0, 0) == Complex(1.0, 0.0));
}

TEST_CASE("dft_pattern orthogonality F^H F = tau_p I") {
  for (auto [tau, N] : {std::pair{51, 50}, {64, 20}, {8, 4}, {1000, 999}}) {
    const CMatrix F = dft_pattern(tau, N).V_tilde;
    const CMatrix gram = F.adjoint() * F;
    const CMatrix target = static_cast<double>(tau) * CMatrix::Identity(N + 1, N + 1);
    CHECK(max_abs(gram - target) < 1e-9);
  }
}

TEST_CASE("generated patterns: first column ones and bounded moduli") {
  for (const auto& p : {onoff_pattern(5), dft_pattern(9, 5), dft_pattern(6, 5)}) {
    const auto r = validate_pattern(p);
    CHECK(r.first_column_ones);
    CHECK(r.amplitude_ok);
    CHECK(r.valid());
    for (Eigen::Index i = 0; i < p.V_tilde.size(); ++i) {
      const double a = std::abs(p.V_tilde(i));
      CHECK((a == 0.0 || (a > 0.0 && a <= 1.0 + 1e-12)));
    }
  }
}

TEST_CASE("validate_pattern reports") {
  const auto dft = validate_pattern(dft_pattern(51, 50));
  CHECK(dft.gram_trace == doctest::Approx(2601.0).epsilon(1e-12));
  CHECK(dft.trace_bound == 2601.0);
  CHECK(dft.bound_attained);
  CHECK(dft.gram_diagonal);

  const auto onoff = validate_pattern(onoff_pattern(50));
  CHECK_FALSE(onoff.gram_diagonal);
  CHECK_FALSE(onoff.bound_attained);
  CHECK(onoff.valid());

  ActivationPattern loud = dft_pattern(4, 2);
  loud.V_tilde(2, 1) = 1.5;
  const auto r = validate_pattern(loud);
  CHECK_FALSE(r.amplitude_ok);
  CHECK(r.max_modulus == doctest::Approx(1.5));
  CHECK_FALSE(r.valid());

  ActivationPattern tall = dft_pattern(4, 2);
  tall.V_tilde(0, 0) = 0.5;
  CHECK_FALSE(validate_pattern(tall).first_column_ones);

  ActivationPattern wide{CMatrix::Ones(2, 4), PatternKind::Custom};
  CHECK_FALSE(validate_pattern(wide).estimable);
}

TEST_CASE("pattern kind names") {
  CHECK(parse_pattern_kind("dft") == PatternKind::DFT);
  CHECK(parse_pattern_kind("onoff") == PatternKind::OnOff);
  CHECK_THROWS_AS(parse_pattern_kind("random"), std::invalid_argument);
  CHECK(to_string(PatternKind::OnOff) == "onoff");
}
