#pragma once

#include <string>
#include <string_view>

#include "risce/linalg.hpp"

namespace risce {

enum class PatternKind { OnOff, DFT, Custom };

std::string_view to_string(PatternKind kind);
/// Accepts "onoff" and "dft"; throws std::invalid_argument otherwise.
PatternKind parse_pattern_kind(std::string_view name);

/// RIS activation over the training phase: row t is (1, phi_t^T), so the
/// matrix is tau_p x (N+1).
struct ActivationPattern {
  CMatrix V_tilde;
  PatternKind kind = PatternKind::Custom;

  int tau_p() const { return static_cast<int>(V_tilde.rows()); }
  int N() const { return static_cast<int>(V_tilde.cols()) - 1; }
};

/// [[1, 0^T], [1_N, I_N]]; tau_p = N+1.
ActivationPattern onoff_pattern(int N);

/// First N+1 columns of the unnormalized tau_p-point DFT matrix,
/// entry (k, n) = exp(-i 2 pi k n / tau_p). F^H F = tau_p I.
ActivationPattern dft_pattern(int tau_p, int N);

struct PatternReport {
  bool first_column_ones = false;
  double max_modulus = 0.0;
  bool amplitude_ok = false;     // every entry modulus <= 1 + 1e-12
  bool estimable = false;        // tau_p >= N+1
  double gram_trace = 0.0;       // tr{V^H V}
  double trace_bound = 0.0;      // tau_p (N+1)
  bool bound_attained = false;
  bool gram_diagonal = false;    // V^H V diagonal

  bool valid() const { return first_column_ones && amplitude_ok && estimable; }
};

PatternReport validate_pattern(const ActivationPattern& p);

}  // namespace risce
