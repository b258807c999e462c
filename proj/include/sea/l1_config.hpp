#pragma once

#include "sea/nominal_model.hpp"
#include "sea/polynomial.hpp"

namespace sea {

/// Tuning of the adaptive loop. The low-pass filter is
/// C(s) = K_a D(s) / (1 + K_a D(s)) with D(s) = 1 / (s (T s + 1)^3).
struct L1Config {
  double T_s = 1e-3;  // adaptation / predictor period [s]
  double T = 0.01;    // filter time constant [s]
  double K_a = 10.0;  // adaptive gain [1/s]

  /// Range checks plus stability, unit DC gain and properness of the
  /// realized filters. Throws sea::Error (kConfig).
  void validate(const NominalModel& model) const;
};

TransferFunction filter_D(const L1Config& cfg);
TransferFunction filter_C(const L1Config& cfg);
/// 1 - C(s).
TransferFunction filter_complement(const L1Config& cfg);
/// C(s) H_m^-1(s) H_um,j(s); H_m^-1 never appears on its own.
TransferFunction filter_C_Hmum(const L1Config& cfg, const NominalModel& model, int j);
/// H_m^-1(s) H_um,j(s) evaluated at s = 0.
double Hmum_dc_gain(const NominalModel& model, int j);
/// C(s) H_m^-1(s); biproper for the fourth-order D(s) above.
TransferFunction filter_C_over_Hm(const L1Config& cfg, const NominalModel& model);

}  // namespace sea
