#include "sea/l1_config.hpp"

#include <cmath>
#include <string>

#include "sea/error.hpp"

namespace sea {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCategory::kConfig, "l1 config: " + what);
}

bool all_stable(const std::vector<Complex>& poles) {
  for (const Complex& p : poles) {
    if (!(p.real() < 0.0)) return false;
  }
  return true;
}

// s (T s + 1)^3
Polynomial D_denominator(double T) {
  const Polynomial lag{1.0, T};
  return Polynomial{0.0, 1.0} * lag * lag * lag;
}

}  // namespace

TransferFunction filter_D(const L1Config& cfg) { return {Polynomial{1.0}, D_denominator(cfg.T)}; }

TransferFunction filter_C(const L1Config& cfg) {
  return {Polynomial{cfg.K_a}, D_denominator(cfg.T) + Polynomial{cfg.K_a}};
}

TransferFunction filter_complement(const L1Config& cfg) {
  const Polynomial d = D_denominator(cfg.T);
  return {d, d + Polynomial{cfg.K_a}};
}

TransferFunction filter_C_Hmum(const L1Config& cfg, const NominalModel& model, int j) {
  const TransferFunction C = filter_C(cfg);
  const TransferFunction Hm = model.H_m();
  const TransferFunction Hum = model.H_um(j);
  // H_m and H_um share the denominator det(sI - A_m), so the ratio is
  // num_um / num_m.
  return {C.num * Hum.num, C.den * Hm.num};
}

double Hmum_dc_gain(const NominalModel& model, int j) {
  return model.H_um(j).num.coefficient(0) / model.H_m().num.coefficient(0);
}

TransferFunction filter_C_over_Hm(const L1Config& cfg, const NominalModel& model) {
  const TransferFunction C = filter_C(cfg);
  const TransferFunction Hm = model.H_m();
  return {C.num * Hm.den, C.den * Hm.num};
}

void L1Config::validate(const NominalModel& model) const {
  require(std::isfinite(T_s) && T_s > 0.0, "T_s must be positive");
  require(std::isfinite(T) && T > T_s, "filter time constant T must exceed T_s");
  require(std::isfinite(K_a) && K_a > 0.0, "K_a must be positive");

  const TransferFunction C = filter_C(*this);
  require(all_stable(C.poles()), "C(s) is not stable for this (K_a, T)");
  require(std::abs(C.dc_gain() - 1.0) < 1e-12, "C(0) must equal 1");

  const TransferFunction Hm = model.H_m();
  require(!Hm.num.is_zero(), "H_m(s) is identically zero");
  if (Hm.num.degree() > 0) {
    require(all_stable(polynomial_roots(Hm.num)), "H_m(s) has non-minimum-phase zeros");
  }
  require(filter_C_over_Hm(*this, model).is_proper(), "C(s) H_m^-1(s) is improper");
  for (int j = 0; j < 3; ++j) {
    require(filter_C_Hmum(*this, model, j).is_proper(),
            "C(s) H_m^-1(s) H_um(s) is improper in channel " + std::to_string(j + 1));
  }
}

}  // namespace sea
