#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "ncqo/vacuum.hpp"

namespace ncqo {

// Ratio of a vacuum sandwich in the unit-element algebra to its canonical
// (Wick) counterpart. When the canonical value vanishes the whole
// perturbative term vanishes too, so the ratio is left undefined rather
// than NaN.
struct XFactorReport {
  std::complex<double> canonical{0.0, 0.0};
  std::complex<double> noncanonical{0.0, 0.0};
  std::optional<std::complex<double>> ratio;
  bool vanishing = false;
};

// Wick value: unit elements collapse to the scalar 1, terms with surviving
// creators or annihilators vanish on the vacuum.
std::complex<double> canonical_vev(const NormalForm& form);
std::complex<double> canonical_vev(const OperatorWord& word,
                                   const RewriteOptions& opts = {});

XFactorReport xfactor(const VacuumSpec& vac, const OperatorWord& word,
                      const MomentOptions& moments = {},
                      const RewriteOptions& rewrite = {});

// Flat vacuum profile: constant amplitude C on M in-band modes below the
// frequency cutoff, C^2 M = 1.
class FlatVacuum {
 public:
  FlatVacuum(int mode_count, double omega_max);
  FlatVacuum(double amplitude, int mode_count, double omega_max);

  double amplitude() const { return amplitude_; }  // C
  int mode_count() const { return mode_count_; }   // M
  double omega_max() const { return omega_max_; }

  // Modes "f1".."fM" with frequencies j * omega_max / M.
  ModeTable table() const;
  VacuumSpec vacuum(std::map<int, double> number_dist,
                    VacuumOptions options = {}) const;

 private:
  double amplitude_;
  int mode_count_;
  double omega_max_;
};

// Bare coupling rule: the measured charge-to-mass ratio is C times the bare
// one, so amplitudes computed with bare parameters multiply by C.
double renormalize_coupling(const FlatVacuum& flat, double bare_e_over_m);

struct EmissionProcess {
  enum class Kind { NPhotonSame, TwoDifferent, Stimulated };

  Kind kind = Kind::NPhotonSame;
  int photon_count = 1;      // N; ignored for TwoDifferent
  std::string mode;          // emitting mode
  std::string partner_mode;  // second mode for TwoDifferent

  static EmissionProcess n_photon_same(int n, std::string mode);
  static EmissionProcess two_different(std::string mode, std::string partner);
  static EmissionProcess stimulated(int n, std::string mode);
};

// Field-side multiplicative factor of the emission amplitude relative to the
// canonical result computed with bare parameters:
//   NPhotonSame(N):  sqrt(<one^N>)
//   TwoDifferent:    sqrt(<one_m one_m'>)
//   Stimulated(N):   sqrt(<one^(N+1)> / <one^N>)
double emission_factor(const VacuumSpec& vac, const EmissionProcess& process,
                       const MomentOptions& opts = {});

struct LabeledXFactor {
  std::string pattern;  // e.g. "X0101_llpp" with l = mode, p = partner
  std::string word;     // the explicit operator word the report belongs to
  XFactorReport report;
};

// X-factors attached to the nonvanishing terms of the excited-state
// amplitude at the given perturbative order, one per mode-pattern class
// over placeholder modes (the first one resp. two table modes).
std::vector<LabeledXFactor> decay_series_factors(const VacuumSpec& vac,
                                                 int order,
                                                 const MomentOptions& opts = {});

}  // namespace ncqo
