#pragma once

#include <complex>
#include <map>
#include <string>
#include <string_view>

#include <nlohmann/json_fwd.hpp>

#include "ncqo/modes.hpp"
#include "ncqo/normal_form.hpp"

namespace ncqo {

struct VacuumOptions {
  bool renormalize = false;
  double tolerance = 1e-12;
};

// Product-form vacuum: a superposition over oscillator numbers n >= 1 with
// probabilities p_n, every oscillator in the same single-oscillator ground
// state with mode amplitudes O_m (sum_m |O_m|^2 = 1). Entangled or mixed
// vacua are rejected at input.
class VacuumSpec {
 public:
  VacuumSpec(ModeTable table, std::map<int, double> number_dist,
             std::map<std::string, std::complex<double>> profile,
             VacuumOptions options = {});

  // Truncated geometric oscillator-number distribution p_n ~ ratio^(n-1),
  // n = 1..max_n.
  static VacuumSpec geometric(ModeTable table, double ratio, int max_n,
                              std::map<std::string, std::complex<double>> profile,
                              VacuumOptions options = {});

  // File format: {"p": {"1": 0.2, ...},
  //               "profile": [{"id": ..., "re": ..., "im": ...}, ...],
  //               "renormalize": bool}
  // Profile entries accept an optional "omega" (default 1).
  static VacuumSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  const ModeTable& table() const { return table_; }
  const std::map<int, double>& number_distribution() const { return p_; }
  int max_oscillator_number() const;

  std::complex<double> amplitude(std::string_view id) const;  // O_m, 0 if absent
  double weight(std::string_view id) const;                   // |O_m|^2

  // <1/n^k> = sum_n p_n / n^k; equals 1 for k = 0.
  double inv_n_moment(int k) const;

 private:
  ModeTable table_;
  std::map<int, double> p_;
  std::map<std::string, std::complex<double>, std::less<>> profile_;
};

// Product of unit elements to evaluate: mode id -> positive power.
struct MomentRequest {
  std::map<std::string, int> powers;

  int total_power() const;
  static MomentRequest single(std::string id, int power);
};

struct MomentOptions {
  int power_cap = 12;  // Bell(12) = 4,213,597 partitions
};

// <0| one(m1)^e1 ... one(mj)^ej |0> by exact set-partition enumeration:
// each assignment of unit factors to oscillators contributes the falling
// factorial count of its fiber partition times |O|^2 per mode-homogeneous
// block; inhomogeneous blocks vanish by orthogonality of the mode states.
double unit_moment(const VacuumSpec& vac, const MomentRequest& req,
                   const MomentOptions& opts = {});

// Squared norm <0| one(m)^N |0> of the N-photon state built on this vacuum.
double nphoton_norm(const VacuumSpec& vac, std::string_view mode,
                    int photon_count, const MomentOptions& opts = {});

// Vacuum expectation of a normal form: terms with surviving creators or
// annihilators vanish, pure-unit terms evaluate through unit_moment.
std::complex<double> vev(const VacuumSpec& vac, const NormalForm& form,
                         const MomentOptions& opts = {});

}  // namespace ncqo
