#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "ncqo/errors.hpp"

namespace ncqo {

// Natural units: hbar = c = k_B = 1, so beta*omega is dimensionless and the
// chemical potential is measured in units of k_B T when beta = 1.
struct ThermoParams {
  double beta = 1.0;
  double mu = 0.0;  // chemical potential of the oscillators, mu <= 0
};

struct SeriesOptions {
  double tolerance = 1e-14;       // absolute, on Z and on the mean numerator
  std::size_t m_cap = 1'000'000;  // ConvergenceFailure beyond this
  std::size_t m_max = 0;          // 0 = unlimited; 1 restricts to one
                                  // oscillator (exact Planck case)
};

struct SeriesResult {
  double value = 0.0;
  std::size_t terms = 0;      // oscillator-number terms summed
  double tail_bound = 0.0;    // rigorous geometric bound on the remainder
};

// Z = sum_{m>=1} e^{beta m (mu + omega/2)} e^{-beta m omega} /
//     (1 - e^{-beta m omega}),
// a Lambert series in x = e^{-beta omega}; converges for all mu < omega/2.
SeriesResult partition_function(const ThermoParams& p, double omega,
                                const SeriesOptions& opts = {});

// Mean excitation number: the inner excitation sum is the closed form
// x/(1-x)^2, only the oscillator-number sum is truncated.
SeriesResult mean_excitations(const ThermoParams& p, double omega,
                              const SeriesOptions& opts = {});

// Spectral densities (prefactor omega^3 / pi^2 in natural units).
double rho_planck(const ThermoParams& p, double omega);
SeriesResult rho_new(const ThermoParams& p, double omega,
                     const SeriesOptions& opts = {});

// Nonextensive reference curve: the Boltzmann factor replaced by the
// q-exponential [1 + (q-1) beta omega]^(1/(q-1)), with the q < 1 energy
// cut-off mapping to zero density. Reduces to the Planck law at q = 1.
double rho_tsallis(const ThermoParams& p, double omega, double q);

struct SpectrumPoint {
  double omega = 0.0;
  double rho_new = 0.0;
  double rho_planck = 0.0;
  std::vector<double> rho_tsallis;  // aligned with the sweep's q list
  std::size_t m_terms = 0;
  double tail_bound = 0.0;
};

std::vector<double> linear_grid(double lo, double hi, std::size_t points);

// Grid points are independent; evaluation may fan out over threads but the
// output order always follows the grid.
std::vector<SpectrumPoint> sweep(const ThermoParams& p,
                                 const std::vector<double>& omega_grid,
                                 const std::vector<double>& q_list,
                                 const SeriesOptions& opts = {},
                                 unsigned threads = 1);

struct SurfacePoint {
  double mu = 0.0;
  SpectrumPoint point;
};

std::vector<SurfacePoint> sweep_surface(double beta,
                                        const std::vector<double>& mu_grid,
                                        const std::vector<double>& omega_grid,
                                        const SeriesOptions& opts = {},
                                        unsigned threads = 1);

// CSV with 17 significant digits. Header:
// omega_over_kBT,rho_new,rho_planck[,rho_tsallis_q<value>...],m_terms,tail_bound
// Surface rows carry a leading mu_over_kBT column.
void write_sweep_csv(std::ostream& out, const std::vector<SpectrumPoint>& rows,
                     const std::vector<double>& q_list);
void write_surface_csv(std::ostream& out,
                       const std::vector<SurfacePoint>& rows);

// Location of the Planck maximum by golden-section search.
double planck_peak_omega(double beta);

}  // namespace ncqo
