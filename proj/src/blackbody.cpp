#include "ncqo/blackbody.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numbers>
#include <ostream>
#include <thread>

namespace ncqo {

namespace {

void check_inputs(const ThermoParams& p, double omega) {
  if (!(p.beta > 0.0)) throw std::invalid_argument("beta must be positive");
  if (p.mu > 0.0) throw std::invalid_argument("mu must be <= 0");
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
}

struct SeriesPair {
  double z = 0.0;        // partition function
  double numerator = 0.0;  // sum_m m y^m x^m / (1 - x^m)^2
  std::size_t terms = 0;
  double tail_z = 0.0;
  double tail_numerator = 0.0;
};

// One pass over the oscillator-number sum. y = e^{beta(mu - omega/2)} < 1
// for mu <= 0, so both series have geometric majorants:
//   sum_{m>M} y^m/(1-x^m)          <= y^{M+1} / ((1-y)(1-x))
//   sum_{m>M} m (xy)^m/(1-x^m)^2   <= Sum m (xy)^m / (1-x)^2
SeriesPair accumulate_series(const ThermoParams& p, double omega,
                             const SeriesOptions& opts) {
  check_inputs(p, omega);
  const double beta = p.beta;
  const double log_y = beta * (p.mu - 0.5 * omega);
  const double one_minus_x = -std::expm1(-beta * omega);
  const double y = std::exp(log_y);
  const double zy = std::exp(log_y - beta * omega);  // x * y

  SeriesPair out;
  const std::size_t limit =
      opts.m_max > 0 ? std::min(opts.m_max, opts.m_cap) : opts.m_cap;
  for (std::size_t m = 1; m <= limit; ++m) {
    const double md = static_cast<double>(m);
    const double ym = std::exp(log_y * md);
    const double xm = std::exp(-beta * omega * md);
    const double denom = -std::expm1(-beta * omega * md);  // 1 - x^m
    out.z += ym / denom;
    out.numerator += md * ym * xm / (denom * denom);
    out.terms = m;

    if (opts.m_max > 0) continue;  // deliberate restriction, no tail logic

    const double y_next = std::exp(log_y * (md + 1.0));
    out.tail_z = y_next / ((1.0 - y) * one_minus_x);
    const double zy_next = std::exp((log_y - beta * omega) * (md + 1.0));
    out.tail_numerator = zy_next * ((md + 1.0) * (1.0 - zy) + zy) /
                         ((1.0 - zy) * (1.0 - zy) * one_minus_x * one_minus_x);
    if (out.tail_z < opts.tolerance && out.tail_numerator < opts.tolerance)
      return out;
  }
  if (opts.m_max > 0) return out;
  throw ConvergenceFailure("oscillator-number series still above tolerance " +
                           std::to_string(opts.tolerance) + " after " +
                           std::to_string(opts.m_cap) + " terms");
}

double spectral_prefactor(double omega) {
  return omega * omega * omega / (std::numbers::pi * std::numbers::pi);
}

}  // namespace

SeriesResult partition_function(const ThermoParams& p, double omega,
                                const SeriesOptions& opts) {
  const SeriesPair pair = accumulate_series(p, omega, opts);
  return {pair.z, pair.terms, pair.tail_z};
}

SeriesResult mean_excitations(const ThermoParams& p, double omega,
                              const SeriesOptions& opts) {
  const SeriesPair pair = accumulate_series(p, omega, opts);
  return {pair.numerator / pair.z, pair.terms,
          std::max(pair.tail_z, pair.tail_numerator)};
}

double rho_planck(const ThermoParams& p, double omega) {
  check_inputs(p, omega);
  return spectral_prefactor(omega) / std::expm1(p.beta * omega);
}

SeriesResult rho_new(const ThermoParams& p, double omega,
                     const SeriesOptions& opts) {
  SeriesResult mean = mean_excitations(p, omega, opts);
  mean.value *= spectral_prefactor(omega);
  return mean;
}

double rho_tsallis(const ThermoParams& p, double omega, double q) {
  check_inputs(p, omega);
  if (std::abs(q - 1.0) >= 0.5)
    throw std::invalid_argument("Tsallis q must satisfy |q - 1| < 0.5");
  if (q == 1.0) return rho_planck(p, omega);

  const double u = 1.0 + (q - 1.0) * p.beta * omega;
  if (u <= 0.0) return 0.0;  // q < 1 energy cut-off
  const double q_exponential = std::exp(std::log1p((q - 1.0) * p.beta * omega) /
                                        (q - 1.0));
  return spectral_prefactor(omega) / (q_exponential - 1.0);
}

std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
  if (points == 0) return {};
  if (points == 1) return {lo};
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i)
    grid[i] = lo + (hi - lo) * static_cast<double>(i) /
                       static_cast<double>(points - 1);
  return grid;
}

namespace {

SpectrumPoint evaluate_point(const ThermoParams& p, double omega,
                             const std::vector<double>& q_list,
                             const SeriesOptions& opts) {
  SpectrumPoint point;
  point.omega = omega;
  const SeriesResult density = rho_new(p, omega, opts);
  point.rho_new = density.value;
  point.rho_planck = rho_planck(p, omega);
  point.m_terms = density.terms;
  point.tail_bound = density.tail_bound;
  point.rho_tsallis.reserve(q_list.size());
  for (double q : q_list) point.rho_tsallis.push_back(rho_tsallis(p, omega, q));
  return point;
}

template <typename Task>
void run_indexed(std::size_t count, unsigned threads, Task&& task) {
  const unsigned workers = std::max(
      1u, std::min(threads, static_cast<unsigned>(count == 0 ? 1 : count)));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (std::size_t i = w; i < count; i += workers) task(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void check_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("empty frequency grid");
  double prev = 0.0;
  for (double omega : grid) {
    if (!(omega > prev))
      throw std::invalid_argument(
          "frequency grid must be strictly increasing and positive");
    prev = omega;
  }
}

void print_row(std::ostream& out, const double* values, std::size_t count,
               std::size_t m_terms, double tail_bound) {
  char buffer[64];
  for (std::size_t i = 0; i < count; ++i) {
    std::snprintf(buffer, sizeof(buffer), "%.17g", values[i]);
    out << buffer << ',';
  }
  std::snprintf(buffer, sizeof(buffer), "%.17g", tail_bound);
  out << m_terms << ',' << buffer << '\n';
}

}  // namespace

std::vector<SpectrumPoint> sweep(const ThermoParams& p,
                                 const std::vector<double>& omega_grid,
                                 const std::vector<double>& q_list,
                                 const SeriesOptions& opts, unsigned threads) {
  check_grid(omega_grid);
  std::vector<SpectrumPoint> rows(omega_grid.size());
  run_indexed(omega_grid.size(), threads, [&](std::size_t i) {
    rows[i] = evaluate_point(p, omega_grid[i], q_list, opts);
  });
  return rows;
}

std::vector<SurfacePoint> sweep_surface(double beta,
                                        const std::vector<double>& mu_grid,
                                        const std::vector<double>& omega_grid,
                                        const SeriesOptions& opts,
                                        unsigned threads) {
  check_grid(omega_grid);
  if (mu_grid.empty()) throw std::invalid_argument("empty mu grid");
  std::vector<SurfacePoint> rows(mu_grid.size() * omega_grid.size());
  run_indexed(rows.size(), threads, [&](std::size_t i) {
    const double mu = mu_grid[i / omega_grid.size()];
    const double omega = omega_grid[i % omega_grid.size()];
    rows[i].mu = mu;
    rows[i].point = evaluate_point({beta, mu}, omega, {}, opts);
  });
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SpectrumPoint>& rows,
                     const std::vector<double>& q_list) {
  out << "omega_over_kBT,rho_new,rho_planck";
  char buffer[64];
  for (double q : q_list) {
    std::snprintf(buffer, sizeof(buffer), "%g", q);
    out << ",rho_tsallis_q" << buffer;
  }
  out << ",m_terms,tail_bound\n";
  std::vector<double> values;
  for (const auto& row : rows) {
    values.clear();
    values.push_back(row.omega);
    values.push_back(row.rho_new);
    values.push_back(row.rho_planck);
    values.insert(values.end(), row.rho_tsallis.begin(),
                  row.rho_tsallis.end());
    print_row(out, values.data(), values.size(), row.m_terms, row.tail_bound);
  }
}

void write_surface_csv(std::ostream& out,
                       const std::vector<SurfacePoint>& rows) {
  out << "mu_over_kBT,omega_over_kBT,rho_new,rho_planck,m_terms,tail_bound\n";
  for (const auto& row : rows) {
    const double values[4] = {row.mu, row.point.omega, row.point.rho_new,
                              row.point.rho_planck};
    print_row(out, values, 4, row.point.m_terms, row.point.tail_bound);
  }
}

double planck_peak_omega(double beta) {
  // Maximize u^3/(e^u - 1) in u = beta*omega over a bracket around the peak.
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 1.0;
  double hi = 5.0;
  const auto value = [](double u) { return u * u * u / std::expm1(u); };
  double a = hi - golden * (hi - lo);
  double b = lo + golden * (hi - lo);
  double fa = value(a);
  double fb = value(b);
  while (hi - lo > 1e-12) {
    if (fa < fb) {
      lo = a;
      a = b;
      fa = fb;
      b = lo + golden * (hi - lo);
      fb = value(b);
    } else {
      hi = b;
      b = a;
      fb = fa;
      a = hi - golden * (hi - lo);
      fa = value(a);
    }
  }
  return 0.5 * (lo + hi) / beta;
}

}  // namespace ncqo
