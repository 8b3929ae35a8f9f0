#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <nlohmann/json_fwd.hpp>

#include "ncqo/vacuum.hpp"
#include "ncqo/word.hpp"

namespace ncqo {

using Complex = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<Complex>;
using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;

// Spatial data a mode needs for field averages.
struct FieldModeData {
  std::array<double, 3> wave_vector{};
  std::array<Complex, 3> polarization{};
};

// Truncated realization: M modes, single-oscillator number basis cut at
// fock_dim levels, oscillator sectors n = 1..max_oscillators as a direct
// sum. Extension weights c_n default to 1/sqrt(n), the choice that keeps
// the resolution of identity at every sector.
struct OracleConfig {
  ModeTable modes;
  int fock_dim = 2;
  int max_oscillators = 1;
  double volume = 1.0;
  std::size_t dimension_cap = 20'000;
  std::function<double(int)> extension_weight;  // c_n; empty = 1/sqrt(n)
  std::map<std::string, FieldModeData> field_data;

  double weight(int n) const;
  std::size_t single_dim() const;       // M * fock_dim
  std::size_t sector_dim(int n) const;  // single_dim^n
  std::size_t total_dim() const;        // sum over sectors; throws DimensionCap
  void validate() const;

  static OracleConfig from_json(const nlohmann::json& j);
};

// Block-diagonal operator over the oscillator-number sectors. All extended
// operators preserve oscillator number, so one sparse block per sector is
// the whole matrix.
class BlockOperator {
 public:
  BlockOperator() = default;
  explicit BlockOperator(std::vector<SparseMatrix> blocks);

  int sector_count() const { return static_cast<int>(blocks_.size()); }
  const SparseMatrix& block(int n) const;  // sectors are 1-based
  DenseMatrix dense(int n) const;

  BlockOperator adjoint() const;
  BlockOperator scaled(Complex factor) const;
  BlockOperator operator*(const BlockOperator& rhs) const;
  BlockOperator operator+(const BlockOperator& rhs) const;
  BlockOperator operator-(const BlockOperator& rhs) const;

  double max_abs() const;
  bool is_hermitian(double tol = 1e-12) const;

 private:
  std::vector<SparseMatrix> blocks_;
};

class SectorVector {
 public:
  SectorVector() = default;
  explicit SectorVector(std::vector<DenseVector> parts);

  int sector_count() const { return static_cast<int>(parts_.size()); }
  const DenseVector& part(int n) const;
  DenseVector& part(int n);

  double norm() const;
  Complex inner(const SectorVector& other) const;  // <this|other>

 private:
  std::vector<DenseVector> parts_;
};

SectorVector apply(const BlockOperator& op, const SectorVector& v);

// Per-sector basis filter used to keep truncation artifacts out of checks.
struct SectorMask {
  std::vector<std::vector<char>> keep;

  bool kept(int sector, Eigen::Index index) const {
    return keep[static_cast<std::size_t>(sector - 1)]
               [static_cast<std::size_t>(index)] != 0;
  }
};

// Largest |entry| of op over rows and columns the mask keeps.
double max_abs_masked(const BlockOperator& op, const SectorMask& mask);

// e^(scale * op) per sector: diagonal blocks exponentiate exactly, general
// blocks go through dense Pade-13 scaling-and-squaring.
BlockOperator expm(const BlockOperator& op, Complex scale);

struct PhaseCheckResult {
  // e^{iHt} a e^{-iHt} vs e^{-i w t} a for the translation-generator H.
  double script_vs_scalar = 0.0;
  // e^{iHt} a e^{-iHt} vs e^{-i w t one} a for the mode-sum H.
  double bold_vs_unit_phase = 0.0;
  // distance of the mode-sum evolution from the plain scalar phase.
  double bold_vs_scalar = 0.0;
};

struct CoherentState {
  SectorVector state;
  double norm_defect = 0.0;  // truncation tail 1 - <psi|psi>
  bool truncation_warning = false;
};

struct FieldAverages {
  std::array<double, 3> vector_potential{};
  std::array<double, 3> electric{};
  std::array<double, 3> magnetic{};
};

class FockOracle {
 public:
  explicit FockOracle(OracleConfig cfg);

  const OracleConfig& config() const { return cfg_; }

  const std::map<Generator, BlockOperator>& generators() const {
    return generators_;
  }
  const BlockOperator& annihilator(std::string_view id) const;
  const BlockOperator& creator(std::string_view id) const;
  const BlockOperator& unit(std::string_view id) const;
  BlockOperator identity_op() const;

  BlockOperator word_operator(const OperatorWord& word) const;
  BlockOperator form_operator(const NormalForm& form) const;

  // |0> = direct sum over n of sqrt(p_n) |O>^(tensor n).
  SectorVector vacuum_vector(const VacuumSpec& vac) const;

  // <0| word |0> by matrix application; requires creator count < fock_dim
  // so no amplitude is lost at the truncation edge.
  Complex vev_oracle(const VacuumSpec& vac, const OperatorWord& word) const;

  // (translation generator, mode-sum field Hamiltonian). The first is the
  // weight-1 extension of the one-oscillator Hamiltonian, the second is
  // (1/2) sum_m omega_m (ad a + a ad) over the extended operators.
  std::pair<BlockOperator, BlockOperator> hamiltonians() const;

  PhaseCheckResult heisenberg_phase_check(std::string_view id, double t) const;

  // Generalized coherent eigenstate of the extended annihilator:
  // sector n carries f_n |mode, alpha/(n c_n)>^(tensor n).
  CoherentState coherent_state(std::string_view id, Complex alpha,
                               const std::vector<double>& sector_weights) const;

  // Sector-1 state sum_m Phi_m |m>|alpha_m> used for field averages.
  SectorVector one_oscillator_superposition(
      const std::map<std::string, Complex>& mode_amplitudes,
      const std::map<std::string, Complex>& coherent_alphas) const;

  // <state| field(t, x) |state> for the three mode-sum field operators;
  // every mode needs wave vector and polarization in the config.
  FieldAverages field_averages(const SectorVector& state, double t,
                               const std::array<double, 3>& x) const;

  // Basis states with every oscillator strictly below the top Fock level.
  SectorMask below_top_mask() const;
  // Basis states with total excitation <= max_total; closed under the
  // number-conserving evolutions, so matrix elements there are exact.
  SectorMask excitation_mask(int max_total) const;

 private:
  SparseMatrix single_annihilator(std::size_t mode_index) const;
  SparseMatrix single_unit(std::size_t mode_index) const;
  SparseMatrix extend(const SparseMatrix& single, int n, double weight) const;
  BlockOperator extended(const SparseMatrix& single,
                         std::function<double(int)> sector_weight) const;
  DenseVector coherent_single(std::size_t mode_index, Complex z) const;

  OracleConfig cfg_;
  std::map<Generator, BlockOperator> generators_;
};

// Convenience wrapper matching the module surface.
std::map<Generator, BlockOperator> build_generators(const OracleConfig& cfg);

// Dense binary dump: 16-byte header (magic "NCQO", u32 rows, u32 cols,
// u32 reserved 0), then row-major complex doubles, little-endian.
void write_dense_matrix(std::ostream& out, const DenseMatrix& m);
DenseMatrix read_dense_matrix(std::istream& in);

}  // namespace ncqo
