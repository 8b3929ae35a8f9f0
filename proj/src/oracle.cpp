#include "ncqo/oracle.hpp"

#include <cmath>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>
#include <unsupported/Eigen/MatrixFunctions>

namespace ncqo {

namespace {

constexpr double kTruncationFidelity = 1e-6;

std::array<Complex, 3> cross(const std::array<double, 3>& n,
                             const std::array<Complex, 3>& e) {
  return {n[1] * e[2] - n[2] * e[1], n[2] * e[0] - n[0] * e[2],
          n[0] * e[1] - n[1] * e[0]};
}

}  // namespace

double OracleConfig::weight(int n) const {
  if (extension_weight) return extension_weight(n);
  return 1.0 / std::sqrt(static_cast<double>(n));
}

std::size_t OracleConfig::single_dim() const {
  return modes.size() * static_cast<std::size_t>(fock_dim);
}

std::size_t OracleConfig::sector_dim(int n) const {
  if (single_dim() == 0)
    throw std::invalid_argument("config needs modes");
  std::size_t dim = 1;
  for (int i = 0; i < n; ++i) {
    if (dim > dimension_cap / single_dim() + 1) {
      throw DimensionCap("sector " + std::to_string(n) +
                         " exceeds the dimension cap of " +
                         std::to_string(dimension_cap));
    }
    dim *= single_dim();
  }
  return dim;
}

std::size_t OracleConfig::total_dim() const {
  std::size_t total = 0;
  for (int n = 1; n <= max_oscillators; ++n) {
    total += sector_dim(n);
    if (total > dimension_cap)
      throw DimensionCap("direct-sum dimension " + std::to_string(total) +
                         " exceeds the cap of " +
                         std::to_string(dimension_cap));
  }
  return total;
}

void OracleConfig::validate() const {
  if (modes.size() == 0) throw std::invalid_argument("config needs modes");
  if (fock_dim < 2) throw std::invalid_argument("fock_dim must be >= 2");
  if (max_oscillators < 1)
    throw std::invalid_argument("max_oscillators must be >= 1");
  if (!(volume > 0.0)) throw std::invalid_argument("volume must be positive");
  (void)total_dim();
}

OracleConfig OracleConfig::from_json(const nlohmann::json& j) {
  OracleConfig cfg;
  for (const auto& entry : j.at("modes"))
    cfg.modes.add({entry.at("id").get<std::string>(),
                   entry.value("omega", 1.0)});
  cfg.fock_dim = j.at("fock_dim").get<int>();
  cfg.max_oscillators = j.at("max_oscillators").get<int>();
  cfg.volume = j.value("volume", 1.0);
  cfg.dimension_cap = j.value("dimension_cap", std::size_t{20'000});
  cfg.validate();
  return cfg;
}

BlockOperator::BlockOperator(std::vector<SparseMatrix> blocks)
    : blocks_(std::move(blocks)) {}

const SparseMatrix& BlockOperator::block(int n) const {
  return blocks_.at(static_cast<std::size_t>(n - 1));
}

DenseMatrix BlockOperator::dense(int n) const {
  return DenseMatrix(block(n));
}

BlockOperator BlockOperator::adjoint() const {
  std::vector<SparseMatrix> out;
  out.reserve(blocks_.size());
  for (const auto& b : blocks_) out.emplace_back(b.adjoint());
  return BlockOperator(std::move(out));
}

BlockOperator BlockOperator::scaled(Complex factor) const {
  std::vector<SparseMatrix> out;
  out.reserve(blocks_.size());
  for (const auto& b : blocks_) out.emplace_back(factor * b);
  return BlockOperator(std::move(out));
}

BlockOperator BlockOperator::operator*(const BlockOperator& rhs) const {
  if (blocks_.size() != rhs.blocks_.size())
    throw std::invalid_argument("sector count mismatch in operator product");
  std::vector<SparseMatrix> out;
  out.reserve(blocks_.size());
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    out.emplace_back(blocks_[i] * rhs.blocks_[i]);
  return BlockOperator(std::move(out));
}

BlockOperator BlockOperator::operator+(const BlockOperator& rhs) const {
  if (blocks_.size() != rhs.blocks_.size())
    throw std::invalid_argument("sector count mismatch in operator sum");
  std::vector<SparseMatrix> out;
  out.reserve(blocks_.size());
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    out.emplace_back(blocks_[i] + rhs.blocks_[i]);
  return BlockOperator(std::move(out));
}

BlockOperator BlockOperator::operator-(const BlockOperator& rhs) const {
  if (blocks_.size() != rhs.blocks_.size())
    throw std::invalid_argument("sector count mismatch in operator difference");
  std::vector<SparseMatrix> out;
  out.reserve(blocks_.size());
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    out.emplace_back(blocks_[i] - rhs.blocks_[i]);
  return BlockOperator(std::move(out));
}

double BlockOperator::max_abs() const {
  double max = 0.0;
  for (const auto& b : blocks_) {
    for (int k = 0; k < b.outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(b, k); it; ++it)
        max = std::max(max, std::abs(it.value()));
    }
  }
  return max;
}

bool BlockOperator::is_hermitian(double tol) const {
  return (*this - adjoint()).max_abs() <= tol;
}

SectorVector::SectorVector(std::vector<DenseVector> parts)
    : parts_(std::move(parts)) {}

const DenseVector& SectorVector::part(int n) const {
  return parts_.at(static_cast<std::size_t>(n - 1));
}

DenseVector& SectorVector::part(int n) {
  return parts_.at(static_cast<std::size_t>(n - 1));
}

double SectorVector::norm() const {
  double sq = 0.0;
  for (const auto& p : parts_) sq += p.squaredNorm();
  return std::sqrt(sq);
}

Complex SectorVector::inner(const SectorVector& other) const {
  if (parts_.size() != other.parts_.size())
    throw std::invalid_argument("sector count mismatch in inner product");
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < parts_.size(); ++i)
    sum += parts_[i].dot(other.parts_[i]);
  return sum;
}

SectorVector apply(const BlockOperator& op, const SectorVector& v) {
  std::vector<DenseVector> parts;
  parts.reserve(static_cast<std::size_t>(v.sector_count()));
  for (int n = 1; n <= v.sector_count(); ++n)
    parts.emplace_back(op.block(n) * v.part(n));
  return SectorVector(std::move(parts));
}

double max_abs_masked(const BlockOperator& op, const SectorMask& mask) {
  double max = 0.0;
  for (int n = 1; n <= op.sector_count(); ++n) {
    const auto& b = op.block(n);
    for (int k = 0; k < b.outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(b, k); it; ++it) {
        if (mask.kept(n, it.row()) && mask.kept(n, it.col()))
          max = std::max(max, std::abs(it.value()));
      }
    }
  }
  return max;
}

BlockOperator expm(const BlockOperator& op, Complex scale) {
  std::vector<SparseMatrix> out;
  for (int n = 1; n <= op.sector_count(); ++n) {
    const auto& b = op.block(n);
    bool diagonal = true;
    for (int k = 0; k < b.outerSize() && diagonal; ++k) {
      for (SparseMatrix::InnerIterator it(b, k); it; ++it) {
        if (it.row() != it.col()) {
          diagonal = false;
          break;
        }
      }
    }
    if (diagonal) {
      DenseVector d = DenseVector::Zero(b.rows());
      for (int k = 0; k < b.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(b, k); it; ++it)
          d(it.row()) = it.value();
      SparseMatrix e(b.rows(), b.cols());
      std::vector<Eigen::Triplet<Complex>> trips;
      trips.reserve(static_cast<std::size_t>(b.rows()));
      for (Eigen::Index i = 0; i < b.rows(); ++i)
        trips.emplace_back(i, i, std::exp(scale * d(i)));
      e.setFromTriplets(trips.begin(), trips.end());
      out.push_back(std::move(e));
    } else {
      const DenseMatrix dense = (scale * DenseMatrix(b)).exp();
      out.emplace_back(dense.sparseView(1.0, 0.0));
    }
  }
  return BlockOperator(std::move(out));
}

FockOracle::FockOracle(OracleConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  const auto c = [this](int n) { return cfg_.weight(n); };
  const auto c_squared = [this](int n) {
    const double w = cfg_.weight(n);
    return w * w;
  };
  for (std::size_t m = 0; m < cfg_.modes.size(); ++m) {
    const std::string& id = cfg_.modes.modes()[m].id;
    BlockOperator a = extended(single_annihilator(m), c);
    generators_.emplace(Generator{GeneratorKind::Create, id}, a.adjoint());
    generators_.emplace(Generator{GeneratorKind::Annihilate, id},
                        std::move(a));
    generators_.emplace(Generator{GeneratorKind::Unit, id},
                        extended(single_unit(m), c_squared));
  }
}

SparseMatrix FockOracle::single_annihilator(std::size_t mode_index) const {
  const int d = cfg_.fock_dim;
  const auto dim = static_cast<Eigen::Index>(cfg_.single_dim());
  const Eigen::Index base = static_cast<Eigen::Index>(mode_index) * d;
  std::vector<Eigen::Triplet<Complex>> trips;
  for (int level = 1; level < d; ++level) {
    trips.emplace_back(base + level - 1, base + level,
                       std::sqrt(static_cast<double>(level)));
  }
  SparseMatrix m(dim, dim);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

SparseMatrix FockOracle::single_unit(std::size_t mode_index) const {
  const int d = cfg_.fock_dim;
  const auto dim = static_cast<Eigen::Index>(cfg_.single_dim());
  const Eigen::Index base = static_cast<Eigen::Index>(mode_index) * d;
  std::vector<Eigen::Triplet<Complex>> trips;
  for (int level = 0; level < d; ++level)
    trips.emplace_back(base + level, base + level, 1.0);
  SparseMatrix m(dim, dim);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

// sum over tensor slots of (1 x ... x single x ... x 1), scaled.
SparseMatrix FockOracle::extend(const SparseMatrix& single, int n,
                                double weight) const {
  const std::size_t s = cfg_.single_dim();
  const std::size_t dim = cfg_.sector_dim(n);
  std::vector<Eigen::Triplet<Complex>> trips;
  std::size_t stride = 1;
  for (int slot = 0; slot < n; ++slot) {
    const std::size_t outer = dim / (stride * s);
    for (int k = 0; k < single.outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(single, k); it; ++it) {
        for (std::size_t hi = 0; hi < outer; ++hi) {
          for (std::size_t lo = 0; lo < stride; ++lo) {
            const std::size_t col = hi * stride * s +
                                    static_cast<std::size_t>(it.col()) * stride +
                                    lo;
            const std::size_t row = hi * stride * s +
                                    static_cast<std::size_t>(it.row()) * stride +
                                    lo;
            trips.emplace_back(static_cast<Eigen::Index>(row),
                               static_cast<Eigen::Index>(col),
                               weight * it.value());
          }
        }
      }
    }
    stride *= s;
  }
  SparseMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

BlockOperator FockOracle::extended(
    const SparseMatrix& single, std::function<double(int)> sector_weight) const {
  std::vector<SparseMatrix> blocks;
  blocks.reserve(static_cast<std::size_t>(cfg_.max_oscillators));
  for (int n = 1; n <= cfg_.max_oscillators; ++n)
    blocks.push_back(extend(single, n, sector_weight(n)));
  return BlockOperator(std::move(blocks));
}

const BlockOperator& FockOracle::annihilator(std::string_view id) const {
  cfg_.modes.index_of(id);  // UnknownMode on absent ids
  return generators_.at(Generator{GeneratorKind::Annihilate, std::string(id)});
}

const BlockOperator& FockOracle::creator(std::string_view id) const {
  cfg_.modes.index_of(id);
  return generators_.at(Generator{GeneratorKind::Create, std::string(id)});
}

const BlockOperator& FockOracle::unit(std::string_view id) const {
  cfg_.modes.index_of(id);
  return generators_.at(Generator{GeneratorKind::Unit, std::string(id)});
}

BlockOperator FockOracle::identity_op() const {
  std::vector<SparseMatrix> blocks;
  for (int n = 1; n <= cfg_.max_oscillators; ++n) {
    const auto dim = static_cast<Eigen::Index>(cfg_.sector_dim(n));
    SparseMatrix m(dim, dim);
    m.setIdentity();
    blocks.push_back(std::move(m));
  }
  return BlockOperator(std::move(blocks));
}

BlockOperator FockOracle::word_operator(const OperatorWord& word) const {
  BlockOperator op = identity_op();
  for (const auto& g : word.factors) {
    auto it = generators_.find(g);
    if (it == generators_.end())
      throw UnknownMode("mode '" + g.mode + "' is not in the oracle config");
    op = op * it->second;
  }
  return op.scaled(word.coefficient);
}

BlockOperator FockOracle::form_operator(const NormalForm& form) const {
  BlockOperator sum = identity_op().scaled(0.0);
  for (const auto& term : form.terms()) {
    OperatorWord word;
    word.coefficient = term.coefficient;
    for (const auto& [id, power] : term.units) {
      for (int i = 0; i < power; ++i)
        word.factors.push_back({GeneratorKind::Unit, id});
    }
    for (const auto& id : term.creators)
      word.factors.push_back({GeneratorKind::Create, id});
    for (const auto& id : term.annihilators)
      word.factors.push_back({GeneratorKind::Annihilate, id});
    sum = sum + word_operator(word);
  }
  return sum;
}

SectorVector FockOracle::vacuum_vector(const VacuumSpec& vac) const {
  if (vac.max_oscillator_number() > cfg_.max_oscillators)
    throw UnsupportedVacuum(
        "vacuum occupies " + std::to_string(vac.max_oscillator_number()) +
        " oscillators, oracle holds " + std::to_string(cfg_.max_oscillators));

  const std::size_t s = cfg_.single_dim();
  DenseVector ground = DenseVector::Zero(static_cast<Eigen::Index>(s));
  for (const auto& mode : vac.table().modes()) {
    const std::size_t m = cfg_.modes.index_of(mode.id);
    ground(static_cast<Eigen::Index>(m) * cfg_.fock_dim) =
        vac.amplitude(mode.id);
  }

  const auto& p = vac.number_distribution();
  std::vector<DenseVector> parts;
  DenseVector product = ground;
  for (int n = 1; n <= cfg_.max_oscillators; ++n) {
    auto it = p.find(n);
    const double pn = it == p.end() ? 0.0 : it->second;
    parts.push_back(std::sqrt(pn) * product);
    if (n < cfg_.max_oscillators) {
      DenseVector next(product.size() * static_cast<Eigen::Index>(s));
      for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(s); ++k)
        next.segment(k * product.size(), product.size()) =
            ground(k) * product;
      product = std::move(next);
    }
  }
  return SectorVector(std::move(parts));
}

Complex FockOracle::vev_oracle(const VacuumSpec& vac,
                               const OperatorWord& word) const {
  if (word.creator_count() >= cfg_.fock_dim)
    throw std::invalid_argument(
        "word has too many creators for this Fock truncation");
  const SectorVector vacuum = vacuum_vector(vac);
  SectorVector current = vacuum;
  for (auto it = word.factors.rbegin(); it != word.factors.rend(); ++it) {
    auto gen = generators_.find(*it);
    if (gen == generators_.end())
      throw UnknownMode("mode '" + it->mode + "' is not in the oracle config");
    current = apply(gen->second, current);
  }
  return word.coefficient * vacuum.inner(current);
}

std::pair<BlockOperator, BlockOperator> FockOracle::hamiltonians() const {
  // Translation generator: weight-1 extension of the spectral one-oscillator
  // Hamiltonian omega (n + 1/2), diagonal in the truncated basis.
  const std::size_t s = cfg_.single_dim();
  std::vector<Eigen::Triplet<Complex>> trips;
  for (std::size_t m = 0; m < cfg_.modes.size(); ++m) {
    const double omega = cfg_.modes.modes()[m].omega;
    for (int level = 0; level < cfg_.fock_dim; ++level) {
      const auto idx =
          static_cast<Eigen::Index>(m) * cfg_.fock_dim + level;
      trips.emplace_back(idx, idx, omega * (level + 0.5));
    }
  }
  SparseMatrix h_single(static_cast<Eigen::Index>(s),
                        static_cast<Eigen::Index>(s));
  h_single.setFromTriplets(trips.begin(), trips.end());
  BlockOperator h_script = extended(h_single, [](int) { return 1.0; });

  // Mode-sum field Hamiltonian from the extended non-CCR generators.
  BlockOperator h_bold = identity_op().scaled(0.0);
  for (const auto& mode : cfg_.modes.modes()) {
    const BlockOperator& a = annihilator(mode.id);
    const BlockOperator ad = a.adjoint();
    h_bold = h_bold + (ad * a + a * ad).scaled(0.5 * mode.omega);
  }
  return {std::move(h_script), std::move(h_bold)};
}

PhaseCheckResult FockOracle::heisenberg_phase_check(std::string_view id,
                                                    double t) const {
  const double omega = cfg_.modes.at(id).omega;
  const BlockOperator& a = annihilator(id);
  const auto [h_script, h_bold] = hamiltonians();
  const SectorMask mask = excitation_mask(cfg_.fock_dim - 2);

  const Complex it_scale{0.0, t};
  const BlockOperator rhs_scalar =
      a.scaled(std::exp(Complex{0.0, -omega * t}));

  PhaseCheckResult result;
  {
    const BlockOperator u = expm(h_script, it_scale);
    const BlockOperator evolved = u * a * u.adjoint();
    result.script_vs_scalar = max_abs_masked(evolved - rhs_scalar, mask);
  }
  {
    const BlockOperator u = expm(h_bold, it_scale);
    const BlockOperator evolved = u * a * u.adjoint();
    const BlockOperator rhs_unit =
        expm(unit(id), Complex{0.0, -omega * t}) * a;
    result.bold_vs_unit_phase = max_abs_masked(evolved - rhs_unit, mask);
    result.bold_vs_scalar = max_abs_masked(evolved - rhs_scalar, mask);
  }
  return result;
}

DenseVector FockOracle::coherent_single(std::size_t mode_index,
                                        Complex z) const {
  const int d = cfg_.fock_dim;
  DenseVector v = DenseVector::Zero(static_cast<Eigen::Index>(cfg_.single_dim()));
  const Eigen::Index base = static_cast<Eigen::Index>(mode_index) * d;
  Complex amplitude = std::exp(-0.5 * std::norm(z));
  for (int level = 0; level < d; ++level) {
    v(base + level) = amplitude;
    amplitude *= z / std::sqrt(static_cast<double>(level + 1));
  }
  return v;
}

CoherentState FockOracle::coherent_state(
    std::string_view id, Complex alpha,
    const std::vector<double>& sector_weights) const {
  if (sector_weights.size() >
      static_cast<std::size_t>(cfg_.max_oscillators))
    throw std::invalid_argument("more sector weights than oscillator sectors");
  double weight_norm = 0.0;
  for (double f : sector_weights) weight_norm += f * f;
  if (std::abs(weight_norm - 1.0) > 1e-9)
    throw std::invalid_argument("sector weights must be normalized");

  const std::size_t mode_index = cfg_.modes.index_of(id);
  const std::size_t s = cfg_.single_dim();

  CoherentState out;
  double kept_norm = 0.0;
  std::vector<DenseVector> parts;
  for (int n = 1; n <= cfg_.max_oscillators; ++n) {
    const double fn = n <= static_cast<int>(sector_weights.size())
                          ? sector_weights[static_cast<std::size_t>(n - 1)]
                          : 0.0;
    const auto dim = static_cast<Eigen::Index>(cfg_.sector_dim(n));
    if (fn == 0.0) {
      parts.emplace_back(DenseVector::Zero(dim));
      continue;
    }
    const Complex z = alpha / (static_cast<double>(n) * cfg_.weight(n));
    const DenseVector single = coherent_single(mode_index, z);
    DenseVector part = single;
    for (int slot = 1; slot < n; ++slot) {
      DenseVector next(part.size() * static_cast<Eigen::Index>(s));
      for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(s); ++k)
        next.segment(k * part.size(), part.size()) = single(k) * part;
      part = std::move(next);
    }
    kept_norm += fn * fn * std::pow(single.squaredNorm(), n);
    parts.push_back(fn * part);
  }
  out.state = SectorVector(std::move(parts));
  out.norm_defect = 1.0 - kept_norm;
  out.truncation_warning = out.norm_defect > kTruncationFidelity;
  return out;
}

SectorVector FockOracle::one_oscillator_superposition(
    const std::map<std::string, Complex>& mode_amplitudes,
    const std::map<std::string, Complex>& coherent_alphas) const {
  double total = 0.0;
  for (const auto& [id, phi] : mode_amplitudes) total += std::norm(phi);
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("mode amplitudes must be normalized");

  DenseVector v = DenseVector::Zero(static_cast<Eigen::Index>(cfg_.single_dim()));
  for (const auto& [id, phi] : mode_amplitudes) {
    const std::size_t m = cfg_.modes.index_of(id);
    auto it = coherent_alphas.find(id);
    const Complex alpha = it == coherent_alphas.end() ? Complex{0.0, 0.0}
                                                      : it->second;
    v += phi * coherent_single(m, alpha);
  }

  std::vector<DenseVector> parts;
  parts.push_back(std::move(v));
  for (int n = 2; n <= cfg_.max_oscillators; ++n)
    parts.emplace_back(
        DenseVector::Zero(static_cast<Eigen::Index>(cfg_.sector_dim(n))));
  return SectorVector(std::move(parts));
}

FieldAverages FockOracle::field_averages(const SectorVector& state, double t,
                                         const std::array<double, 3>& x) const {
  for (int n = 2; n <= state.sector_count(); ++n) {
    if (state.part(n).norm() > 1e-12)
      throw std::invalid_argument(
          "field averages are defined for one-oscillator sector states");
  }
  const DenseVector& v = state.part(1);

  const auto dim = static_cast<Eigen::Index>(cfg_.single_dim());
  std::array<DenseMatrix, 3> pot;
  std::array<DenseMatrix, 3> ele;
  std::array<DenseMatrix, 3> mag;
  for (int c = 0; c < 3; ++c) {
    pot[c] = DenseMatrix::Zero(dim, dim);
    ele[c] = DenseMatrix::Zero(dim, dim);
    mag[c] = DenseMatrix::Zero(dim, dim);
  }

  const Complex i_unit{0.0, 1.0};
  for (const auto& mode : cfg_.modes.modes()) {
    auto data_it = cfg_.field_data.find(mode.id);
    if (data_it == cfg_.field_data.end())
      throw std::invalid_argument("mode '" + mode.id +
                                  "' has no wave vector or polarization");
    const FieldModeData& data = data_it->second;

    const double kappa_norm =
        std::sqrt(data.wave_vector[0] * data.wave_vector[0] +
                  data.wave_vector[1] * data.wave_vector[1] +
                  data.wave_vector[2] * data.wave_vector[2]);
    if (!(kappa_norm > 0.0))
      throw std::invalid_argument("mode '" + mode.id +
                                  "' needs a nonzero wave vector");
    const std::array<double, 3> unit_kappa{data.wave_vector[0] / kappa_norm,
                                           data.wave_vector[1] / kappa_norm,
                                           data.wave_vector[2] / kappa_norm};
    const std::array<Complex, 3> pol_cross = cross(unit_kappa,
                                                   data.polarization);

    const double kappa_dot_x = data.wave_vector[0] * x[0] +
                               data.wave_vector[1] * x[1] +
                               data.wave_vector[2] * x[2];
    const Complex phase = std::exp(-i_unit * (mode.omega * t - kappa_dot_x));
    const double pot_pref = std::sqrt(1.0 / (2.0 * mode.omega * cfg_.volume));
    const double field_pref = std::sqrt(mode.omega / (2.0 * cfg_.volume));

    const DenseMatrix a = DenseMatrix(annihilator(mode.id).block(1));
    const DenseMatrix ad = a.adjoint();
    for (int c = 0; c < 3; ++c) {
      const Complex e_c = data.polarization[c];
      const Complex b_c = pol_cross[c];
      pot[c] += pot_pref * (phase * e_c * a + std::conj(phase * e_c) * ad);
      ele[c] += i_unit * field_pref *
                (phase * e_c * a - std::conj(phase * e_c) * ad);
      mag[c] += i_unit * field_pref *
                (phase * b_c * a - std::conj(phase * b_c) * ad);
    }
  }

  FieldAverages out;
  for (int c = 0; c < 3; ++c) {
    out.vector_potential[c] = (v.dot(pot[c] * v)).real();
    out.electric[c] = (v.dot(ele[c] * v)).real();
    out.magnetic[c] = (v.dot(mag[c] * v)).real();
  }
  return out;
}

SectorMask FockOracle::below_top_mask() const {
  const std::size_t s = cfg_.single_dim();
  const int d = cfg_.fock_dim;
  SectorMask mask;
  for (int n = 1; n <= cfg_.max_oscillators; ++n) {
    const std::size_t dim = cfg_.sector_dim(n);
    std::vector<char> keep(dim, 1);
    for (std::size_t idx = 0; idx < dim; ++idx) {
      std::size_t rest = idx;
      for (int slot = 0; slot < n; ++slot) {
        const int level = static_cast<int>(rest % s) % d;
        if (level == d - 1) {
          keep[idx] = 0;
          break;
        }
        rest /= s;
      }
    }
    mask.keep.push_back(std::move(keep));
  }
  return mask;
}

SectorMask FockOracle::excitation_mask(int max_total) const {
  const std::size_t s = cfg_.single_dim();
  const int d = cfg_.fock_dim;
  SectorMask mask;
  for (int n = 1; n <= cfg_.max_oscillators; ++n) {
    const std::size_t dim = cfg_.sector_dim(n);
    std::vector<char> keep(dim, 0);
    for (std::size_t idx = 0; idx < dim; ++idx) {
      std::size_t rest = idx;
      int total = 0;
      for (int slot = 0; slot < n; ++slot) {
        total += static_cast<int>(rest % s) % d;
        rest /= s;
      }
      keep[idx] = total <= max_total ? 1 : 0;
    }
    mask.keep.push_back(std::move(keep));
  }
  return mask;
}

std::map<Generator, BlockOperator> build_generators(const OracleConfig& cfg) {
  return FockOracle(cfg).generators();
}

void write_dense_matrix(std::ostream& out, const DenseMatrix& m) {
  const char magic[4] = {'N', 'C', 'Q', 'O'};
  const auto rows = static_cast<std::uint32_t>(m.rows());
  const auto cols = static_cast<std::uint32_t>(m.cols());
  const std::uint32_t reserved = 0;
  out.write(magic, 4);
  out.write(reinterpret_cast<const char*>(&rows), 4);
  out.write(reinterpret_cast<const char*>(&cols), 4);
  out.write(reinterpret_cast<const char*>(&reserved), 4);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const double re = m(r, c).real();
      const double im = m(r, c).imag();
      out.write(reinterpret_cast<const char*>(&re), 8);
      out.write(reinterpret_cast<const char*>(&im), 8);
    }
  }
}

DenseMatrix read_dense_matrix(std::istream& in) {
  char magic[4];
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::uint32_t reserved = 0;
  in.read(magic, 4);
  if (!in || std::string_view(magic, 4) != "NCQO")
    throw std::runtime_error("bad matrix dump magic");
  in.read(reinterpret_cast<char*>(&rows), 4);
  in.read(reinterpret_cast<char*>(&cols), 4);
  in.read(reinterpret_cast<char*>(&reserved), 4);
  DenseMatrix m(rows, cols);
  for (std::uint32_t r = 0; r < rows; ++r) {
    for (std::uint32_t c = 0; c < cols; ++c) {
      double re = 0.0;
      double im = 0.0;
      in.read(reinterpret_cast<char*>(&re), 8);
      in.read(reinterpret_cast<char*>(&im), 8);
      m(r, c) = {re, im};
    }
  }
  if (!in) throw std::runtime_error("truncated matrix dump");
  return m;
}

}  // namespace ncqo
