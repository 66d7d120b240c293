// Copyright 2026 The qbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "qbound/relax.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <string>
#include <unordered_set>

#include "qbound/errors.hpp"

namespace qbound {

namespace {

constexpr std::uint8_t bit(IndexSet s) { return static_cast<std::uint8_t>(s); }

double real_coefficient(Complex c, const PauliString& p) {
  const double scale = std::max(1.0, std::abs(c));
  if (std::abs(c.imag()) > 1e-12 * scale) {
    throw DomainError("moment constraint has a complex coefficient on " + p.str());
  }
  return c.real();
}

}  // namespace

MomentRegistry::MomentRegistry(std::size_t num_qubits) : num_qubits_(num_qubits) {
  strings_.emplace_back(num_qubits);
  flags_.push_back(0);
  frequency_.push_back(0);
  index_.emplace(strings_.front(), kIdentity);
}

std::size_t MomentRegistry::intern(const PauliString& p, IndexSet set) {
  if (p.size() != num_qubits_) throw ShapeError("registry: string size mismatch");
  auto it = index_.find(p);
  std::size_t idx;
  if (it != index_.end()) {
    idx = it->second;
  } else {
    if (frozen_) throw RegistryError("registry is frozen; cannot add " + p.str());
    idx = strings_.size();
    strings_.push_back(p);
    flags_.push_back(0);
    frequency_.push_back(0);
    index_.emplace(p, idx);
  }
  if (idx != kIdentity) flags_[idx] |= bit(set);
  return idx;
}

void MomentRegistry::note(const OperatorPoly& poly, IndexSet set) {
  if (poly.size() != num_qubits_) throw ShapeError("registry: polynomial size mismatch");
  for (const auto& [p, c] : poly.terms()) {
    if (p.is_identity()) continue;
    count(intern(p, set));
  }
}

void MomentRegistry::count(std::size_t index, std::size_t times) {
  if (index == kIdentity) return;
  frequency_.at(index) += times;
}

std::optional<std::size_t> MomentRegistry::find(const PauliString& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t MomentRegistry::index_of(const PauliString& p) const {
  auto idx = find(p);
  if (!idx) throw RegistryError("unregistered Pauli string " + p.str());
  return *idx;
}

bool MomentRegistry::in_set(std::size_t index, IndexSet set) const {
  return (flags_.at(index) & bit(set)) != 0;
}

IndexSetSizes MomentRegistry::sizes() const {
  IndexSetSizes s;
  s.variables = size() - 1;
  for (std::size_t i = 1; i < size(); ++i) {
    s.objective += in_set(i, IndexSet::objective) ? 1 : 0;
    s.positivity += in_set(i, IndexSet::positivity) ? 1 : 0;
    s.measured += in_set(i, IndexSet::measured) ? 1 : 0;
    s.guarantee += in_set(i, IndexSet::guarantee) ? 1 : 0;
  }
  return s;
}

nlohmann::json MomentRegistry::to_json() const {
  nlohmann::json moments = nlohmann::json::array();
  for (std::size_t i = 0; i < size(); ++i) {
    nlohmann::json sets = nlohmann::json::array();
    if (in_set(i, IndexSet::objective)) sets.push_back("objective");
    if (in_set(i, IndexSet::positivity)) sets.push_back("positivity");
    if (in_set(i, IndexSet::measured)) sets.push_back("measured");
    if (in_set(i, IndexSet::guarantee)) sets.push_back("guarantee");
    moments.push_back({{"index", i}, {"string", strings_[i].str()}, {"sets", sets},
                       {"frequency", frequency_[i]}});
  }
  const auto s = sizes();
  return {{"num_qubits", num_qubits_},
          {"sizes",
           {{"variables", s.variables},
            {"objective", s.objective},
            {"positivity", s.positivity},
            {"measured", s.measured},
            {"guarantee", s.guarantee}}},
          {"moments", moments}};
}

LinearMomentConstraint to_linear(const OperatorPoly& poly, const MomentRegistry& registry,
                                 Relation relation, double rhs) {
  LinearMomentConstraint out;
  out.relation = relation;
  out.rhs = rhs;
  for (const auto& [p, c] : poly.terms()) {
    const double v = real_coefficient(c, p);
    if (p.is_identity()) {
      out.rhs -= v;
    } else {
      out.terms.emplace_back(registry.index_of(p), v);
    }
  }
  std::sort(out.terms.begin(), out.terms.end());
  return out;
}

std::vector<LinearMomentConstraint> generate_steady_constraints(
    const LindbladModel& model, std::span<const PauliString> seeds, std::size_t budget,
    MomentRegistry& registry) {
  if (budget < 1) throw DomainError("steady-state constraint budget must be >= 1");
  model.validate();
  std::deque<PauliString> queue;
  std::unordered_set<PauliString, PauliStringHash> seen;
  for (const auto& s : seeds) {
    if (s.size() != model.num_qubits()) throw ShapeError("seed size mismatch");
    if (seen.insert(s).second) queue.push_back(s);
  }
  std::vector<LinearMomentConstraint> out;
  while (!queue.empty() && out.size() < budget) {
    PauliString p = std::move(queue.front());
    queue.pop_front();
    if (p.is_identity()) continue;
    OperatorPoly image = adjoint_lindblad_apply(model, p);
    bool has_moment = false;
    for (const auto& [q, c] : image.terms()) has_moment = has_moment || !q.is_identity();
    if (!has_moment) continue;
    registry.note(image, IndexSet::guarantee);
    out.push_back(to_linear(image, registry, Relation::equal, 0.0));
    for (const auto& [q, c] : image.terms()) {
      if (!q.is_identity() && seen.insert(q).second) queue.push_back(q);
    }
  }
  return out;
}

BasisSelection select_moment_basis(const MomentRegistry& registry, std::size_t size) {
  if (size < 1) throw DomainError("moment basis size must be >= 1");
  std::vector<std::size_t> order;
  order.reserve(registry.size());
  for (std::size_t i = 1; i < registry.size(); ++i) order.push_back(i);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (registry.frequency(a) != registry.frequency(b)) {
      return registry.frequency(a) > registry.frequency(b);
    }
    return registry.string(a) < registry.string(b);
  });
  BasisSelection out;
  out.basis.push_back(registry.string(MomentRegistry::kIdentity));
  const std::size_t take = std::min(size - 1, order.size());
  for (std::size_t k = 0; k < take; ++k) out.basis.push_back(registry.string(order[k]));
  out.truncated = take < size - 1;
  return out;
}

const MatrixEntry& MomentMatrixSpec::cell(std::size_t r, std::size_t c) const {
  if (kind != Kind::moment_matrix) throw ShapeError("cell() is defined for moment matrices only");
  return entries.at(r * dim + c);
}

Eigen::MatrixXcd MomentMatrixSpec::constant_matrix() const { return coefficient_matrix(0); }

Eigen::MatrixXcd MomentMatrixSpec::coefficient_matrix(std::size_t moment) const {
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& e : entries) {
    if (e.moment == moment) m(e.row, e.col) += e.coeff;
  }
  return m;
}

std::vector<std::size_t> MomentMatrixSpec::moments() const {
  std::vector<std::size_t> out;
  for (const auto& e : entries) {
    if (e.moment != 0) out.push_back(e.moment);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Eigen::MatrixXcd MomentMatrixSpec::evaluate(std::span<const double> values) const {
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& e : entries) {
    const double y = e.moment == 0 ? 1.0 : values[e.moment];
    m(e.row, e.col) += e.coeff * y;
  }
  return m;
}

MomentMatrixSpec build_moment_matrix(std::span<const PauliString> basis, MomentRegistry& registry) {
  {
    std::unordered_set<PauliString, PauliStringHash> distinct(basis.begin(), basis.end());
    if (distinct.size() != basis.size()) throw ShapeError("moment basis has duplicate strings");
  }
  MomentMatrixSpec spec;
  spec.kind = MomentMatrixSpec::Kind::moment_matrix;
  spec.dim = basis.size();
  spec.basis.assign(basis.begin(), basis.end());
  spec.entries.reserve(spec.dim * spec.dim);
  spec.odd_rows.reserve(spec.dim);
  for (const auto& b : basis) spec.odd_rows.push_back(!b.is_real_matrix());

  for (std::size_t r = 0; r < spec.dim; ++r) {
    for (std::size_t c = 0; c < spec.dim; ++c) {
      PhasedString prod = multiply(basis[r], basis[c]);
      const std::size_t m = registry.intern(prod.string, IndexSet::positivity);
      if (r < c) registry.count(m);
      spec.entries.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c), m,
                              prod.phase.value()});
    }
  }
  for (std::size_t r = 0; r < spec.dim; ++r) {
    for (std::size_t c = r + 1; c < spec.dim; ++c) {
      const auto& a = spec.cell(r, c);
      const auto& b = spec.cell(c, r);
      if (a.moment != b.moment || std::abs(a.coeff - std::conj(b.coeff)) > 0.0) {
        throw DomainError("moment matrix is not Hermitian at (" + std::to_string(r) + ", " +
                          std::to_string(c) + ")");
      }
    }
  }
  return spec;
}

MomentMatrixSpec build_rdm_block(std::span<const std::size_t> sites, MomentRegistry& registry,
                                 std::size_t max_sites) {
  const std::size_t n = registry.num_qubits();
  const std::size_t k = sites.size();
  if (k == 0) throw ShapeError("reduced density block needs at least one site");
  if (k > max_sites) {
    throw SizeLimitError("reduced density block on " + std::to_string(k) +
                         " sites exceeds the limit of " + std::to_string(max_sites));
  }
  std::vector<std::size_t> kept(sites.begin(), sites.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw ShapeError("reduced density block has repeated sites");
  }
  if (kept.back() >= n) throw ShapeError("reduced density block site out of range");

  MomentMatrixSpec spec;
  spec.kind = MomentMatrixSpec::Kind::reduced_density;
  spec.dim = std::size_t{1} << k;
  spec.sites = kept;
  spec.odd_rows.assign(spec.dim, false);
  const double scale = 1.0 / static_cast<double>(spec.dim);
  const Complex i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

  const std::size_t num_local = std::size_t{1} << (2 * k);
  for (std::size_t code = 0; code < num_local; ++code) {
    PauliString q(n);
    std::uint64_t x = 0, z = 0;
    std::size_t ys = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const auto op = static_cast<PauliOp>((code >> (2 * (k - 1 - i))) & 3U);
      q.set(kept[i], op);
      const std::uint64_t b = std::uint64_t{1} << (k - 1 - i);
      if (op == PauliOp::X || op == PauliOp::Y) x |= b;
      if (op == PauliOp::Z || op == PauliOp::Y) z |= b;
      ys += op == PauliOp::Y ? 1 : 0;
    }
    const std::size_t m = registry.intern(q, IndexSet::positivity);
    registry.count(m);
    for (std::uint64_t col = 0; col < spec.dim; ++col) {
      const double sign = (std::popcount(col & z) & 1) ? -1.0 : 1.0;
      spec.entries.push_back({static_cast<std::uint32_t>(col ^ x), static_cast<std::uint32_t>(col),
                              m, i_pow[ys & 3U] * (sign * scale)});
    }
  }
  return spec;
}

LinearMomentConstraint add_symmetry_constraint(const OperatorPoly& expr, MomentRegistry& registry) {
  if (!expr.is_hermitian()) throw DomainError("symmetry constraint expression must be Hermitian");
  registry.note(expr, IndexSet::guarantee);
  auto c = to_linear(expr, registry, Relation::equal, 0.0);
  if (c.terms.empty()) throw DomainError("symmetry constraint has no moment terms");
  return c;
}

std::vector<LinearMomentConstraint> energy_shell(const OperatorPoly& hamiltonian, double lower,
                                                 double upper, MomentRegistry& registry) {
  if (!(lower <= upper)) throw DomainError("energy shell needs lower <= upper");
  if (!hamiltonian.is_hermitian()) throw DomainError("energy shell Hamiltonian must be Hermitian");
  registry.note(hamiltonian, IndexSet::guarantee);
  return {to_linear(hamiltonian, registry, Relation::greater_equal, lower),
          to_linear(hamiltonian, registry, Relation::less_equal, upper)};
}

nlohmann::json to_json(const LinearMomentConstraint& c, const MomentRegistry& registry) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, v] : c.terms) terms.push_back({v, registry.string(m).str()});
  const char* rel = c.relation == Relation::equal        ? "=="
                    : c.relation == Relation::less_equal ? "<="
                                                         : ">=";
  return {{"terms", terms}, {"relation", rel}, {"rhs", c.rhs}};
}

nlohmann::json to_json(const MomentMatrixSpec& spec) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : spec.entries) {
    entries.push_back({e.row, e.col, e.moment, e.coeff.real(), e.coeff.imag()});
  }
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& b : spec.basis) basis.push_back(b.str());
  return {{"kind", spec.kind == MomentMatrixSpec::Kind::moment_matrix ? "moment_matrix"
                                                                      : "reduced_density"},
          {"dim", spec.dim},
          {"basis", basis},
          {"sites", spec.sites},
          {"entries", entries}};
}

}  // namespace qbound
