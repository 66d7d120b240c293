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


#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "qbound/models.hpp"
#include "qbound/pauli.hpp"

namespace qbound {

/// Membership flags of a registered moment. A moment may belong to several.
enum class IndexSet : std::uint8_t {
  objective = 1U << 0,   ///< appears in the objective
  positivity = 1U << 1,  ///< appears in a PSD block
  measured = 1U << 2,    ///< carries a measurement band
  guarantee = 1U << 3,   ///< appears in a linear guarantee (steady state, symmetry)
};

struct IndexSetSizes {
  std::size_t variables = 0;  ///< free moments, identity excluded
  std::size_t objective = 0;
  std::size_t positivity = 0;
  std::size_t measured = 0;
  std::size_t guarantee = 0;
};

/// Bijection between Pauli strings and moment indices. Index 0 is always the
/// identity, whose moment is the constant 1. Strings keep the index of their
/// first registration.
class MomentRegistry {
 public:
  static constexpr std::size_t kIdentity = 0;

  explicit MomentRegistry(std::size_t num_qubits);

  std::size_t num_qubits() const { return num_qubits_; }
  /// Registered strings including the identity.
  std::size_t size() const { return strings_.size(); }

  /// Registers `p` (if new), adds it to `set`, and returns its index.
  /// Frequency counts are not touched.
  std::size_t intern(const PauliString& p, IndexSet set);
  /// Registers every term of `poly` into `set` and counts one occurrence per
  /// string. The identity term is ignored.
  void note(const OperatorPoly& poly, IndexSet set);
  void count(std::size_t index, std::size_t times = 1);

  std::optional<std::size_t> find(const PauliString& p) const;
  /// Throws RegistryError for unregistered strings.
  std::size_t index_of(const PauliString& p) const;
  const PauliString& string(std::size_t index) const { return strings_.at(index); }
  const std::vector<PauliString>& strings() const { return strings_; }

  bool in_set(std::size_t index, IndexSet set) const;
  std::uint8_t flags(std::size_t index) const { return flags_.at(index); }
  std::size_t frequency(std::size_t index) const { return frequency_.at(index); }
  IndexSetSizes sizes() const;

  /// After freezing, registering a new string throws RegistryError. Flags and
  /// counts of known strings may still be updated by copies.
  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }

  nlohmann::json to_json() const;

 private:
  std::size_t num_qubits_;
  std::vector<PauliString> strings_;
  std::vector<std::uint8_t> flags_;
  std::vector<std::size_t> frequency_;
  std::unordered_map<PauliString, std::size_t, PauliStringHash> index_;
  bool frozen_ = false;
};

enum class Relation { equal, less_equal, greater_equal };

/// Σ coeff · y[moment] (relation) rhs over non-identity moments.
struct LinearMomentConstraint {
  std::vector<std::pair<std::size_t, double>> terms;
  double rhs = 0.0;
  Relation relation = Relation::equal;
};

/// Converts ⟨poly⟩ (relation) rhs into moment form. The identity coefficient
/// moves to the right-hand side. Throws DomainError on complex coefficients
/// and RegistryError on unregistered strings.
LinearMomentConstraint to_linear(const OperatorPoly& poly, const MomentRegistry& registry,
                                 Relation relation, double rhs);

/// Breadth-first steady-state constraints ⟨L†(P)⟩ = 0 starting from `seeds`.
/// Strings of each image are enqueued in canonical order when first seen.
/// Images that vanish or reduce to the identity are skipped and do not count
/// toward `budget`.
std::vector<LinearMomentConstraint> generate_steady_constraints(
    const LindbladModel& model, std::span<const PauliString> seeds, std::size_t budget,
    MomentRegistry& registry);

struct BasisSelection {
  std::vector<PauliString> basis;  ///< identity first
  bool truncated = false;          ///< fewer strings registered than requested
};

/// Identity plus the `size − 1` most frequent registered strings, ties broken
/// by canonical order.
BasisSelection select_moment_basis(const MomentRegistry& registry, std::size_t size);

/// One nonzero contribution coeff · y[moment] to cell (row, col). Moment 0 is
/// the constant part.
struct MatrixEntry {
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  std::size_t moment = 0;
  Complex coeff;
};

/// Symbolic Hermitian block M = B + Σ_α A_α y_α.
struct MomentMatrixSpec {
  enum class Kind { moment_matrix, reduced_density };

  Kind kind = Kind::moment_matrix;
  std::size_t dim = 0;
  std::vector<PauliString> basis;  ///< rows of a moment matrix
  std::vector<std::size_t> sites;  ///< kept sites of a reduced density block
  std::vector<MatrixEntry> entries;
  /// Per row: true when conjugation maps the row to −i times itself under the
  /// real reduction (odd number of Y letters in the basis string).
  std::vector<bool> odd_rows;

  /// For moment matrices, cell (r, c) holds exactly one entry.
  const MatrixEntry& cell(std::size_t r, std::size_t c) const;
  Eigen::MatrixXcd constant_matrix() const;
  Eigen::MatrixXcd coefficient_matrix(std::size_t moment) const;
  /// Distinct non-identity moments, ascending.
  std::vector<std::size_t> moments() const;
  /// M evaluated at moment values indexed by registry position (y[0] ignored).
  Eigen::MatrixXcd evaluate(std::span<const double> values) const;
};

/// Moment matrix with (r, c) = ⟨P_r P_c⟩. Products are registered as positivity
/// moments and each upper-triangle cell counts one occurrence of its string.
/// Throws ShapeError on duplicate basis strings.
MomentMatrixSpec build_moment_matrix(std::span<const PauliString> basis, MomentRegistry& registry);

inline constexpr std::size_t kDefaultMaxRdmSites = 3;

/// ρ_A = (1/d_A) Σ_Q ⟨Q⟩ Q over all 4^k strings supported on `sites`. The
/// kept sites are ordered ascending, the first one most significant.
MomentMatrixSpec build_rdm_block(std::span<const std::size_t> sites, MomentRegistry& registry,
                                 std::size_t max_sites = kDefaultMaxRdmSites);

/// ⟨expr⟩ = 0 for a Hermitian expression; registers its strings as guarantees.
LinearMomentConstraint add_symmetry_constraint(const OperatorPoly& expr, MomentRegistry& registry);

/// lower ≤ ⟨H⟩ ≤ upper as two inequalities.
std::vector<LinearMomentConstraint> energy_shell(const OperatorPoly& hamiltonian, double lower,
                                                 double upper, MomentRegistry& registry);

nlohmann::json to_json(const LinearMomentConstraint& c, const MomentRegistry& registry);
nlohmann::json to_json(const MomentMatrixSpec& spec);

}  // namespace qbound
