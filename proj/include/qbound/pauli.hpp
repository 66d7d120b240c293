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

#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace qbound {

using Complex = std::complex<double>;

/// Single-site Pauli letter. The numeric value is the canonical rank
/// (I < X < Y < Z).
enum class PauliOp : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(PauliOp op);

/**
 * Multi-qubit Pauli word stored in symplectic form: one x bit-plane and one
 * z bit-plane, site `s` at bit `s % 64` of word `s / 64`.
 *
 * Letters map to (x, z) as I=(0,0), X=(1,0), Y=(1,1), Z=(0,1). Ordering is
 * site-major lexicographic with I < X < Y < Z, so the first differing site
 * decides.
 */
class PauliString {
 public:
  PauliString() = default;
  /// Identity on `num_qubits` sites.
  explicit PauliString(std::size_t num_qubits);

  static PauliString from_ops(std::span<const PauliOp> ops);
  /// Dense letter form, one character per site: "IXYZ".
  static PauliString from_letters(std::string_view letters);
  /// Sparse text form with 1-based sites: "X1 Y3". "I" or "" is the identity.
  /// Dense letter form of length `num_qubits` is accepted as well.
  static PauliString parse(std::string_view text, std::size_t num_qubits);
  /// Letter `op` on one site, identity elsewhere (0-based site).
  static PauliString single(std::size_t num_qubits, std::size_t site, PauliOp op);
  /// Raw bit-planes; bits beyond `num_qubits` must be clear.
  static PauliString from_words(std::size_t num_qubits, std::vector<std::uint64_t> xs,
                                std::vector<std::uint64_t> zs);

  std::size_t size() const { return num_qubits_; }
  std::size_t num_words() const { return xs_.size(); }

  PauliOp op(std::size_t site) const;
  void set(std::size_t site, PauliOp op);

  /// Number of non-identity sites.
  std::size_t weight() const;
  std::size_t y_count() const;
  bool is_identity() const;
  /// Pauli matrices with an odd number of Y factors are purely imaginary.
  bool is_real_matrix() const { return y_count() % 2 == 0; }
  bool commutes_with(const PauliString& other) const;
  /// Sites carrying a non-identity letter, ascending.
  std::vector<std::size_t> support() const;

  /// "X1 Y3"; the identity prints as "I".
  std::string str() const;
  /// "XIYI"
  std::string letters() const;

  std::span<const std::uint64_t> x_words() const { return xs_; }
  std::span<const std::uint64_t> z_words() const { return zs_; }
  /// Bit masks over basis-state indices, with site 0 as the most significant
  /// bit. Only meaningful for n <= 63.
  std::uint64_t x_mask_msb() const;
  std::uint64_t z_mask_msb() const;

  std::size_t hash() const;

  friend bool operator==(const PauliString& a, const PauliString& b) = default;
  friend std::strong_ordering operator<=>(const PauliString& a, const PauliString& b);

 private:
  std::size_t num_qubits_ = 0;
  std::vector<std::uint64_t> xs_;
  std::vector<std::uint64_t> zs_;
};

struct PauliStringHash {
  std::size_t operator()(const PauliString& p) const noexcept { return p.hash(); }
};

/// Fourth root of unity i^k.
struct Phase {
  std::uint8_t exponent = 0;

  static constexpr Phase one() { return {0}; }
  static constexpr Phase i() { return {1}; }
  static constexpr Phase minus_one() { return {2}; }
  static constexpr Phase minus_i() { return {3}; }

  Complex value() const;
  Phase conj() const { return {static_cast<std::uint8_t>((4 - exponent) & 3)}; }
  bool is_real() const { return (exponent & 1) == 0; }

  friend Phase operator*(Phase a, Phase b) {
    return {static_cast<std::uint8_t>((a.exponent + b.exponent) & 3)};
  }
  friend bool operator==(Phase a, Phase b) = default;
};

struct PhasedString {
  Phase phase;
  PauliString string;

  friend bool operator==(const PhasedString& a, const PhasedString& b) = default;
};

/// a·b = phase·c. Throws ShapeError on length mismatch.
PhasedString multiply(const PauliString& a, const PauliString& b);

/**
 * Sparse complex combination of Pauli strings on a fixed number of qubits.
 *
 * Terms are kept in canonical string order; any coefficient whose modulus
 * drops to `kDropTolerance` or below after arithmetic is erased.
 */
class OperatorPoly {
 public:
  static constexpr double kDropTolerance = 1e-14;
  using TermMap = std::map<PauliString, Complex>;

  OperatorPoly() = default;
  explicit OperatorPoly(std::size_t num_qubits) : num_qubits_(num_qubits) {}
  OperatorPoly(const PauliString& p, Complex coeff = 1.0);

  static OperatorPoly identity(std::size_t num_qubits, Complex coeff = 1.0);

  std::size_t size() const { return num_qubits_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  /// Coefficient of `p`, zero when absent.
  Complex coeff(const PauliString& p) const;

  /// Accumulates `coeff` onto `p`, pruning the entry if it cancels.
  void add_term(const PauliString& p, Complex coeff);

  OperatorPoly& operator+=(const OperatorPoly& other);
  OperatorPoly& operator-=(const OperatorPoly& other);
  OperatorPoly& operator*=(Complex s);

  friend OperatorPoly operator+(OperatorPoly a, const OperatorPoly& b) { return a += b; }
  friend OperatorPoly operator-(OperatorPoly a, const OperatorPoly& b) { return a -= b; }
  friend OperatorPoly operator*(OperatorPoly a, Complex s) { return a *= s; }
  friend OperatorPoly operator*(Complex s, OperatorPoly a) { return a *= s; }
  friend OperatorPoly operator*(const OperatorPoly& a, const OperatorPoly& b);

  /// Hermitian iff every coefficient is real (within `tol`).
  bool is_hermitian(double tol = 1e-12) const;
  /// Largest |coefficient|, 0 for the empty polynomial.
  double max_abs_coeff() const;

  friend bool operator==(const OperatorPoly& a, const OperatorPoly& b) = default;

 private:
  std::size_t num_qubits_ = 0;
  TermMap terms_;
};

OperatorPoly add(const OperatorPoly& a, const OperatorPoly& b);
OperatorPoly scale(const OperatorPoly& a, Complex s);
/// Hermitian adjoint: coefficients conjugated, strings unchanged.
OperatorPoly conjugate_transpose(const OperatorPoly& a);
OperatorPoly multiply_poly(const OperatorPoly& a, const OperatorPoly& b);
/// [H, P] = HP − PH. Only anticommuting terms survive, each with 2·h·phase.
OperatorPoly commutator(const OperatorPoly& h, const PauliString& p);
OperatorPoly commutator(const OperatorPoly& a, const OperatorPoly& b);
OperatorPoly anticommutator(const OperatorPoly& a, const OperatorPoly& b);

/// JSON list of [re, im, "X1 Y2"] triples plus the qubit count.
nlohmann::json to_json(const OperatorPoly& poly);
OperatorPoly poly_from_json(const nlohmann::json& j);

}  // namespace qbound

template <>
struct std::hash<qbound::PauliString> {
  std::size_t operator()(const qbound::PauliString& p) const noexcept { return p.hash(); }
};
