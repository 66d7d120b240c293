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

#include "qbound/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <sstream>

#include "qbound/errors.hpp"

namespace qbound {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t words_for(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }

PauliOp op_from_bits(bool x, bool z) {
  if (x) return z ? PauliOp::Y : PauliOp::X;
  return z ? PauliOp::Z : PauliOp::I;
}

PauliOp op_from_char(char c) {
  switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'I':
    case '_':
      return PauliOp::I;
    case 'X':
      return PauliOp::X;
    case 'Y':
      return PauliOp::Y;
    case 'Z':
      return PauliOp::Z;
    default:
      throw ShapeError(std::string("not a Pauli letter: '") + c + "'");
  }
}

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw ShapeError(std::string(what) + ": system size mismatch (" + std::to_string(a) +
                     " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

char to_char(PauliOp op) { return "IXYZ"[static_cast<int>(op)]; }

PauliString::PauliString(std::size_t num_qubits)
    : num_qubits_(num_qubits), xs_(words_for(num_qubits), 0), zs_(words_for(num_qubits), 0) {}

PauliString PauliString::from_ops(std::span<const PauliOp> ops) {
  PauliString p(ops.size());
  for (std::size_t s = 0; s < ops.size(); ++s) p.set(s, ops[s]);
  return p;
}

PauliString PauliString::from_letters(std::string_view letters) {
  PauliString p(letters.size());
  for (std::size_t s = 0; s < letters.size(); ++s) p.set(s, op_from_char(letters[s]));
  return p;
}

PauliString PauliString::parse(std::string_view text, std::size_t num_qubits) {
  PauliString p(num_qubits);
  std::string buf(text);
  std::replace(buf.begin(), buf.end(), ',', ' ');
  std::istringstream in(buf);
  std::string token;
  std::vector<std::string> tokens;
  while (in >> token) tokens.push_back(token);

  if (tokens.empty()) return p;
  if (tokens.size() == 1) {
    const auto& t = tokens.front();
    bool has_digit = std::any_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    if (!has_digit) {
      if (t == "I" || t == "i") return p;
      if (t.size() != num_qubits) {
        throw ShapeError("dense Pauli text '" + t + "' does not have " + std::to_string(num_qubits) +
                         " letters");
      }
      return from_letters(t);
    }
  }
  for (const auto& t : tokens) {
    if (t.size() < 2) throw ShapeError("malformed Pauli token '" + t + "'");
    PauliOp op = op_from_char(t[0]);
    std::size_t site = 0;
    try {
      std::size_t used = 0;
      site = std::stoul(t.substr(1), &used);
      if (used != t.size() - 1) throw std::invalid_argument(t);
    } catch (const std::exception&) {
      throw ShapeError("malformed Pauli token '" + t + "'");
    }
    if (site < 1 || site > num_qubits) {
      throw ShapeError("site index out of range in '" + t + "' for " + std::to_string(num_qubits) +
                       " qubits");
    }
    if (p.op(site - 1) != PauliOp::I) throw ShapeError("site repeated in Pauli text '" + std::string(text) + "'");
    p.set(site - 1, op);
  }
  return p;
}

PauliString PauliString::single(std::size_t num_qubits, std::size_t site, PauliOp op) {
  PauliString p(num_qubits);
  p.set(site, op);
  return p;
}

PauliString PauliString::from_words(std::size_t num_qubits, std::vector<std::uint64_t> xs,
                                    std::vector<std::uint64_t> zs) {
  if (xs.size() != words_for(num_qubits) || zs.size() != xs.size()) {
    throw ShapeError("bit-plane length does not match qubit count");
  }
  PauliString p;
  p.num_qubits_ = num_qubits;
  p.xs_ = std::move(xs);
  p.zs_ = std::move(zs);
  return p;
}

PauliOp PauliString::op(std::size_t site) const {
  if (site >= num_qubits_) throw ShapeError("site out of range");
  std::uint64_t bit = std::uint64_t{1} << (site % kWordBits);
  std::size_t w = site / kWordBits;
  return op_from_bits(xs_[w] & bit, zs_[w] & bit);
}

void PauliString::set(std::size_t site, PauliOp op) {
  if (site >= num_qubits_) throw ShapeError("site out of range");
  std::uint64_t bit = std::uint64_t{1} << (site % kWordBits);
  std::size_t w = site / kWordBits;
  bool x = op == PauliOp::X || op == PauliOp::Y;
  bool z = op == PauliOp::Z || op == PauliOp::Y;
  xs_[w] = x ? (xs_[w] | bit) : (xs_[w] & ~bit);
  zs_[w] = z ? (zs_[w] | bit) : (zs_[w] & ~bit);
}

std::size_t PauliString::weight() const {
  std::size_t w = 0;
  for (std::size_t i = 0; i < xs_.size(); ++i) w += std::popcount(xs_[i] | zs_[i]);
  return w;
}

std::size_t PauliString::y_count() const {
  std::size_t w = 0;
  for (std::size_t i = 0; i < xs_.size(); ++i) w += std::popcount(xs_[i] & zs_[i]);
  return w;
}

bool PauliString::is_identity() const {
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (xs_[i] | zs_[i]) return false;
  }
  return true;
}

bool PauliString::commutes_with(const PauliString& other) const {
  require_same_size(num_qubits_, other.num_qubits_, "commutes_with");
  std::size_t odd = 0;
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    odd += std::popcount((xs_[i] & other.zs_[i]) ^ (zs_[i] & other.xs_[i]));
  }
  return odd % 2 == 0;
}

std::vector<std::size_t> PauliString::support() const {
  std::vector<std::size_t> sites;
  for (std::size_t w = 0; w < xs_.size(); ++w) {
    std::uint64_t bits = xs_[w] | zs_[w];
    while (bits) {
      sites.push_back(w * kWordBits + std::countr_zero(bits));
      bits &= bits - 1;
    }
  }
  return sites;
}

std::string PauliString::str() const {
  std::string out;
  for (std::size_t s : support()) {
    if (!out.empty()) out += ' ';
    out += to_char(op(s));
    out += std::to_string(s + 1);
  }
  return out.empty() ? "I" : out;
}

std::string PauliString::letters() const {
  std::string out(num_qubits_, 'I');
  for (std::size_t s : support()) out[s] = to_char(op(s));
  return out;
}

std::uint64_t PauliString::x_mask_msb() const {
  std::uint64_t mask = 0;
  for (std::size_t s : support()) {
    PauliOp o = op(s);
    if (o == PauliOp::X || o == PauliOp::Y) mask |= std::uint64_t{1} << (num_qubits_ - 1 - s);
  }
  return mask;
}

std::uint64_t PauliString::z_mask_msb() const {
  std::uint64_t mask = 0;
  for (std::size_t s : support()) {
    PauliOp o = op(s);
    if (o == PauliOp::Z || o == PauliOp::Y) mask |= std::uint64_t{1} << (num_qubits_ - 1 - s);
  }
  return mask;
}

std::size_t PauliString::hash() const {
  std::size_t h = std::hash<std::size_t>{}(num_qubits_);
  auto mix = [&h](std::uint64_t v) {
    h ^= std::hash<std::uint64_t>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    mix(xs_[i]);
    mix(zs_[i]);
  }
  return h;
}

std::strong_ordering operator<=>(const PauliString& a, const PauliString& b) {
  if (a.num_qubits_ != b.num_qubits_) return a.num_qubits_ <=> b.num_qubits_;
  for (std::size_t w = 0; w < a.xs_.size(); ++w) {
    std::uint64_t diff = (a.xs_[w] ^ b.xs_[w]) | (a.zs_[w] ^ b.zs_[w]);
    if (!diff) continue;
    std::uint64_t bit = std::uint64_t{1} << std::countr_zero(diff);
    auto ra = static_cast<int>(op_from_bits(a.xs_[w] & bit, a.zs_[w] & bit));
    auto rb = static_cast<int>(op_from_bits(b.xs_[w] & bit, b.zs_[w] & bit));
    return ra <=> rb;
  }
  return std::strong_ordering::equal;
}

Complex Phase::value() const {
  switch (exponent & 3) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

PhasedString multiply(const PauliString& a, const PauliString& b) {
  require_same_size(a.size(), b.size(), "multiply");
  const auto ax = a.x_words(), az = a.z_words(), bx = b.x_words(), bz = b.z_words();
  std::vector<std::uint64_t> xs(ax.size()), zs(ax.size());
  // Per site σ(x,z) = i^{xz} X^x Z^z; moving Z^{z1} past X^{x2} costs (−1)^{z1 x2}.
  long k = 0;
  for (std::size_t w = 0; w < ax.size(); ++w) {
    xs[w] = ax[w] ^ bx[w];
    zs[w] = az[w] ^ bz[w];
    k += std::popcount(ax[w] & az[w]);
    k += std::popcount(bx[w] & bz[w]);
    k += 2 * std::popcount(az[w] & bx[w]);
    k -= std::popcount(xs[w] & zs[w]);
  }
  Phase phase{static_cast<std::uint8_t>(((k % 4) + 4) % 4)};
  return {phase, PauliString::from_words(a.size(), std::move(xs), std::move(zs))};
}

// ---------------------------------------------------------------------------
// OperatorPoly

OperatorPoly::OperatorPoly(const PauliString& p, Complex coeff) : num_qubits_(p.size()) {
  add_term(p, coeff);
}

OperatorPoly OperatorPoly::identity(std::size_t num_qubits, Complex coeff) {
  return OperatorPoly(PauliString(num_qubits), coeff);
}

Complex OperatorPoly::coeff(const PauliString& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? Complex{} : it->second;
}

void OperatorPoly::add_term(const PauliString& p, Complex coeff) {
  require_same_size(num_qubits_, p.size(), "add_term");
  auto [it, inserted] = terms_.try_emplace(p, coeff);
  if (!inserted) it->second += coeff;
  if (std::abs(it->second) <= kDropTolerance) terms_.erase(it);
}

OperatorPoly& OperatorPoly::operator+=(const OperatorPoly& other) {
  require_same_size(num_qubits_, other.num_qubits_, "add");
  for (const auto& [p, c] : other.terms_) add_term(p, c);
  return *this;
}

OperatorPoly& OperatorPoly::operator-=(const OperatorPoly& other) {
  require_same_size(num_qubits_, other.num_qubits_, "subtract");
  for (const auto& [p, c] : other.terms_) add_term(p, -c);
  return *this;
}

OperatorPoly& OperatorPoly::operator*=(Complex s) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    if (std::abs(it->second) <= kDropTolerance) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

OperatorPoly operator*(const OperatorPoly& a, const OperatorPoly& b) {
  require_same_size(a.size(), b.size(), "multiply_poly");
  // Accumulate unpruned so that partial cancellation residue is judged once.
  std::map<PauliString, Complex> acc;
  for (const auto& [pa, ca] : a.terms()) {
    for (const auto& [pb, cb] : b.terms()) {
      auto prod = multiply(pa, pb);
      acc[prod.string] += ca * cb * prod.phase.value();
    }
  }
  OperatorPoly out(a.size());
  for (const auto& [p, c] : acc) out.add_term(p, c);
  return out;
}

bool OperatorPoly::is_hermitian(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [tol](const auto& kv) { return std::abs(kv.second.imag()) <= tol; });
}

double OperatorPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [p, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

OperatorPoly add(const OperatorPoly& a, const OperatorPoly& b) { return a + b; }

OperatorPoly scale(const OperatorPoly& a, Complex s) { return a * s; }

OperatorPoly conjugate_transpose(const OperatorPoly& a) {
  OperatorPoly out(a.size());
  for (const auto& [p, c] : a.terms()) out.add_term(p, std::conj(c));
  return out;
}

OperatorPoly multiply_poly(const OperatorPoly& a, const OperatorPoly& b) { return a * b; }

OperatorPoly commutator(const OperatorPoly& h, const PauliString& p) {
  require_same_size(h.size(), p.size(), "commutator");
  OperatorPoly out(h.size());
  for (const auto& [q, c] : h.terms()) {
    if (q.commutes_with(p)) continue;
    auto prod = multiply(q, p);
    out.add_term(prod.string, 2.0 * c * prod.phase.value());
  }
  return out;
}

OperatorPoly commutator(const OperatorPoly& a, const OperatorPoly& b) { return a * b - b * a; }

OperatorPoly anticommutator(const OperatorPoly& a, const OperatorPoly& b) { return a * b + b * a; }

nlohmann::json to_json(const OperatorPoly& poly) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [p, c] : poly.terms()) terms.push_back({c.real(), c.imag(), p.str()});
  return {{"num_qubits", poly.size()}, {"terms", terms}};
}

OperatorPoly poly_from_json(const nlohmann::json& j) {
  try {
    std::size_t n = j.at("num_qubits").get<std::size_t>();
    OperatorPoly out(n);
    for (const auto& t : j.at("terms")) {
      if (t.size() == 2) {
        out.add_term(PauliString::parse(t[1].get<std::string>(), n), t[0].get<double>());
      } else {
        out.add_term(PauliString::parse(t[2].get<std::string>(), n),
                     Complex(t[0].get<double>(), t[1].get<double>()));
      }
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed operator polynomial JSON: ") + e.what());
  }
}

}  // namespace qbound
