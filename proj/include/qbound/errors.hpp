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

#include <stdexcept>
#include <string>

namespace qbound {

/// Operands disagree on system size or matrix shape.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A scalar argument is outside the domain of the operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Lattice geometry cannot host the requested model.
class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense computation requested beyond the supported qubit count.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A string referenced by a constraint or objective is not in the registry.
class RegistryError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Operation was asked for an optimisation direction it does not support.
class UnsupportedDirection : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed scenario configuration or input file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qbound
