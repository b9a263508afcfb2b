// Copyright (c) 2026 the acms2d authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ACMS2D_ERRORS_HPP
#define ACMS2D_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace acms {

/// Invalid configuration or arguments (CLI exit code 1).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure: singular/near-resonant systems (CLI exit code 2).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Mesh generation or validation failure.
class MeshError : public std::runtime_error {
 public:
  explicit MeshError(const std::string& msg) : std::runtime_error(msg) {}
};

/// File format / IO failure.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace acms

#endif
