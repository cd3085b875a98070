// SPDX-License-Identifier: Apache-2.0
//
// dirbf: directional beamforming analysis for sparse mmWave MIMO channels
// Copyright (C) 2026 The dirbf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace dirbf {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Operand sizes do not match.
class DimensionError : public Error {
  public:
    using Error::Error;
};

// Input outside the domain of an operation.
class ArgumentError : public Error {
  public:
    using Error::Error;
};

// H is zero, or H f vanishes, so no beam direction is defined.
class DegenerateChannelError : public Error {
  public:
    using Error::Error;
};

// Closed form requested outside its inner-product regime.
class RegimeError : public Error {
  public:
    using Error::Error;
};

class UnsupportedError : public Error {
  public:
    using Error::Error;
};

// Work request larger than the configured cap.
class ResourceError : public Error {
  public:
    using Error::Error;
};

// Power iteration ran out of iterations. Carries the best iterate seen so the
// caller can decide whether it is good enough.
class IoError : public Error {
  public:
    using Error::Error;
};

class ConvergenceError : public Error {
  public:
    ConvergenceError(const std::string &what, CVector best, double rayleigh, int iterations)
        : Error(what), best_iterate_(std::move(best)), best_rayleigh_(rayleigh), iterations_(iterations) {}

    const CVector &best_iterate() const { return best_iterate_; }
    double best_rayleigh_quotient() const { return best_rayleigh_; }
    int iterations() const { return iterations_; }

  private:
    CVector best_iterate_;
    double best_rayleigh_;
    int iterations_;
};

} // namespace dirbf
