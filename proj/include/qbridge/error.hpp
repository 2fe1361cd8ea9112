// Copyright 2026 The qbridge Authors
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

#ifndef QBRIDGE_ERROR_HPP_
#define QBRIDGE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace qbridge {

enum class ErrorCode {
  kInvalidArgument,
  kConfig,
  kDomain,
  kSingularIndex,
  kEdgeSingularity,
  kRange,
  kNonNormalizable,
  kFeasibility,
  kQuadrature,
  kSolver,
  kInstability,
  kUnsupported,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Adaptive quadrature ran out of subdivisions. Carries the best estimate.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double estimate, double error_bound)
      : Error(ErrorCode::kQuadrature, what),
        estimate_(estimate),
        error_bound_(error_bound) {}

  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

// A support edge was hit where g vanishes and J = 1/g is undefined.
class EdgeSingularityError : public Error {
 public:
  EdgeSingularityError(const std::string& what, double edge)
      : Error(ErrorCode::kEdgeSingularity, what), edge_(edge) {}

  double edge() const noexcept { return edge_; }

 private:
  double edge_;
};

}  // namespace qbridge

#endif  // QBRIDGE_ERROR_HPP_
