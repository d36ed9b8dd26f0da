// Copyright 2026 The AlphaDP Authors
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

#ifndef ADP_ERRORS_HPP_
#define ADP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace adp {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

// A parameter lies outside the domain of the requested operation
// (e.g. alpha <= 1, a malformed probability vector, delta outside (0,1)).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Two objects that must have matching dimensions do not
// (e.g. channel row count vs. distribution length).
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// The first distribution places mass where the second has none, so the
// divergence is undefined rather than infinite.
class AbsoluteContinuityViolation : public Error {
 public:
  using Error::Error;
};

// Numerical integration failed to converge, typically because the
// integrand overflows double range for the requested parameters.
class QuadratureDivergence : public Error {
 public:
  using Error::Error;
};

// A closed-form value is not representable in double range.  Raised
// instead of returning infinity so that grid searches can skip the
// offending parameter point.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Group privacy requested for a group so large that the halved order
// would drop to 1 or below.
class GroupTooLarge : public Error {
 public:
  using Error::Error;
};

// Every alpha grid point overflowed; the epsilon-minimizing search has
// no feasible candidate.
class NoFeasibleAlpha : public Error {
 public:
  using Error::Error;
};

// No (alpha, sigma) grid point satisfies the requested epsilon bound.
class NoFeasibleSigma : public Error {
 public:
  using Error::Error;
};

}  // namespace adp

#endif  // ADP_ERRORS_HPP_
