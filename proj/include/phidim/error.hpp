// Copyright 2026 The phidim Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PHIDIM_ERROR_HPP_
#define PHIDIM_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace phidim {

// Base of every error raised by the library. The CLI maps ConfigError,
// InputError and InvalidFunctionError to exit status 2, the rest to 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class InvalidFunctionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class ResolutionError : public Error {
 public:
  using Error::Error;
};

class ScheduleOverflowError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class WindowError : public Error {
 public:
  using Error::Error;
};

// Cost bracket straddles the unit budget over the whole exponent range.
class IndeterminateError : public Error {
 public:
  IndeterminateError(const std::string& what, double log_cost_lower_at_zero,
                     double log_cost_upper_at_cap)
      : Error(what),
        log_cost_lower_at_zero_(log_cost_lower_at_zero),
        log_cost_upper_at_cap_(log_cost_upper_at_cap) {}

  double log_cost_lower_at_zero() const { return log_cost_lower_at_zero_; }
  double log_cost_upper_at_cap() const { return log_cost_upper_at_cap_; }

 private:
  double log_cost_lower_at_zero_;
  double log_cost_upper_at_cap_;
};

}  // namespace phidim

#endif  // PHIDIM_ERROR_HPP_
