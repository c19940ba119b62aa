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

#ifndef SBSP_ERRORS_H_
#define SBSP_ERRORS_H_

#include <stdexcept>
#include <string>

namespace sbsp {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid generator parameters, bound-calculator inputs, etc.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Malformed or invariant-violating instance/schedule documents.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Schedule shape does not match the instance, or starts out of range.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Operation requires a feasible schedule and got an infeasible one.
class FeasibilityError : public Error {
 public:
  using Error::Error;
};

// Model or enumeration would exceed a configured size guard.
class SizeError : public Error {
 public:
  using Error::Error;
};

// Values violate prefix-sum/simplex invariants beyond tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// LP solution vector is not feasible for the model it is read from.
class ExtractionError : public Error {
 public:
  using Error::Error;
};

}  // namespace sbsp

#endif  // SBSP_ERRORS_H_
