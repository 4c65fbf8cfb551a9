/*
  ergo, a toolkit for invariant measures of noisy dynamical systems

  This library is licensed under the Apache License, Version 2.0 (the "License");
  you may not use this library except in compliance with the License.
  You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

#ifndef ERGO_ERRORS_HPP
#define ERGO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ergo {

// Every error carries the stage that raised it so pipeline failures are
// attributable.
class Error : public std::runtime_error {
public:
    Error(std::string stage, const std::string& what)
        : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// The requested accuracy cannot be met within the configured budget.
class PrecisionError : public Error {
public:
    using Error::Error;
};

// An iterative stage failed to converge.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// A quantity is too ill-conditioned for the requested precision.
class ConditioningError : public Error {
public:
    using Error::Error;
};

// A configured resource cap (dimension, degree, state count) was exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

// Malformed external input (JSON, CSV, flags).
class InputError : public Error {
public:
    using Error::Error;
};

// Internal magnitude cap exceeded; distinguished from the OverflowReport
// *result* that bounded powering returns.
class MagnitudeError : public Error {
public:
    using Error::Error;
};

}  // namespace ergo

#endif
