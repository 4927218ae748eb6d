// Copyright 2026 The aqec Authors
//
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

#pragma once

#include <stdexcept>
#include <string>

namespace aqec {

/// Bad input: wrong dimensions, out-of-range indices, malformed config.
/// The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// An iterative search stopped short of its goal. Carries the best value reached.
/// The CLI maps this to exit code 3.
class ConvergenceError : public std::runtime_error {
   public:
    ConvergenceError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const { return achieved_; }

   private:
    double achieved_;
};

/// A numerical integrity check failed (norm, trace, positivity, step control).
/// The CLI maps this to exit code 4.
class IntegrityError : public std::runtime_error {
   public:
    IntegrityError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const { return achieved_; }

   private:
    double achieved_;
};

}  // namespace aqec
