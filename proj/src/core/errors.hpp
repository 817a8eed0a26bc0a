// SPDX-License-Identifier: Apache-2.0
//
// mimo-sinr: downlink SINR density toolkit for matched-filter multi-user MIMO
// Copyright (C) 2026 The mimo-sinr authors
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

namespace msinr {

// Invalid argument or precondition violated by the caller.
class UsageError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of a function (e.g. log_gamma(0)).
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
// Carries the partial value, its error estimate and the SINR point being
// evaluated (NaN when the failure is not tied to a single point).
class ConvergenceError : public std::runtime_error
{
public:
    ConvergenceError(const std::string &what, double partial_value, double error_estimate, double gamma)
        : std::runtime_error(what), partial_value_(partial_value), error_estimate_(error_estimate), gamma_(gamma)
    {
    }

    double partial_value() const noexcept { return partial_value_; }
    double error_estimate() const noexcept { return error_estimate_; }
    double gamma() const noexcept { return gamma_; }

private:
    double partial_value_;
    double error_estimate_;
    double gamma_;
};

} // namespace msinr
