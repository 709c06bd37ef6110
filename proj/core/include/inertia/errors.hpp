// Copyright 2026 The inertia Authors
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

namespace inertia {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two eigenvalues closer than the configured gap threshold.
class DegenerateSpectrum : public Error {
public:
    using Error::Error;
};

class NotDiagonalizable : public Error {
public:
    using Error::Error;
};

// Eigenpair matching between neighbouring frames is not unique.
class AmbiguousMatching : public Error {
public:
    using Error::Error;
};

// A protocol was evaluated outside the interval where it is finite and valid.
class DomainExceeded : public Error {
public:
    using Error::Error;
};

class IntegratorFailure : public Error {
public:
    using Error::Error;
};

class UnphysicalState : public Error {
public:
    using Error::Error;
};

class NotConverged : public Error {
public:
    using Error::Error;
};

class UnsupportedDimension : public Error {
public:
    using Error::Error;
};

class PositivityViolation : public Error {
public:
    using Error::Error;
};

class SingularDenominator : public Error {
public:
    using Error::Error;
};

class ConfigInvalid : public Error {
public:
    using Error::Error;
};

} // namespace inertia
