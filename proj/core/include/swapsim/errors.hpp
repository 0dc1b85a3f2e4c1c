// Copyright 2026 The swapsim Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace swapsim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Duplicate, missing or unknown mode label.
class LabelError : public Error {
public:
    using Error::Error;
};

/// A value violates a documented invariant or precondition.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// The requested measurement outcome has (numerically) zero probability.
class ImpossibleOutcomeError : public Error {
public:
    using Error::Error;
};

/// Inputs for which a closed form has a vanishing normalization.
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

/// The requested photon-pair scale pushes an amplitude above 1/sqrt(2).
class EpsilonTooLargeError : public Error {
public:
    using Error::Error;
};

/// A fringe has no one-photon population to compute a visibility from.
class NoSignalError : public Error {
public:
    using Error::Error;
};

class FitFailureError : public Error {
public:
    using Error::Error;
};

}  // namespace swapsim
