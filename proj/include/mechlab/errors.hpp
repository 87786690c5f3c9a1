// Copyright 2026 The mechlab Authors
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

namespace mechlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid class parameters, malformed info vectors, out-of-range indices.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or LP size cap was exceeded.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, std::size_t requested, std::size_t cap)
      : Error(what + " (size " + std::to_string(requested) + " exceeds cap " +
              std::to_string(cap) + ")"),
        requested_(requested),
        cap_(cap) {}

  std::size_t requested() const noexcept { return requested_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t requested_;
  std::size_t cap_;
};

/// A postcondition the library guarantees did not hold. Signals a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// The exact LP solver could not certify an optimum.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// Conditioning on a probability-zero event.
class EmptyEventError : public Error {
 public:
  using Error::Error;
};

/// Instance on which a cutoff cannot be defined (e.g. all values zero).
class DegenerateInstanceError : public Error {
 public:
  using Error::Error;
};

/// A coupled pair violates v+(S) >= v(S) somewhere.
class DominanceError : public Error {
 public:
  using Error::Error;
};

/// An input failed a precondition (e.g. a mechanism that is not BIC).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Instance or config could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace mechlab
