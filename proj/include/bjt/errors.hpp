/*
 *   Copyright 2026 The bjt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef BJT_ERRORS_HPP
#define BJT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bjt {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown variable ids, out-of-range states, malformed assignments.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A call whose arguments violate the operation's contract.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A message or marginal was requested before its inputs were available.
class SchedulingError : public Error {
 public:
  using Error::Error;
};

/// Input that is well-formed but numerically degenerate (zero total mass).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// A computation would exceed a configured size cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace bjt

#endif  // BJT_ERRORS_HPP
