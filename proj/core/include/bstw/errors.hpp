/*
 * Copyright 2026 The bstw Authors
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

#ifndef BSTW_ERRORS_HPP
#define BSTW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bstw {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual const char* kind() const noexcept = 0;
};

/// Precondition violated by the caller.
class InvalidArgument : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invalid_argument"; }
};

/// Malformed input document.
class ParseError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "parse"; }
};

/// A size, bag or oracle budget was exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "cap_exceeded"; }
};

/// Singular block, unphysical state, vanishing probability and similar.
class NumericalError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "numerical"; }
};

}  // namespace bstw

#endif  // BSTW_ERRORS_HPP
