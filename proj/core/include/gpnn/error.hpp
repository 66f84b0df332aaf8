// Copyright 2026 The gpnn Authors.
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

#ifndef GPNN_ERROR_HPP_
#define GPNN_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gpnn {

// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(const std::string& where, std::size_t expected, std::size_t actual)
      : Error(where + ": dimension mismatch (expected " + std::to_string(expected) + ", got " +
              std::to_string(actual) + ")"),
        expected_(expected),
        actual_(actual) {}

  std::size_t expected() const { return expected_; }
  std::size_t actual() const { return actual_; }

 private:
  std::size_t expected_;
  std::size_t actual_;
};

// Raised when a symmetric matrix cannot be factorised even after the
// jitter ladder has been exhausted.
class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class TrainingFailed : public Error {
 public:
  TrainingFailed(const std::string& what, std::ptrdiff_t block)
      : Error(what), block_(block) {}

  // Offending block id, or -1 when the failure is not block-specific.
  std::ptrdiff_t block() const { return block_; }

 private:
  std::ptrdiff_t block_;
};

class DataError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class VersionMismatch : public FormatError {
 public:
  using FormatError::FormatError;
};

class CorruptFile : public FormatError {
 public:
  using FormatError::FormatError;
};

}  // namespace gpnn

#endif  // GPNN_ERROR_HPP_
