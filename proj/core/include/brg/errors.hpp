// Copyright 2026 The brg Authors. All rights reserved.
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

#ifndef BRG_ERRORS_HPP_
#define BRG_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace brg {

// Base class of every error raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A game or distribution violates a structural invariant (non-stochastic
// row, bad discount, inconsistent dimensions, invalid alpha, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Two tensors that must have identical shapes do not.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A player/type/state/action index is out of range.
class IndexError : public Error {
 public:
  using Error::Error;
};

// A solver produced a non-finite objective or the linear system could not
// be solved.
class SolveError : public Error {
 public:
  using Error::Error;
};

// Malformed input file. `line` and `column` are 1-based and refer to the
// original text; they are 0 when the location is unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line = 0, int column = 0)
      : Error(message), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace brg

#endif  // BRG_ERRORS_HPP_
