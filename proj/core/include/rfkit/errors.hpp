// Copyright 2026 The rfkit Authors.
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

#ifndef RFKIT_ERRORS_HPP_
#define RFKIT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace rfkit {

// Error classes. Each maps to a distinct process exit code in the CLI.
enum class ErrorClass : int {
  kParameter = 2,
  kDomain = 3,
  kDimension = 4,
  kNotPositiveDefinite = 5,
  kNumerical = 6,
  kParse = 7,
  kIo = 8,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& what)
      : std::runtime_error(what), cls_(cls) {}
  ErrorClass error_class() const noexcept { return cls_; }
  int exit_code() const noexcept { return static_cast<int>(cls_); }

 private:
  ErrorClass cls_;
};

#define RFKIT_DEFINE_ERROR(Name, Cls)                                   \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& what) : Error(ErrorClass::Cls, what) {} \
  }

RFKIT_DEFINE_ERROR(ParameterError, kParameter);
RFKIT_DEFINE_ERROR(DomainError, kDomain);
RFKIT_DEFINE_ERROR(DimensionError, kDimension);
RFKIT_DEFINE_ERROR(NotPositiveDefiniteError, kNotPositiveDefinite);
RFKIT_DEFINE_ERROR(NumericalError, kNumerical);
RFKIT_DEFINE_ERROR(ParseError, kParse);
RFKIT_DEFINE_ERROR(IoError, kIo);

#undef RFKIT_DEFINE_ERROR

const char* error_class_name(ErrorClass cls) noexcept;

}  // namespace rfkit

#endif  // RFKIT_ERRORS_HPP_
