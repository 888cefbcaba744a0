// Copyright 2026 The m2o Authors
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

#ifndef M2O_ERROR_HPP_
#define M2O_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace m2o {

// Mirrors the status codes of the C API (m2o.h); keep the numeric values in
// sync.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kDomain = 2,
  kUnreachable = 3,
  kIo = 4,
  kParse = 5,
  kInfeasible = 6,
  kInternal = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace m2o

#endif  // M2O_ERROR_HPP_
