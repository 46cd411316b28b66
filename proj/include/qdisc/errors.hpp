// Copyright 2026 The qdisc Authors
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

#ifndef QDISC_ERRORS_HPP_
#define QDISC_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace qdisc {

enum class ErrorKind {
  kUsage = 1,
  kConstruction = 2,
  kDomain = 3,
  kEnumeration = 4,
  kCatalogIncomplete = 5,
  kGuard = 6,
  kIo = 7,
  kInsufficientData = 8,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace qdisc

#endif  // QDISC_ERRORS_HPP_
