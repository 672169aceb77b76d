// Copyright 2026 The cvq Authors
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

namespace cvq {

/// Default relative tolerance for matrix inequalities and structural
/// predicates. Comparisons are scaled by (1 + ||.||_F) unless a function
/// documents otherwise.
inline constexpr double kDefaultTol = 1e-9;

/// Unit convention carried by every serialized object: hbar = 1, vacuum
/// quadrature variance 1/2. Loaders reject anything else.
inline constexpr const char* kUnits = "vacuum=1/2";

[[noreturn]] inline void fail_arg(const std::string& what) {
  throw std::invalid_argument(what);
}

}  // namespace cvq
