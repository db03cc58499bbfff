// Copyright 2026 The simopo Authors
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

#include "simopo/mode_basis.hpp"

#include "simopo/errors.hpp"

namespace simopo {

std::string ModeIndex::str() const {
  return std::to_string(m) + std::to_string(n);
}

ModeBasis::ModeBasis(int n_max) : n_max_(n_max) {
  if (n_max < 0) {
    throw DomainError("mode basis cutoff must be non-negative, got " + std::to_string(n_max));
  }
  modes_.reserve(size_for(n_max));
  for (int order = 0; order <= n_max; ++order) {
    for (int m = 0; m <= order; ++m) {
      modes_.push_back({m, order - m});
    }
  }
}

bool ModeBasis::contains(ModeIndex mode) const {
  return mode.m >= 0 && mode.n >= 0 && mode.order() <= n_max_;
}

std::size_t ModeBasis::index_of(ModeIndex mode) const {
  if (!contains(mode)) {
    throw DomainError("mode HG" + mode.str() + " is outside the basis with n_max=" +
                      std::to_string(n_max_));
  }
  const auto order = static_cast<std::size_t>(mode.order());
  return order * (order + 1) / 2 + static_cast<std::size_t>(mode.m);
}

}  // namespace simopo
