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

#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace simopo {

/// Transverse Hermite-Gaussian mode orders: m along x, n along y.
struct ModeIndex {
  int m = 0;
  int n = 0;

  constexpr int order() const { return m + n; }
  auto operator<=>(const ModeIndex&) const = default;
  std::string str() const;
};

/// Truncated HG basis {(m, n) : m + n <= n_max}.
///
/// Ordered by (m + n, m) ascending. Every vector and matrix in the library
/// is laid out in this order, so index 0 is always HG00 and the modes of a
/// given total order form a contiguous run.
class ModeBasis {
 public:
  explicit ModeBasis(int n_max);

  int n_max() const { return n_max_; }
  std::size_t size() const { return modes_.size(); }
  const ModeIndex& operator[](std::size_t i) const { return modes_[i]; }

  /// Position of `mode` in the ordering. Throws DomainError if the mode is
  /// outside the truncation.
  std::size_t index_of(ModeIndex mode) const;
  bool contains(ModeIndex mode) const;

  auto begin() const { return modes_.begin(); }
  auto end() const { return modes_.end(); }

  bool operator==(const ModeBasis& other) const { return n_max_ == other.n_max_; }

  /// (N+1)(N+2)/2
  static constexpr std::size_t size_for(int n_max) {
    return static_cast<std::size_t>(n_max + 1) * static_cast<std::size_t>(n_max + 2) / 2;
  }

 private:
  int n_max_;
  std::vector<ModeIndex> modes_;
};

}  // namespace simopo
