// Copyright 2026 The bellsim Authors
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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bellsim/common/error.hpp"

namespace bellsim::ineq {

/// Cell value marking a missing (counterfactual, never recorded) entry.
inline constexpr std::int8_t kHole = 0;

/// An N x Cols table of +-1 entries, stored column-major so that column-pair
/// tallies run over contiguous memory.
template <std::size_t Cols>
class SignTable {
 public:
  using Row = std::array<std::int8_t, Cols>;
  static constexpr std::size_t kColumns = Cols;

  SignTable() = default;

  explicit SignTable(std::span<const Row> rows) {
    reserve(rows.size());
    for (const Row& r : rows) push_row(r);
  }

  void reserve(std::size_t n) {
    for (auto& c : cols_) c.reserve(n);
  }

  void push_row(const Row& row) {
    for (std::size_t c = 0; c < Cols; ++c) {
      const std::int8_t v = row[c];
      if (v != 1 && v != -1 && v != kHole) {
        throw Error("cell value " + std::to_string(v) + " in column " + std::to_string(c) +
                    " is not -1, +1 or a hole");
      }
    }
    for (std::size_t c = 0; c < Cols; ++c) cols_[c].push_back(row[c]);
  }

  std::size_t rows() const { return cols_[0].size(); }
  bool empty() const { return rows() == 0; }

  Row row(std::size_t i) const {
    Row r;
    for (std::size_t c = 0; c < Cols; ++c) r[c] = cols_[c][i];
    return r;
  }

  std::int8_t at(std::size_t i, std::size_t c) const { return cols_[c][i]; }

  std::span<const std::int8_t> column(std::size_t c) const { return cols_[c]; }

  bool has_holes() const {
    for (const auto& col : cols_) {
      for (std::int8_t v : col) {
        if (v == kHole) return true;
      }
    }
    return false;
  }

  friend bool operator==(const SignTable&, const SignTable&) = default;

 private:
  std::array<std::vector<std::int8_t>, Cols> cols_;
};

/// Columns are (A, A', B, B').
using Spreadsheet = SignTable<4>;
using Row = Spreadsheet::Row;

/// Columns are (A, B, C) for Boole / Leggett-Garg checks.
using TripleSheet = SignTable<3>;

/// One M x 2 table of outcome pairs recorded under a single setting pair.
using PairTable = SignTable<2>;

inline constexpr std::array<const char*, 4> kColumnLabels = {"A", "Ap", "B", "Bp"};

}  // namespace bellsim::ineq
