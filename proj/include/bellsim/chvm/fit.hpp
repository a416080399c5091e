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

#include <cstdint>
#include <vector>

#include "bellsim/chvm/contextual.hpp"
#include "bellsim/ineq/correlation.hpp"

namespace bellsim::chvm {

struct FitOptions {
  std::size_t k = 2;
  std::size_t m = 2;
  std::uint64_t seed = 1;
  std::size_t budget = 200000;   // objective evaluations, shared by all restarts
  std::size_t restarts = 16;
  unsigned threads = 1;
  double min_mass = 1e-4;        // smallest retained mass a candidate may have
};

struct FitResult {
  ContextualModel model;             // exact, renormalized from the optimizer's doubles
  double residual = 0;               // of `model`
  std::vector<double> trace;         // accepted-step residuals of the winning restart
  std::vector<double> restart_best;  // final residual of every restart, in order
  std::size_t winning_restart = 0;
  std::size_t evaluations = 0;
};

/// Sum of squared differences between the post-selected pair expectations
/// and the targets; with target singles, also the post-selected marginals of
/// every context against them. Infinite if a pair retains no mass.
double fit_residual(const ContextualModel& model, const ineq::CorrelationSet& targets);

/// Random restarts; each alternates projected gradient descent on the
/// probability simplices with single-cell moves in the outcome tables,
/// accepting only improvements. Same seed and options give the same model
/// regardless of `threads`. Running out of budget returns the best so far.
FitResult fit_contextual(const ineq::CorrelationSet& targets, const FitOptions& options);

}  // namespace bellsim::chvm
