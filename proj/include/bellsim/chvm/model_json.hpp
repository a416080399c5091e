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

#include <string>

#include <json.hpp>

#include "bellsim/chvm/contextual.hpp"

namespace bellsim::chvm {

/// {"k", "m", "source": k x k, "instruments": {"x", "xp", "y", "yp"},
///  "outcomes": {"A_x", "A_xp", "B_y", "B_yp"} each k x m, "description"?}.
/// Probabilities are "p/q" strings on output.
nlohmann::json model_to_json(const ContextualModel& model);

/// Probabilities may be "p/q" strings or numbers. Numbers are taken at their
/// exact binary value, and a table containing numbers is renormalized exactly
/// when its sum is within 1e-9 of 1. Errors name the offending JSON pointer.
ContextualModel model_from_json(const nlohmann::json& j);

ContextualModel load_model(const std::string& path);

}  // namespace bellsim::chvm
