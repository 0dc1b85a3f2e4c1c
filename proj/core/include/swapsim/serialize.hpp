// Copyright 2026 The swapsim Authors
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
#include <string_view>

#include "swapsim/quantum_core.hpp"

namespace swapsim {

/// JSON object {"labels": [...], "dimension": n, "weight": w,
/// "entries": [[[re, im], ...], ...]} with rows outermost.
std::string density_matrix_to_json(const DensityMatrix& rho, int indent = -1);

/// Inverse of density_matrix_to_json; throws ValidationError on malformed input.
DensityMatrix density_matrix_from_json(std::string_view text);

}  // namespace swapsim
