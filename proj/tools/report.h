// Copyright 2026 The qmeas Authors
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

#include "qmeas/io.h"
#include "qmeas/measurement.h"

namespace qmeas::cli {

using io::OrderedJson;

std::string sha256_hex(std::string_view bytes);

OrderedJson distribution_json(const OutcomeDistribution &dist);
OrderedJson counts_json(const OutcomeCounts &counts);

/// {"name", "value", "bound", "passed"}; passed iff value <= bound.
OrderedJson check_json(std::string_view name, double value, double bound);

}  // namespace qmeas::cli
