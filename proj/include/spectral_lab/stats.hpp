// Copyright 2026 The Spectral Lab Authors
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

#pragma once

#include <span>
#include <vector>

namespace slab {

/// Ranks starting at 1; tied values share their average rank.
std::vector<double> average_ranks(std::span<const double> values);

/// Spearman rank correlation. NaN when either side has no variance.
double spearman(std::span<const double> x, std::span<const double> y);

/// Pearson correlation. NaN when either side has no variance.
double pearson(std::span<const double> x, std::span<const double> y);

/// Least-squares slope of y against x.
double linear_slope(std::span<const double> x, std::span<const double> y);

double mean(std::span<const double> values);

} // namespace slab
