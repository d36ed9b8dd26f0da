// Copyright 2026 The AlphaDP Authors
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

#ifndef ADP_SWEEP_HPP_
#define ADP_SWEEP_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "adp/mechanisms.hpp"
#include "adp/optimizer.hpp"

namespace adp {

// Tabular sweep output: a column schema, numeric rows ordered by the sweep
// variable, and the effective parameter settings as string metadata.
// A NaN cell marks a value that is absent (infeasible or overflowed).
struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::map<std::string, std::string> metadata;
};

// Single-query consumption of one mechanism across an alpha grid.
// Columns: alpha, adp_converted_epsilon, baseline_epsilon.  The baseline
// is the pure-DP epsilon for randomized response and Laplace, and the
// classical (epsilon, delta) bound for Gaussian.  Grid points whose
// evaluation overflows are dropped and recorded in metadata.
SweepTable SweepMechanismVsAlpha(const MechanismSpec& mech,
                                 const std::vector<double>& alpha_grid,
                                 double delta,
                                 ConversionForm form = ConversionForm::kProof);

// Cumulative consumption of a Gaussian mechanism over 1..max_iterations
// under all four frameworks.  Columns: iterations, adp_epsilon,
// rdp_epsilon, zcdp_epsilon, advanced_epsilon.  The ADP and RDP orders are
// optimized once at max_iterations (set reoptimize_per_step to re-optimize
// at every row instead).  Iteration counts above 1000 are sampled at 64
// logarithmically spaced points, recorded in metadata.
SweepTable SweepCumulativeVsIterations(double sigma, double l2_sensitivity,
                                       double delta,
                                       std::int64_t max_iterations,
                                       const AlphaSearchConfig& cfg = {},
                                       bool reoptimize_per_step = false);

enum class OptimizerSweepMode { kEpsilonVsAlpha, kSigmaVsAlpha };

// Optimizer landscapes indexed by alpha, one column per target.
// kEpsilonVsAlpha: targets are sigma values; cells are converted
// cumulative epsilons (NaN where the evaluation overflows).
// kSigmaVsAlpha: targets are epsilon bounds; cells are the smallest
// feasible sigma at that alpha (NaN where none qualifies).
SweepTable SweepOptimizerCurves(std::int64_t iterations, double delta,
                                double l2_sensitivity,
                                const std::vector<double>& targets,
                                OptimizerSweepMode mode,
                                const AlphaSearchConfig& cfg = {});

// Renders a double with 17 significant digits, enough for an exact
// round-trip through text.
std::string FormatDouble(double v);

// CSV rendering: header line first, one line per row, NaN cells empty,
// then metadata as trailing "# key=value" comment lines.  LF endings.
std::string ToCsv(const SweepTable& table);

// JSON rendering: {"columns": [...], "metadata": {...}, "rows": [[...]]}
// with NaN cells serialized as null.
nlohmann::json ToJson(const SweepTable& table);

}  // namespace adp

#endif  // ADP_SWEEP_HPP_
