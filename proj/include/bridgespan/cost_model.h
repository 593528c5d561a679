// Copyright 2026 The BridgeSpan Authors.
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

#ifndef BRIDGESPAN_COST_MODEL_H_
#define BRIDGESPAN_COST_MODEL_H_

#include <array>
#include <string>

namespace bridgespan {

// Coefficients of the per-unit-area cost of one load-bearing material:
//
//   cost(x) = a + b * x^m + c * x^(-r)      [yuan / m^2, x = span in m]
//
// a folds the deck-system cost, b * x^m the load-bearing structure and
// c * x^(-r) the piers (one pier every x metres, each costing ~ x^(1/n),
// hence r = 1 - 1/n).
struct MaterialCostParams {
  std::string name;
  double a = 0.0;
  double b = 0.0;
  double m = 1.0;
  double c = 0.0;
  double r = 0.5;

  // Throws ArgumentError unless a >= 0, b > 0, c > 0, m >= 1, 0 < r < 1.
  void Validate() const;

  // Pier exponent denominator n = 1 / (1 - r).
  double PierExponentDenominator() const { return 1.0 / (1.0 - r); }
};

MaterialCostParams ConcreteMaterial();
MaterialCostParams CompositeMaterial();
MaterialCostParams SteelMaterial();

// Concrete, steel-concrete composite and steel, in grid-row order.
std::array<MaterialCostParams, 3> DefaultMaterials();

struct CostBreakdown {
  // Per unit deck area.
  double superstructure = 0.0;
  double substructure = 0.0;
  double total = 0.0;
  // Scaled by the total bridge length L (per unit deck width).
  double length = 0.0;
  double upper_total = 0.0;
  double under_total = 0.0;
  double grand_total = 0.0;
};

struct EconomicSpanResult {
  double span = 0.0;
  double unit_cost = 0.0;
  double balance_ratio = 0.0;
};

double UnitAreaCost(const MaterialCostParams& p, double span);

// The pier count length / span is kept continuous.
CostBreakdown TotalCost(const MaterialCostParams& p, double span,
                        double length);

// d(cost)/d(span) = b m x^(m-1) - c r x^(-r-1).
double CostDerivative(const MaterialCostParams& p, double span);

// Single-span load-bearing cost over single-pier cost, b x^m / (c x^-r).
double BalanceRatio(const MaterialCostParams& p, double span);

// (n - 1) / (m n): the balance ratio at the economic span. Equals r / m.
double EconomicBalanceRatio(const MaterialCostParams& p);

// Root of the derivative: x* = (c r / (b m))^(1 / (m + r)).
EconomicSpanResult EconomicSpanClosedForm(const MaterialCostParams& p);

inline constexpr double kDefaultSpanTolerance = 1e-6;

// Golden-section minimisation of UnitAreaCost over [lo, hi]. The result is
// within `tol` of the minimiser provided the minimiser lies in the bracket.
EconomicSpanResult EconomicSpanNumeric(const MaterialCostParams& p, double lo,
                                       double hi,
                                       double tol = kDefaultSpanTolerance);

}  // namespace bridgespan

#endif  // BRIDGESPAN_COST_MODEL_H_
