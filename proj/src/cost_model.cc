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

#include "bridgespan/cost_model.h"

#include <cmath>
#include <string>

#include "bridgespan/errors.h"

namespace bridgespan {
namespace {

void RequirePositiveSpan(double span) {
  if (!(span > 0.0) || !std::isfinite(span)) {
    throw DomainError("span must be positive and finite, got " +
                      std::to_string(span));
  }
}

}  // namespace

void MaterialCostParams::Validate() const {
  auto fail = [this](const std::string& what) {
    throw ArgumentError("material '" + name + "': " + what);
  };
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(m) ||
      !std::isfinite(c) || !std::isfinite(r)) {
    fail("coefficients must be finite");
  }
  if (a < 0.0) fail("a must be >= 0");
  if (b <= 0.0) fail("b must be > 0");
  if (c <= 0.0) fail("c must be > 0");
  if (m < 1.0) fail("m must be >= 1");
  if (r <= 0.0 || r >= 1.0) fail("r must lie in (0, 1)");
}

MaterialCostParams ConcreteMaterial() {
  return {"concrete", 250.0, 40.0, 1.2, 50000.0, 0.5};
}

MaterialCostParams CompositeMaterial() {
  return {"composite", 500.0, 90.0, 1.07, 45000.0, 0.5};
}

MaterialCostParams SteelMaterial() {
  return {"steel", 2000.0, 140.0, 1.0, 40000.0, 0.5};
}

std::array<MaterialCostParams, 3> DefaultMaterials() {
  return {ConcreteMaterial(), CompositeMaterial(), SteelMaterial()};
}

double UnitAreaCost(const MaterialCostParams& p, double span) {
  RequirePositiveSpan(span);
  return p.a + p.b * std::pow(span, p.m) + p.c * std::pow(span, -p.r);
}

CostBreakdown TotalCost(const MaterialCostParams& p, double span,
                        double length) {
  RequirePositiveSpan(span);
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw DomainError("length must be positive and finite");
  }
  CostBreakdown out;
  out.superstructure = p.a + p.b * std::pow(span, p.m);
  out.substructure = p.c * std::pow(span, -p.r);
  out.total = out.superstructure + out.substructure;
  out.length = length;
  out.upper_total = out.superstructure * length;
  out.under_total = out.substructure * length;
  out.grand_total = out.upper_total + out.under_total;
  return out;
}

double CostDerivative(const MaterialCostParams& p, double span) {
  RequirePositiveSpan(span);
  return p.b * p.m * std::pow(span, p.m - 1.0) -
         p.c * p.r * std::pow(span, -p.r - 1.0);
}

double BalanceRatio(const MaterialCostParams& p, double span) {
  RequirePositiveSpan(span);
  return (p.b * std::pow(span, p.m)) / (p.c * std::pow(span, -p.r));
}

double EconomicBalanceRatio(const MaterialCostParams& p) {
  const double n = p.PierExponentDenominator();
  return (n - 1.0) / (p.m * n);
}

EconomicSpanResult EconomicSpanClosedForm(const MaterialCostParams& p) {
  p.Validate();
  EconomicSpanResult out;
  out.span = std::pow(p.c * p.r / (p.b * p.m), 1.0 / (p.m + p.r));
  out.unit_cost = UnitAreaCost(p, out.span);
  out.balance_ratio = BalanceRatio(p, out.span);
  return out;
}

EconomicSpanResult EconomicSpanNumeric(const MaterialCostParams& p, double lo,
                                       double hi, double tol) {
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi)) {
    throw ArgumentError("numeric solver needs 0 < lo < hi");
  }
  if (!(tol > 0.0)) {
    throw ArgumentError("numeric solver needs tol > 0");
  }
  p.Validate();

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = UnitAreaCost(p, x1);
  double f2 = UnitAreaCost(p, x2);
  // Bracket shrinks by 1/phi per iteration; stop once it is narrower than tol
  // or can no longer shrink in double precision.
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = UnitAreaCost(p, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = UnitAreaCost(p, x2);
    }
    if (!(x1 > lo && x2 < hi && x1 <= x2)) break;
  }

  EconomicSpanResult out;
  out.span = 0.5 * (lo + hi);
  out.unit_cost = UnitAreaCost(p, out.span);
  out.balance_ratio = BalanceRatio(p, out.span);
  return out;
}

}  // namespace bridgespan
