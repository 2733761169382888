/*
 * Copyright 2026 The qsenc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "qsenc/fixedpoint.hpp"

namespace qsenc {

/// Physical membrane parameters and the units that turn them into
/// dimensionless register values.
struct PhysicalMapping {
  double r_ohm = 500e6;
  double c_farad = 10e-12;
  double dt_s = 1e-3;
  double v_unit = 1e-3;   ///< volts per register unit
  double i_unit = 10e-12; ///< amperes per activation unit

  friend bool operator==(const PhysicalMapping &, const PhysicalMapping &) = default;
};

struct RateRegisters {
  double decay_rate = 0.0;
  double growth_rate = 0.0;
};

/// decay = dt / (R C); growth = (dt / C) * i_unit / v_unit.
/// Throws Error(InvalidArgument) unless every input is positive and finite.
RateRegisters registers_from_physical(const PhysicalMapping &mapping);

/// Same, and additionally throws Error(OutOfRange) if either register falls
/// outside `format`.
RateRegisters registers_from_physical(const PhysicalMapping &mapping, QFormat format);

/// Current unit that makes growth_rate exactly 1 for the given C, dt, v_unit.
double unit_current_for_unit_growth(double c_farad, double dt_s, double v_unit);

} // namespace qsenc
