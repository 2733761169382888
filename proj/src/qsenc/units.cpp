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

#include "qsenc/units.hpp"

#include <cmath>
#include <string>

#include "qsenc/error.hpp"

namespace qsenc {

RateRegisters registers_from_physical(const PhysicalMapping &m) {
  for (double v : {m.r_ohm, m.c_farad, m.dt_s, m.v_unit, m.i_unit}) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw Error(ErrorCode::InvalidArgument,
                  "physical mapping needs positive R, C, dt, v_unit and i_unit");
  }
  RateRegisters out;
  out.decay_rate = m.dt_s / (m.r_ohm * m.c_farad);
  out.growth_rate = (m.dt_s / m.c_farad) * (m.i_unit / m.v_unit);
  return out;
}

RateRegisters registers_from_physical(const PhysicalMapping &m, QFormat format) {
  RateRegisters out = registers_from_physical(m);
  auto check = [&](const char *name, double v) {
    if (v < format.min_value() || v > format.max_value()) {
      throw Error(ErrorCode::OutOfRange, std::string(name) + " = " + std::to_string(v) +
                                             " does not fit " + format.name());
    }
  };
  check("decay_rate", out.decay_rate);
  check("growth_rate", out.growth_rate);
  return out;
}

double unit_current_for_unit_growth(double c_farad, double dt_s, double v_unit) {
  return v_unit * c_farad / dt_s;
}

} // namespace qsenc
