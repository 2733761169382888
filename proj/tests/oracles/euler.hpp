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

// Closed forms of the leaky Euler update v' = v - d v + g I for constant
// drive, used to pin the neuron datapath without running it.

#pragma once

#include <cmath>

namespace oracle {

// v_t starting from v_0 under constant input current I, no firing.
inline double euler_membrane(double v0, double decay, double growth, double current, int t) {
  const double keep = std::pow(1.0 - decay, t);
  if (decay == 0.0)
    return v0 + growth * current * t;
  return v0 * keep + growth * current / decay * (1.0 - keep);
}

// First cycle t >= 1 with v_t >= threshold, or -1 within `horizon`.
inline int first_crossing(double v0, double decay, double growth, double current, double threshold,
                          int horizon) {
  for (int t = 1; t <= horizon; ++t)
    if (euler_membrane(v0, decay, growth, current, t) >= threshold)
      return t;
  return -1;
}

} // namespace oracle
