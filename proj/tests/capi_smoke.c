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

/* The public header must compile as plain C and be usable from C. */

#include <math.h>
#include <stdio.h>

#include "qsenc/qsenc.h"

int main(void) {
  qsenc_config *config = NULL;
  qsenc_core *core = NULL;
  qsenc_spikes *spikes = NULL;
  qsenc_run *run = NULL;
  qsenc_weights *weights = NULL;
  size_t spikes_out = 0;
  int rc = 1;

  if (qsenc_config_parse("[format]\nn = 5\nq = 3\n[layers]\nsizes = 2, 1\n", &config) != QSENC_OK)
    goto done;
  if (qsenc_weights_parse("0 0 0 6\n0 1 0 6\n", &weights) != QSENC_OK)
    goto done;
  if (qsenc_core_create(config, &core) != QSENC_OK || qsenc_core_load_weights(core, weights))
    goto done;
  if (qsenc_spikes_create(&spikes) != QSENC_OK)
    goto done;
  qsenc_spikes_add(spikes, 0, 0, 0);
  qsenc_spikes_add(spikes, 0, 0, 1);
  if (qsenc_core_run(core, spikes, 3, NULL, 0, &run) != QSENC_OK)
    goto done;
  if (qsenc_run_spike_count(run, 0, 1, &spikes_out) != QSENC_OK)
    goto done;
  /* 6 + 6 = 12 crosses 10 on the first cycle */
  rc = spikes_out == 1 && fabs(qsenc_realtime_fps(0.02, 4, 1000) - 41.6667) < 1e-3 ? 0 : 1;

done:
  if (rc)
    fprintf(stderr, "c api smoke failed: %s\n", qsenc_last_error());
  qsenc_run_free(run);
  qsenc_spikes_free(spikes);
  qsenc_core_free(core);
  qsenc_weights_free(weights);
  qsenc_config_free(config);
  return rc;
}
