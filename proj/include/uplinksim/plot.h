/******************************************************************************
 * Copyright 2026 The uplinksim Authors                                       *
 *                                                                            *
 * Licensed under the Apache License, Version 2.0 (the "License");            *
 * you may not use this file except in compliance with the License.           *
 *                                                                            *
 * You may obtain a copy of the License at                                    *
 *                                                                            *
 *     http://www.apache.org/licenses/LICENSE-2.0                             *
 *                                                                            *
 * Unless required by applicable law or agreed to in writing, software        *
 * distributed under the License is distributed on an "AS IS" BASIS,          *
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.   *
 * See the License for the specific language governing permissions and        *
 * limitations under the License.                                             *
 ******************************************************************************/

/**
 * @file
 * Static SVG rendering of sweep tables: one polyline per controller, one
 * figure per metric (average bitrate and loss rate over the sweep axis).
 * Self-contained files, no external assets.
 */

#ifndef UPLINKSIM_PLOT_H_
#define UPLINKSIM_PLOT_H_

#include <string>
#include <vector>

#include "uplinksim/experiment.h"

namespace uplinksim {

// Writes `{network}_{axis}_bitrate.svg` and `{network}_{axis}_loss.svg`
// into out_dir (axis taken from the rows). The loss figure carries a
// horizontal reference line at `epsilon`. Returns the paths written.
// Throws std::runtime_error on an empty table, mixed axes, or an
// unwritable path.
std::vector<std::string> WriteSweepPlots(const std::vector<SweepRow>& rows,
                                         const std::string& network,
                                         const std::string& out_dir,
                                         double epsilon);

}  // namespace uplinksim

#endif  // UPLINKSIM_PLOT_H_
