// Copyright 2026 The Pasta Authors
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

// Deterministic SVG renderings. Output depends only on the inputs, so equal
// inputs give byte-identical files.

#ifndef PASTA_PLOT_H_
#define PASTA_PLOT_H_

#include <string>

#include "pasta/clustering.h"
#include "pasta/momel.h"
#include "pasta/patterns.h"
#include "pasta/pipeline.h"
#include "pasta/pitch.h"

namespace pasta::plot {

// One <g class="panel"> per cluster: member patterns in black, the
// barycenter in red. `members` may be null.
std::string PlotModel(const cluster::ClusterModel& model,
                      const patterns::PatternMatrix* members = nullptr);

// The spline curve with one <circle class="anchor"> per anchor, over the raw
// voiced frames when `contour` is given.
std::string PlotSpline(const momel::MomelSpline& spline,
                       const pitch::F0Contour* contour = nullptr);

// Word boxes labelled with pattern and state ids.
std::string PlotMarkup(const pipeline::MarkupRecord& record);

}  // namespace pasta::plot

#endif  // PASTA_PLOT_H_
