/*
Copyright 2026 The reprank Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef REPRANK_PROJECTION_HPP
#define REPRANK_PROJECTION_HPP

#include "reprank/graph.hpp"

namespace reprank {

/// Remap of the 5-star scale: 2 -> 1 + 2*p1, 4 -> 3 + 2*p2; 1, 3 and 5 are
/// fixed points. Both parameters must lie in [0, 1]; (0.5, 0.5) is the
/// identity.
class ProjectionParams {
public:
    ProjectionParams() = default;
    ProjectionParams(double p1, double p2);

    double p1() const noexcept { return p1_; }
    double p2() const noexcept { return p2_; }
    bool is_identity() const noexcept { return p1_ == 0.5 && p2_ == 0.5; }

    friend bool operator==(const ProjectionParams&, const ProjectionParams&) = default;

private:
    double p1_ = 0.5;
    double p2_ = 0.5;
};

/// Ratings that are not exactly one of {1,2,3,4,5} pass through unchanged.
double project_rating(double rating, const ProjectionParams& params);

/// Copy of `g` with every rating passed through project_rating.
RatingGraph project_graph(const RatingGraph& g, const ProjectionParams& params);

}  // namespace reprank

#endif  // REPRANK_PROJECTION_HPP
