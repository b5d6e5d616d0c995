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

#include "reprank/projection.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace reprank {

ProjectionParams::ProjectionParams(double p1, double p2) : p1_(p1), p2_(p2) {
    // Negated comparisons also reject NaN.
    if (!(p1 >= 0.0 && p1 <= 1.0) || !(p2 >= 0.0 && p2 <= 1.0)) {
        throw std::invalid_argument("projection parameters must lie in [0,1], got (" + std::to_string(p1) + ", " +
                                    std::to_string(p2) + ")");
    }
}

double project_rating(double rating, const ProjectionParams& params) {
    if (!(rating >= kMinRating && rating <= kMaxRating)) {
        throw std::invalid_argument("rating out of bounds: " + std::to_string(rating));
    }
    if (rating == 2.0) return 1.0 + 2.0 * params.p1();
    if (rating == 4.0) return 3.0 + 2.0 * params.p2();
    return rating;
}

RatingGraph project_graph(const RatingGraph& g, const ProjectionParams& params) {
    std::vector<double> ratings;
    ratings.reserve(g.num_links());
    for (const auto& l : g.links()) ratings.push_back(project_rating(l.rating, params));
    return g.with_ratings(ratings);
}

}  // namespace reprank
