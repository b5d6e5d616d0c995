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

#include <doctest.h>

#include <random>

#include "reprank/projection.hpp"

using namespace reprank;

TEST_CASE("projection of the five stars") {
    const ProjectionParams identity;
    CHECK(project_rating(2, identity) == 2.0);
    CHECK(project_rating(4, identity) == 4.0);
    CHECK(project_rating(2, {0.0, 0.5}) == 1.0);
    CHECK(project_rating(2, {1.0, 0.5}) == 3.0);
    CHECK(project_rating(4, {0.5, 0.25}) == 3.5);
    CHECK(project_rating(4, {0.5, 0.0}) == 3.0);
    CHECK(project_rating(4, {0.5, 1.0}) == 5.0);
    for (double fixed : {1.0, 3.0, 5.0}) {
        CHECK(project_rating(fixed, {0.0, 1.0}) == fixed);
        CHECK(project_rating(fixed, {0.9, 0.1}) == fixed);
    }
}

TEST_CASE("non-integer ratings pass through") {
    CHECK(project_rating(2.5, {0.0, 1.0}) == 2.5);
    CHECK(project_rating(3.999, {0.0, 0.0}) == 3.999);
}

TEST_CASE("invalid parameters and ratings are rejected") {
    CHECK_THROWS_AS(ProjectionParams(-0.01, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(ProjectionParams(0.5, 1.01), std::invalid_argument);
    CHECK_THROWS_AS(ProjectionParams(std::nan(""), 0.5), std::invalid_argument);
    CHECK_THROWS_AS(project_rating(0.5, {}), std::invalid_argument);
    CHECK_THROWS_AS(project_rating(5.5, {}), std::invalid_argument);
}

TEST_CASE("projection properties over random parameters") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const ProjectionParams p(unit(rng), unit(rng));
        double previous = 0.0;
        for (int star = 1; star <= 5; ++star) {
            const double v = project_rating(star, p);
            CHECK(v >= 1.0);
            CHECK(v <= 5.0);
            CHECK(v >= previous);
            previous = v;
        }
        const double lo = std::min(p.p1(), p.p2()) * 0.5;
        if (lo < p.p1()) CHECK(project_rating(2, {lo, p.p2()}) < project_rating(2, p));
        if (lo < p.p2()) CHECK(project_rating(4, {p.p1(), lo}) < project_rating(4, p));
    }
}

TEST_CASE("project_graph") {
    const RatingGraph g(3, 2, {{0, 0, 1}, {0, 1, 2}, {1, 0, 3}, {1, 1, 4}, {2, 0, 5}});
    SUBCASE("identity is bit-identical") { CHECK(project_graph(g, {}) == g); }
    SUBCASE("movielens optimum maps all five stars") {
        const auto h = project_graph(g, {0.75, 0.25});
        std::vector<double> got;
        for (const auto& l : h.links()) got.push_back(l.rating);
        CHECK(got == std::vector<double>{1, 2.5, 3, 3.5, 5});
        CHECK(g.links()[1].rating == 2.0);
    }
    SUBCASE("single rating of four at p2 = 1") {
        const RatingGraph one(1, 1, {{0, 0, 4}});
        CHECK(project_graph(one, {0.5, 1.0}).links()[0].rating == 5.0);
    }
}
