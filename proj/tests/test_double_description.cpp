#include <catch2/catch_amalgamated.hpp>

#include "polyvar/arrangement.hpp"
#include "polyvar/double_description.hpp"
#include "polyvar/generate.hpp"

using namespace polyvar;

namespace {

Rational q(long n, long d = 1) { return Rational(n) / Rational(d); }

ConvexPolyhedron orthant(int dim) {
    std::vector<Constraint> in;
    for (int i = 0; i < dim; ++i) in.push_back({-unit_vector(dim, i), q(0)});
    return *make_polyhedron(in, {}, dim);
}

// Brute-force polar check on a dense rational direction grid: every grid
// point must land on the same side of both descriptions.
void check_polar_against_sampling(const PolyhedralSet& cone, const PolyhedralSet& polar) {
    std::vector<Rational> ticks{q(-2), q(-1), q(-1, 2), q(0), q(1, 2), q(1), q(2)};
    for (const auto& a : ticks) {
        for (const auto& b : ticks) {
            RVector zstar{a, b};
            bool in_polar = polar.contains(zstar);
            bool valid = true;
            for (const auto& piece : cone.pieces) {
                GeneratorSet g = generators(piece);
                for (const auto& r : g.rays)
                    if (dot(zstar, r) > 0) valid = false;
                for (const auto& l : g.lines)
                    if (dot(zstar, l) != 0) valid = false;
            }
            CAPTURE(to_string(a), to_string(b));
            CHECK(in_polar == valid);
        }
    }
}

}  // namespace

TEST_CASE("orthant generators are the unit rays") {
    GeneratorSet g = generators(orthant(3));
    CHECK(g.lines.empty());
    REQUIRE(g.rays.size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(std::count(g.rays.begin(), g.rays.end(), unit_vector(3, i)) == 1);
}

TEST_CASE("halfplane splits into two rays and a line") {
    // {x : x2 <= 0} in the plane
    auto half = *make_polyhedron({{RVector{q(0), q(1)}, q(0)}}, {}, 2);
    GeneratorSet g = generators(half);
    CHECK(g.lines.size() == 1);
    CHECK(g.rays.size() == 1);
    CHECK(halfspaces(g) == half);
}

TEST_CASE("3d cone with five facets round-trips") {
    std::vector<Constraint> in;
    in.push_back({RVector{q(-1), q(0), q(-1)}, q(0)});
    in.push_back({RVector{q(1), q(0), q(-1)}, q(0)});
    in.push_back({RVector{q(0), q(-1), q(-1)}, q(0)});
    in.push_back({RVector{q(0), q(1), q(-1)}, q(0)});
    in.push_back({RVector{q(1), q(1), q(-2)}, q(0)});
    auto cone = *make_polyhedron(in, {}, 3);
    GeneratorSet g = generators(cone);
    CHECK(halfspaces(g) == cone);
}

TEST_CASE("polar of the whole space is the origin") {
    CHECK(polar_cone(full_set(2)) == origin_set(2));
}

TEST_CASE("polar of the nonnegative orthant is the nonpositive orthant") {
    PolyhedralSet quad = make_set({orthant(2)}, 2);
    PolyhedralSet polar = polar_cone(quad);
    std::vector<Constraint> in;
    in.push_back({RVector{q(1), q(0)}, q(0)});
    in.push_back({RVector{q(0), q(1)}, q(0)});
    CHECK(polar == make_set({*make_polyhedron(in, {}, 2)}, 2));
}

TEST_CASE("polar of the axis union via direction sampling") {
    auto axis = [&](int i) {
        std::vector<Constraint> eq{{unit_vector(2, 1 - i), q(0)}};
        return *make_polyhedron({}, eq, 2);
    };
    PolyhedralSet axes = make_set({axis(0), axis(1)}, 2);
    PolyhedralSet polar = polar_cone(axes);
    CHECK(polar == origin_set(2));
    check_polar_against_sampling(axes, polar);
}

TEST_CASE("bipolar identity and polar of unions on random cones") {
    Generator gen(20240001);
    for (int trial = 0; trial < 25; ++trial) {
        int dim = 2 + trial % 3;
        PolyhedralSet k1 = gen.random_cone(dim, 2, 3);
        PolyhedralSet k2 = gen.random_cone(dim, 2, 3);
        CAPTURE(trial, dim);

        // polar of a union is the intersection of the polars
        PolyhedralSet both = make_set([&] {
            auto pieces = k1.pieces;
            pieces.insert(pieces.end(), k2.pieces.begin(), k2.pieces.end());
            return pieces;
        }(), dim);
        CHECK(set_equal(polar_cone(both), intersect(polar_cone(k1), polar_cone(k2))));

        // bipolar of a convex cone is the cone itself
        for (const auto& piece : k1.pieces) {
            PolyhedralSet single = make_set({piece}, dim);
            CHECK(set_equal(polar_cone(polar_cone(single)), single));
        }

        // bipolar of a union contains the union (closed convex hull)
        CHECK(set_subset(both, polar_cone(polar_cone(both))));
    }
}

TEST_CASE("double description round-trip is the identity on random cones") {
    Generator gen(20240002);
    for (int trial = 0; trial < 30; ++trial) {
        int dim = 2 + trial % 3;
        PolyhedralSet k = gen.random_cone(dim, 1, 4);
        for (const auto& piece : k.pieces) {
            CAPTURE(trial, dim);
            CHECK(halfspaces(generators(piece)) == piece);
        }
    }
}
