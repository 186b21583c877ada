#include <catch2/catch_amalgamated.hpp>

#include "polyvar/cones.hpp"
#include "polyvar/generate.hpp"

using namespace polyvar;

namespace {

Rational q(long n, long d = 1) { return Rational(n) / Rational(d); }

ConvexPolyhedron from_ineqs(std::vector<Constraint> in, int dim) {
    return *make_polyhedron(std::move(in), {}, dim);
}

// bowtie {(y, x) : |x| <= |y|}, the graph of M1(y) = [-|y|, |y|]
PolyhedralSet bowtie() {
    auto upper = from_ineqs({{RVector{q(-1), q(1)}, q(0)}, {RVector{q(-1), q(-1)}, q(0)}}, 2);
    auto lower = from_ineqs({{RVector{q(1), q(1)}, q(0)}, {RVector{q(1), q(-1)}, q(0)}}, 2);
    return make_set({upper, lower}, 2);
}

PolyhedralSet axes_union() {
    auto x_axis = *make_polyhedron({}, {{RVector{q(0), q(1)}, q(0)}}, 2);
    auto y_axis = *make_polyhedron({}, {{RVector{q(1), q(0)}, q(0)}}, 2);
    return make_set({x_axis, y_axis}, 2);
}

PolyhedralSet quadrant() {
    return make_set({from_ineqs({{RVector{q(-1), q(0)}, q(0)}, {RVector{q(0), q(-1)}, q(0)}}, 2)}, 2);
}

PolyhedralSet rays_union(const std::vector<RVector>& dirs, int dim, bool with_origin) {
    std::vector<ConvexPolyhedron> pieces;
    if (with_origin) pieces.push_back(origin_polyhedron(dim));
    for (const auto& d : dirs) {
        // the ray {t d : t >= 0} in the plane: span constraint plus sign constraints
        std::vector<Constraint> in, eq;
        eq.push_back({RVector{d[1], -d[0]}, q(0)});
        in.push_back({-d, q(0)});
        pieces.push_back(*make_polyhedron(in, eq, dim));
    }
    return make_set(pieces, dim);
}

}  // namespace

TEST_CASE("tangent cone at an interior point is everything") {
    PolyhedralSet box = make_set({from_ineqs({{RVector{q(1)}, q(1)}, {RVector{q(-1)}, q(1)}}, 1)}, 1);
    CHECK(tangent_cone(box, RVector{q(0)}).cone == full_set(1));
}

TEST_CASE("a cone is its own tangent cone at the origin") {
    PolyhedralSet b = bowtie();
    CHECK(set_equal(tangent_cone(b, RVector{q(0), q(0)}).cone, b));
}

TEST_CASE("tangent cone outside the set is empty") {
    CHECK(tangent_cone(bowtie(), RVector{q(0), q(5)}).cone.empty());
}

TEST_CASE("regular normal cone of the quadrant is the negative quadrant") {
    ConeResult n = regular_normal_cone(quadrant(), RVector{q(0), q(0)});
    CHECK(n.cone == negate(quadrant()));
}

TEST_CASE("regular normal cone of the bowtie at the crossing is trivial") {
    CHECK(regular_normal_cone(bowtie(), RVector{q(0), q(0)}).cone == origin_set(2));
}

TEST_CASE("regular normal cone of the axis union at the origin is trivial") {
    CHECK(regular_normal_cone(axes_union(), RVector{q(0), q(0)}).cone == origin_set(2));
}

TEST_CASE("limiting normal cone of a convex piece equals the regular one") {
    PolyhedralSet quad = quadrant();
    RVector z{q(0), q(0)};
    CHECK(set_equal(limiting_normal_cone(quad, z).cone, regular_normal_cone(quad, z).cone));
}

TEST_CASE("limiting normal cone of the axis union is the axis union") {
    ConeResult n = limiting_normal_cone(axes_union(), RVector{q(0), q(0)});
    CHECK(set_equal(n.cone, axes_union()));
}

TEST_CASE("limiting normal cone of the bowtie is the four diagonal rays") {
    ConeResult n = limiting_normal_cone(bowtie(), RVector{q(0), q(0)});
    PolyhedralSet expected = rays_union(
        {RVector{q(1), q(1)}, RVector{q(1), q(-1)}, RVector{q(-1), q(1)}, RVector{q(-1), q(-1)}},
        2, true);
    CHECK(set_equal(n.cone, expected));
}

TEST_CASE("directional limiting normal cone conventions") {
    PolyhedralSet axes = axes_union();
    RVector z{q(0), q(0)};

    // direction zero reproduces the limiting cone
    CHECK(set_equal(directional_limiting_normal_cone(axes, z, z).cone,
                    limiting_normal_cone(axes, z).cone));

    // along the open x-axis only the vertical normals survive
    ConeResult n = directional_limiting_normal_cone(axes, z, RVector{q(1), q(0)});
    auto vertical = *make_polyhedron({}, {{RVector{q(1), q(0)}, q(0)}}, 2);
    CHECK(set_equal(n.cone, make_set({vertical}, 2)));

    // directions outside the tangent cone give the empty cone
    CHECK(directional_limiting_normal_cone(bowtie(), z, RVector{q(1), q(2)}).cone.empty());
}

TEST_CASE("preimage cones under the identity reproduce the cones of C") {
    PolyhedralSet C = quadrant();
    RVector x{q(0), q(0)};
    for (ConeKind kind : {ConeKind::Tangent, ConeKind::RegularNormal, ConeKind::LimitingNormal}) {
        ConeResult via = preimage_cones(identity_matrix(2), zero_vector(2), C, x, kind);
        CHECK(set_equal(via.cone, cone_of(C, x, kind).cone));
    }
}

TEST_CASE("preimage cones under a projection produce rank-one normals") {
    // g(x) = x1 : R^2 -> R, C = R_+; at x with x1 = 0 the formula gives {(y, 0) : y <= 0}
    RMatrix A(1, 2);
    A.at(0, 0) = 1;
    PolyhedralSet C = make_set({from_ineqs({{RVector{q(-1)}, q(0)}}, 1)}, 1);
    ConeResult n = preimage_cones(A, zero_vector(1), C, RVector{q(0), q(3)}, ConeKind::RegularNormal);
    auto expected = *make_polyhedron({{RVector{q(1), q(0)}, q(0)}}, {{RVector{q(0), q(1)}, q(0)}}, 2);
    CHECK(set_equal(n.cone, make_set({expected}, 2)));
}

TEST_CASE("directional preimage formula agrees with direct computation") {
    // direct computation on the substituted set is the oracle here
    RMatrix A(1, 2);
    A.at(0, 0) = 1;
    A.at(0, 1) = 1;  // g(x) = x1 + x2
    PolyhedralSet C = make_set({from_ineqs({{RVector{q(-1)}, q(0)}}, 1)}, 1);
    PolyhedralSet pre = affine_preimage(C, A, zero_vector(1));
    RVector x{q(1), q(-1)};
    for (auto dir : {RVector{q(1), q(-1)}, RVector{q(1), q(0)}, RVector{q(-2), q(1)}}) {
        ConeResult formula =
            preimage_cones(A, zero_vector(1), C, x, ConeKind::DirectionalLimitingNormal, dir);
        ConeResult direct = directional_limiting_normal_cone(pre, x, dir);
        CAPTURE(to_string(dir[0]), to_string(dir[1]));
        CHECK(set_equal(formula.cone, direct.cone));
    }
}

TEST_CASE("rank-deficient change of coordinates is rejected") {
    RMatrix A(2, 2);
    A.at(0, 0) = 1;
    A.at(1, 0) = 1;  // rank 1
    CHECK_THROWS_WITH(preimage_cones(A, zero_vector(2), quadrant(), RVector{q(0), q(0)},
                                     ConeKind::Tangent),
                      Catch::Matchers::ContainsSubstring("Lemma 2.1"));
}

TEST_CASE("product cones: convex factors give equality in all four kinds") {
    PolyhedralSet half = make_set({from_ineqs({{RVector{q(-1)}, q(0)}}, 1)}, 1);
    RVector zero1{q(0)};
    for (ConeKind kind : {ConeKind::Tangent, ConeKind::RegularNormal, ConeKind::LimitingNormal}) {
        ProductCones pc = product_cones({{half, zero1, std::nullopt}, {half, zero1, std::nullopt}}, kind);
        if (pc.equality) CHECK(*pc.equality);
        ConeResult direct = cone_of(cartesian_product(half, half), RVector{q(0), q(0)}, kind);
        CHECK(set_equal(pc.product_formula.cone, direct.cone));
    }
    ProductCones dir = product_cones(
        {{half, zero1, RVector{q(1)}}, {half, zero1, RVector{q(0)}}},
        ConeKind::DirectionalLimitingNormal);
    REQUIRE(dir.equality.has_value());
    CHECK(*dir.equality);
}

TEST_CASE("product cones: orthant factors give orthant formulas") {
    PolyhedralSet quad = quadrant();
    RVector z{q(0), q(0)};
    ProductCones pc = product_cones({{quad, z, std::nullopt}, {quad, z, std::nullopt}},
                                    ConeKind::RegularNormal);
    CHECK(set_equal(pc.product_formula.cone,
                    cartesian_product(negate(quad), negate(quad))));
}

TEST_CASE("product cones: bowtie squared tangent reports its equality status") {
    PolyhedralSet b = bowtie();
    RVector z{q(0), q(0)};
    ProductCones pc = product_cones({{b, z, std::nullopt}, {b, z, std::nullopt}}, ConeKind::Tangent);
    REQUIRE(pc.direct.has_value());
    REQUIRE(pc.equality.has_value());
    // direct tangent of the product is contained in the product of tangents
    CHECK(set_subset(pc.direct->cone, pc.product_formula.cone));
    // for polyhedral products the tangent formula is exact; report must agree
    CHECK(*pc.equality == set_equal(pc.direct->cone, pc.product_formula.cone));
}

TEST_CASE("polarity identity and sandwich on random sets") {
    Generator gen(20240010);
    for (int trial = 0; trial < 30; ++trial) {
        int dim = 2 + trial % 2;
        RVector anchor = gen.vector(dim);
        PolyhedralSet s = gen.random_set(dim, 2, 3, anchor);
        CAPTURE(trial, dim);

        ConeResult t = tangent_cone(s, anchor);
        ConeResult rn = regular_normal_cone(s, anchor);
        ConeResult ln = limiting_normal_cone(s, anchor);

        CHECK(set_equal(rn.cone, polar_cone(t.cone)));   // polarity identity
        CHECK(set_subset(rn.cone, ln.cone));             // regular inside limiting
        CHECK(!t.cone.empty());
        CHECK(t.cone.contains(zero_vector(dim)));

        // direction-zero consistency
        CHECK(set_equal(directional_limiting_normal_cone(s, anchor, zero_vector(dim)).cone,
                        ln.cone));
    }
}

TEST_CASE("union decomposition of the limiting cone over tangent directions") {
    Generator gen(20240011);
    for (int trial = 0; trial < 15; ++trial) {
        int dim = 2;
        RVector anchor = gen.vector(dim);
        PolyhedralSet s = gen.random_set(dim, 2, 3, anchor);
        CAPTURE(trial);

        ConeResult t = tangent_cone(s, anchor);
        ConeResult ln = limiting_normal_cone(s, anchor);
        ConeResult rn = regular_normal_cone(s, anchor);

        // representatives: one witness per sign cell of the tangent arrangement
        std::vector<RVector> normals = constraint_normals(t.cone);
        std::vector<ConvexPolyhedron> pieces = rn.cone.pieces;
        auto add_dir = [&](const RVector& w) {
            if (w.is_zero() || !t.cone.contains(w)) return;
            ConeResult d = directional_limiting_normal_cone(s, anchor, w);
            for (const auto& p : d.cone.pieces) pieces.push_back(p);
        };
        if (normals.empty()) {
            for (int i = 0; i < dim; ++i) {
                add_dir(unit_vector(dim, i));
                add_dir(-unit_vector(dim, i));
            }
        } else {
            for (const auto& cell : sign_cells(normals)) add_dir(cell.witness);
            // the all-zero cell may be a nontrivial subspace; take basis reps
            RMatrix m = matrix_from_rows(normals, dim);
            for (const auto& b : nullspace_basis(m)) {
                add_dir(b);
                add_dir(-b);
            }
        }
        PolyhedralSet unioned = make_set(pieces, dim);
        CHECK(set_equal(unioned, ln.cone));
    }
}
