#pragma once

#include <optional>
#include <vector>

#include "arrangement.hpp"
#include "double_description.hpp"

namespace polyvar {

enum class ConeKind { Tangent, RegularNormal, LimitingNormal, DirectionalLimitingNormal };

inline const char* to_string(ConeKind k) {
    switch (k) {
        case ConeKind::Tangent: return "tangent";
        case ConeKind::RegularNormal: return "regular_normal";
        case ConeKind::LimitingNormal: return "limiting_normal";
        case ConeKind::DirectionalLimitingNormal: return "directional_limiting_normal";
    }
    return "?";
}

struct ConeResult {
    PolyhedralSet cone;  // union of cones anchored at the origin
    ConeKind kind = ConeKind::Tangent;
    RVector base_point;
    std::optional<RVector> direction;  // present iff directional
};

// Tangent cone of a polyhedral union: for each piece containing the point,
// active inequalities become homogeneous inequalities and equalities stay.
// A point outside the set yields the empty cone.
inline ConeResult tangent_cone(const PolyhedralSet& set, const RVector& point) {
    if (point.dim() != set.dim) throw DimensionError("tangent_cone: point dimension");
    std::vector<std::optional<ConvexPolyhedron>> raw;
    for (const auto& p : set.pieces) {
        if (!p.contains(point)) continue;
        std::vector<Constraint> in, eq;
        for (const auto& c : p.ineqs)
            if (dot(c.normal, point) == c.offset) in.push_back({c.normal, 0});
        for (const auto& c : p.eqs) eq.push_back({c.normal, 0});
        raw.push_back(make_polyhedron(std::move(in), std::move(eq), set.dim));
    }
    return {make_set_opt(std::move(raw), set.dim), ConeKind::Tangent, point, std::nullopt};
}

inline ConeResult regular_normal_cone(const PolyhedralSet& set, const RVector& point) {
    ConeResult t = tangent_cone(set, point);
    PolyhedralSet cone =
        t.cone.empty() ? empty_set(set.dim) : polar_cone(t.cone);
    return {std::move(cone), ConeKind::RegularNormal, point, std::nullopt};
}

// Limiting normal cone via the local cone model: near the point the set
// agrees with point + tangent cone, regular normal cones are constant on the
// relative interiors of the sign cells of the localized constraint normals,
// and scaling invariance makes one witness per cell enumerate every stratum.
inline ConeResult limiting_normal_cone(const PolyhedralSet& set, const RVector& point) {
    ConeResult t = tangent_cone(set, point);
    if (t.cone.empty())
        return {empty_set(set.dim), ConeKind::LimitingNormal, point, std::nullopt};
    const PolyhedralSet& local = t.cone;
    std::vector<RVector> normals = constraint_normals(local);
    std::vector<std::optional<ConvexPolyhedron>> raw;
    auto add_normals_at = [&](const RVector& w) {
        if (!local.contains(w)) return;
        ConeResult at = regular_normal_cone(local, w);
        for (auto& piece : at.cone.pieces) raw.emplace_back(std::move(piece));
    };
    if (normals.empty()) {
        add_normals_at(zero_vector(set.dim));
    } else {
        for (const auto& cell : sign_cells(normals)) add_normals_at(cell.witness);
    }
    return {make_set_opt(std::move(raw), set.dim), ConeKind::LimitingNormal, point, std::nullopt};
}

// Directional limiting normal cone N(point; dir) = N_{T(point)}(dir); empty
// for directions outside the tangent cone, the limiting cone for dir = 0.
inline ConeResult directional_limiting_normal_cone(const PolyhedralSet& set,
                                                   const RVector& point, const RVector& dir) {
    if (dir.dim() != set.dim) throw DimensionError("directional cone: direction dimension");
    ConeResult t = tangent_cone(set, point);
    ConeResult inner = limiting_normal_cone(t.cone, dir);
    return {std::move(inner.cone), ConeKind::DirectionalLimitingNormal, point, dir};
}

inline ConeResult cone_of(const PolyhedralSet& set, const RVector& point, ConeKind kind,
                          const std::optional<RVector>& dir = std::nullopt) {
    switch (kind) {
        case ConeKind::Tangent: return tangent_cone(set, point);
        case ConeKind::RegularNormal: return regular_normal_cone(set, point);
        case ConeKind::LimitingNormal: return limiting_normal_cone(set, point);
        case ConeKind::DirectionalLimitingNormal:
            if (!dir) throw Error("directional cone requires a direction");
            return directional_limiting_normal_cone(set, point, *dir);
    }
    throw Error("unknown cone kind");
}

// ---------------------------------------------------------------------------
// Change of coordinates (affine map with full row rank): cones of the
// pre-image {x : Ax + shift in C} expressed through the cones of C.

inline RMatrix matrix_from_rows(const std::vector<RVector>& rows, int cols) {
    RMatrix m(static_cast<int>(rows.size()), cols);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < cols; ++j) m.at(static_cast<int>(i), j) = rows[i][j];
    return m;
}

inline ConeResult preimage_cones(const RMatrix& map, const RVector& shift,
                                 const PolyhedralSet& C, const RVector& x, ConeKind kind,
                                 const std::optional<RVector>& dir = std::nullopt) {
    if (map.rows != C.dim || map.cols != x.dim() || shift.dim() != C.dim)
        throw DimensionError("preimage_cones: shape mismatch");
    if (rank(map) != map.rows) throw Error("Lemma 2.1 hypothesis violated: rank deficient map");
    RVector gx = mat_vec(map, x) + shift;
    std::optional<RVector> image_dir;
    if (kind == ConeKind::DirectionalLimitingNormal) {
        if (!dir) throw Error("preimage_cones: directional kind requires a direction");
        image_dir = mat_vec(map, *dir);
    }
    ConeResult base = cone_of(C, gx, kind, image_dir);
    PolyhedralSet cone;
    if (kind == ConeKind::Tangent) {
        cone = affine_preimage(base.cone, map, zero_vector(C.dim));
        if (!C.contains(gx)) cone = empty_set(map.cols);
    } else {
        cone = base.cone.empty() ? empty_set(map.cols)
                                 : affine_image(base.cone, transpose(map), zero_vector(map.cols));
    }
    return {std::move(cone), kind, x, dir};
}

// ---------------------------------------------------------------------------
// Cartesian products (Lemma 2.2). The product formula is exact for regular
// and limiting normals; for tangents and directional normals it is an upper
// estimate, so the direct computation is reported alongside.

struct ProductConePart {
    PolyhedralSet set;
    RVector point;
    std::optional<RVector> dir;
};

struct ProductCones {
    ConeResult product_formula;        // right-hand side of Lemma 2.2
    std::optional<ConeResult> direct;  // left-hand side, for the estimate kinds
    std::optional<bool> equality;      // whether both sides agree
};

inline ProductCones product_cones(const std::vector<ProductConePart>& parts, ConeKind kind) {
    if (parts.empty()) throw Error("product_cones: no parts");
    PolyhedralSet rhs = cone_of(parts[0].set, parts[0].point, kind, parts[0].dir).cone;
    PolyhedralSet amb = parts[0].set;
    RVector point = parts[0].point;
    std::optional<RVector> dir = parts[0].dir;
    for (size_t i = 1; i < parts.size(); ++i) {
        rhs = cartesian_product(rhs, cone_of(parts[i].set, parts[i].point, kind, parts[i].dir).cone);
        amb = cartesian_product(amb, parts[i].set);
        point = concat(point, parts[i].point);
        if (dir && parts[i].dir) dir = concat(*dir, *parts[i].dir);
    }
    ProductCones out;
    out.product_formula = {rhs, kind, point, kind == ConeKind::DirectionalLimitingNormal ? dir : std::nullopt};
    if (kind == ConeKind::Tangent || kind == ConeKind::DirectionalLimitingNormal) {
        ConeResult direct = cone_of(amb, point, kind, dir);
        out.equality = set_equal(direct.cone, rhs);
        out.direct = std::move(direct);
    }
    return out;
}

}  // namespace polyvar
