#pragma once

#include <optional>
#include <vector>

#include "cones.hpp"

namespace polyvar {

class OffGraphError : public Error {
public:
    OffGraphError(const std::string& what, Rational distance)
        : Error(what + " (distance " + polyvar::to_string(distance) + ")"),
          distance(std::move(distance)) {}
    Rational distance;
};

// Set-valued mapping R^m =>> R^n represented by its polyhedral graph with the
// variable split (first m coordinates argument y, last n coordinates value x).
// Derivative objects are returned as PolyMaps again, so the calculus engine
// composes them uniformly.
struct PolyMap {
    PolyhedralSet graph;
    int m = 0;  // domain dimension
    int n = 0;  // range dimension

    RVector graph_point(const RVector& y, const RVector& x) const {
        if (y.dim() != m || x.dim() != n) throw DimensionError("graph_point: dimension");
        return concat(y, x);
    }

    bool on_graph(const RVector& y, const RVector& x) const {
        return graph.contains(graph_point(y, x));
    }

    void require_on_graph(const RVector& y, const RVector& x, const char* who) const {
        RVector p = graph_point(y, x);
        if (!graph.contains(p)) {
            Rational d = graph.empty() ? Rational(-1) : distance_inf(p, graph);
            throw OffGraphError(std::string(who) + ": point not on graph", d);
        }
    }

    friend bool operator==(const PolyMap& a, const PolyMap& b) {
        return a.m == b.m && a.n == b.n && a.graph == b.graph;
    }
};

inline PolyMap make_map(PolyhedralSet graph, int m, int n) {
    if (graph.dim != m + n) throw DimensionError("make_map: graph dimension != m + n");
    return {std::move(graph), m, n};
}

inline PolyhedralSet domain(const PolyMap& M) {
    std::vector<int> keep(static_cast<size_t>(M.m));
    for (int i = 0; i < M.m; ++i) keep[static_cast<size_t>(i)] = i;
    return project_coords(M.graph, keep);
}

inline PolyhedralSet range(const PolyMap& M) {
    std::vector<int> keep(static_cast<size_t>(M.n));
    for (int i = 0; i < M.n; ++i) keep[static_cast<size_t>(i)] = M.m + i;
    return project_coords(M.graph, keep);
}

// M(y): substitute the argument block.
inline PolyhedralSet image_at(const PolyMap& M, const RVector& y) {
    if (y.dim() != M.m) throw DimensionError("image_at: argument dimension");
    RMatrix embed(M.m + M.n, M.n);
    for (int i = 0; i < M.n; ++i) embed.at(M.m + i, i) = 1;
    RVector shift = concat(y, zero_vector(M.n));
    return affine_preimage(M.graph, embed, shift);
}

inline PolyMap inverse(const PolyMap& M) {
    std::vector<int> perm(static_cast<size_t>(M.m + M.n));
    for (int i = 0; i < M.n; ++i) perm[static_cast<size_t>(i)] = M.m + i;
    for (int i = 0; i < M.m; ++i) perm[static_cast<size_t>(M.n + i)] = i;
    return make_map(permute_coords(M.graph, perm), M.n, M.m);
}

// Restriction of the argument to a set (graph intersected with Y x R^n).
inline PolyMap restrict_domain(const PolyMap& M, const PolyhedralSet& Y) {
    if (Y.dim != M.m) throw DimensionError("restrict_domain: dimension");
    return make_map(intersect(M.graph, cartesian_product(Y, full_set(M.n))), M.m, M.n);
}

inline PolyMap translate_map(const PolyMap& M, const RVector& dy, const RVector& dx) {
    return make_map(translate(M.graph, concat(dy, dx)), M.m, M.n);
}

inline PolyMap scale_map(const PolyMap& M, const Rational& s) {
    if (s == 0) throw Error("scale_map: zero scale");
    RMatrix d(M.m + M.n, M.m + M.n);
    for (int i = 0; i < M.m; ++i) d.at(i, i) = 1;
    for (int i = M.m; i < M.m + M.n; ++i) d.at(i, i) = Rational(1) / s;  // x -> x/s lands on gph sM
    return make_map(affine_preimage(M.graph, d, zero_vector(M.m + M.n)), M.m, M.n);
}

inline PolyMap affine_map(const RMatrix& A, const RVector& b) {
    int m = A.cols, n = A.rows;
    std::vector<Constraint> eqs;
    for (int i = 0; i < n; ++i) {
        RVector v(m + n);
        for (int j = 0; j < m; ++j) v[j] = A.at(i, j);
        v[m + i] = -1;  // A y - x = -b
        eqs.push_back({std::move(v), -b[i]});
    }
    return make_map(make_set({*make_polyhedron({}, std::move(eqs), m + n)}, m + n), m, n);
}

// ---------------------------------------------------------------------------
// Generalized derivatives: cones to the graph, re-read as mappings.

inline PolyMap graphical_derivative(const PolyMap& M, const RVector& y, const RVector& x) {
    M.require_on_graph(y, x, "graphical_derivative");
    return make_map(tangent_cone(M.graph, M.graph_point(y, x)).cone, M.m, M.n);
}

namespace detail {

// A normal cone to gph M lives in (y*, xraw*) coordinates; the coderivative
// maps x* to y* with (y*, -x*) in the cone. Graph transform: substitute
// (x*, y*) -> (y*, -x*), a plain coordinate change.
inline PolyMap coderivative_from_cone(const PolyhedralSet& cone, int m, int n) {
    RMatrix t(m + n, n + m);  // source coords (y*, xraw*), arg coords (x*, y*)
    for (int i = 0; i < m; ++i) t.at(i, n + i) = 1;
    for (int i = 0; i < n; ++i) t.at(m + i, i) = -1;
    return make_map(affine_preimage(cone, t, zero_vector(m + n)), n, m);
}

}  // namespace detail

inline PolyMap regular_coderivative(const PolyMap& M, const RVector& y, const RVector& x) {
    M.require_on_graph(y, x, "regular_coderivative");
    ConeResult c = regular_normal_cone(M.graph, M.graph_point(y, x));
    return detail::coderivative_from_cone(c.cone, M.m, M.n);
}

inline PolyMap limiting_coderivative(const PolyMap& M, const RVector& y, const RVector& x) {
    M.require_on_graph(y, x, "limiting_coderivative");
    ConeResult c = limiting_normal_cone(M.graph, M.graph_point(y, x));
    return detail::coderivative_from_cone(c.cone, M.m, M.n);
}

inline PolyMap directional_limiting_coderivative(const PolyMap& M, const RVector& y,
                                                 const RVector& x, const RVector& v,
                                                 const RVector& u) {
    M.require_on_graph(y, x, "directional_limiting_coderivative");
    ConeResult c = directional_limiting_normal_cone(M.graph, M.graph_point(y, x), concat(v, u));
    return detail::coderivative_from_cone(c.cone, M.m, M.n);
}

}  // namespace polyvar
