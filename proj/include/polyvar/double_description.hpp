#pragma once

#include <algorithm>
#include <vector>

#include "set.hpp"

namespace polyvar {

// V-representation of a convex polyhedral cone: nonnegative combinations of
// rays plus arbitrary combinations of lines.
struct GeneratorSet {
    int dim = 0;
    std::vector<RVector> rays;
    std::vector<RVector> lines;
};

namespace detail {

// Canonical form: lines become an RREF basis of their span (first nonzero
// entry +1), rays are reduced modulo the line span, scaled and sorted.
inline void canonicalize_generators(GeneratorSet& g) {
    if (!g.lines.empty()) {
        RMatrix m(static_cast<int>(g.lines.size()), g.dim);
        for (size_t i = 0; i < g.lines.size(); ++i)
            for (int j = 0; j < g.dim; ++j) m.at(static_cast<int>(i), j) = g.lines[i][j];
        std::vector<int> pivots = rref(m);
        g.lines.clear();
        for (size_t r = 0; r < pivots.size(); ++r) g.lines.push_back(m.row(static_cast<int>(r)));
        // reduce rays modulo the line span
        for (auto& ray : g.rays) {
            for (size_t r = 0; r < pivots.size(); ++r) {
                Rational f = ray[pivots[r]];
                if (f == 0) continue;
                for (int j = 0; j < g.dim; ++j) ray[j] -= f * g.lines[r][j];
            }
        }
    }
    std::vector<RVector> rays;
    for (auto& r : g.rays) {
        if (!scale_first_nonzero(r)) continue;  // ray collapsed into the line span
        rays.push_back(std::move(r));
    }
    std::sort(rays.begin(), rays.end());
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    g.rays = std::move(rays);
}

}  // namespace detail

// Double description: minimal generators of the cone {x : Ax <= 0, Ex = 0}.
// Halfspaces are inserted one at a time; the lineality space is kept as an
// explicit line basis, and the ray set stays minimal via the combinatorial
// adjacency test of Fukuda-Prodon.
inline GeneratorSet generators(const ConvexPolyhedron& cone) {
    if (!cone.is_cone()) throw Error("generators: input is not a cone");
    int n = cone.dim;
    std::vector<RVector> halfspaces;
    for (const auto& c : cone.ineqs) halfspaces.push_back(c.normal);
    for (const auto& c : cone.eqs) {
        halfspaces.push_back(c.normal);
        halfspaces.push_back(-c.normal);
    }

    std::vector<RVector> lines, rays;
    for (int i = 0; i < n; ++i) lines.push_back(unit_vector(n, i));
    std::vector<RVector> processed;

    auto tight_set = [&](const RVector& r) {
        std::vector<bool> t(processed.size());
        for (size_t k = 0; k < processed.size(); ++k) t[k] = dot(processed[k], r) == 0;
        return t;
    };

    for (const auto& a : halfspaces) {
        int pivot_line = -1;
        for (size_t i = 0; i < lines.size(); ++i)
            if (dot(a, lines[i]) != 0) { pivot_line = static_cast<int>(i); break; }
        if (pivot_line >= 0) {
            RVector l0 = lines[static_cast<size_t>(pivot_line)];
            Rational p0 = dot(a, l0);
            if (p0 > 0) { l0 = -l0; p0 = -p0; }  // now <a, l0> < 0
            std::vector<RVector> new_lines;
            for (size_t i = 0; i < lines.size(); ++i) {
                if (static_cast<int>(i) == pivot_line) continue;
                new_lines.push_back(lines[i] - (dot(a, lines[i]) / p0) * l0);
            }
            for (auto& r : rays) r = r - (dot(a, r) / p0) * l0;
            lines = std::move(new_lines);
            rays.push_back(std::move(l0));
        } else {
            std::vector<RVector> keep, plus, minus;
            for (auto& r : rays) {
                Rational p = dot(a, r);
                if (p == 0) keep.push_back(r);
                else if (p < 0) minus.push_back(r);
                else plus.push_back(r);
            }
            std::vector<RVector> next = keep;
            next.insert(next.end(), minus.begin(), minus.end());
            for (const auto& rp : plus) {
                for (const auto& rm : minus) {
                    // adjacency: no third ray is tight on every constraint
                    // tight at both rp and rm
                    auto tp = tight_set(rp), tm = tight_set(rm);
                    bool adjacent = true;
                    for (const auto& other : rays) {
                        if (other == rp || other == rm) continue;
                        auto to = tight_set(other);
                        bool covers = true;
                        for (size_t k = 0; k < processed.size(); ++k)
                            if (tp[k] && tm[k] && !to[k]) { covers = false; break; }
                        if (covers) { adjacent = false; break; }
                    }
                    if (!adjacent) continue;
                    RVector combo = dot(a, rp) * rm - dot(a, rm) * rp;
                    if (!combo.is_zero()) next.push_back(std::move(combo));
                }
            }
            rays = std::move(next);
        }
        processed.push_back(a);
    }

    GeneratorSet g{n, std::move(rays), std::move(lines)};
    detail::canonicalize_generators(g);
    return g;
}

// H-representation of the polar cone {z* : <z*, r> <= 0, <z*, l> = 0}.
inline std::optional<ConvexPolyhedron> polar_of_generators(const GeneratorSet& g) {
    std::vector<Constraint> in, eq;
    for (const auto& r : g.rays) in.push_back({r, 0});
    for (const auto& l : g.lines) eq.push_back({l, 0});
    return make_polyhedron(std::move(in), std::move(eq), g.dim);
}

// Inverse of `generators`: rebuild the H-representation through the polar
// (double description applied twice, valid by the bipolar theorem).
inline ConvexPolyhedron halfspaces(const GeneratorSet& g) {
    GeneratorSet polar = generators(*polar_of_generators(g));
    std::vector<Constraint> in, eq;
    for (const auto& r : polar.rays) in.push_back({r, 0});
    for (const auto& l : polar.lines) eq.push_back({l, 0});
    return *make_polyhedron(std::move(in), std::move(eq), g.dim);
}

// Polar of a union of cones: intersection of the piecewise polars, which is a
// single convex cone. The polar of the empty union is the whole space.
inline PolyhedralSet polar_cone(const PolyhedralSet& cone) {
    if (!cone.is_cone()) throw Error("polar_cone: input is not a cone union");
    std::vector<Constraint> in, eq;
    for (const auto& piece : cone.pieces) {
        GeneratorSet g = generators(piece);
        for (const auto& r : g.rays) in.push_back({r, 0});
        for (const auto& l : g.lines) eq.push_back({l, 0});
    }
    auto p = make_polyhedron(std::move(in), std::move(eq), cone.dim);
    return make_set_opt({std::move(p)}, cone.dim);
}

}  // namespace polyvar
