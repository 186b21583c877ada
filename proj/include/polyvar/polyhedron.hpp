#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "limits.hpp"
#include "lp.hpp"

namespace polyvar {

// One convex piece in canonical H-representation:
//  - implicit equalities extracted into eqs (reduced row echelon form),
//  - inequality normals reduced modulo the equality row space,
//  - redundant inequalities removed (facets only),
//  - constraints scaled so the first nonzero normal entry is +-1 and sorted.
// Canonical forms of equal polyhedra coincide, so piece equality is
// field-by-field. Empty systems are rejected at construction.
struct ConvexPolyhedron {
    int dim = 0;
    std::vector<Constraint> ineqs;
    std::vector<Constraint> eqs;

    bool contains(const RVector& z) const {
        if (z.dim() != dim) throw DimensionError("contains: point dimension mismatch");
        for (const auto& c : ineqs)
            if (dot(c.normal, z) > c.offset) return false;
        for (const auto& c : eqs)
            if (dot(c.normal, z) != c.offset) return false;
        return true;
    }

    LinearSystem system() const { return LinearSystem{dim, ineqs, eqs}; }

    bool is_cone() const {
        for (const auto& c : ineqs)
            if (c.offset != 0) return false;
        for (const auto& c : eqs)
            if (c.offset != 0) return false;
        return true;
    }

    // No equality constraints in canonical form means full affine hull.
    bool is_full_dimensional() const { return eqs.empty(); }

    friend bool operator==(const ConvexPolyhedron& a, const ConvexPolyhedron& b) {
        return a.dim == b.dim && a.ineqs == b.ineqs && a.eqs == b.eqs;
    }
    friend std::strong_ordering operator<=>(const ConvexPolyhedron& a,
                                            const ConvexPolyhedron& b) {
        if (a.dim != b.dim) return a.dim <=> b.dim;
        auto c = a.eqs <=> b.eqs;
        if (c != std::strong_ordering::equal) return c;
        return a.ineqs <=> b.ineqs;
    }
};

namespace detail {

inline void scale_constraint(Constraint& c) {
    for (int i = 0; i < c.normal.dim(); ++i) {
        if (c.normal[i] != 0) {
            Rational d = abs(c.normal[i]);
            for (int j = 0; j < c.normal.dim(); ++j) c.normal[j] /= d;
            c.offset /= d;
            return;
        }
    }
}

// Reduce eqs to RREF over columns (normal | offset); returns false when the
// system is inconsistent (0 = nonzero).
inline bool reduce_equalities(std::vector<Constraint>& eqs, int dim) {
    if (eqs.empty()) return true;
    RMatrix m(static_cast<int>(eqs.size()), dim + 1);
    for (size_t i = 0; i < eqs.size(); ++i) {
        for (int j = 0; j < dim; ++j) m.at(static_cast<int>(i), j) = eqs[i].normal[j];
        m.at(static_cast<int>(i), dim) = eqs[i].offset;
    }
    rref(m);
    std::vector<Constraint> out;
    for (int i = 0; i < m.rows; ++i) {
        Constraint c{RVector(dim), m.at(i, dim)};
        bool nonzero = false;
        for (int j = 0; j < dim; ++j) {
            c.normal[j] = m.at(i, j);
            nonzero = nonzero || c.normal[j] != 0;
        }
        if (!nonzero) {
            if (c.offset != 0) return false;
            continue;
        }
        out.push_back(std::move(c));
    }
    eqs = std::move(out);
    return true;
}

// Subtract equality rows so the inequality normal has zero entries in all
// equality pivot columns.
inline void reduce_modulo_equalities(Constraint& c, const std::vector<Constraint>& eqs) {
    for (const auto& e : eqs) {
        int pivot = -1;
        for (int j = 0; j < e.normal.dim(); ++j)
            if (e.normal[j] != 0) { pivot = j; break; }
        if (pivot < 0) continue;
        Rational f = c.normal[pivot] / e.normal[pivot];
        if (f == 0) continue;
        for (int j = 0; j < c.normal.dim(); ++j) c.normal[j] -= f * e.normal[j];
        c.offset -= f * e.offset;
    }
}

}  // namespace detail

// Canonicalizing factory; nullopt when the system is infeasible.
inline std::optional<ConvexPolyhedron> make_polyhedron(std::vector<Constraint> ineqs,
                                                       std::vector<Constraint> eqs, int dim) {
    check_dim(dim, "make_polyhedron");
    for (auto& c : ineqs)
        if (c.normal.dim() != dim) throw DimensionError("make_polyhedron: normal dimension");
    for (auto& c : eqs)
        if (c.normal.dim() != dim) throw DimensionError("make_polyhedron: normal dimension");

    // trivial rows
    std::vector<Constraint> in2;
    for (auto& c : ineqs) {
        if (c.normal.is_zero()) {
            if (c.offset < 0) return std::nullopt;
            continue;
        }
        in2.push_back(std::move(c));
    }
    ineqs = std::move(in2);
    std::vector<Constraint> eq2;
    for (auto& c : eqs) {
        if (c.normal.is_zero()) {
            if (c.offset != 0) return std::nullopt;
            continue;
        }
        eq2.push_back(std::move(c));
    }
    eqs = std::move(eq2);

    LinearSystem sys{dim, ineqs, eqs};
    if (!lp_feasible(sys)) return std::nullopt;

    // implicit equalities: inequality with zero maximal slack over the set
    std::vector<Constraint> strict;
    for (size_t i = 0; i < ineqs.size(); ++i) {
        LpResult r = solve_lp(ineqs[i].normal, sys);  // min <a, z>
        if (r.status == LpStatus::Optimal && r.value == ineqs[i].offset)
            eqs.push_back(ineqs[i]);
        else
            strict.push_back(ineqs[i]);
    }
    ineqs = std::move(strict);

    if (!detail::reduce_equalities(eqs, dim)) return std::nullopt;

    std::vector<Constraint> reduced;
    for (auto& c : ineqs) {
        detail::reduce_modulo_equalities(c, eqs);
        if (c.normal.is_zero()) continue;  // feasibility guarantees offset >= 0
        detail::scale_constraint(c);
        reduced.push_back(std::move(c));
    }
    std::sort(reduced.begin(), reduced.end());
    reduced.erase(std::unique(reduced.begin(), reduced.end()), reduced.end());

    // facet filter: drop inequalities implied by the rest
    for (size_t i = 0; i < reduced.size();) {
        std::vector<Constraint> others;
        for (size_t j = 0; j < reduced.size(); ++j)
            if (j != i) others.push_back(reduced[j]);
        LinearSystem rest{dim, others, eqs};
        LpResult r = solve_lp_max(reduced[i].normal, rest);
        if (r.status == LpStatus::Optimal && r.value <= reduced[i].offset)
            reduced.erase(reduced.begin() + static_cast<long>(i));
        else
            ++i;
    }

    std::sort(reduced.begin(), reduced.end());
    ConvexPolyhedron p;
    p.dim = dim;
    p.ineqs = std::move(reduced);
    p.eqs = std::move(eqs);
    if (static_cast<int>(p.ineqs.size() + p.eqs.size()) > limits().max_constraints)
        throw LimitError("make_polyhedron: constraint count exceeds limit");
    return p;
}

inline ConvexPolyhedron full_space(int dim) {
    return *make_polyhedron({}, {}, dim);
}

inline ConvexPolyhedron origin_polyhedron(int dim) {
    std::vector<Constraint> eqs;
    for (int i = 0; i < dim; ++i) eqs.push_back({unit_vector(dim, i), 0});
    return *make_polyhedron({}, std::move(eqs), dim);
}

inline ConvexPolyhedron point_polyhedron(const RVector& p) {
    std::vector<Constraint> eqs;
    for (int i = 0; i < p.dim(); ++i) eqs.push_back({unit_vector(p.dim(), i), p[i]});
    return *make_polyhedron({}, std::move(eqs), p.dim());
}

// P subset of Q, both convex: every constraint of Q is valid on P.
inline bool piece_subset(const ConvexPolyhedron& p, const ConvexPolyhedron& q) {
    if (p.dim != q.dim) throw DimensionError("piece_subset: dimension mismatch");
    LinearSystem sys = p.system();
    for (const auto& c : q.ineqs) {
        LpResult r = solve_lp_max(c.normal, sys);
        if (r.status != LpStatus::Optimal || r.value > c.offset) return false;
    }
    for (const auto& c : q.eqs) {
        LpResult hi = solve_lp_max(c.normal, sys);
        if (hi.status != LpStatus::Optimal || hi.value != c.offset) return false;
        LpResult lo = solve_lp(c.normal, sys);
        if (lo.status != LpStatus::Optimal || lo.value != c.offset) return false;
    }
    return true;
}

}  // namespace polyvar
