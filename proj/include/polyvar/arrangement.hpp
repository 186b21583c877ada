#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "set.hpp"

namespace polyvar {

// One cell of a hyperplane arrangement: the sign of <normal_k, z> - offset_k
// for every hyperplane, plus a relative-interior witness.
struct SignCell {
    std::vector<int> signs;  // in {-1, 0, +1}, one per hyperplane
    RVector witness;
};

namespace detail {

// Margin LP: maximize t subject to the sign pattern held with slack t on the
// strict constraints (t <= 1 keeps the LP bounded). A cell is nonempty exactly
// when the optimum is positive; the optimizer is a relative-interior witness.
inline std::optional<RVector> cell_witness(const std::vector<Constraint>& hyperplanes,
                                           const std::vector<int>& signs, int dim) {
    LinearSystem sys;
    sys.dim = dim + 1;  // (z, t)
    bool any_strict = false;
    for (size_t k = 0; k < hyperplanes.size(); ++k) {
        const auto& h = hyperplanes[k];
        RVector v(dim + 1);
        for (int i = 0; i < dim; ++i) v[i] = h.normal[i];
        if (signs[k] > 0) {
            // <a, z> - t >= b  ->  -<a, z> + t <= -b
            RVector w = -v;
            w[dim] = 1;
            sys.ineqs.push_back({std::move(w), -h.offset});
            any_strict = true;
        } else if (signs[k] < 0) {
            v[dim] = 1;  // <a, z> + t <= b
            sys.ineqs.push_back({std::move(v), h.offset});
            any_strict = true;
        } else {
            sys.eqs.push_back({std::move(v), h.offset});
        }
    }
    RVector cap(dim + 1);
    cap[dim] = 1;
    sys.ineqs.push_back({cap, Rational(1)});
    LpResult r = solve_lp_max(unit_vector(dim + 1, dim), sys);
    if (r.status != LpStatus::Optimal) return std::nullopt;
    if (any_strict && r.value <= 0) return std::nullopt;
    return slice(r.point, 0, dim);
}

inline std::vector<SignCell> enumerate_cells(const std::vector<Constraint>& hyperplanes,
                                             int dim) {
    if (static_cast<int>(hyperplanes.size()) > limits().max_hyperplanes)
        throw LimitError("arrangement: hyperplane count exceeds limit");
    std::vector<SignCell> cells{{{}, zero_vector(dim)}};
    std::vector<Constraint> seen;
    for (const auto& h : hyperplanes) {
        seen.push_back(h);
        std::vector<SignCell> next;
        for (const auto& cell : cells) {
            for (int s : {-1, 0, 1}) {
                std::vector<int> signs = cell.signs;
                signs.push_back(s);
                if (auto w = cell_witness(seen, signs, dim))
                    next.push_back({std::move(signs), std::move(*w)});
            }
        }
        cells = std::move(next);
        if (static_cast<long>(cells.size()) > limits().max_cells)
            throw LimitError("arrangement: cell count exceeds limit");
    }
    std::sort(cells.begin(), cells.end(),
              [](const SignCell& a, const SignCell& b) { return a.signs < b.signs; });
    return cells;
}

}  // namespace detail

// All nonempty sign cells of the central arrangement of the given normals.
inline std::vector<SignCell> sign_cells(const std::vector<RVector>& normals) {
    if (normals.empty()) throw Error("sign_cells: no normals");
    int dim = normals[0].dim();
    std::vector<Constraint> hs;
    for (const auto& n : normals) {
        if (n.dim() != dim) throw DimensionError("sign_cells: dimension mismatch");
        if (n.is_zero()) throw Error("sign_cells: zero normal");
        hs.push_back({n, 0});
    }
    return detail::enumerate_cells(hs, dim);
}

inline std::vector<SignCell> affine_cells(const std::vector<Constraint>& hyperplanes, int dim) {
    for (const auto& h : hyperplanes)
        if (h.normal.is_zero()) throw Error("affine_cells: zero normal");
    return detail::enumerate_cells(hyperplanes, dim);
}

// Hyperplanes carried by a set's constraints, deduplicated up to sign.
inline std::vector<Constraint> constraint_hyperplanes(const PolyhedralSet& s) {
    std::vector<Constraint> hs;
    for (const auto& p : s.pieces) {
        auto add = [&](Constraint c) {
            for (int i = 0; i < c.normal.dim(); ++i) {
                if (c.normal[i] == 0) continue;
                if (c.normal[i] < 0) {
                    c.normal = -c.normal;
                    c.offset = -c.offset;
                }
                break;
            }
            hs.push_back(std::move(c));
        };
        for (const auto& c : p.ineqs) add(c);
        for (const auto& c : p.eqs) add(c);
    }
    std::sort(hs.begin(), hs.end());
    hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
    return hs;
}

// Same, dropping offsets (normals of the homogenized constraints).
inline std::vector<RVector> constraint_normals(const PolyhedralSet& s) {
    std::vector<RVector> ns;
    for (const auto& h : constraint_hyperplanes(s)) ns.push_back(h.normal);
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    return ns;
}

// ---------------------------------------------------------------------------
// Subset decision by the sign-cell method. Membership in either set is
// constant on every cell of the arrangement spanned by both sets'
// constraints, so testing one witness per nonempty cell decides inclusion.
inline bool set_subset(const PolyhedralSet& a, const PolyhedralSet& b,
                       RVector* counterexample = nullptr) {
    if (a.dim != b.dim) throw DimensionError("set_subset: dimension mismatch");
    if (a.pieces == b.pieces) return true;
    // cheap sufficient test: every piece of a inside a single piece of b
    bool covered = true;
    for (const auto& p : a.pieces) {
        bool piece_ok = false;
        for (const auto& q : b.pieces)
            if (piece_subset(p, q)) { piece_ok = true; break; }
        if (!piece_ok) { covered = false; break; }
    }
    if (covered) return true;

    std::vector<Constraint> hs = constraint_hyperplanes(a);
    for (auto& h : constraint_hyperplanes(b)) hs.push_back(h);
    std::sort(hs.begin(), hs.end());
    hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
    for (const auto& cell : detail::enumerate_cells(hs, a.dim)) {
        if (a.contains(cell.witness) && !b.contains(cell.witness)) {
            if (counterexample) *counterexample = cell.witness;
            return false;
        }
    }
    return true;
}

inline bool set_equal(const PolyhedralSet& a, const PolyhedralSet& b) {
    if (a.dim != b.dim) throw DimensionError("set_equal: dimension mismatch");
    if (a.pieces == b.pieces) return true;
    return set_subset(a, b) && set_subset(b, a);
}

}  // namespace polyvar
