#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "polyhedron.hpp"

namespace polyvar {

// Canonicalized finite union of convex polyhedra: no piece contained in
// another, pieces in lexicographic order. The empty set is the empty union.
struct PolyhedralSet {
    int dim = 0;
    std::vector<ConvexPolyhedron> pieces;

    bool empty() const { return pieces.empty(); }

    bool contains(const RVector& z) const {
        return std::any_of(pieces.begin(), pieces.end(),
                           [&](const ConvexPolyhedron& p) { return p.contains(z); });
    }

    bool is_cone() const {
        return std::all_of(pieces.begin(), pieces.end(),
                           [](const ConvexPolyhedron& p) { return p.is_cone(); });
    }

    friend bool operator==(const PolyhedralSet& a, const PolyhedralSet& b) {
        return a.dim == b.dim && a.pieces == b.pieces;
    }
};

inline PolyhedralSet make_set_opt(std::vector<std::optional<ConvexPolyhedron>> raw, int dim) {
    check_dim(dim, "make_set");
    std::vector<ConvexPolyhedron> pieces;
    for (auto& p : raw) {
        if (!p) continue;
        if (p->dim != dim) throw DimensionError("make_set: piece dimension mismatch");
        pieces.push_back(std::move(*p));
    }
    std::sort(pieces.begin(), pieces.end());
    pieces.erase(std::unique(pieces.begin(), pieces.end()), pieces.end());
    // pairwise redundancy: drop pieces contained in another piece
    std::vector<bool> dead(pieces.size(), false);
    for (size_t i = 0; i < pieces.size(); ++i) {
        if (dead[i]) continue;
        for (size_t j = 0; j < pieces.size(); ++j) {
            if (i == j || dead[j]) continue;
            if (piece_subset(pieces[i], pieces[j])) { dead[i] = true; break; }
        }
    }
    PolyhedralSet s;
    s.dim = dim;
    for (size_t i = 0; i < pieces.size(); ++i)
        if (!dead[i]) s.pieces.push_back(std::move(pieces[i]));
    if (static_cast<int>(s.pieces.size()) > limits().max_pieces)
        throw LimitError("make_set: piece count exceeds limit");
    return s;
}

inline PolyhedralSet make_set(std::vector<ConvexPolyhedron> pieces, int dim) {
    std::vector<std::optional<ConvexPolyhedron>> raw;
    for (auto& p : pieces) raw.emplace_back(std::move(p));
    return make_set_opt(std::move(raw), dim);
}

inline PolyhedralSet empty_set(int dim) { return make_set(std::vector<ConvexPolyhedron>{}, dim); }

inline PolyhedralSet full_set(int dim) {
    return make_set(std::vector<ConvexPolyhedron>{full_space(dim)}, dim);
}

inline PolyhedralSet origin_set(int dim) {
    return make_set(std::vector<ConvexPolyhedron>{origin_polyhedron(dim)}, dim);
}

inline PolyhedralSet point_set(const RVector& p) {
    return make_set(std::vector<ConvexPolyhedron>{point_polyhedron(p)}, p.dim());
}

inline bool is_origin_only(const PolyhedralSet& s) {
    return s.pieces.size() == 1 && s.pieces[0] == origin_polyhedron(s.dim);
}

// ---------------------------------------------------------------------------
// Raw constraint-system helpers (pre-canonical); used to assemble operations.

namespace detail {

struct RawSystem {
    int dim = 0;
    std::vector<Constraint> ineqs;
    std::vector<Constraint> eqs;
};

inline RawSystem raw_from(const ConvexPolyhedron& p) { return {p.dim, p.ineqs, p.eqs}; }

// Eliminate variable `var` from the system (projection onto the remaining
// coordinates, keeping indices in order). Equality substitution is preferred;
// otherwise Fourier-Motzkin pairing on the inequalities.
inline RawSystem eliminate_variable(const RawSystem& s, int var) {
    auto drop_coord = [&](const RVector& v) {
        RVector r(v.dim() - 1);
        for (int i = 0, k = 0; i < v.dim(); ++i)
            if (i != var) r[k++] = v[i];
        return r;
    };
    RawSystem out;
    out.dim = s.dim - 1;

    int sub = -1;
    for (size_t i = 0; i < s.eqs.size(); ++i)
        if (s.eqs[i].normal[var] != 0) { sub = static_cast<int>(i); break; }

    if (sub >= 0) {
        const Constraint& e = s.eqs[static_cast<size_t>(sub)];
        Rational piv = e.normal[var];
        auto substitute = [&](const Constraint& c) {
            Rational f = c.normal[var] / piv;
            Constraint r{RVector(s.dim), c.offset - f * e.offset};
            for (int j = 0; j < s.dim; ++j) r.normal[j] = c.normal[j] - f * e.normal[j];
            return Constraint{drop_coord(r.normal), r.offset};
        };
        for (const auto& c : s.ineqs) out.ineqs.push_back(substitute(c));
        for (size_t i = 0; i < s.eqs.size(); ++i)
            if (static_cast<int>(i) != sub) out.eqs.push_back(substitute(s.eqs[i]));
        return out;
    }

    std::vector<Constraint> pos, neg;
    for (const auto& c : s.ineqs) {
        if (c.normal[var] > 0) pos.push_back(c);
        else if (c.normal[var] < 0) neg.push_back(c);
        else out.ineqs.push_back({drop_coord(c.normal), c.offset});
    }
    for (const auto& p : pos) {
        for (const auto& q : neg) {
            // p.normal[var] * q - q.normal[var] * p has zero coefficient on var
            Rational a = p.normal[var], b = -q.normal[var];
            Constraint r{RVector(s.dim), a * q.offset + b * p.offset};
            for (int j = 0; j < s.dim; ++j) r.normal[j] = a * q.normal[j] + b * p.normal[j];
            Constraint dropped{drop_coord(r.normal), r.offset};
            if (dropped.normal.is_zero()) {
                if (dropped.offset < 0) {
                    // infeasible projection piece: encode as 0 <= -1
                    out.ineqs.push_back({zero_vector(out.dim), Rational(-1)});
                }
                continue;
            }
            detail::scale_constraint(dropped);
            out.ineqs.push_back(std::move(dropped));
        }
    }
    for (const auto& c : s.eqs) out.eqs.push_back({drop_coord(c.normal), c.offset});
    std::sort(out.ineqs.begin(), out.ineqs.end());
    out.ineqs.erase(std::unique(out.ineqs.begin(), out.ineqs.end()), out.ineqs.end());
    return out;
}

// Eliminate a sorted list of variable indices.
inline RawSystem eliminate_variables(RawSystem s, std::vector<int> vars) {
    std::sort(vars.begin(), vars.end(), std::greater<int>());
    for (int v : vars) s = eliminate_variable(s, v);
    return s;
}

inline std::optional<ConvexPolyhedron> finish(const RawSystem& s) {
    return make_polyhedron(s.ineqs, s.eqs, s.dim);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Set operations

inline PolyhedralSet intersect(const PolyhedralSet& a, const PolyhedralSet& b) {
    if (a.dim != b.dim) throw DimensionError("intersect: dimension mismatch");
    std::vector<std::optional<ConvexPolyhedron>> raw;
    for (const auto& p : a.pieces) {
        for (const auto& q : b.pieces) {
            std::vector<Constraint> in = p.ineqs, eq = p.eqs;
            in.insert(in.end(), q.ineqs.begin(), q.ineqs.end());
            eq.insert(eq.end(), q.eqs.begin(), q.eqs.end());
            raw.push_back(make_polyhedron(std::move(in), std::move(eq), a.dim));
        }
    }
    return make_set_opt(std::move(raw), a.dim);
}

inline PolyhedralSet cartesian_product(const PolyhedralSet& a, const PolyhedralSet& b) {
    int dim = a.dim + b.dim;
    auto pad_front = [&](const Constraint& c) {
        RVector n(dim);
        for (int i = 0; i < a.dim; ++i) n[i] = c.normal[i];
        return Constraint{std::move(n), c.offset};
    };
    auto pad_back = [&](const Constraint& c) {
        RVector n(dim);
        for (int i = 0; i < b.dim; ++i) n[a.dim + i] = c.normal[i];
        return Constraint{std::move(n), c.offset};
    };
    std::vector<std::optional<ConvexPolyhedron>> raw;
    for (const auto& p : a.pieces) {
        for (const auto& q : b.pieces) {
            std::vector<Constraint> in, eq;
            for (const auto& c : p.ineqs) in.push_back(pad_front(c));
            for (const auto& c : q.ineqs) in.push_back(pad_back(c));
            for (const auto& c : p.eqs) eq.push_back(pad_front(c));
            for (const auto& c : q.eqs) eq.push_back(pad_back(c));
            raw.push_back(make_polyhedron(std::move(in), std::move(eq), dim));
        }
    }
    return make_set_opt(std::move(raw), dim);
}

// {A z + shift : z in set}; exact via projection of the lifted graph system.
inline PolyhedralSet affine_image(const PolyhedralSet& set, const RMatrix& map,
                                  const RVector& shift) {
    if (map.cols != set.dim || map.rows != shift.dim())
        throw DimensionError("affine_image: shape mismatch");
    int n = set.dim, m = map.rows;
    std::vector<std::optional<ConvexPolyhedron>> raw;
    for (const auto& p : set.pieces) {
        detail::RawSystem lift;
        lift.dim = n + m;  // coordinates (z, y)
        auto pad = [&](const Constraint& c) {
            RVector v(n + m);
            for (int i = 0; i < n; ++i) v[i] = c.normal[i];
            return Constraint{std::move(v), c.offset};
        };
        for (const auto& c : p.ineqs) lift.ineqs.push_back(pad(c));
        for (const auto& c : p.eqs) lift.eqs.push_back(pad(c));
        for (int i = 0; i < m; ++i) {  // y_i - (A z)_i = shift_i
            RVector v(n + m);
            for (int j = 0; j < n; ++j) v[j] = -map.at(i, j);
            v[n + i] = 1;
            lift.eqs.push_back({std::move(v), shift[i]});
        }
        std::vector<int> vars(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) vars[static_cast<size_t>(i)] = i;
        raw.push_back(detail::finish(detail::eliminate_variables(std::move(lift), vars)));
    }
    return make_set_opt(std::move(raw), m);
}

// {x : A x + shift in set}; pure substitution, exact.
inline PolyhedralSet affine_preimage(const PolyhedralSet& set, const RMatrix& map,
                                     const RVector& shift) {
    if (map.rows != set.dim || shift.dim() != set.dim)
        throw DimensionError("affine_preimage: shape mismatch");
    int n = map.cols;
    RMatrix mt = transpose(map);
    auto substitute = [&](const Constraint& c) {
        return Constraint{mat_vec(mt, c.normal), c.offset - dot(c.normal, shift)};
    };
    std::vector<std::optional<ConvexPolyhedron>> raw;
    for (const auto& p : set.pieces) {
        std::vector<Constraint> in, eq;
        for (const auto& c : p.ineqs) in.push_back(substitute(c));
        for (const auto& c : p.eqs) eq.push_back(substitute(c));
        raw.push_back(make_polyhedron(std::move(in), std::move(eq), n));
    }
    return make_set_opt(std::move(raw), n);
}

inline PolyhedralSet minkowski_sum(const PolyhedralSet& a, const PolyhedralSet& b) {
    if (a.dim != b.dim) throw DimensionError("minkowski_sum: dimension mismatch");
    int n = a.dim;
    // (w, x) with x in a, w - x in b; project onto w
    std::vector<std::optional<ConvexPolyhedron>> raw;
    for (const auto& p : a.pieces) {
        for (const auto& q : b.pieces) {
            detail::RawSystem lift;
            lift.dim = 2 * n;  // (w, x)
            auto on_x = [&](const Constraint& c) {
                RVector v(2 * n);
                for (int i = 0; i < n; ++i) v[n + i] = c.normal[i];
                return Constraint{std::move(v), c.offset};
            };
            auto on_diff = [&](const Constraint& c) {  // <a, w - x> <= b
                RVector v(2 * n);
                for (int i = 0; i < n; ++i) {
                    v[i] = c.normal[i];
                    v[n + i] = -c.normal[i];
                }
                return Constraint{std::move(v), c.offset};
            };
            for (const auto& c : p.ineqs) lift.ineqs.push_back(on_x(c));
            for (const auto& c : p.eqs) lift.eqs.push_back(on_x(c));
            for (const auto& c : q.ineqs) lift.ineqs.push_back(on_diff(c));
            for (const auto& c : q.eqs) lift.eqs.push_back(on_diff(c));
            std::vector<int> vars;
            for (int i = 0; i < n; ++i) vars.push_back(n + i);
            raw.push_back(detail::finish(detail::eliminate_variables(std::move(lift), vars)));
        }
    }
    return make_set_opt(std::move(raw), n);
}

inline PolyhedralSet translate(const PolyhedralSet& s, const RVector& by) {
    return affine_preimage(s, identity_matrix(s.dim), -by);
}

inline PolyhedralSet negate(const PolyhedralSet& s) {
    RMatrix m(s.dim, s.dim);
    for (int i = 0; i < s.dim; ++i) m.at(i, i) = -1;
    return affine_preimage(s, m, zero_vector(s.dim));
}

// Projection onto a subset of coordinates (in the given order).
inline PolyhedralSet project_coords(const PolyhedralSet& s, const std::vector<int>& keep) {
    RMatrix m(static_cast<int>(keep.size()), s.dim);
    for (size_t i = 0; i < keep.size(); ++i) m.at(static_cast<int>(i), keep[i]) = 1;
    return affine_image(s, m, zero_vector(static_cast<int>(keep.size())));
}

// Coordinate permutation: result coordinate i reads source coordinate perm[i].
inline PolyhedralSet permute_coords(const PolyhedralSet& s, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != s.dim)
        throw DimensionError("permute_coords: permutation size mismatch");
    RMatrix m(s.dim, s.dim);  // maps result coords x to source coords: (Mx)_k = x_{pos of k}
    for (int i = 0; i < s.dim; ++i) m.at(perm[static_cast<size_t>(i)], i) = 1;
    return affine_preimage(s, m, zero_vector(s.dim));
}

// min over pieces of the LP  min t  s.t.  -t <= z_i - p_i <= t, z in piece.
inline Rational distance_inf(const RVector& point, const PolyhedralSet& set) {
    if (point.dim() != set.dim) throw DimensionError("distance_inf: dimension mismatch");
    if (set.empty()) throw Error("distance to empty set");
    std::optional<Rational> best;
    int n = set.dim;
    for (const auto& p : set.pieces) {
        LinearSystem sys;
        sys.dim = n + 1;  // (z, t)
        auto pad = [&](const Constraint& c) {
            RVector v(n + 1);
            for (int i = 0; i < n; ++i) v[i] = c.normal[i];
            return Constraint{std::move(v), c.offset};
        };
        for (const auto& c : p.ineqs) sys.ineqs.push_back(pad(c));
        for (const auto& c : p.eqs) sys.eqs.push_back(pad(c));
        for (int i = 0; i < n; ++i) {
            RVector up(n + 1), dn(n + 1);
            up[i] = 1; up[n] = -1;   // z_i - t <= p_i
            dn[i] = -1; dn[n] = -1;  // -z_i - t <= -p_i
            sys.ineqs.push_back({std::move(up), point[i]});
            sys.ineqs.push_back({std::move(dn), -point[i]});
        }
        LpResult r = solve_lp(unit_vector(n + 1, n), sys);
        if (r.status != LpStatus::Optimal) continue;  // cannot happen: t bounded below by 0
        if (!best || r.value < *best) best = r.value;
    }
    return *best;
}

}  // namespace polyvar
