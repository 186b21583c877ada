#pragma once

#include <optional>
#include <vector>

#include "maps.hpp"

namespace polyvar {

struct ExtValue {
    enum Kind { Finite, PlusInf, MinusInf } kind = PlusInf;
    Rational value;  // valid when Finite

    bool finite() const { return kind == Finite; }
    static ExtValue finite_value(Rational v) { return {Finite, std::move(v)}; }
    static ExtValue plus_inf() { return {PlusInf, 0}; }
    static ExtValue minus_inf() { return {MinusInf, 0}; }

    friend bool operator==(const ExtValue& a, const ExtValue& b) {
        return a.kind == b.kind && (a.kind != Finite || a.value == b.value);
    }
};

inline std::string to_string(const ExtValue& v) {
    switch (v.kind) {
        case ExtValue::Finite: return to_string(v.value);
        case ExtValue::PlusInf: return "+inf";
        case ExtValue::MinusInf: return "-inf";
    }
    return "?";
}

// Extended-real piecewise linear function represented by its polyhedral
// epigraph in dimension n + 1 (last coordinate is the function level).
struct PLFunction {
    PolyhedralSet epi;
    int n = 0;

    friend bool operator==(const PLFunction& a, const PLFunction& b) {
        return a.n == b.n && a.epi == b.epi;
    }
};

// The epigraph invariant: (0, ..., 0, 1) must be a recession direction of
// every piece, i.e. inequality normals end with a nonpositive entry and
// equality normals end with zero.
inline PLFunction make_pl_function(PolyhedralSet epi, int n) {
    if (epi.dim != n + 1) throw DimensionError("make_pl_function: epigraph dimension");
    for (const auto& p : epi.pieces) {
        for (const auto& c : p.ineqs)
            if (c.normal[n] > 0) throw Error("make_pl_function: not an epigraph (bounded above)");
        for (const auto& c : p.eqs)
            if (c.normal[n] != 0) throw Error("make_pl_function: not an epigraph (level pinned)");
    }
    return {std::move(epi), n};
}

// f(x) by the epigraph LP  min alpha  s.t. (x, alpha) in epi.
inline ExtValue value(const PLFunction& f, const RVector& x) {
    if (x.dim() != f.n) throw DimensionError("value: argument dimension");
    std::optional<Rational> best;
    for (const auto& p : f.epi.pieces) {
        LinearSystem sys;
        sys.dim = 1;
        bool infeasible = false;
        for (const auto& c : p.ineqs) {
            Rational head = dot(slice(c.normal, 0, f.n), x);
            if (c.normal[f.n] == 0) {
                if (head > c.offset) { infeasible = true; break; }
            } else {
                sys.ineqs.push_back({RVector{c.normal[f.n]}, c.offset - head});
            }
        }
        if (infeasible) continue;
        for (const auto& c : p.eqs)
            if (dot(slice(c.normal, 0, f.n), x) != c.offset) { infeasible = true; break; }
        if (infeasible) continue;
        LpResult r = solve_lp(RVector{Rational(1)}, sys);
        if (r.status == LpStatus::Unbounded) return ExtValue::minus_inf();
        if (r.status != LpStatus::Optimal) continue;
        if (!best || r.value < *best) best = r.value;
    }
    if (!best) return ExtValue::plus_inf();
    return ExtValue::finite_value(*best);
}

inline RVector epi_point(const PLFunction& f, const RVector& x) {
    ExtValue v = value(f, x);
    if (!v.finite()) throw Error("function value not finite at the query point");
    return concat(x, RVector{v.value});
}

// Subderivative df(x): epigraph is the tangent cone to epi f at (x, f(x)).
inline PLFunction subderivative(const PLFunction& f, const RVector& x) {
    return make_pl_function(tangent_cone(f.epi, epi_point(f, x)).cone, f.n);
}

namespace detail {

// {x* : (x*, level) in cone}
inline PolyhedralSet level_slice(const PolyhedralSet& cone, int n, const Rational& level) {
    RMatrix embed(n + 1, n);
    for (int i = 0; i < n; ++i) embed.at(i, i) = 1;
    RVector shift(n + 1);
    shift[n] = level;
    return affine_preimage(cone, embed, shift);
}

}  // namespace detail

inline PolyhedralSet regular_subdifferential(const PLFunction& f, const RVector& x) {
    ConeResult c = regular_normal_cone(f.epi, epi_point(f, x));
    return detail::level_slice(c.cone, f.n, Rational(-1));
}

inline PolyhedralSet limiting_subdifferential(const PLFunction& f, const RVector& x) {
    ConeResult c = limiting_normal_cone(f.epi, epi_point(f, x));
    return detail::level_slice(c.cone, f.n, Rational(-1));
}

inline PolyhedralSet directional_subdifferential(const PLFunction& f, const RVector& x,
                                                 const RVector& u, const Rational& mu) {
    ConeResult c = directional_limiting_normal_cone(f.epi, epi_point(f, x), concat(u, RVector{mu}));
    return detail::level_slice(c.cone, f.n, Rational(-1));
}

inline PolyhedralSet singular_directional_subdifferential(const PLFunction& f, const RVector& x,
                                                          const RVector& u, const Rational& mu) {
    ConeResult c = directional_limiting_normal_cone(f.epi, epi_point(f, x), concat(u, RVector{mu}));
    return detail::level_slice(c.cone, f.n, Rational(0));
}

// Graph of a finite-valued PL function as a PolyMap R^n -> R. The affine
// piece attaining the minimum is constant on each cell of the arrangement
// spanned by the lower-facet comparisons and domain facets, so the graph is
// assembled cell by cell.
inline PolyMap graph_of(const PLFunction& f) {
    int n = f.n;
    struct Lower {
        RVector grad;  // alpha = <grad, x> + c on the piece
        Rational c;
        const ConvexPolyhedron* piece;
    };
    std::vector<Lower> lowers;
    for (const auto& p : f.epi.pieces) {
        for (const auto& con : p.ineqs) {
            if (con.normal[n] >= 0) continue;
            // <a, x> + a_n alpha <= b with a_n < 0 means alpha >= <a, x>/d - b/d
            Rational d = -con.normal[n];
            Lower l{RVector(n), -con.offset / d, &p};
            for (int i = 0; i < n; ++i) l.grad[i] = con.normal[i] / d;
            lowers.push_back(std::move(l));
        }
    }
    // hyperplanes: pairwise equal-value loci of the affine candidates plus all
    // epigraph facets projected to x (domain boundaries)
    std::vector<Constraint> hs;
    auto push = [&](Constraint c) {
        if (c.normal.is_zero()) return;
        for (int i = 0; i < c.normal.dim(); ++i) {
            if (c.normal[i] == 0) continue;
            if (c.normal[i] < 0) { c.normal = -c.normal; c.offset = -c.offset; }
            break;
        }
        detail::scale_constraint(c);
        hs.push_back(std::move(c));
    };
    for (size_t i = 0; i < lowers.size(); ++i)
        for (size_t j = i + 1; j < lowers.size(); ++j)
            push({lowers[i].grad - lowers[j].grad, lowers[j].c - lowers[i].c});
    for (const auto& p : f.epi.pieces) {
        for (const auto& con : p.ineqs)
            if (con.normal[n] == 0) push({slice(con.normal, 0, n), con.offset});
        for (const auto& con : p.eqs) push({slice(con.normal, 0, n), con.offset});
    }
    std::sort(hs.begin(), hs.end());
    hs.erase(std::unique(hs.begin(), hs.end()), hs.end());

    std::vector<std::optional<ConvexPolyhedron>> raw;
    auto cells = hs.empty() ? std::vector<SignCell>{{{}, zero_vector(n)}} : affine_cells(hs, n);
    for (const auto& cell : cells) {
        ExtValue v = value(f, cell.witness);
        if (v.kind == ExtValue::MinusInf) throw Error("graph_of: function unbounded below");
        if (v.kind == ExtValue::PlusInf) continue;  // outside the domain
        // the attaining affine candidate is cell-constant; find it
        const Lower* active = nullptr;
        for (const auto& l : lowers) {
            if (dot(l.grad, cell.witness) + l.c == v.value && l.piece->contains(concat(cell.witness, RVector{v.value}))) {
                active = &l;
                break;
            }
        }
        if (!active) throw Error("graph_of: no supporting affine piece (piece unbounded below?)");
        // graph piece: closure of the cell, alpha pinned to the active affine
        std::vector<Constraint> in, eq;
        for (size_t k = 0; k < hs.size(); ++k) {
            RVector v2(n + 1);
            for (int i = 0; i < n; ++i) v2[i] = hs[k].normal[i];
            if (cell.signs[k] > 0) in.push_back({-v2, -hs[k].offset});
            else if (cell.signs[k] < 0) in.push_back({v2, hs[k].offset});
            else eq.push_back({v2, hs[k].offset});
        }
        RVector pin(n + 1);
        for (int i = 0; i < n; ++i) pin[i] = active->grad[i];
        pin[n] = -1;
        eq.push_back({std::move(pin), -active->c});
        raw.push_back(make_polyhedron(std::move(in), std::move(eq), n + 1));
    }
    PolyMap g = make_map(make_set_opt(std::move(raw), n + 1), n, 1);
    // single-valuedness across cell closures; a violation means f jumps and
    // its graph is not closed (not Lipschitz), which callers must not see
    for (size_t i = 0; i < g.graph.pieces.size(); ++i) {
        for (size_t j = i + 1; j < g.graph.pieces.size(); ++j) {
            // both pieces pin alpha affinely; on a shared x they must agree
            detail::RawSystem joint;
            joint.dim = n + 2;  // (x, alpha_i, alpha_j)
            auto lift = [&](const ConvexPolyhedron& p, int slot, std::vector<Constraint>& in,
                            std::vector<Constraint>& eq2) {
                for (const auto& c : p.ineqs) {
                    RVector v(n + 2);
                    for (int k = 0; k < n; ++k) v[k] = c.normal[k];
                    v[n + slot] = c.normal[n];
                    in.push_back({std::move(v), c.offset});
                }
                for (const auto& c : p.eqs) {
                    RVector v(n + 2);
                    for (int k = 0; k < n; ++k) v[k] = c.normal[k];
                    v[n + slot] = c.normal[n];
                    eq2.push_back({std::move(v), c.offset});
                }
            };
            LinearSystem sys;
            sys.dim = n + 2;
            lift(g.graph.pieces[i], 0, sys.ineqs, sys.eqs);
            lift(g.graph.pieces[j], 1, sys.ineqs, sys.eqs);
            RVector diff(n + 2);
            diff[n] = 1;
            diff[n + 1] = -1;
            LpResult hi = solve_lp_max(diff, sys);
            LpResult lo = solve_lp(diff, sys);
            bool mismatch = (hi.status == LpStatus::Optimal && hi.value != 0) ||
                            (lo.status == LpStatus::Optimal && lo.value != 0) ||
                            hi.status == LpStatus::Unbounded || lo.status == LpStatus::Unbounded;
            if (mismatch) throw Error("graph_of: function is discontinuous (graph not closed)");
        }
    }
    return g;
}

// Indicator function of a set (0 on the set, +inf outside).
inline PLFunction indicator(const PolyhedralSet& Q) {
    std::vector<std::optional<ConvexPolyhedron>> raw;
    for (const auto& p : Q.pieces) {
        std::vector<Constraint> in, eq;
        auto pad = [&](const Constraint& c) {
            RVector v(Q.dim + 1);
            for (int i = 0; i < Q.dim; ++i) v[i] = c.normal[i];
            return Constraint{std::move(v), c.offset};
        };
        for (const auto& c : p.ineqs) in.push_back(pad(c));
        for (const auto& c : p.eqs) eq.push_back(pad(c));
        RVector lower(Q.dim + 1);
        lower[Q.dim] = -1;  // alpha >= 0
        in.push_back({std::move(lower), Rational(0)});
        raw.push_back(make_polyhedron(std::move(in), std::move(eq), Q.dim + 1));
    }
    return make_pl_function(make_set_opt(std::move(raw), Q.dim + 1), Q.dim);
}

}  // namespace polyvar
