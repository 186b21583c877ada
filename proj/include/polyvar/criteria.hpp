#pragma once

#include <optional>
#include <string>
#include <vector>

#include "functions.hpp"

namespace polyvar {

enum class Criterion {
    LRC,
    MC,
    FOSCclm,
    FuzzyInnerCalmnessStar,
    InnerCalmnessStar,
    SumRuleIC,
    IntersectionAubin,
    ChainDualCQ,
    ChainPrimalCQ,
    ProductCQ,
};

inline const char* to_string(Criterion c) {
    switch (c) {
        case Criterion::LRC: return "LRC";
        case Criterion::MC: return "MC";
        case Criterion::FOSCclm: return "FOSCclm";
        case Criterion::FuzzyInnerCalmnessStar: return "FuzzyIC*";
        case Criterion::InnerCalmnessStar: return "InnerCalm*";
        case Criterion::SumRuleIC: return "SumRuleIC";
        case Criterion::IntersectionAubin: return "IntersectionAubin";
        case Criterion::ChainDualCQ: return "ChainDualCQ";
        case Criterion::ChainPrimalCQ: return "ChainPrimalCQ";
        case Criterion::ProductCQ: return "ProductCQ";
    }
    return "?";
}

// Verdict plus certificate for one calmness-type check. A false verdict
// always carries a verifiable witness; moduli are reported in the max norm.
struct CriterionReport {
    Criterion criterion;
    bool verdict = false;
    std::vector<RVector> witness;
    std::optional<Rational> modulus;
    std::string notes;
};

namespace detail {

// First nonzero point of a cone union, used as a violation witness.
inline std::optional<RVector> nonzero_point(const PolyhedralSet& s) {
    for (const auto& piece : s.pieces) {
        GeneratorSet g = generators(piece);
        if (!g.rays.empty()) return g.rays.front();
        if (!g.lines.empty()) return g.lines.front();
    }
    return std::nullopt;
}

// Nonzero direction representatives, one per sign cell of the given normals
// (plus null-space basis directions for the all-zero cell). Directional
// objects built from the tangent model are constant on each cell, so these
// representatives exhaust the quantifier "for all nonzero directions".
inline std::vector<RVector> nonzero_cell_directions(const std::vector<RVector>& normals,
                                                    int dim) {
    std::vector<RVector> dirs;
    if (normals.empty()) {
        for (int i = 0; i < dim; ++i) {
            dirs.push_back(unit_vector(dim, i));
            dirs.push_back(-unit_vector(dim, i));
        }
        return dirs;
    }
    for (const auto& cell : sign_cells(normals))
        if (!cell.witness.is_zero()) dirs.push_back(cell.witness);
    RMatrix m = matrix_from_rows(normals, dim);
    for (const auto& b : nullspace_basis(m)) {
        dirs.push_back(b);
        dirs.push_back(-b);
    }
    std::sort(dirs.begin(), dirs.end());
    dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
    return dirs;
}

// Normals of the graph tangent cone restricted to the value block (the
// argument block fixed to zero); refines the facet structure of DM(.)(0).
inline std::vector<RVector> slice_normals(const PolyhedralSet& tangent, int m, int n) {
    std::vector<RVector> out;
    for (const auto& nrm : constraint_normals(tangent)) {
        RVector tail = slice(nrm, m, n);
        if (tail.is_zero()) continue;
        for (int i = 0; i < n; ++i) {
            if (tail[i] == 0) continue;
            if (tail[i] < 0) tail = -tail;
            break;
        }
        out.push_back(std::move(tail));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline PolyhedralSet map_image_at_zero(const PolyMap& D) {
    return image_at(D, zero_vector(D.m));
}

}  // namespace detail

// Levy-Rockafellar criterion DM(y,x)(0) = {0}; characterizes isolated
// calmness.
inline CriterionReport check_LRC(const PolyMap& M, const RVector& y, const RVector& x) {
    PolyMap D = graphical_derivative(M, y, x);
    PolyhedralSet at_zero = detail::map_image_at_zero(D);
    CriterionReport rep{Criterion::LRC};
    rep.verdict = is_origin_only(at_zero);
    if (!rep.verdict) {
        if (auto w = detail::nonzero_point(at_zero)) rep.witness.push_back(*w);
        rep.notes = "nonzero u in DM(y,x)(0)";
    }
    return rep;
}

// Mordukhovich criterion D*M(y,x)(0) = {0}; characterizes the Aubin property.
inline CriterionReport check_MC(const PolyMap& M, const RVector& y, const RVector& x) {
    PolyMap D = limiting_coderivative(M, y, x);
    PolyhedralSet at_zero = detail::map_image_at_zero(D);
    CriterionReport rep{Criterion::MC};
    rep.verdict = is_origin_only(at_zero);
    if (!rep.verdict) {
        if (auto w = detail::nonzero_point(at_zero)) rep.witness.push_back(*w);
        rep.notes = "nonzero y* in D*M(y,x)(0)";
    }
    return rep;
}

// First-order sufficient condition for calmness:
// D*M((y,x);(0,u))(0) = {0} for all nonzero u in DM(y,x)(0). Quantification
// runs over one representative per sign cell of the zero-slice arrangement.
inline CriterionReport check_FOSCclm(const PolyMap& M, const RVector& y, const RVector& x,
                                     const std::optional<RVector>& only_dir = std::nullopt) {
    PolyhedralSet tangent = tangent_cone(M.graph, M.graph_point(y, x)).cone;
    PolyMap D = make_map(tangent, M.m, M.n);
    PolyhedralSet Ku = detail::map_image_at_zero(D);

    std::vector<RVector> dirs;
    if (only_dir) {
        dirs.push_back(*only_dir);
    } else {
        std::vector<RVector> normals = detail::slice_normals(tangent, M.m, M.n);
        for (const auto& nrm : constraint_normals(Ku)) normals.push_back(nrm);
        std::sort(normals.begin(), normals.end());
        normals.erase(std::unique(normals.begin(), normals.end()), normals.end());
        dirs = detail::nonzero_cell_directions(normals, M.n);
    }

    CriterionReport rep{Criterion::FOSCclm};
    rep.verdict = true;
    for (const auto& u : dirs) {
        if (u.is_zero() || !Ku.contains(u)) continue;
        PolyMap Ddir = directional_limiting_coderivative(M, y, x, zero_vector(M.m), u);
        PolyhedralSet at_zero = detail::map_image_at_zero(Ddir);
        if (!is_origin_only(at_zero)) {
            rep.verdict = false;
            rep.witness.push_back(u);
            if (auto w = detail::nonzero_point(at_zero)) rep.witness.push_back(*w);
            rep.notes = "direction u with nontrivial D*M((y,x);(0,u))(0)";
            break;
        }
    }
    return rep;
}

// Fuzzy inner calmness* via the graphical-derivative characterization:
// kappa_v = inf over xbar in M(y), u in DM(y,xbar)(v) of |u|/|v| must be
// finite for every tangent direction v of dom M. Polyhedral maps satisfy
// this automatically; the value of the check is the reported modulus.
// Directions and image points are quantified through cell representatives.
inline CriterionReport check_fuzzy_inner_calmness_star(
    const PolyMap& M, const RVector& y, const std::optional<RVector>& only_v = std::nullopt) {
    PolyhedralSet dom = domain(M);
    if (!dom.contains(y)) throw Error("check_fuzzy_inner_calmness_star: y not in dom M");
    PolyhedralSet Tdom = tangent_cone(dom, y).cone;
    PolyhedralSet image = image_at(M, y);

    // image stratification: one representative per cell of the facet arrangement
    std::vector<RVector> reps;
    {
        std::vector<Constraint> hs = constraint_hyperplanes(image);
        if (hs.empty()) {
            // no constraints: the image is the whole space
            reps.push_back(zero_vector(M.n));
        } else {
            for (const auto& cell : affine_cells(hs, M.n))
                if (image.contains(cell.witness)) reps.push_back(cell.witness);
        }
    }

    // tangent cones of the graph at each representative
    std::vector<PolyhedralSet> tangents;
    for (const auto& xb : reps)
        tangents.push_back(tangent_cone(M.graph, concat(y, xb)).cone);

    // direction representatives in the argument space
    std::vector<RVector> dirs;
    if (only_v) {
        dirs.push_back(*only_v);
    } else {
        std::vector<RVector> normals = constraint_normals(Tdom);
        for (const auto& t : tangents) {
            // facets of dom DM(y, xb): project the tangent onto the v block
            std::vector<int> keep(static_cast<size_t>(M.m));
            for (int i = 0; i < M.m; ++i) keep[static_cast<size_t>(i)] = i;
            for (const auto& nrm : constraint_normals(project_coords(t, keep)))
                normals.push_back(nrm);
        }
        std::sort(normals.begin(), normals.end());
        normals.erase(std::unique(normals.begin(), normals.end()), normals.end());
        dirs = detail::nonzero_cell_directions(normals, M.m);
    }

    CriterionReport rep{Criterion::FuzzyInnerCalmnessStar};
    rep.verdict = true;
    Rational modulus = 0;
    for (const auto& v : dirs) {
        if (v.is_zero() || !Tdom.contains(v)) continue;
        std::optional<Rational> best;
        for (const auto& t : tangents) {
            for (const auto& piece : t.pieces) {
                // min |u|_inf subject to (v, u) in piece
                LinearSystem sys;
                sys.dim = M.n + 1;  // (u, t)
                for (const auto& c : piece.ineqs) {
                    RVector w(M.n + 1);
                    for (int i = 0; i < M.n; ++i) w[i] = c.normal[M.m + i];
                    Rational head = dot(slice(c.normal, 0, M.m), v);
                    sys.ineqs.push_back({std::move(w), c.offset - head});
                }
                for (const auto& c : piece.eqs) {
                    RVector w(M.n + 1);
                    for (int i = 0; i < M.n; ++i) w[i] = c.normal[M.m + i];
                    Rational head = dot(slice(c.normal, 0, M.m), v);
                    sys.eqs.push_back({std::move(w), c.offset - head});
                }
                for (int i = 0; i < M.n; ++i) {
                    RVector up(M.n + 1), dn(M.n + 1);
                    up[i] = 1; up[M.n] = -1;
                    dn[i] = -1; dn[M.n] = -1;
                    sys.ineqs.push_back({std::move(up), Rational(0)});
                    sys.ineqs.push_back({std::move(dn), Rational(0)});
                }
                LpResult r = solve_lp(unit_vector(M.n + 1, M.n), sys);
                if (r.status == LpStatus::Optimal && (!best || r.value < *best)) best = r.value;
            }
        }
        if (!best) {
            rep.verdict = false;
            rep.witness.push_back(v);
            rep.notes = "tangent direction of dom M with no graph tangent above it";
            continue;
        }
        modulus = std::max(modulus, *best / v.norm_inf());
    }
    if (rep.verdict) rep.modulus = modulus;
    return rep;
}

// inf over y* in D*M((y,x);(v,u))(x*) of |y*|_inf; nullopt when empty.
inline std::optional<Rational> coderivative_min_norm(
    const PolyMap& M, const RVector& y, const RVector& x, const RVector& xstar,
    const std::optional<std::pair<RVector, RVector>>& dir = std::nullopt) {
    PolyMap D = dir ? directional_limiting_coderivative(M, y, x, dir->first, dir->second)
                    : limiting_coderivative(M, y, x);
    std::optional<Rational> best;
    for (const auto& piece : image_at(D, xstar).pieces) {
        LinearSystem sys;
        sys.dim = M.m + 1;  // (y*, t)
        auto pad = [&](const Constraint& c) {
            RVector w(M.m + 1);
            for (int i = 0; i < M.m; ++i) w[i] = c.normal[i];
            return Constraint{std::move(w), c.offset};
        };
        for (const auto& c : piece.ineqs) sys.ineqs.push_back(pad(c));
        for (const auto& c : piece.eqs) sys.eqs.push_back(pad(c));
        for (int i = 0; i < M.m; ++i) {
            RVector up(M.m + 1), dn(M.m + 1);
            up[i] = 1; up[M.m] = -1;
            dn[i] = -1; dn[M.m] = -1;
            sys.ineqs.push_back({std::move(up), Rational(0)});
            sys.ineqs.push_back({std::move(dn), Rational(0)});
        }
        LpResult r = solve_lp(unit_vector(M.m + 1, M.m), sys);
        if (r.status == LpStatus::Optimal && (!best || r.value < *best)) best = r.value;
    }
    return best;
}

// Figure-1 style status report: the three derivative criteria, the facts that
// hold automatically for polyhedral maps, and the implied properties.
struct Figure1Report {
    CriterionReport lrc, mc, foscclm;
    bool polyhedral_calm = true;        // Robinson: polyhedral maps are calm
    bool polyhedral_inner_calm_star = true;
    bool isolated_calmness = false;     // iff LRC
    bool aubin_property = false;        // iff MC
    bool calmness = true;
    bool inner_calmness_star = true;
    bool fuzzy_inner_calmness_star = true;
    bool consistent = true;
};

inline Figure1Report figure1_report(const PolyMap& M, const RVector& y, const RVector& x) {
    Figure1Report rep;
    rep.lrc = check_LRC(M, y, x);
    rep.mc = check_MC(M, y, x);
    rep.foscclm = check_FOSCclm(M, y, x);
    rep.isolated_calmness = rep.lrc.verdict;
    rep.aubin_property = rep.mc.verdict;
    // implication arrows at verdict level
    if (rep.mc.verdict && !rep.foscclm.verdict) rep.consistent = false;
    if (rep.lrc.verdict && !rep.foscclm.verdict) rep.consistent = false;
    if (!rep.consistent)
        throw Error("figure1_report: criterion implication violated (kernel bug)");
    return rep;
}

}  // namespace polyvar
