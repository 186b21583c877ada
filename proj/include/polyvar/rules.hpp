#pragma once

#include <optional>
#include <string>
#include <vector>

#include "criteria.hpp"

namespace polyvar {

enum class Relation { Equal, LhsSubsetRhs, RhsSubsetLhs, Incomparable };

inline const char* to_string(Relation r) {
    switch (r) {
        case Relation::Equal: return "equal";
        case Relation::LhsSubsetRhs: return "lhs_subset_rhs";
        case Relation::RhsSubsetLhs: return "rhs_subset_lhs";
        case Relation::Incomparable: return "incomparable";
    }
    return "?";
}

// Certified comparison of both sides of a calculus estimate. The relation is
// recomputed from the sets, never asserted from theory; hypothesis failures
// downgrade the theorem claim to an observation.
struct RuleReport {
    std::string rule;
    std::vector<CriterionReport> hypotheses;
    PolyhedralSet lhs, rhs;
    std::string lhs_label, rhs_label;
    Relation relation = Relation::Incomparable;
    std::vector<RVector> strict_witnesses;  // points separating the two sides
    bool hypotheses_all_true = true;
    bool theorem_satisfied = true;  // certified relation at least as strong as claimed
    std::optional<Rational> modulus;
    std::optional<Rational> lhs_value, rhs_value;  // scalar statements (subderivative)
    std::string notes;
};

namespace detail {

inline Relation compute_relation(const PolyhedralSet& lhs, const PolyhedralSet& rhs,
                                 std::vector<RVector>* witnesses = nullptr) {
    RVector w1, w2;
    bool l_in_r = set_subset(lhs, rhs, &w1);
    bool r_in_l = set_subset(rhs, lhs, &w2);
    if (witnesses) {
        if (!l_in_r) witnesses->push_back(w1);
        if (!r_in_l) witnesses->push_back(w2);
    }
    if (l_in_r && r_in_l) return Relation::Equal;
    if (l_in_r) return Relation::LhsSubsetRhs;
    if (r_in_l) return Relation::RhsSubsetLhs;
    return Relation::Incomparable;
}

inline void finish_report(RuleReport& rep, Relation claimed) {
    rep.relation = compute_relation(rep.lhs, rep.rhs, &rep.strict_witnesses);
    rep.hypotheses_all_true = std::all_of(rep.hypotheses.begin(), rep.hypotheses.end(),
                                          [](const CriterionReport& c) { return c.verdict; });
    bool strong_enough =
        rep.relation == Relation::Equal ||
        (claimed != Relation::Equal && rep.relation == claimed);
    rep.theorem_satisfied = !rep.hypotheses_all_true || strong_enough;
}

// One representative per cell of the facet arrangement, restricted to the set.
inline std::vector<RVector> cell_representatives(const PolyhedralSet& s) {
    std::vector<RVector> reps;
    std::vector<Constraint> hs = constraint_hyperplanes(s);
    if (hs.empty()) {
        if (!s.empty()) reps.push_back(zero_vector(s.dim));
        return reps;
    }
    for (const auto& cell : affine_cells(hs, s.dim))
        if (s.contains(cell.witness)) reps.push_back(cell.witness);
    return reps;
}

// Projection of a graph set onto the argument block.
inline PolyhedralSet argument_projection(const PolyhedralSet& graph, int m) {
    std::vector<int> keep(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) keep[static_cast<size_t>(i)] = i;
    return project_coords(graph, keep);
}

// Union of sets as one canonical set.
inline PolyhedralSet union_of(std::vector<PolyhedralSet> sets, int dim) {
    std::vector<ConvexPolyhedron> pieces;
    for (auto& s : sets)
        for (auto& p : s.pieces) pieces.push_back(std::move(p));
    return make_set(std::move(pieces), dim);
}

inline PolyhedralSet intersection_of(const std::vector<PolyhedralSet>& sets, int dim) {
    PolyhedralSet acc = full_set(dim);
    for (const auto& s : sets) acc = intersect(acc, s);
    return acc;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Domain pattern (tangents and normals of dom M through derivatives of M).
// The union/intersection over xbar in M(ybar) runs over one representative
// per cell of the image's facet arrangement; derivative objects of polyhedral
// graphs are constant on the relative interior of each cell.

inline RuleReport domain_cones(const PolyMap& M, const RVector& y, ConeKind kind,
                               const std::optional<RVector>& dir = std::nullopt) {
    PolyhedralSet dom = domain(M);
    if (!dom.contains(y)) throw Error("domain_cones: y not in dom M");
    PolyhedralSet image = image_at(M, y);
    std::vector<RVector> reps = detail::cell_representatives(image);

    RuleReport rep;
    rep.rule = std::string("domain_cones/") + to_string(kind);
    CriterionReport fic = check_fuzzy_inner_calmness_star(M, y);
    rep.modulus = fic.modulus;
    rep.hypotheses.push_back(std::move(fic));
    CriterionReport auto_ic{Criterion::InnerCalmnessStar, true, {}, std::nullopt,
                            "automatic for polyhedral mappings"};
    rep.hypotheses.push_back(auto_ic);

    Relation claimed = Relation::Equal;
    switch (kind) {
        case ConeKind::Tangent: {
            rep.lhs = tangent_cone(dom, y).cone;
            rep.lhs_label = "T_dom(y)";
            std::vector<PolyhedralSet> parts;
            for (const auto& xb : reps)
                parts.push_back(detail::argument_projection(
                    tangent_cone(M.graph, concat(y, xb)).cone, M.m));
            rep.rhs = detail::union_of(std::move(parts), M.m);
            rep.rhs_label = "union dom DM(y,x)";
            claimed = Relation::Equal;  // fuzzy inner calmness* holds automatically
            break;
        }
        case ConeKind::RegularNormal: {
            rep.lhs = regular_normal_cone(dom, y).cone;
            rep.lhs_label = "reg normal of dom at y";
            std::vector<PolyhedralSet> parts;
            for (const auto& xb : reps) {
                PolyMap D = regular_coderivative(M, y, xb);
                parts.push_back(image_at(D, zero_vector(M.n)));
            }
            rep.rhs = detail::intersection_of(parts, M.m);
            rep.rhs_label = "intersection D^*M(y,x)(0)";
            claimed = Relation::Equal;
            break;
        }
        case ConeKind::LimitingNormal: {
            rep.lhs = limiting_normal_cone(dom, y).cone;
            rep.lhs_label = "lim normal of dom at y";
            std::vector<PolyhedralSet> parts;
            for (const auto& xb : reps) {
                PolyMap D = limiting_coderivative(M, y, xb);
                parts.push_back(image_at(D, zero_vector(M.n)));
            }
            rep.rhs = detail::union_of(std::move(parts), M.m);
            rep.rhs_label = "union D*M(y,x)(0)";
            claimed = Relation::LhsSubsetRhs;
            break;
        }
        case ConeKind::DirectionalLimitingNormal: {
            if (!dir) throw Error("domain_cones: directional kind requires a direction");
            const RVector& v = *dir;
            rep.lhs = directional_limiting_normal_cone(dom, y, v).cone;
            rep.lhs_label = "dir lim normal of dom";
            std::vector<PolyhedralSet> parts;
            for (const auto& xb : reps) {
                PolyhedralSet tangent = tangent_cone(M.graph, concat(y, xb)).cone;
                PolyMap D = make_map(tangent, M.m, M.n);
                PolyhedralSet us = image_at(D, v);  // DM(y,x)(v)
                // u-representatives: cells of the tangent restricted to the slice
                std::vector<Constraint> hs;
                for (const auto& nrm : constraint_normals(tangent)) {
                    RVector tail = slice(nrm, M.m, M.n);
                    if (tail.is_zero()) continue;
                    hs.push_back({tail, -dot(slice(nrm, 0, M.m), v)});
                }
                for (const auto& h : constraint_hyperplanes(us)) hs.push_back(h);
                std::sort(hs.begin(), hs.end());
                hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
                std::vector<RVector> urep;
                if (hs.empty()) {
                    if (!us.empty()) urep.push_back(zero_vector(M.n));
                } else {
                    for (const auto& cell : affine_cells(hs, M.n))
                        if (us.contains(cell.witness)) urep.push_back(cell.witness);
                }
                for (const auto& u : urep) {
                    PolyMap Dd = directional_limiting_coderivative(M, y, xb, v, u);
                    parts.push_back(image_at(Dd, zero_vector(M.n)));
                }
            }
            rep.rhs = detail::union_of(std::move(parts), M.m);
            rep.rhs_label = "union over u in DM(y,x)(v) of D*M((y,x);(v,u))(0)";
            claimed = Relation::LhsSubsetRhs;
            rep.notes =
                "second union of the dN estimate omitted: directional inner calmness* is "
                "automatic for polyhedral mappings";
            break;
        }
    }
    detail::finish_report(rep, claimed);
    return rep;
}

// ---------------------------------------------------------------------------
// Image pattern (tangents and normals of M(ybar) through derivatives of M).

inline RuleReport image_cones(const PolyMap& M, const RVector& y, const RVector& x,
                              ConeKind kind, const std::optional<RVector>& dir = std::nullopt) {
    M.require_on_graph(y, x, "image_cones");
    PolyhedralSet image = image_at(M, y);

    RuleReport rep;
    rep.rule = std::string("image_cones/") + to_string(kind);
    CriterionReport calm{Criterion::FOSCclm, true, {}, std::nullopt,
                         "calmness is automatic for polyhedral mappings"};
    rep.hypotheses.push_back(calm);

    Relation claimed = Relation::Equal;
    switch (kind) {
        case ConeKind::Tangent: {
            rep.lhs = tangent_cone(image, x).cone;
            rep.lhs_label = "T_{M(y)}(x)";
            PolyMap D = graphical_derivative(M, y, x);
            rep.rhs = image_at(D, zero_vector(M.m));
            rep.rhs_label = "DM(y,x)(0)";
            claimed = Relation::Equal;  // polyhedral maps are calm
            break;
        }
        case ConeKind::RegularNormal: {
            rep.lhs = regular_normal_cone(image, x).cone;
            rep.lhs_label = "reg normal of M(y) at x";
            PolyMap D = regular_coderivative(M, y, x);
            rep.rhs = negate(detail::argument_projection(D.graph, M.n));
            rep.rhs_label = "-dom reg coderivative";
            claimed = Relation::RhsSubsetLhs;
            break;
        }
        case ConeKind::LimitingNormal: {
            rep.lhs = limiting_normal_cone(image, x).cone;
            rep.lhs_label = "lim normal of M(y) at x";
            PolyMap D = limiting_coderivative(M, y, x);
            rep.rhs = negate(detail::argument_projection(D.graph, M.n));
            rep.rhs_label = "-dom lim coderivative";
            claimed = Relation::LhsSubsetRhs;
            // modulus bound: max over generator representatives of the
            // min-norm selection ratio
            Rational bound = 0;
            bool all_finite = true;
            for (const auto& piece : rep.lhs.pieces) {
                GeneratorSet g = generators(piece);
                std::vector<RVector> dirs = g.rays;
                for (const auto& l : g.lines) {
                    dirs.push_back(l);
                    dirs.push_back(-l);
                }
                for (const auto& d : dirs) {
                    auto mn = coderivative_min_norm(M, y, x, -d);
                    if (!mn) { all_finite = false; continue; }
                    bound = std::max(bound, *mn / d.norm_inf());
                }
            }
            if (all_finite) rep.modulus = bound;
            break;
        }
        case ConeKind::DirectionalLimitingNormal: {
            if (!dir) throw Error("image_cones: directional kind requires a direction");
            const RVector& u = *dir;
            rep.lhs = directional_limiting_normal_cone(image, x, u).cone;
            rep.lhs_label = "dir lim normal of M(y)";
            PolyMap D = directional_limiting_coderivative(M, y, x, zero_vector(M.m), u);
            rep.rhs = negate(detail::argument_projection(D.graph, M.n));
            rep.rhs_label = "-dom dir lim coderivative";
            claimed = Relation::LhsSubsetRhs;
            Rational bound = 0;
            bool all_finite = true;
            for (const auto& piece : rep.lhs.pieces) {
                GeneratorSet g = generators(piece);
                std::vector<RVector> dirs = g.rays;
                for (const auto& l : g.lines) {
                    dirs.push_back(l);
                    dirs.push_back(-l);
                }
                for (const auto& d : dirs) {
                    auto mn = coderivative_min_norm(M, y, x, -d,
                                                    std::make_pair(zero_vector(M.m), u));
                    if (!mn) { all_finite = false; continue; }
                    bound = std::max(bound, *mn / d.norm_inf());
                }
            }
            if (all_finite) rep.modulus = bound;
            break;
        }
    }
    detail::finish_report(rep, claimed);
    return rep;
}

// ---------------------------------------------------------------------------
// Sum rule: D = D_1 + ... + D_l via the mapping
// M1(y) = {(y_1, ..., y_l) : y_i in D_i, sum y_i = y}, dom M1 = D.

inline PolyMap sum_rule_map(const std::vector<PolyhedralSet>& parts) {
    if (parts.empty()) throw Error("sum_rule: no summands");
    int m = parts[0].dim;
    int l = static_cast<int>(parts.size());
    if (l > 4) throw LimitError("sum_rule: more than four summands");
    PolyhedralSet prod = parts[0];
    for (int i = 1; i < l; ++i) prod = cartesian_product(prod, parts[i]);
    // graph in (y, y_1, ..., y_l)
    PolyhedralSet graph = cartesian_product(full_set(m), prod);
    std::vector<Constraint> link;
    for (int c = 0; c < m; ++c) {
        RVector v(m + l * m);
        v[c] = -1;
        for (int i = 0; i < l; ++i) v[m + i * m + c] = 1;
        link.push_back({std::move(v), Rational(0)});
    }
    PolyhedralSet linked = intersect(graph, make_set({*make_polyhedron({}, link, m + l * m)},
                                                     m + l * m));
    return make_map(linked, m, l * m);
}

struct SumRuleResult {
    RuleReport report;                    // the domain_cones statement for M1
    CriterionReport isolated_calmness_cq; // eq: v_i in T_{D_i}, sum v_i = 0 => v = 0
};

inline SumRuleResult sum_rule(const std::vector<PolyhedralSet>& parts, const RVector& y,
                              const std::vector<RVector>& decomposition, ConeKind kind,
                              const std::optional<RVector>& dir = std::nullopt) {
    if (parts.size() != decomposition.size()) throw Error("sum_rule: decomposition size");
    int m = parts[0].dim;
    RVector total = zero_vector(m);
    for (size_t i = 0; i < parts.size(); ++i) {
        if (!parts[i].contains(decomposition[i]))
            throw Error("sum_rule: decomposition part outside its summand");
        total = total + decomposition[i];
    }
    if (total != y) throw Error("sum_rule: decomposition does not sum to y");

    SumRuleResult out;
    PolyMap M1 = sum_rule_map(parts);
    out.report = domain_cones(M1, y, kind, dir);
    out.report.rule = std::string("sum_rule/") + to_string(kind);

    // sufficient condition for isolated calmness of M1 at the decomposition
    int l = static_cast<int>(parts.size());
    PolyhedralSet tangents = tangent_cone(parts[0], decomposition[0]).cone;
    for (int i = 1; i < l; ++i)
        tangents = cartesian_product(tangents, tangent_cone(parts[static_cast<size_t>(i)],
                                                            decomposition[static_cast<size_t>(i)]).cone);
    std::vector<Constraint> zero_sum;
    for (int c = 0; c < m; ++c) {
        RVector v(l * m);
        for (int i = 0; i < l; ++i) v[i * m + c] = 1;
        zero_sum.push_back({std::move(v), Rational(0)});
    }
    PolyhedralSet kernel = intersect(tangents, make_set({*make_polyhedron({}, zero_sum, l * m)},
                                                        l * m));
    CriterionReport cq{Criterion::SumRuleIC};
    cq.verdict = is_origin_only(kernel);
    if (!cq.verdict) {
        if (auto w = detail::nonzero_point(kernel)) cq.witness.push_back(*w);
        cq.notes = "nonzero tangent selection summing to zero";
    }
    out.isolated_calmness_cq = std::move(cq);
    out.report.hypotheses.push_back(out.isolated_calmness_cq);
    return out;
}

// ---------------------------------------------------------------------------
// Intersection rule: C = C_1 cap ... cap C_l via
// M2(x_1,...,x_l) = {x : x + x_i in C_i}, C = M2(0).

inline PolyMap intersection_rule_map(const std::vector<PolyhedralSet>& parts) {
    if (parts.empty()) throw Error("intersection_rule: no sets");
    int n = parts[0].dim;
    int l = static_cast<int>(parts.size());
    if (l > 4) throw LimitError("intersection_rule: more than four sets");
    PolyhedralSet prod = parts[0];
    for (int i = 1; i < l; ++i) prod = cartesian_product(prod, parts[i]);
    // graph coords ((x_1, ..., x_l), x); membership (x + x_i) in C_i
    RMatrix A(l * n, (l + 1) * n);
    for (int i = 0; i < l; ++i)
        for (int c = 0; c < n; ++c) {
            A.at(i * n + c, i * n + c) = 1;
            A.at(i * n + c, l * n + c) = 1;
        }
    PolyhedralSet graph = affine_preimage(prod, A, zero_vector(l * n));
    return make_map(graph, l * n, n);
}

struct IntersectionRuleResult {
    RuleReport report;
    CriterionReport aubin_cq;  // x*_i in N_{C_i}(x), sum x*_i = 0 => x* = 0
};

inline IntersectionRuleResult intersection_rule(const std::vector<PolyhedralSet>& parts,
                                                const RVector& x, ConeKind kind,
                                                const std::optional<RVector>& dir = std::nullopt) {
    int n = parts.empty() ? 0 : parts[0].dim;
    for (const auto& c : parts)
        if (!c.contains(x)) throw Error("intersection_rule: point outside a factor");
    IntersectionRuleResult out;
    PolyMap M2 = intersection_rule_map(parts);
    int l = static_cast<int>(parts.size());
    out.report = image_cones(M2, zero_vector(l * n), x, kind, dir);
    out.report.rule = std::string("intersection_rule/") + to_string(kind);

    // Aubin constraint qualification from limiting normal cones
    PolyhedralSet normals = limiting_normal_cone(parts[0], x).cone;
    for (int i = 1; i < l; ++i)
        normals = cartesian_product(normals,
                                    limiting_normal_cone(parts[static_cast<size_t>(i)], x).cone);
    std::vector<Constraint> zero_sum;
    for (int c = 0; c < n; ++c) {
        RVector v(l * n);
        for (int i = 0; i < l; ++i) v[i * n + c] = 1;
        zero_sum.push_back({std::move(v), Rational(0)});
    }
    PolyhedralSet kernel = intersect(normals, make_set({*make_polyhedron({}, zero_sum, l * n)},
                                                       l * n));
    CriterionReport cq{Criterion::IntersectionAubin};
    cq.verdict = is_origin_only(kernel);
    if (!cq.verdict) {
        if (auto w = detail::nonzero_point(kernel)) cq.witness.push_back(*w);
        cq.notes = "nonzero normal selection summing to zero";
    }
    out.aubin_cq = std::move(cq);
    out.report.hypotheses.push_back(out.aubin_cq);
    return out;
}

// ---------------------------------------------------------------------------
// Image rule: D = A(C) + shift via M3(y) = {x in C : Ax + shift = y}.

struct AffineSetRuleResult {
    RuleReport report;
    CriterionReport cq;
};

inline AffineSetRuleResult image_rule(const RMatrix& A, const RVector& shift,
                                      const PolyhedralSet& C, const RVector& y, ConeKind kind,
                                      const std::optional<RVector>& dir = std::nullopt) {
    int n = C.dim, m = A.rows;
    if (A.cols != n || shift.dim() != m) throw DimensionError("image_rule: shapes");
    // graph {(y, x) : x in C, Ax - y = -shift}
    RMatrix embed(n, m + n);
    for (int i = 0; i < n; ++i) embed.at(i, m + i) = 1;
    PolyhedralSet graph = affine_preimage(C, embed, zero_vector(n));
    std::vector<Constraint> link;
    for (int i = 0; i < m; ++i) {
        RVector v(m + n);
        v[i] = -1;
        for (int j = 0; j < n; ++j) v[m + j] = A.at(i, j);
        link.push_back({std::move(v), -shift[i]});
    }
    graph = intersect(graph, make_set({*make_polyhedron({}, link, m + n)}, m + n));
    PolyMap M3 = make_map(graph, m, n);

    AffineSetRuleResult out;
    out.report = domain_cones(M3, y, kind, dir);
    out.report.rule = std::string("image_rule/") + to_string(kind);

    // isolated calmness sufficient condition, evaluated at every image
    // representative: T_C(x) cap ker A = {0}
    CriterionReport cq{Criterion::SumRuleIC};
    cq.verdict = true;
    std::vector<Constraint> kerA;
    for (int i = 0; i < m; ++i) {
        RVector v(n);
        for (int j = 0; j < n; ++j) v[j] = A.at(i, j);
        kerA.push_back({std::move(v), Rational(0)});
    }
    PolyhedralSet ker = make_set({*make_polyhedron({}, kerA, n)}, n);
    for (const auto& xb : detail::cell_representatives(image_at(M3, y))) {
        PolyhedralSet meet = intersect(tangent_cone(C, xb).cone, ker);
        if (!is_origin_only(meet)) {
            cq.verdict = false;
            if (auto w = detail::nonzero_point(meet)) cq.witness.push_back(*w);
            cq.notes = "nonzero tangent of C in ker A";
            break;
        }
    }
    out.cq = cq;
    out.report.hypotheses.push_back(std::move(cq));
    return out;
}

// Pre-image rule: C = {x : Ax + shift in D} via M4(y) = {x : Ax + shift + y in D}.
inline AffineSetRuleResult preimage_rule(const RMatrix& A, const RVector& shift,
                                         const PolyhedralSet& D, const RVector& x, ConeKind kind,
                                         const std::optional<RVector>& dir = std::nullopt) {
    int n = A.cols, m = D.dim;
    if (A.rows != m || shift.dim() != m) throw DimensionError("preimage_rule: shapes");
    // graph {(y, x) : Ax + y in D - shift}
    RMatrix T(m, m + n);
    for (int i = 0; i < m; ++i) {
        T.at(i, i) = 1;
        for (int j = 0; j < n; ++j) T.at(i, m + j) = A.at(i, j);
    }
    PolyhedralSet graph = affine_preimage(D, T, shift);
    PolyMap M4 = make_map(graph, m, n);

    AffineSetRuleResult out;
    out.report = image_cones(M4, zero_vector(m), x, kind, dir);
    out.report.rule = std::string("preimage_rule/") + to_string(kind);

    // Aubin sufficient condition: y* in N_D(Ax + shift), A^T y* = 0 => y* = 0
    PolyhedralSet nd = limiting_normal_cone(D, mat_vec(A, x) + shift).cone;
    std::vector<Constraint> kerAT;
    for (int j = 0; j < n; ++j) {
        RVector v(m);
        for (int i = 0; i < m; ++i) v[i] = A.at(i, j);
        kerAT.push_back({std::move(v), Rational(0)});
    }
    PolyhedralSet meet = intersect(nd, make_set({*make_polyhedron({}, kerAT, m)}, m));
    CriterionReport cq{Criterion::IntersectionAubin};
    cq.verdict = is_origin_only(meet);
    if (!cq.verdict) {
        if (auto w = detail::nonzero_point(meet)) cq.witness.push_back(*w);
        cq.notes = "nonzero normal of D in ker A^T";
    }
    out.cq = cq;
    out.report.hypotheses.push_back(std::move(cq));
    return out;
}

}  // namespace polyvar
