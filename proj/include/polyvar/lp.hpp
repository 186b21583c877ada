#pragma once

#include <vector>

#include "rational.hpp"

namespace polyvar {

// One linear constraint <normal, z> <= offset (or = offset for equalities).
struct Constraint {
    RVector normal;
    Rational offset;

    friend bool operator==(const Constraint& a, const Constraint& b) {
        return a.normal == b.normal && a.offset == b.offset;
    }
    friend std::strong_ordering operator<=>(const Constraint& a, const Constraint& b) {
        auto c = a.normal <=> b.normal;
        if (c != std::strong_ordering::equal) return c;
        if (a.offset < b.offset) return std::strong_ordering::less;
        if (a.offset > b.offset) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
};

struct LinearSystem {
    int dim = 0;
    std::vector<Constraint> ineqs;  // <normal, z> <= offset
    std::vector<Constraint> eqs;    // <normal, z> =  offset
};

enum class LpStatus { Optimal, Unbounded, Infeasible };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rational value;  // optimal objective, valid when Optimal
    RVector point;   // optimizer, valid when Optimal
    RVector ray;     // unbounded descent direction, valid when Unbounded
};

// Exact two-phase simplex over rationals, minimizing objective . z subject to
// the system (variables free). Bland's rule on a fixed variable order makes
// the method terminate and the answer deterministic. Free variables enter the
// tableau split as z = zp - zn with zp, zn >= 0.
class Simplex {
public:
    static LpResult minimize(const RVector& objective, const LinearSystem& sys) {
        if (objective.dim() != sys.dim) throw DimensionError("lp: objective dimension mismatch");
        for (const auto& c : sys.ineqs)
            if (c.normal.dim() != sys.dim) throw DimensionError("lp: constraint dimension mismatch");
        for (const auto& c : sys.eqs)
            if (c.normal.dim() != sys.dim) throw DimensionError("lp: constraint dimension mismatch");
        Simplex s(objective, sys);
        return s.run();
    }

private:
    int n;                        // original dimension
    int nrows;                    // constraint rows
    int nslack;                   // one per inequality
    int ncols;                    // structural columns (no rhs)
    std::vector<std::vector<Rational>> tab;  // nrows x (ncols + 1); rhs last
    std::vector<int> basis;                  // basic column per row
    std::vector<Rational> cost;              // phase-2 objective per column
    RVector obj;

    Simplex(const RVector& objective, const LinearSystem& sys) : n(sys.dim), obj(objective) {
        nrows = static_cast<int>(sys.ineqs.size() + sys.eqs.size());
        nslack = static_cast<int>(sys.ineqs.size());
        // columns: zp (n), zn (n), slack (nslack), artificial (nrows)
        ncols = 2 * n + nslack + nrows;
        tab.assign(nrows, std::vector<Rational>(ncols + 1));
        basis.assign(nrows, -1);
        int r = 0;
        for (size_t i = 0; i < sys.ineqs.size(); ++i, ++r) {
            fill_row(r, sys.ineqs[i]);
            tab[r][2 * n + r] = 1;  // slack
        }
        for (size_t i = 0; i < sys.eqs.size(); ++i, ++r) fill_row(r, sys.eqs[i]);
        // normalize rhs >= 0, then give every row an artificial basic variable;
        // rows whose slack keeps coefficient +1 use the slack instead
        for (r = 0; r < nrows; ++r) {
            if (tab[r][ncols] < 0)
                for (int j = 0; j <= ncols; ++j) tab[r][j] = -tab[r][j];
            if (r < nslack && tab[r][2 * n + r] == 1) {
                basis[r] = 2 * n + r;
            } else {
                int art = 2 * n + nslack + r;
                tab[r][art] = 1;
                basis[r] = art;
            }
        }
    }

    void fill_row(int r, const Constraint& c) {
        for (int j = 0; j < n; ++j) {
            tab[r][j] = c.normal[j];
            tab[r][n + j] = -c.normal[j];
        }
        tab[r][ncols] = c.offset;
    }

    bool is_artificial(int col) const { return col >= 2 * n + nslack; }

    void pivot(int prow, int pcol) {
        Rational inv = tab[prow][pcol];
        for (int j = 0; j <= ncols; ++j) tab[prow][j] /= inv;
        for (int i = 0; i < nrows; ++i) {
            if (i == prow || tab[i][pcol] == 0) continue;
            Rational f = tab[i][pcol];
            for (int j = 0; j <= ncols; ++j) tab[i][j] -= f * tab[prow][j];
        }
        basis[prow] = pcol;
    }

    // Reduced cost of column j for cost vector c (c restricted to columns).
    Rational reduced_cost(const std::vector<Rational>& c, int j) const {
        Rational rc = c[static_cast<size_t>(j)];
        for (int i = 0; i < nrows; ++i) rc -= c[static_cast<size_t>(basis[i])] * tab[i][j];
        return rc;
    }

    // Bland: entering = lowest-index column with negative reduced cost;
    // leaving = min-ratio row, ties by lowest basic-variable index.
    // Returns {optimal reached, entering column when unbounded}.
    std::pair<bool, int> iterate(const std::vector<Rational>& c, bool allow_artificial) {
        for (;;) {
            int enter = -1;
            for (int j = 0; j < ncols; ++j) {
                if (!allow_artificial && is_artificial(j)) continue;
                if (reduced_cost(c, j) < 0) { enter = j; break; }
            }
            if (enter < 0) return {true, -1};
            int leave = -1;
            Rational best;
            for (int i = 0; i < nrows; ++i) {
                if (tab[i][enter] <= 0) continue;
                Rational ratio = tab[i][ncols] / tab[i][enter];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) return {false, enter};
            pivot(leave, enter);
        }
    }

    LpResult run() {
        // phase 1: minimize sum of artificials
        std::vector<Rational> phase1(static_cast<size_t>(ncols), Rational(0));
        for (int j = 2 * n + nslack; j < ncols; ++j) phase1[static_cast<size_t>(j)] = 1;
        iterate(phase1, true);
        Rational infeas = 0;
        for (int i = 0; i < nrows; ++i)
            if (is_artificial(basis[i])) infeas += tab[i][ncols];
        LpResult res;
        if (infeas > 0) {
            res.status = LpStatus::Infeasible;
            return res;
        }
        // drive leftover artificials out of the basis or drop empty rows
        for (int i = 0; i < nrows; ++i) {
            if (!is_artificial(basis[i])) continue;
            int col = -1;
            for (int j = 0; j < 2 * n + nslack; ++j)
                if (tab[i][j] != 0) { col = j; break; }
            if (col >= 0) pivot(i, col);
            // else: redundant row, harmless to leave with artificial at zero
        }
        // phase 2
        cost.assign(static_cast<size_t>(ncols), Rational(0));
        for (int j = 0; j < n; ++j) {
            cost[static_cast<size_t>(j)] = obj[j];
            cost[static_cast<size_t>(n + j)] = -obj[j];
        }
        auto [optimal, enter] = iterate(cost, false);
        if (!optimal) {
            res.status = LpStatus::Unbounded;
            std::vector<Rational> dir(static_cast<size_t>(ncols), Rational(0));
            dir[static_cast<size_t>(enter)] = 1;
            for (int i = 0; i < nrows; ++i) dir[static_cast<size_t>(basis[i])] = -tab[i][enter];
            res.ray = RVector(n);
            for (int j = 0; j < n; ++j)
                res.ray[j] = dir[static_cast<size_t>(j)] - dir[static_cast<size_t>(n + j)];
            return res;
        }
        res.status = LpStatus::Optimal;
        res.point = RVector(n);
        std::vector<Rational> x(static_cast<size_t>(ncols), Rational(0));
        for (int i = 0; i < nrows; ++i) x[static_cast<size_t>(basis[i])] = tab[i][ncols];
        for (int j = 0; j < n; ++j)
            res.point[j] = x[static_cast<size_t>(j)] - x[static_cast<size_t>(n + j)];
        res.value = dot(obj, res.point);
        return res;
    }
};

inline LpResult solve_lp(const RVector& objective, const LinearSystem& sys) {
    return Simplex::minimize(objective, sys);
}

inline LpResult solve_lp_max(const RVector& objective, const LinearSystem& sys) {
    LpResult r = Simplex::minimize(-objective, sys);
    if (r.status == LpStatus::Optimal) r.value = -r.value;
    return r;
}

inline bool lp_feasible(const LinearSystem& sys, RVector* point = nullptr) {
    LpResult r = solve_lp(zero_vector(sys.dim), sys);
    if (r.status == LpStatus::Optimal && point) *point = r.point;
    return r.status == LpStatus::Optimal;
}

}  // namespace polyvar
