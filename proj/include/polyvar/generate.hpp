#pragma once

#include <random>
#include <vector>

#include "set.hpp"

namespace polyvar {

// Deterministic pseudo-random instances for property tests and the `gen`
// subcommand. Pieces are anchored at a known point so membership facts are
// available by construction.
class Generator {
public:
    explicit Generator(std::uint64_t seed) : rng_(seed) {}

    Rational small_rational() {
        static const int nums[] = {-3, -2, -1, 0, 1, 2, 3};
        static const int dens[] = {1, 1, 2};
        return Rational(pick(nums)) / Rational(pick(dens));
    }

    RVector vector(int dim) {
        RVector v(dim);
        for (int i = 0; i < dim; ++i) v[i] = small_rational();
        return v;
    }

    RVector nonzero_vector(int dim) {
        for (;;) {
            RVector v = vector(dim);
            if (!v.is_zero()) return v;
        }
    }

    // Convex piece containing `anchor`; roughly half of the constraints are
    // active there.
    ConvexPolyhedron random_piece(int dim, const RVector& anchor, int max_cons) {
        for (;;) {
            std::vector<Constraint> in, eq;
            int cons = 1 + below(max_cons);
            for (int c = 0; c < cons; ++c) {
                RVector a = nonzero_vector(dim);
                Rational slack = below(2) == 0 ? Rational(0) : abs(small_rational());
                in.push_back({a, dot(a, anchor) + slack});
            }
            if (dim >= 2 && below(4) == 0) {
                RVector e = nonzero_vector(dim);
                eq.push_back({e, dot(e, anchor)});
            }
            auto p = make_polyhedron(std::move(in), std::move(eq), dim);
            if (p) return *p;  // anchor feasible by construction, always lands here
        }
    }

    PolyhedralSet random_set(int dim, int max_pieces, int max_cons,
                             const RVector& anchor) {
        int count = 1 + below(max_pieces);
        std::vector<ConvexPolyhedron> pieces;
        for (int i = 0; i < count; ++i) pieces.push_back(random_piece(dim, anchor, max_cons));
        return make_set(std::move(pieces), dim);
    }

    PolyhedralSet random_set(int dim, int max_pieces, int max_cons) {
        return random_set(dim, max_pieces, max_cons, vector(dim));
    }

    // Union of cones (anchored at the origin with zero offsets).
    PolyhedralSet random_cone(int dim, int max_pieces, int max_cons) {
        int count = 1 + below(max_pieces);
        std::vector<ConvexPolyhedron> pieces;
        for (int i = 0; i < count; ++i) {
            std::vector<Constraint> in, eq;
            int cons = 1 + below(max_cons);
            for (int c = 0; c < cons; ++c) in.push_back({nonzero_vector(dim), Rational(0)});
            if (dim >= 2 && below(4) == 0) eq.push_back({nonzero_vector(dim), Rational(0)});
            auto p = make_polyhedron(std::move(in), std::move(eq), dim);
            if (p) pieces.push_back(*p);
        }
        if (pieces.empty()) pieces.push_back(origin_polyhedron(dim));
        return make_set(std::move(pieces), dim);
    }

    int below(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }

private:
    template <size_t N>
    int pick(const int (&arr)[N]) {
        return arr[rng_() % N];
    }

    std::mt19937_64 rng_;
};

}  // namespace polyvar
