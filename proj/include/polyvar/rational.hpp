#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyvar {

// Exact rational scalar. All kernel arithmetic happens in this type; GMP keeps
// values canonical (gcd(|num|, den) = 1, den > 0) through arithmetic.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what) : Error(what) {}
};

class LimitError : public Error {
public:
    explicit LimitError(const std::string& what) : Error(what) {}
};

inline Rational rational_from_parts(const Integer& num, const Integer& den) {
    if (den == 0) throw Error("rational with zero denominator");
    return Rational(num) / Rational(den);
}

// Accepts "p", "p/q", optional leading sign on either part.
inline Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(text));
        Integer num(text.substr(0, slash));
        Integer den(text.substr(slash + 1));
        return rational_from_parts(num, den);
    } catch (const std::exception&) {
        throw Error("cannot parse rational '" + text + "'");
    }
}

inline std::string to_string(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) s += "/" + denominator(q).str();
    return s;
}

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline int sign(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

// ---------------------------------------------------------------------------
// Vectors

struct RVector {
    std::vector<Rational> coords;

    RVector() = default;
    explicit RVector(int dim) : coords(static_cast<size_t>(dim)) {}
    RVector(std::initializer_list<Rational> init) : coords(init) {}
    explicit RVector(std::vector<Rational> c) : coords(std::move(c)) {}

    int dim() const { return static_cast<int>(coords.size()); }
    Rational& operator[](int i) { return coords[static_cast<size_t>(i)]; }
    const Rational& operator[](int i) const { return coords[static_cast<size_t>(i)]; }

    bool is_zero() const {
        return std::all_of(coords.begin(), coords.end(),
                           [](const Rational& q) { return q == 0; });
    }

    Rational norm_inf() const {
        Rational m = 0;
        for (const auto& q : coords) m = std::max(m, abs(q));
        return m;
    }

    friend bool operator==(const RVector& a, const RVector& b) { return a.coords == b.coords; }
    friend bool operator!=(const RVector& a, const RVector& b) { return !(a == b); }
    friend std::strong_ordering operator<=>(const RVector& a, const RVector& b) {
        if (a.dim() != b.dim()) return a.dim() <=> b.dim();
        for (int i = 0; i < a.dim(); ++i) {
            if (a[i] < b[i]) return std::strong_ordering::less;
            if (a[i] > b[i]) return std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }
};

inline RVector zero_vector(int dim) { return RVector(dim); }

inline RVector unit_vector(int dim, int i) {
    RVector e(dim);
    e[i] = 1;
    return e;
}

inline RVector operator+(const RVector& a, const RVector& b) {
    if (a.dim() != b.dim()) throw DimensionError("vector sum dimension mismatch");
    RVector r(a.dim());
    for (int i = 0; i < a.dim(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline RVector operator-(const RVector& a, const RVector& b) {
    if (a.dim() != b.dim()) throw DimensionError("vector difference dimension mismatch");
    RVector r(a.dim());
    for (int i = 0; i < a.dim(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline RVector operator-(const RVector& a) {
    RVector r(a.dim());
    for (int i = 0; i < a.dim(); ++i) r[i] = -a[i];
    return r;
}

inline RVector operator*(const Rational& s, const RVector& a) {
    RVector r(a.dim());
    for (int i = 0; i < a.dim(); ++i) r[i] = s * a[i];
    return r;
}

inline Rational dot(const RVector& a, const RVector& b) {
    if (a.dim() != b.dim()) throw DimensionError("dot product dimension mismatch");
    Rational s = 0;
    for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

inline RVector concat(const RVector& a, const RVector& b) {
    RVector r = a;
    r.coords.insert(r.coords.end(), b.coords.begin(), b.coords.end());
    return r;
}

inline RVector slice(const RVector& a, int begin, int count) {
    RVector r(count);
    for (int i = 0; i < count; ++i) r[i] = a[begin + i];
    return r;
}

// Scales so the first nonzero entry has absolute value one; sign is kept.
// Returns false when the vector is zero.
inline bool scale_first_nonzero(RVector& a) {
    for (int i = 0; i < a.dim(); ++i) {
        if (a[i] != 0) {
            Rational d = abs(a[i]);
            for (int j = 0; j < a.dim(); ++j) a[j] /= d;
            return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Dense matrices (row major)

struct RMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Rational> data;

    RMatrix() = default;
    RMatrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c) {}

    Rational& at(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
    const Rational& at(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }

    RVector row(int i) const {
        RVector r(cols);
        for (int j = 0; j < cols; ++j) r[j] = at(i, j);
        return r;
    }

    friend bool operator==(const RMatrix& a, const RMatrix& b) {
        return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
    }
};

inline RMatrix identity_matrix(int n) {
    RMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

inline RVector mat_vec(const RMatrix& a, const RVector& x) {
    if (a.cols != x.dim()) throw DimensionError("matrix-vector dimension mismatch");
    RVector r(a.rows);
    for (int i = 0; i < a.rows; ++i) {
        Rational s = 0;
        for (int j = 0; j < a.cols; ++j) s += a.at(i, j) * x[j];
        r[i] = s;
    }
    return r;
}

inline RMatrix transpose(const RMatrix& a) {
    RMatrix t(a.cols, a.rows);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) t.at(j, i) = a.at(i, j);
    return t;
}

// In-place reduced row echelon form; returns the pivot columns.
inline std::vector<int> rref(RMatrix& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int p = -1;
        for (int i = r; i < m.rows; ++i) {
            if (m.at(i, c) != 0) { p = i; break; }
        }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
        Rational inv = m.at(r, c);
        for (int j = 0; j < m.cols; ++j) m.at(r, j) /= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            Rational f = m.at(i, c);
            for (int j = 0; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline int rank(RMatrix m) { return static_cast<int>(rref(m).size()); }

// Basis of the null space {x : Mx = 0}, one vector per free column, in
// ascending free-column order.
inline std::vector<RVector> nullspace_basis(RMatrix m) {
    std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(static_cast<size_t>(m.cols), false);
    for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<RVector> basis;
    for (int f = 0; f < m.cols; ++f) {
        if (is_pivot[static_cast<size_t>(f)]) continue;
        RVector v(m.cols);
        v[f] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(static_cast<int>(r), f);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace polyvar
