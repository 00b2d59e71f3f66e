// Exact rational scalars, vectors and small dense linear algebra.
//
// Everything combinatorial in hyperdepth (signs, ranks, incidences) is decided
// on these types. Matrices are tiny (at most a handful of rows per query), so
// plain Gaussian elimination over Q is used throughout.

#ifndef HYPERDEPTH_RATIONAL_HPP
#define HYPERDEPTH_RATIONAL_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hyperdepth {

using Rational = mpq_class;
using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;  // row-major

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed user input (bad numbers, wrong dimensions, invalid certificates).
class InputError : public Error {
public:
    using Error::Error;
};

/// A search or precision budget ran out before an answer was certified.
class BudgetError : public Error {
public:
    using Error::Error;
};

class ParseError : public InputError {
public:
    using InputError::InputError;
};

class DimensionError : public InputError {
public:
    using InputError::InputError;
};

// ----------------------------------------------------------------------------
// Scalars
// ----------------------------------------------------------------------------

inline int sign(const Rational& x) { return sgn(x); }

/// Parses "p/q", "p" or a plain decimal such as "-0.25" into an exact rational.
inline Rational parseRational(std::string_view text) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s.empty()) throw ParseError("empty rational");
    auto dot = s.find('.');
    Rational out;
    try {
        if (dot != std::string::npos) {
            if (s.find('/') != std::string::npos) throw ParseError("mixed decimal and fraction: " + s);
            std::string intPart = s.substr(0, dot);
            std::string frac = s.substr(dot + 1);
            bool negative = !intPart.empty() && intPart[0] == '-';
            if (!intPart.empty() && (intPart[0] == '-' || intPart[0] == '+')) intPart.erase(0, 1);
            if (intPart.empty()) intPart = "0";
            if (frac.empty()) frac = "0";
            for (char c : intPart + frac)
                if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("bad decimal: " + s);
            mpz_class num(intPart + frac, 10);
            mpz_class den;
            mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
            out = Rational(num, den);
            if (negative) out = -out;
        } else {
            if (out.set_str(s, 10) != 0) throw ParseError("bad rational: " + s);
            if (out.get_den() == 0) throw ParseError("zero denominator: " + s);
        }
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational: " + s);
    }
    out.canonicalize();
    return out;
}

/// "p/q" in lowest terms, or "p" when the denominator is one.
inline std::string formatRational(const Rational& x) {
    Rational y(x);
    y.canonicalize();
    return y.get_str();
}

inline Rational absValue(const Rational& x) { return x < 0 ? Rational(-x) : x; }

inline Rational minValue(const Rational& a, const Rational& b) { return b < a ? b : a; }

inline Rational maxValue(const Rational& a, const Rational& b) { return a < b ? b : a; }

inline Rational ceilRational(const Rational& x) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return Rational(q);
}

inline Rational floorRational(const Rational& x) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return Rational(q);
}

// ----------------------------------------------------------------------------
// Vectors
// ----------------------------------------------------------------------------

inline Rational dot(const Vector& a, const Vector& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Vector add(const Vector& a, const Vector& b) {
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vector subtract(const Vector& a, const Vector& b) {
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vector scale(const Vector& a, const Rational& c) {
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
    return r;
}

inline Vector negate(const Vector& a) { return scale(a, Rational(-1)); }

inline Rational squaredNorm(const Vector& a) { return dot(a, a); }

inline bool isZero(const Vector& a) {
    return std::all_of(a.begin(), a.end(), [](const Rational& x) { return x == 0; });
}

inline std::vector<double> toDouble(const Vector& a) {
    std::vector<double> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i].get_d();
    return r;
}

/// Lexicographic comparison, used for deterministic tie-breaking.
inline bool lexLess(const Vector& a, const Vector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/// Turns a nonzero vector into coprime integers (sign preserved).
inline Vector primitiveIntegerVector(const Vector& v) {
    mpz_class l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<mpz_class> ints(v.size());
    mpz_class g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        mpz_class t = v[i].get_num() * (l / v[i].get_den());
        ints[i] = t;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.get_mpz_t());
    }
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(g == 0 ? ints[i] : mpz_class(ints[i] / g));
    return out;
}

// ----------------------------------------------------------------------------
// Gaussian elimination
// ----------------------------------------------------------------------------

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> rowReduce(Matrix& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t cols = m[0].size();
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
        std::size_t p = row;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[row]);
        Rational inv = 1 / m[row][c];
        for (auto& x : m[row]) x *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][c] == 0) continue;
            Rational f = m[r][c];
            for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[row][k];
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

inline std::size_t rank(Matrix m) { return rowReduce(m).size(); }

inline Rational determinant(Matrix m) {
    const std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            Rational f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

/// Basis of { x : m x = 0 }; `cols` is needed when m has no rows.
inline Matrix nullSpace(Matrix m, std::size_t cols) {
    Matrix basis;
    if (m.empty()) {
        for (std::size_t i = 0; i < cols; ++i) {
            Vector e(cols, 0);
            e[i] = 1;
            basis.push_back(e);
        }
        return basis;
    }
    auto pivots = rowReduce(m);
    std::vector<bool> isPivot(cols, false);
    for (auto p : pivots) isPivot[p] = true;
    for (std::size_t f = 0; f < cols; ++f) {
        if (isPivot[f]) continue;
        Vector x(cols, 0);
        x[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -m[r][f];
        basis.push_back(std::move(x));
    }
    return basis;
}

/// Some solution of m x = rhs, or nullopt if the system is inconsistent.
/// Free variables are set to zero.
inline std::optional<Vector> solveLinear(const Matrix& m, const Vector& rhs, std::size_t cols) {
    Matrix aug = m;
    for (std::size_t r = 0; r < aug.size(); ++r) aug[r].push_back(rhs[r]);
    auto pivots = rowReduce(aug);
    for (std::size_t r = 0; r < aug.size(); ++r) {
        if (r < pivots.size()) continue;
        if (aug[r][cols] != 0) return std::nullopt;
    }
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
    Vector x(cols, 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
    return x;
}

/// Minimum-norm solution of m x = rhs (x in the row space of m).
inline std::optional<Vector> solveLeastNorm(const Matrix& m, const Vector& rhs, std::size_t cols) {
    // x = m^T y with (m m^T) y = rhs
    const std::size_t rows = m.size();
    Matrix gram(rows, Vector(rows, 0));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < rows; ++j) gram[i][j] = dot(m[i], m[j]);
    auto y = solveLinear(gram, rhs, rows);
    if (!y) return std::nullopt;
    Vector x(cols, 0);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t c = 0; c < cols; ++c) x[c] += (*y)[i] * m[i][c];
    for (std::size_t i = 0; i < rows; ++i)
        if (dot(m[i], x) != rhs[i]) return std::nullopt;
    return x;
}

/// Rows of m forming a basis of its row space (first-come order).
inline Matrix rowBasis(const Matrix& m) {
    Matrix basis;
    for (const auto& row : m) {
        Matrix trial = basis;
        trial.push_back(row);
        if (rank(trial) > basis.size()) basis.push_back(row);
    }
    return basis;
}

}  // namespace hyperdepth

#endif  // HYPERDEPTH_RATIONAL_HPP
