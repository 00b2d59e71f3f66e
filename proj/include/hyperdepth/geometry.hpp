// Weighted hyperplane arrangements and the closest-point dual at a query.

#ifndef HYPERDEPTH_GEOMETRY_HPP
#define HYPERDEPTH_GEOMETRY_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "hyperdepth/rational.hpp"

namespace hyperdepth {

class InvalidHyperplane : public InputError {
public:
    using InputError::InputError;
};

/// The affine hyperplane { x : normal . x = offset } carrying a nonnegative weight.
///
/// Construction canonicalizes (normal, offset): entries become coprime integers
/// and the first nonzero normal coordinate is positive. Two hyperplanes are
/// equal exactly when they describe the same point set and weight.
class Hyperplane {
public:
    Hyperplane() = default;

    Hyperplane(Vector normal, Rational offset, Rational weight = 1)
        : normal_(std::move(normal)), offset_(std::move(offset)), weight_(std::move(weight)) {
        if (isZero(normal_)) throw InvalidHyperplane("hyperplane normal must be nonzero");
        if (weight_ < 0) throw InvalidHyperplane("hyperplane weight must be nonnegative");
        canonicalizeInPlace();
    }

    const Vector& normal() const { return normal_; }
    const Rational& offset() const { return offset_; }
    const Rational& weight() const { return weight_; }
    std::size_t dimension() const { return normal_.size(); }

    Hyperplane withWeight(Rational w) const { return Hyperplane(normal_, offset_, std::move(w)); }

    /// normal . q - offset; zero exactly on the hyperplane.
    Rational residual(const Vector& q) const { return dot(normal_, q) - offset_; }

    bool contains(const Vector& q) const { return residual(q) == 0; }

    /// Same point set, ignoring weight.
    bool sameLocus(const Hyperplane& o) const { return normal_ == o.normal_ && offset_ == o.offset_; }

    friend bool operator==(const Hyperplane& a, const Hyperplane& b) {
        return a.sameLocus(b) && a.weight_ == b.weight_;
    }

private:
    void canonicalizeInPlace() {
        Vector all = normal_;
        all.push_back(offset_);
        Vector ints = primitiveIntegerVector(all);
        std::size_t first = 0;
        while (ints[first] == 0) ++first;
        if (ints[first] < 0)
            for (auto& x : ints) x = -x;
        offset_ = ints.back();
        ints.pop_back();
        normal_ = std::move(ints);
    }

    Vector normal_;
    Rational offset_ = 0;
    Rational weight_ = 1;
};

/// Returns the canonical representative of h (construction already applies it).
inline Hyperplane canonicalize(const Hyperplane& h) { return Hyperplane(h.normal(), h.offset(), h.weight()); }

/// An ordered list of weighted hyperplanes in R^d.
class Arrangement {
public:
    Arrangement() = default;

    explicit Arrangement(std::size_t dimension, std::vector<Hyperplane> hyperplanes = {})
        : dimension_(dimension), hyperplanes_(std::move(hyperplanes)) {
        if (dimension_ == 0) throw DimensionError("arrangement dimension must be positive");
        for (const auto& h : hyperplanes_) check(h);
    }

    std::size_t dimension() const { return dimension_; }
    std::size_t size() const { return hyperplanes_.size(); }
    bool empty() const { return hyperplanes_.empty(); }
    const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }
    const Hyperplane& operator[](std::size_t i) const { return hyperplanes_[i]; }
    auto begin() const { return hyperplanes_.begin(); }
    auto end() const { return hyperplanes_.end(); }

    void add(Hyperplane h) {
        check(h);
        hyperplanes_.push_back(std::move(h));
    }

    Rational totalWeight() const {
        Rational w = 0;
        for (const auto& h : hyperplanes_) w += h.weight();
        return w;
    }

    bool unitWeights() const {
        for (const auto& h : hyperplanes_)
            if (h.weight() != 1) return false;
        return true;
    }

    /// The sub-arrangement made of the given indices, in the given order.
    Arrangement subset(const std::vector<std::size_t>& indices) const {
        Arrangement out(dimension_);
        for (auto i : indices) out.hyperplanes_.push_back(hyperplanes_.at(i));
        return out;
    }

    Arrangement without(std::size_t index) const {
        Arrangement out(dimension_);
        for (std::size_t i = 0; i < size(); ++i)
            if (i != index) out.hyperplanes_.push_back(hyperplanes_[i]);
        return out;
    }

    Arrangement with(Hyperplane h) const {
        Arrangement out = *this;
        out.add(std::move(h));
        return out;
    }

    Matrix normals() const {
        Matrix m;
        for (const auto& h : hyperplanes_) m.push_back(h.normal());
        return m;
    }

private:
    void check(const Hyperplane& h) const {
        if (h.dimension() != dimension_)
            throw DimensionError("hyperplane of dimension " + std::to_string(h.dimension()) +
                                 " in arrangement of dimension " + std::to_string(dimension_));
    }

    std::size_t dimension_ = 1;
    std::vector<Hyperplane> hyperplanes_;
};

inline void requireDimension(const Arrangement& a, const Vector& q) {
    if (q.size() != a.dimension())
        throw DimensionError("query of dimension " + std::to_string(q.size()) + " for arrangement of dimension " +
                             std::to_string(a.dimension()));
}

// ----------------------------------------------------------------------------
// Query evaluation and the closest-point dual
// ----------------------------------------------------------------------------

/// Residuals and closest points of every hyperplane as seen from one query point.
struct QueryEvaluation {
    Vector point;
    Vector residuals;                 // s_h = a_h . q - b_h
    std::vector<Vector> dualPoints;   // closest point of h to q
    std::vector<std::size_t> onSet;   // indices with s_h = 0
};

/// Closest point of h to q: q - (s_h / |a_h|^2) a_h.
inline Vector closestPoint(const Hyperplane& h, const Vector& q) {
    Rational s = h.residual(q);
    if (s == 0) return q;
    return subtract(q, scale(h.normal(), s / squaredNorm(h.normal())));
}

inline QueryEvaluation evaluate(const Arrangement& a, const Vector& q) {
    requireDimension(a, q);
    QueryEvaluation ev;
    ev.point = q;
    for (std::size_t i = 0; i < a.size(); ++i) {
        Rational s = a[i].residual(q);
        ev.dualPoints.push_back(s == 0 ? q : subtract(q, scale(a[i].normal(), s / squaredNorm(a[i].normal()))));
        if (s == 0) ev.onSet.push_back(i);
        ev.residuals.push_back(std::move(s));
    }
    return ev;
}

/// The dual point set of A at q.
inline std::vector<Vector> dualPointSet(const Arrangement& a, const Vector& q) { return evaluate(a, q).dualPoints; }

// ----------------------------------------------------------------------------
// General position
// ----------------------------------------------------------------------------

/// Component checks of general position; `generic()` demands all of them.
struct GeneralPositionReport {
    bool normalsIndependent = true;  // every min(n, d) normals are linearly independent
    bool noCommonPoint = true;       // no d+1 hyperplanes share a point
    bool distinct = true;            // no two hyperplanes coincide
    std::string failure;             // first failing predicate with its witness

    bool generic() const { return normalsIndependent && noCommonPoint && distinct; }
};

namespace detail {

template <typename Visit>
bool forEachSubset(std::size_t n, std::size_t k, Visit&& visit) {
    if (k > n) return true;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        if (!visit(idx)) return false;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return true;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

inline std::string joinIndices(const std::vector<std::size_t>& idx) {
    std::string s;
    for (auto i : idx) s += (s.empty() ? "" : ",") + std::to_string(i);
    return s;
}

}  // namespace detail

inline GeneralPositionReport generalPositionReport(const Arrangement& a) {
    GeneralPositionReport rep;
    const std::size_t n = a.size();
    const std::size_t d = a.dimension();
    for (std::size_t i = 0; i < n && rep.distinct; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (a[i].sameLocus(a[j])) {
                rep.distinct = false;
                rep.failure = "coincident hyperplanes " + std::to_string(i) + "," + std::to_string(j);
                break;
            }
    const std::size_t k = std::min(n, d);
    detail::forEachSubset(n, k, [&](const std::vector<std::size_t>& idx) {
        Matrix m;
        for (auto i : idx) m.push_back(a[i].normal());
        if (rank(m) < k) {
            rep.normalsIndependent = false;
            if (rep.failure.empty()) rep.failure = "dependent normals {" + detail::joinIndices(idx) + "}";
            return false;
        }
        return true;
    });
    detail::forEachSubset(n, d + 1, [&](const std::vector<std::size_t>& idx) {
        Matrix m;
        Vector rhs;
        for (auto i : idx) {
            m.push_back(a[i].normal());
            rhs.push_back(a[i].offset());
        }
        if (solveLinear(m, rhs, d)) {
            rep.noCommonPoint = false;
            if (rep.failure.empty()) rep.failure = "common point of {" + detail::joinIndices(idx) + "}";
            return false;
        }
        return true;
    });
    return rep;
}

inline bool isGeneralPosition(const Arrangement& a) { return generalPositionReport(a).generic(); }

// ----------------------------------------------------------------------------
// Vertices (minimal faces)
// ----------------------------------------------------------------------------

/// One point on every minimal face of the arrangement, deduplicated and sorted
/// lexicographically. When the normals span R^d these are the vertices; otherwise
/// each minimal face is a flat and its minimum-norm point is returned.
inline std::vector<Vector> minimalFacePoints(const Arrangement& a) {
    std::vector<Vector> out;
    const std::size_t d = a.dimension();
    if (a.empty()) return out;
    const std::size_t r = rank(a.normals());
    detail::forEachSubset(a.size(), r, [&](const std::vector<std::size_t>& idx) {
        Matrix m;
        Vector rhs;
        for (auto i : idx) {
            m.push_back(a[i].normal());
            rhs.push_back(a[i].offset());
        }
        if (rank(m) < r) return true;
        if (auto x = solveLeastNorm(m, rhs, d)) out.push_back(std::move(*x));
        return true;
    });
    std::sort(out.begin(), out.end(), lexLess);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace hyperdepth

#endif  // HYPERDEPTH_GEOMETRY_HPP
