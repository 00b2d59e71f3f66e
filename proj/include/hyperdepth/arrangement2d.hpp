// Face complex of a planar line arrangement, per-face depth labels, depth
// regions with a combinatorial contractibility test, and SVG depth maps.
//
// Faces are vertices, edges (segments, rays or whole lines) and cells. Cells
// are identified by their sign vector over the distinct lines. Everything is
// exact; doubles appear only in the SVG output.

#ifndef HYPERDEPTH_ARRANGEMENT2D_HPP
#define HYPERDEPTH_ARRANGEMENT2D_HPP

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hyperdepth/axioms.hpp"
#include "hyperdepth/depth.hpp"
#include "hyperdepth/parallel.hpp"

namespace hyperdepth {

enum class FaceKind { Vertex, Edge, Cell };

inline const char* toString(FaceKind k) {
    switch (k) {
        case FaceKind::Vertex: return "vertex";
        case FaceKind::Edge: return "edge";
        case FaceKind::Cell: return "cell";
    }
    return "?";
}

struct FaceRef {
    FaceKind kind = FaceKind::Cell;
    std::size_t index = 0;
    friend bool operator==(const FaceRef& a, const FaceRef& b) { return a.kind == b.kind && a.index == b.index; }
};

struct SubdivisionVertex {
    Vector point;
    std::vector<std::size_t> lines;       // distinct lines through the vertex
    std::vector<std::size_t> hyperplanes;  // input indices through the vertex
    std::vector<std::size_t> edges;
};

struct SubdivisionEdge {
    std::size_t line = 0;
    std::optional<std::size_t> from, to;  // nullopt: the edge is unbounded at that end
    Vector representative;
    std::size_t negativeCell = 0, positiveCell = 0;  // cells on either side of the line
    std::size_t unboundedEnds() const { return (from ? 0 : 1) + (to ? 0 : 1); }
};

struct SubdivisionCell {
    std::vector<int> signs;  // per distinct line
    Vector representative;
    bool bounded = false;
    std::vector<std::size_t> edges;
    std::vector<std::size_t> vertices;
};

class PlanarSubdivision {
public:
    Arrangement arrangement;
    std::vector<Hyperplane> lines;                     // distinct loci
    std::vector<std::vector<std::size_t>> lineMembers;  // input indices per line
    std::vector<std::vector<std::size_t>> lineEdges;    // edges along each line, in order
    std::vector<SubdivisionVertex> vertices;
    std::vector<SubdivisionEdge> edges;
    std::vector<SubdivisionCell> cells;
    Vector boxCenter;
    Rational boxHalfWidth = 1;

    std::size_t faceCount() const { return vertices.size() + edges.size() + cells.size(); }
    std::size_t boundedCells() const {
        return static_cast<std::size_t>(
            std::count_if(cells.begin(), cells.end(), [](const SubdivisionCell& c) { return c.bounded; }));
    }
    std::size_t unboundedCells() const { return cells.size() - boundedCells(); }

    /// Line direction, a quarter turn from the normal.
    static Vector direction(const Hyperplane& h) { return Vector{-h.normal()[1], h.normal()[0]}; }

    std::vector<int> signVector(const Vector& p) const {
        std::vector<int> s;
        for (const auto& l : lines) s.push_back(sign(l.residual(p)));
        return s;
    }

    /// The face containing p.
    FaceRef locate(const Vector& p) const {
        requireDimension(arrangement, p);
        auto s = signVector(p);
        std::vector<std::size_t> zeros;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (s[i] == 0) zeros.push_back(i);
        if (zeros.size() >= 2) {
            for (std::size_t v = 0; v < vertices.size(); ++v)
                if (vertices[v].point == p) return {FaceKind::Vertex, v};
            throw Error("point lies on two lines but matches no vertex");
        }
        if (zeros.size() == 1) {
            const std::size_t l = zeros[0];
            const Rational t = dot(p, direction(lines[l]));
            for (auto e : lineEdges[l]) {
                const auto& ed = edges[e];
                if (ed.from && t <= dot(vertices[*ed.from].point, direction(lines[l]))) continue;
                if (ed.to && t >= dot(vertices[*ed.to].point, direction(lines[l]))) continue;
                return {FaceKind::Edge, e};
            }
            throw Error("point on a line matches no edge");
        }
        auto it = cellBySigns_.find(s);
        if (it == cellBySigns_.end()) throw Error("sign vector matches no cell");
        return {FaceKind::Cell, it->second};
    }

    const Vector& representative(FaceRef f) const {
        switch (f.kind) {
            case FaceKind::Vertex: return vertices.at(f.index).point;
            case FaceKind::Edge: return edges.at(f.index).representative;
            case FaceKind::Cell: break;
        }
        return cells.at(f.index).representative;
    }

    std::vector<FaceRef> allFaces() const {
        std::vector<FaceRef> out;
        for (std::size_t i = 0; i < vertices.size(); ++i) out.push_back({FaceKind::Vertex, i});
        for (std::size_t i = 0; i < edges.size(); ++i) out.push_back({FaceKind::Edge, i});
        for (std::size_t i = 0; i < cells.size(); ++i) out.push_back({FaceKind::Cell, i});
        return out;
    }

    /// Corners of the clipping box, counter-clockwise from the lower left.
    std::vector<Vector> boxCorners() const {
        const Rational& h = boxHalfWidth;
        return {add(boxCenter, Vector{-h, -h}), add(boxCenter, Vector{h, -h}), add(boxCenter, Vector{h, h}),
                add(boxCenter, Vector{-h, h})};
    }

    /// Where line l leaves the clipping box, in line order.
    std::pair<Vector, Vector> clipLine(std::size_t l) const {
        const auto& h = lines.at(l);
        const Vector dir = direction(h);
        const Vector base = closestPoint(h, boxCenter);
        std::optional<Rational> lo, hi;
        for (std::size_t j = 0; j < 2; ++j) {
            if (dir[j] == 0) continue;
            Rational a = (boxCenter[j] - boxHalfWidth - base[j]) / dir[j];
            Rational b = (boxCenter[j] + boxHalfWidth - base[j]) / dir[j];
            if (b < a) std::swap(a, b);
            lo = lo ? maxValue(*lo, a) : a;
            hi = hi ? minValue(*hi, b) : b;
        }
        return {add(base, scale(dir, *lo)), add(base, scale(dir, *hi))};
    }

    /// Cell c intersected with the clipping box, counter-clockwise.
    std::vector<Vector> cellPolygon(std::size_t c) const {
        std::vector<Vector> poly = boxCorners();
        const auto& cell = cells.at(c);
        for (std::size_t l = 0; l < lines.size() && !poly.empty(); ++l) {
            // keep sign * residual >= 0
            auto value = [&](const Vector& p) -> Rational { return lines[l].residual(p) * cell.signs[l]; };
            std::vector<Vector> next;
            for (std::size_t i = 0; i < poly.size(); ++i) {
                const Vector& p = poly[i];
                const Vector& q = poly[(i + 1) % poly.size()];
                const Rational vp = value(p), vq = value(q);
                if (vp >= 0) next.push_back(p);
                if ((vp > 0 && vq < 0) || (vp < 0 && vq > 0))
                    next.push_back(add(p, scale(subtract(q, p), vp / (vp - vq))));
            }
            poly.clear();
            for (auto& p : next)
                if (poly.empty() || poly.back() != p) poly.push_back(std::move(p));
            if (poly.size() > 1 && poly.front() == poly.back()) poly.pop_back();
        }
        return poly;
    }

    /// V - E + F of the complex clipped to the box, counting the outer face.
    long eulerClipped() const {
        std::set<Vector, bool (*)(const Vector&, const Vector&)> boundary(lexLess);
        for (const auto& c : boxCorners()) boundary.insert(c);
        for (std::size_t l = 0; l < lines.size(); ++l) {
            auto [a, b] = clipLine(l);
            boundary.insert(a);
            boundary.insert(b);
        }
        const long vc = static_cast<long>(vertices.size() + boundary.size());
        const long ec = static_cast<long>(edges.size() + boundary.size());
        const long fc = static_cast<long>(cells.size() + 1);
        return vc - ec + fc;
    }

private:
    friend PlanarSubdivision buildSubdivision(const Arrangement& a);
    std::map<std::vector<int>, std::size_t> cellBySigns_;
};

/// Builds the face complex of a planar arrangement exactly. Coincident input
/// lines share one locus; concurrent lines meet in a single vertex.
inline PlanarSubdivision buildSubdivision(const Arrangement& a) {
    if (a.dimension() != 2) throw DimensionError("a planar subdivision needs a 2D arrangement");
    PlanarSubdivision s;
    s.arrangement = a;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::size_t l = 0;
        while (l < s.lines.size() && !s.lines[l].sameLocus(a[i])) ++l;
        if (l == s.lines.size()) {
            s.lines.push_back(a[i].withWeight(1));
            s.lineMembers.emplace_back();
        }
        s.lineMembers[l].push_back(i);
    }
    const std::size_t m = s.lines.size();

    // vertices
    std::vector<Vector> points;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const auto &h = s.lines[i], &g = s.lines[j];
            auto x = solveLinear({h.normal(), g.normal()}, {h.offset(), g.offset()}, 2);
            if (x && rank({h.normal(), g.normal()}) == 2) points.push_back(*x);
        }
    std::sort(points.begin(), points.end(), lexLess);
    points.erase(std::unique(points.begin(), points.end()), points.end());
    for (auto& p : points) {
        SubdivisionVertex v;
        v.point = p;
        for (std::size_t l = 0; l < m; ++l)
            if (s.lines[l].contains(p)) {
                v.lines.push_back(l);
                for (auto i : s.lineMembers[l]) v.hyperplanes.push_back(i);
            }
        std::sort(v.hyperplanes.begin(), v.hyperplanes.end());
        s.vertices.push_back(std::move(v));
    }

    // edges along each line, ordered by the line parameter
    s.lineEdges.assign(m, {});
    for (std::size_t l = 0; l < m; ++l) {
        const Vector dir = PlanarSubdivision::direction(s.lines[l]);
        std::vector<std::size_t> on;
        for (std::size_t v = 0; v < s.vertices.size(); ++v)
            if (s.lines[l].contains(s.vertices[v].point)) on.push_back(v);
        std::sort(on.begin(), on.end(), [&](std::size_t x, std::size_t y) {
            return dot(s.vertices[x].point, dir) < dot(s.vertices[y].point, dir);
        });
        auto addEdge = [&](std::optional<std::size_t> from, std::optional<std::size_t> to, Vector rep) {
            SubdivisionEdge e;
            e.line = l;
            e.from = from;
            e.to = to;
            e.representative = std::move(rep);
            const std::size_t id = s.edges.size();
            if (from) s.vertices[*from].edges.push_back(id);
            if (to) s.vertices[*to].edges.push_back(id);
            s.lineEdges[l].push_back(id);
            s.edges.push_back(std::move(e));
        };
        if (on.empty()) {
            addEdge(std::nullopt, std::nullopt, closestPoint(s.lines[l], Vector(2, 0)));
            continue;
        }
        addEdge(std::nullopt, on.front(), subtract(s.vertices[on.front()].point, dir));
        for (std::size_t k = 0; k + 1 < on.size(); ++k)
            addEdge(on[k], on[k + 1],
                    scale(add(s.vertices[on[k]].point, s.vertices[on[k + 1]].point), Rational(1, 2)));
        addEdge(on.back(), std::nullopt, add(s.vertices[on.back()].point, dir));
    }

    // cells, discovered from both sides of every edge
    auto cellFor = [&](const Vector& p) {
        auto sig = s.signVector(p);
        auto it = s.cellBySigns_.find(sig);
        if (it != s.cellBySigns_.end()) return it->second;
        SubdivisionCell c;
        c.signs = sig;
        c.representative = p;
        s.cellBySigns_[sig] = s.cells.size();
        s.cells.push_back(std::move(c));
        return s.cells.size() - 1;
    };
    if (m == 0) cellFor(Vector(2, 0));
    for (std::size_t e = 0; e < s.edges.size(); ++e) {
        auto& ed = s.edges[e];
        const auto& line = s.lines[ed.line];
        const Vector& n = line.normal();
        const Vector& p = ed.representative;
        // step off the line without reaching any other line
        std::optional<Rational> reach;
        for (std::size_t l = 0; l < m; ++l) {
            if (l == ed.line) continue;
            const Rational c = dot(s.lines[l].normal(), n);
            if (c == 0) continue;
            const Rational lim = absValue(s.lines[l].residual(p) / c);
            reach = reach ? minValue(*reach, lim) : lim;
        }
        const Rational step = reach ? *reach / 2 : Rational(1);
        ed.negativeCell = cellFor(subtract(p, scale(n, step)));
        ed.positiveCell = cellFor(add(p, scale(n, step)));
        for (auto c : {ed.negativeCell, ed.positiveCell}) {
            auto& cell = s.cells[c];
            cell.edges.push_back(e);
            for (auto v : {ed.from, ed.to})
                if (v && std::find(cell.vertices.begin(), cell.vertices.end(), *v) == cell.vertices.end())
                    cell.vertices.push_back(*v);
        }
    }
    for (auto& c : s.cells) {
        c.bounded = m > 0 && std::all_of(c.edges.begin(), c.edges.end(),
                                         [&](std::size_t e) { return s.edges[e].unboundedEnds() == 0; });
        std::sort(c.vertices.begin(), c.vertices.end());
        if (c.bounded) {
            // the vertex centroid is interior to a bounded convex polygon
            Vector centroid(2, 0);
            for (auto v : c.vertices) centroid = add(centroid, s.vertices[v].point);
            c.representative = scale(centroid, Rational(1, static_cast<unsigned long>(c.vertices.size())));
        }
    }

    // clipping box: twice the extent of the vertices (or of the lines' feet)
    std::vector<Vector> anchors;
    for (const auto& v : s.vertices) anchors.push_back(v.point);
    if (anchors.empty())
        for (const auto& l : s.lines) anchors.push_back(closestPoint(l, Vector(2, 0)));
    if (anchors.empty()) anchors.push_back(Vector(2, 0));
    Vector lo = anchors.front(), hi = anchors.front();
    for (const auto& p : anchors)
        for (std::size_t j = 0; j < 2; ++j) {
            lo[j] = minValue(lo[j], p[j]);
            hi[j] = maxValue(hi[j], p[j]);
        }
    s.boxCenter = scale(add(lo, hi), Rational(1, 2));
    s.boxHalfWidth = maxValue(Rational(1), maxValue(hi[0] - lo[0], hi[1] - lo[1]));
    return s;
}

// ----------------------------------------------------------------------------
// Depth labels
// ----------------------------------------------------------------------------

struct DepthTable {
    MeasureKind measure = MeasureKind::RD;
    std::vector<Rational> vertices, edges, cells;
    /// Faces whose open depth was taken on a perturbed face (concurrent lines).
    std::vector<std::size_t> perturbedVertices;

    const Rational& at(FaceRef f) const {
        switch (f.kind) {
            case FaceKind::Vertex: return vertices.at(f.index);
            case FaceKind::Edge: return edges.at(f.index);
            case FaceKind::Cell: break;
        }
        return cells.at(f.index);
    }

    Rational maximum() const {
        Rational best = 0;
        for (const auto* v : {&vertices, &edges, &cells})
            for (const auto& x : *v) best = maxValue(best, x);
        return best;
    }

    /// Distinct depth values, ascending.
    std::vector<Rational> levels() const {
        std::vector<Rational> out;
        for (const auto* v : {&vertices, &edges, &cells}) out.insert(out.end(), v->begin(), v->end());
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
};

/// Evaluates RD, RD' or TRD once per face at its representative point.
inline DepthTable labelDepth(const PlanarSubdivision& sub, MeasureKind measure, unsigned threads = 1) {
    if (measure != MeasureKind::RD && measure != MeasureKind::RDOpen && measure != MeasureKind::TRD)
        throw InputError(std::string("face labels support rd, rd-open and trd, not ") + toString(measure));
    const auto& a = sub.arrangement;
    const auto normals = normalCells(a);
    const Rational cap = a.totalWeight() / 3;
    const auto faces = sub.allFaces();
    auto values = parallelMap<DepthResult>(faces.size(), threads, [&](std::size_t i) {
        const Vector& q = sub.representative(faces[i]);
        if (measure == MeasureKind::RDOpen) return openRegressionDepth(a, q);
        DepthResult r = regressionDepth(a, q, normals);
        if (measure == MeasureKind::TRD) r.value = minValue(cap, r.value);
        return r;
    });
    DepthTable t;
    t.measure = measure;
    for (std::size_t i = 0; i < faces.size(); ++i) {
        switch (faces[i].kind) {
            case FaceKind::Vertex:
                t.vertices.push_back(values[i].value);
                if (!values[i].certificate.perturbedSigns.empty()) t.perturbedVertices.push_back(faces[i].index);
                break;
            case FaceKind::Edge: t.edges.push_back(values[i].value); break;
            case FaceKind::Cell: t.cells.push_back(values[i].value); break;
        }
    }
    return t;
}

// ----------------------------------------------------------------------------
// Regions
// ----------------------------------------------------------------------------

struct DepthRegion {
    MeasureKind measure = MeasureKind::RD;
    Rational threshold = 0;
    std::vector<std::size_t> vertices, edges, cells;

    bool empty() const { return vertices.empty() && edges.empty() && cells.empty(); }
    std::size_t size() const { return vertices.size() + edges.size() + cells.size(); }
};

/// Faces of depth at least k.
inline DepthRegion extractRegion(const PlanarSubdivision& sub, const DepthTable& table, const Rational& k) {
    if (table.vertices.size() != sub.vertices.size() || table.edges.size() != sub.edges.size() ||
        table.cells.size() != sub.cells.size())
        throw InputError("depth table does not match the subdivision");
    DepthRegion r;
    r.measure = table.measure;
    r.threshold = k;
    for (std::size_t i = 0; i < table.vertices.size(); ++i)
        if (table.vertices[i] >= k) r.vertices.push_back(i);
    for (std::size_t i = 0; i < table.edges.size(); ++i)
        if (table.edges[i] >= k) r.edges.push_back(i);
    for (std::size_t i = 0; i < table.cells.size(); ++i)
        if (table.cells[i] >= k) r.cells.push_back(i);
    return r;
}

/// Closure of the union of cells of depth at least k, ignoring the labels of
/// lower-dimensional faces.
inline DepthRegion extractCellRegion(const PlanarSubdivision& sub, const DepthTable& table, const Rational& k) {
    DepthRegion r = extractRegion(sub, table, k);
    r.vertices.clear();
    r.edges.clear();
    std::set<std::size_t> vs, es;
    for (auto c : r.cells) {
        for (auto e : sub.cells[c].edges) es.insert(e);
        for (auto v : sub.cells[c].vertices) vs.insert(v);
    }
    r.vertices.assign(vs.begin(), vs.end());
    r.edges.assign(es.begin(), es.end());
    return r;
}

/// The deepest nonempty region.
inline DepthRegion medianRegion(const PlanarSubdivision& sub, const DepthTable& table) {
    return extractRegion(sub, table, table.maximum());
}

struct ContractibilityReport {
    bool contractible = false;
    long euler = 0;
    std::size_t components = 0;
    std::string status;  // "contractible", "empty", "disconnected" or "holes"
};

namespace detail {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace detail

/// Decides contractibility of the closure of a region. Unbounded faces are
/// cut at infinity: each unbounded edge end adds a point and each unbounded
/// cell side adds an arc, which is what clipping by a large box would add.
/// A planar complex is contractible iff it is connected with Euler
/// characteristic 1.
inline ContractibilityReport checkContractible(const PlanarSubdivision& sub, const DepthRegion& region) {
    ContractibilityReport rep;
    if (region.empty()) {
        rep.status = "empty";
        return rep;
    }
    std::vector<char> inV(sub.vertices.size(), 0), inE(sub.edges.size(), 0), inC(sub.cells.size(), 0);
    for (auto v : region.vertices) inV.at(v) = 1;
    for (auto e : region.edges) inE.at(e) = 1;
    for (auto c : region.cells) inC.at(c) = 1;
    for (std::size_t c = 0; c < sub.cells.size(); ++c)
        if (inC[c])
            for (auto e : sub.cells[c].edges) inE[e] = 1;
    for (std::size_t e = 0; e < sub.edges.size(); ++e)
        if (inE[e])
            for (auto v : {sub.edges[e].from, sub.edges[e].to})
                if (v) inV[*v] = 1;

    if (sub.lines.empty()) {
        // the single cell is the whole plane
        rep.euler = 1;
        rep.components = 1;
    } else {
        long v = 0, e = 0, f = 0, ends = 0, arcs = 0;
        const std::size_t nv = sub.vertices.size(), ne = sub.edges.size();
        detail::UnionFind uf(nv + ne + sub.cells.size());
        for (std::size_t i = 0; i < nv; ++i) v += inV[i];
        for (std::size_t i = 0; i < ne; ++i) {
            if (!inE[i]) continue;
            ++e;
            ends += static_cast<long>(sub.edges[i].unboundedEnds());
            for (auto x : {sub.edges[i].from, sub.edges[i].to})
                if (x) uf.unite(*x, nv + i);
        }
        for (std::size_t i = 0; i < sub.cells.size(); ++i) {
            if (!inC[i]) continue;
            ++f;
            long cellEnds = 0;
            for (auto x : sub.cells[i].edges) {
                cellEnds += static_cast<long>(sub.edges[x].unboundedEnds());
                uf.unite(nv + x, nv + ne + i);
            }
            arcs += cellEnds / 2;
        }
        rep.euler = v - e + f + ends - arcs;
        std::set<std::size_t> roots;
        for (std::size_t i = 0; i < nv; ++i)
            if (inV[i]) roots.insert(uf.find(i));
        for (std::size_t i = 0; i < ne; ++i)
            if (inE[i]) roots.insert(uf.find(nv + i));
        for (std::size_t i = 0; i < sub.cells.size(); ++i)
            if (inC[i]) roots.insert(uf.find(nv + ne + i));
        rep.components = roots.size();
    }
    if (rep.components != 1)
        rep.status = "disconnected";
    else if (rep.euler != 1)
        rep.status = "holes";
    else {
        rep.status = "contractible";
        rep.contractible = true;
    }
    return rep;
}

// ----------------------------------------------------------------------------
// SVG
// ----------------------------------------------------------------------------

struct SvgOptions {
    std::optional<Vector> marker;  // e.g. a deepest point
    std::string title;
};

namespace detail {

inline std::string fixed3(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}

/// Linear ramp from a pale to a dark blue.
inline std::string rampColor(const Rational& value, const Rational& top) {
    const double t = top > 0 ? Rational(value / top).get_d() : 0.0;
    const int from[3] = {247, 251, 255}, to[3] = {8, 48, 107};
    char buf[8];
    int c[3];
    for (int i = 0; i < 3; ++i) c[i] = static_cast<int>(from[i] + (to[i] - from[i]) * t + 0.5);
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c[0], c[1], c[2]);
    return buf;
}

inline std::string xmlEscape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

}  // namespace detail

/// Depth map on a fixed 1000x1000 canvas: the clipped box is drawn in an
/// 800x800 square, the legend to its right. Output depends only on the inputs.
inline std::string renderSVG(const PlanarSubdivision& sub, const DepthTable& table, const SvgOptions& options = {}) {
    constexpr double kOrigin = 40.0, kSide = 800.0;
    const double cx = sub.boxCenter[0].get_d(), cy = sub.boxCenter[1].get_d();
    const double half = sub.boxHalfWidth.get_d();
    auto px = [&](const Rational& x) { return detail::fixed3(kOrigin + (x.get_d() - cx + half) / (2 * half) * kSide); };
    auto py = [&](const Rational& y) { return detail::fixed3(kOrigin + (cy + half - y.get_d()) / (2 * half) * kSide); };
    const Rational top = table.maximum();

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"1000\" height=\"1000\" "
          "viewBox=\"0 0 1000 1000\">\n";
    if (!options.title.empty()) os << "<title>" << detail::xmlEscape(options.title) << "</title>\n";
    os << "<rect class=\"background\" x=\"0\" y=\"0\" width=\"1000\" height=\"1000\" fill=\"#ffffff\"/>\n";
    if (!sub.arrangement.empty()) {
        for (std::size_t c = 0; c < sub.cells.size(); ++c) {
            os << "<polygon class=\"face cell\" data-depth=\"" << formatRational(table.cells.at(c)) << "\" points=\"";
            bool first = true;
            for (const auto& p : sub.cellPolygon(c)) {
                os << (first ? "" : " ") << px(p[0]) << ',' << py(p[1]);
                first = false;
            }
            os << "\" fill=\"" << detail::rampColor(table.cells[c], top) << "\" stroke=\"none\"/>\n";
        }
        for (std::size_t l = 0; l < sub.lines.size(); ++l) {
            auto [a, b] = sub.clipLine(l);
            os << "<line class=\"line\" x1=\"" << px(a[0]) << "\" y1=\"" << py(a[1]) << "\" x2=\"" << px(b[0])
               << "\" y2=\"" << py(b[1]) << "\" stroke=\"#444444\" stroke-width=\"1.5\"/>\n";
        }
        for (std::size_t v = 0; v < sub.vertices.size(); ++v) {
            const auto& p = sub.vertices[v].point;
            os << "<circle class=\"face vertex\" data-depth=\"" << formatRational(table.vertices.at(v)) << "\" cx=\""
               << px(p[0]) << "\" cy=\"" << py(p[1]) << "\" r=\"5\" fill=\""
               << detail::rampColor(table.vertices[v], top) << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
        }
        if (options.marker) {
            const auto& m = *options.marker;
            requireDimension(sub.arrangement, m);
            os << "<circle class=\"marker\" cx=\"" << px(m[0]) << "\" cy=\"" << py(m[1])
               << "\" r=\"9\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"3\"/>\n";
        }
    }
    os << "<g class=\"legend\">\n<text x=\"860\" y=\"60\" font-family=\"sans-serif\" font-size=\"16\">"
       << toString(table.measure) << " depth</text>\n";
    double y = 80;
    for (const auto& level : table.levels()) {
        os << "<rect x=\"860\" y=\"" << detail::fixed3(y) << "\" width=\"24\" height=\"24\" fill=\""
           << detail::rampColor(level, top) << "\" stroke=\"#000000\"/>\n"
           << "<text x=\"892\" y=\"" << detail::fixed3(y + 18) << "\" font-family=\"sans-serif\" font-size=\"14\">"
           << formatRational(level) << "</text>\n";
        y += 32;
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

}  // namespace hyperdepth

#endif  // HYPERDEPTH_ARRANGEMENT2D_HPP
