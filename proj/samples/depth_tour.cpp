// A short walk through the library on a small planar arrangement.
// Usage: sample_depth_tour [arrangement.json] [map.svg]

#include <fstream>
#include <iostream>

#include "hyperdepth/hyperdepth.hpp"

using namespace hyperdepth;

namespace {

std::string show(const Vector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + formatRational(v[i]);
    return s + ")";
}

}  // namespace

int main(int argc, char** argv) {
    try {
        const Arrangement a = argc > 1 ? loadArrangement(argv[1])
                                       : Arrangement(2, {Hyperplane({1, 0}, 0), Hyperplane({0, 1}, 0),
                                                         Hyperplane({1, 1}, 1)});
        std::cout << a.size() << " hyperplanes in dimension " << a.dimension() << "\n";

        const Vector corner(a.dimension(), 0);
        const auto rd = regressionDepth(a, corner);
        std::cout << "at " << show(corner) << ": RD " << formatRational(rd.value) << " (escape ray "
                  << show(rd.certificate.witness) << "), RD' " << formatRational(openRegressionDepth(a, corner).value)
                  << ", TRD " << formatRational(truncatedRegressionDepth(a, corner)) << "\n";

        const auto deepest = deepestPoint(a);
        std::cout << "deepest point " << show(deepest.point) << " with depth " << formatRational(deepest.depth) << "\n";

        if (a.unitWeights() && a.size() <= 12) {
            std::cout << "HTvD " << hyperplaneTverbergDepth(a, deepest.point).value << ", HED "
                      << hyperplaneEnclosingDepth(a, deepest.point).value << " at the deepest point\n";
        }

        const std::size_t d = a.dimension();
        const std::size_t r = (a.size() - 1) / (d + 1) + 1;
        if (r >= 2 && a.size() >= (r - 1) * (d + 1) + 1) {
            const auto cert = solveTverberg(a, r, 1);
            std::cout << "Tverberg partition into " << r << " parts around " << show(cert.q) << ", verified "
                      << std::boolalpha << verifyTverberg(a, cert) << "\n";
        }

        if (d == 2) {
            const auto sub = buildSubdivision(a);
            const auto table = labelDepth(sub, MeasureKind::RD);
            std::cout << sub.vertices.size() << " vertices, " << sub.edges.size() << " edges, " << sub.cells.size()
                      << " cells\n";
            for (const auto& k : table.levels()) {
                if (k <= 0) continue;
                const auto rep = checkContractible(sub, extractRegion(sub, table, k));
                std::cout << "  RD >= " << formatRational(k) << ": " << rep.status << " (chi " << rep.euler << ")\n";
            }
            const std::string out = argc > 2 ? argv[2] : "depth_tour.svg";
            SvgOptions opt;
            opt.marker = deepest.point;
            opt.title = "regression depth";
            std::ofstream(out) << renderSVG(sub, table, opt);
            std::cout << "wrote " << out << "\n";
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
