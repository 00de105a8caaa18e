#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "oneill/chart.hpp"
#include "oneill/poly.hpp"

namespace oneill {

/// Deterministic sampling: identical seeds give identical draws on every
/// platform (mt19937_64 is pinned by the standard; no distribution objects).
class Sampler {
public:
    explicit Sampler(uint64_t seed) : eng_(seed) {}

    /// Derive a stream for a named check so check order never shifts draws.
    static Sampler for_check(uint64_t seed, const std::string& name) {
        uint64_t h = 1469598103934665603ull;  // FNV-1a
        for (char c : name) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
        return Sampler(seed ^ h);
    }

    uint64_t next(uint64_t bound) { return eng_() % bound; }

    long integer(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(next(static_cast<uint64_t>(hi - lo + 1)));
    }

    /// Rational in [lo, hi] with denominator <= max_den.
    Rational rational(long lo = -2, long hi = 2, long max_den = 16) {
        long den = integer(1, max_den);
        long num = integer(lo * den, hi * den);
        return make_rational(num, den);
    }

    Rational nonzero_rational(long lo = -2, long hi = 2, long max_den = 16) {
        for (;;) {
            Rational r = rational(lo, hi, max_den);
            if (r != 0) return r;
        }
    }

    Point point(const Chart& chart) {
        std::vector<Rational> c;
        c.reserve(chart.dim());
        for (int i = 0; i < chart.dim(); ++i) c.push_back(rational());
        return Point::exact(std::move(c));
    }

    /// Sample-point policy: origin, the all-halves point, then seeded random
    /// rational points with coordinates in [-2, 2] and denominators <= 16.
    std::vector<Point> sample_points(const Chart& chart, int count = 7) {
        std::vector<Point> pts;
        if (count >= 1) pts.push_back(Point::origin(chart.dim()));
        if (count >= 2)
            pts.push_back(Point::exact(std::vector<Rational>(chart.dim(), make_rational(1, 2))));
        while (static_cast<int>(pts.size()) < count) pts.push_back(point(chart));
        return pts;
    }

    Poly poly(const ChartPtr& chart, int max_degree = 2, int terms = 3) {
        Poly p(chart);
        for (int t = 0; t < terms; ++t) {
            Exponents e(chart->dim(), 0);
            int deg = static_cast<int>(next(static_cast<uint64_t>(max_degree + 1)));
            for (int k = 0; k < deg; ++k) e[next(static_cast<uint64_t>(chart->dim()))] += 1;
            p.add_term(e, FieldElem(nonzero_rational()));
        }
        return p;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace oneill
