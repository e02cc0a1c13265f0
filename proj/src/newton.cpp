#include "weylkit/newton.hpp"

namespace weylkit {

namespace {
long long cross(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b)
{
    return static_cast<long long>(a.first - o.first) * (b.second - o.second)
        - static_cast<long long>(a.second - o.second) * (b.first - o.first);
}
} // namespace

std::vector<LatticePoint> convex_hull(std::set<LatticePoint> pts)
{
    std::vector<LatticePoint> p(pts.begin(), pts.end()); // already sorted
    size_t n = p.size();
    if (n <= 2)
        return p;
    std::vector<LatticePoint> h(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0)
            --k;
        h[k++] = p[i];
    }
    for (size_t i = n - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], p[i]) <= 0)
            --k;
        h[k++] = p[i];
    }
    h.resize(k - 1);
    return h;
}

} // namespace weylkit
