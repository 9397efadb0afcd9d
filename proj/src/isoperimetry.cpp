#include "chg/isoperimetry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace chg {

int PixelDomain::cell_count() const {
    int n = 0;
    for (uint8_t c : cell) n += c;
    return n;
}

bool PixelDomain::connected() const {
    const int n = cell_count();
    if (n == 0) return true;
    std::vector<uint8_t> seen(cell.size(), 0);
    std::queue<int> bfs;
    for (std::size_t i = 0; i < cell.size(); ++i)
        if (cell[i]) { bfs.push(int(i)); seen[i] = 1; break; }
    int reached = 0;
    while (!bfs.empty()) {
        const int idx = bfs.front();
        bfs.pop();
        ++reached;
        const int r = idx / cols, c = idx % cols;
        const int nb[4][2] = {{r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}};
        for (auto& p : nb) {
            if (p[0] < 0 || p[0] >= rows || p[1] < 0 || p[1] >= cols) continue;
            const int j = p[0] * cols + p[1];
            if (cell[j] && !seen[j]) { seen[j] = 1; bfs.push(j); }
        }
    }
    return reached == n;
}

PixelDomain rect_domain(int rows, int cols) {
    PixelDomain d;
    d.rows = rows;
    d.cols = cols;
    d.h = 1.0 / std::sqrt(double(rows) * cols);
    d.cell.assign(std::size_t(rows) * cols, 1);
    return d;
}

namespace {

// member cells in row-major order; bit i of a RegionMask refers to members[i]
std::vector<int> member_cells(const PixelDomain& dom) {
    std::vector<int> m;
    for (std::size_t i = 0; i < dom.cell.size(); ++i)
        if (dom.cell[i]) m.push_back(int(i));
    return m;
}

// interior edges as (bit_i, bit_j) pairs
std::vector<std::pair<int, int>> interior_edges(const PixelDomain& dom) {
    std::vector<int> bit_of(dom.cell.size(), -1);
    const auto mem = member_cells(dom);
    for (std::size_t k = 0; k < mem.size(); ++k) bit_of[mem[k]] = int(k);
    std::vector<std::pair<int, int>> edges;
    for (int idx : mem) {
        const int r = idx / dom.cols, c = idx % dom.cols;
        if (c + 1 < dom.cols && bit_of[idx + 1] >= 0)
            edges.push_back({bit_of[idx], bit_of[idx + 1]});
        if (r + 1 < dom.rows && bit_of[idx + dom.cols] >= 0)
            edges.push_back({bit_of[idx], bit_of[idx + dom.cols]});
    }
    return edges;
}

}  // namespace

double perimeter_rel(RegionMask e, const PixelDomain& dom) {
    int cut = 0;
    for (const auto& [i, j] : interior_edges(dom))
        cut += int(((e >> i) & 1u) != ((e >> j) & 1u));
    return dom.h * cut;
}

double measure(RegionMask e, const PixelDomain& dom) {
    return double(std::popcount(e)) * dom.h * dom.h;
}

double alpha(RegionMask e1, RegionMask e2, const PixelDomain& dom) {
    const int a12 = std::popcount(e1 & ~e2);
    const int a21 = std::popcount(e2 & ~e1);
    return double(std::min(a12, a21)) * dom.h * dom.h;
}

IsoOptimum iso_bruteforce(const PixelDomain& dom, double v,
                          const std::optional<AlphaConstraint>& constraint) {
    const int n = dom.cell_count();
    if (n > 24)
        throw std::runtime_error(
            "iso_bruteforce: more than 24 cells; use the heuristic mode");
    const double h2 = dom.h * dom.h;
    const int k = int(std::lround(v / h2));
    if (k < 0 || k > n || std::fabs(v - k * h2) > 1e-9) {
        std::ostringstream os;
        os << "iso_bruteforce: measure " << v << " not attainable; nearest "
           << std::floor(v / h2) * h2 << " and " << std::ceil(v / h2) * h2;
        throw std::runtime_error(os.str());
    }
    const auto edges = interior_edges(dom);
    IsoOptimum best;
    best.value = 1e300;
    const RegionMask top = (n == 32) ? ~RegionMask(0) : ((RegionMask(1) << n) - 1);
    for (RegionMask e = 0;; ++e) {
        if (std::popcount(e) == k) {
            bool ok = true;
            if (constraint)
                ok = alpha(constraint->e0, e, dom) <= constraint->delta + 1e-12;
            if (ok) {
                int cut = 0;
                for (const auto& [i, j] : edges)
                    cut += int(((e >> i) & 1u) != ((e >> j) & 1u));
                const double p = dom.h * cut;
                if (p < best.value - 1e-15) {
                    best.value = p;
                    best.argmin = e;
                }
            }
        }
        if (e == top) break;
    }
    if (best.value >= 1e300)
        throw std::runtime_error("iso_bruteforce: no feasible subset");
    return best;
}

double iso_analytic_rectangle(double w, double v) {
    if (!(v > 0.0 && v < 1.0))
        throw std::invalid_argument("iso_analytic_rectangle: v must be in (0,1)");
    const double s = std::fmin(w, 1.0 / w);
    return std::fmin(s, std::fmin(std::sqrt(M_PI * v), std::sqrt(M_PI * (1.0 - v))));
}

OneSided one_sided_derivatives(const std::function<double(double)>& f,
                               double v0, double h0) {
    const double f0 = f(v0);
    auto extrap = [&](double sign) {
        double d[3];
        for (int k = 0; k < 3; ++k) {
            const double h = h0 / double(1 << k);
            d[k] = sign * (f(v0 + sign * h) - f0) / h;
        }
        const double e0 = 2 * d[1] - d[0];
        const double e1 = 2 * d[2] - d[1];
        return (4 * e1 - e0) / 3.0;
    };
    return {extrap(-1.0), extrap(+1.0)};
}

double semiconcavity_estimate(const std::vector<double>& values, double h) {
    if (values.size() < 5)
        throw std::invalid_argument("semiconcavity_estimate: need >= 5 samples");
    double worst = 0.0;
    for (std::size_t j = 1; j + 1 < values.size(); ++j)
        worst = std::fmax(worst, values[j - 1] - 2 * values[j] + values[j + 1]);
    return worst / (h * h);
}

LevelSetCheck level_set_alpha_check(const std::vector<double>& u,
                                    const std::vector<uint8_t>& e0, double delta,
                                    const PixelDomain& dom, double a, double b) {
    const int n = dom.cell_count();
    if (int(u.size()) != n || int(e0.size()) != n)
        throw std::invalid_argument("level_set_alpha_check: field size mismatch");
    const double h2 = dom.h * dom.h;
    double l1 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double ref = e0[i] ? a : b;
        l1 += std::fabs(u[i] - ref) * h2;
    }
    LevelSetCheck out;
    out.hypothesis_met = l1 <= (b - a) * delta + 1e-12;
    if (!out.hypothesis_met) return out;

    std::vector<double> thresholds(u);
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                     thresholds.end());
    thresholds.insert(thresholds.begin(), thresholds.front() - 1.0);
    thresholds.push_back(thresholds.back() + 1.0);
    out.pass = true;
    for (double s : thresholds) {
        int in_not_sub = 0, sub_not_in = 0;
        for (int i = 0; i < n; ++i) {
            const bool in_sub = u[i] <= s;
            if (e0[i] && !in_sub) ++in_not_sub;
            if (!e0[i] && in_sub) ++sub_not_in;
        }
        const double av = double(std::min(in_not_sub, sub_not_in)) * h2;
        out.worst_alpha = std::fmax(out.worst_alpha, av);
        if (av > delta + 1e-9) out.pass = false;
    }
    return out;
}

Rect erode_rect(const Rect& r, double tau) {
    if (tau < 0.0) throw std::invalid_argument("erode_rect: tau must be >= 0");
    Rect out{r.w - 2 * tau, r.h - 2 * tau};
    if (out.w <= 0.0 || out.h <= 0.0)
        throw std::runtime_error("erode_rect: eroded rectangle is empty");
    return out;
}

PixelDomain erode(const PixelDomain& dom, double tau) {
    if (tau < 0.0) throw std::invalid_argument("erode: tau must be >= 0");
    PixelDomain out = dom;
    const double h = dom.h;
    for (int r = 0; r < dom.rows; ++r) {
        for (int c = 0; c < dom.cols; ++c) {
            const std::size_t idx = std::size_t(r) * dom.cols + c;
            if (!dom.cell[idx]) continue;
            const double x = (c + 0.5) * h, y = (r + 0.5) * h;
            double d = std::fmin(std::fmin(x, dom.cols * h - x),
                                 std::fmin(y, dom.rows * h - y));
            for (int r2 = 0; r2 < dom.rows && d > tau; ++r2)
                for (int c2 = 0; c2 < dom.cols; ++c2)
                    if (!dom.cell[std::size_t(r2) * dom.cols + c2]) {
                        const double dx = (c2 + 0.5) * h - x;
                        const double dy = (r2 + 0.5) * h - y;
                        d = std::fmin(d, std::hypot(dx, dy) - 0.5 * h);
                    }
            if (!(d > tau)) out.cell[idx] = 0;
        }
    }
    if (out.cell_count() == 0) throw std::runtime_error("erode: result empty");
    return out;
}

double iso_rect_value(const Rect& r, double v) {
    if (!(v > 0.0 && v < r.area()))
        throw std::invalid_argument("iso_rect_value: v outside (0, area)");
    return std::fmin(std::fmin(r.w, r.h),
                     std::fmin(std::sqrt(M_PI * v), std::sqrt(M_PI * (r.area() - v))));
}

ErodedBoundReport eroded_iso_bound_check(const Rect& r, double tau,
                                         const std::vector<double>& vs,
                                         double c1) {
    const Rect er = erode_rect(r, tau);
    ErodedBoundReport rep;
    rep.window_lo = c1 * tau;
    rep.window_hi = 0.5 * er.area();
    rep.c2 = 1e300;
    for (double v : vs) {
        if (v <= rep.window_lo || v > rep.window_hi) continue;
        rep.c2 = std::fmin(rep.c2, iso_rect_value(er, v) / std::sqrt(v));
        ++rep.samples_used;
    }
    if (rep.samples_used == 0) rep.c2 = 0.0;
    return rep;
}

namespace {

// area of {x^2+y^2 <= rr^2, x,y >= 0, y <= t} inside the unit square
double quarter_disk_below(double rr, double t) {
    if (t <= 0.0) return 0.0;
    if (t >= rr) return 0.25 * M_PI * rr * rr;
    return 0.5 * (t * std::sqrt(rr * rr - t * t) + rr * rr * std::asin(t / rr));
}

struct Candidate {
    double perimeter;
    int kind;  // 0 strip (y < v), 1 corner quarter-disk, 2 disk complement
};

double alpha_sets(int k1, double v1, int k2, double v2) {
    auto radius = [](double v) { return std::sqrt(4.0 * v / M_PI); };
    if (k1 > k2) { std::swap(k1, k2); std::swap(v1, v2); }
    auto inter = [&](void) -> double {
        if (k1 == 0 && k2 == 0) return std::fmin(v1, v2);
        if (k1 == 1 && k2 == 1) return std::fmin(v1, v2);
        if (k1 == 0 && k2 == 1) return quarter_disk_below(radius(v2), v1);
        if (k1 == 0 && k2 == 2)  // strip vs complement of disk(1-v2)
            return v1 - quarter_disk_below(radius(1.0 - v2), v1);
        if (k1 == 1 && k2 == 2)  // nested disks
            return v1 - std::fmin(v1, 1.0 - v2);
        // complement pair: |c1 ∩ c2| = 1 - |d1 ∪ d2| with nested disks
        return 1.0 - std::fmax(1.0 - v1, 1.0 - v2);
    };
    const double iv = inter();
    return std::fmin(v1 - iv, v2 - iv);
}

}  // namespace

double local_square_profile(const std::string& e0_kind, double vm,
                            double delta, double v) {
    const int k0 = e0_kind == "strip" ? 0 : 1;
    if (e0_kind != "strip" && e0_kind != "disk")
        throw std::invalid_argument("local_square_profile: kind must be strip|disk");
    const Candidate cands[3] = {{1.0, 0},
                                {std::sqrt(M_PI * v), 1},
                                {std::sqrt(M_PI * (1.0 - v)), 2}};
    double best = 1e300;
    for (const auto& c : cands)
        if (alpha_sets(k0, vm, c.kind, v) <= delta + 1e-12)
            best = std::fmin(best, c.perimeter);
    if (best >= 1e300)
        throw std::runtime_error("local_square_profile: no feasible competitor");
    return best;
}

CurvatureSweepReport curvature_limit_sweep(const std::string& e0_kind,
                                           double vm,
                                           const std::vector<double>& deltas) {
    CurvatureSweepReport rep;
    rep.target = e0_kind == "strip" ? 0.0 : 0.5 * std::sqrt(M_PI / vm);
    for (double d : deltas) {
        auto f = [&](double v) { return local_square_profile(e0_kind, vm, d, v); };
        const OneSided os = one_sided_derivatives(f, vm, 1e-3);
        rep.points.push_back({d, os.d_minus, os.d_plus});
    }
    return rep;
}

}  // namespace chg
