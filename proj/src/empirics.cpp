#include "icc/empirics.h"

#include <cmath>

namespace icc {

emp_dist empirical_distribution(const symbol_seq& x) {
    emp_dist d;
    d.nx = x.a.size;
    d.nz = 1;
    d.n = x.n();
    d.cnt.assign(d.nx, 0);
    for (int i = 1; i <= x.n(); ++i) d.cnt[x.sym(i)]++;
    return d;
}

emp_dist empirical_distribution(const symbol_seq& x, const symbol_seq& z) {
    if (x.n() != z.n()) throw std::invalid_argument("length mismatch");
    emp_dist d;
    d.nx = x.a.size;
    d.nz = z.a.size;
    d.n = x.n();
    d.cnt.assign((size_t)d.nx * d.nz, 0);
    for (int i = 1; i <= x.n(); ++i) d.cnt[(size_t)z.sym(i) * d.nx + x.sym(i)]++;
    return d;
}

// sum over cells of cnt*log2(cnt/total), exact at cnt=0
static double count_log_term(long cnt, long total) {
    return cnt == 0 ? 0.0 : cnt * std::log2((double)cnt / total);
}

double empirical_log_probability(const symbol_seq& x) {
    auto d = empirical_distribution(x);
    double lp = 0;
    for (long c : d.cnt) lp += count_log_term(c, d.n);
    return lp;
}

double empirical_log_probability(const symbol_seq& x, const symbol_seq& z) {
    auto d = empirical_distribution(x, z);
    double lp = 0;
    for (int zz = 0; zz < d.nz; ++zz) {
        long cz = d.ctx_count(zz);
        for (int xx = 0; xx < d.nx; ++xx) lp += count_log_term(d.at(zz, xx), cz);
    }
    return lp;
}

double empirical_entropy(const symbol_seq& x) {
    return -empirical_log_probability(x) / x.n();
}

double empirical_entropy(const symbol_seq& x, const symbol_seq& z) {
    return -empirical_log_probability(x, z) / x.n();
}

double quazi_empirical_entropy(const symbol_seq& x, const std::vector<double>& p) {
    auto d = empirical_distribution(x);
    double h = 0;
    for (int s = 0; s < d.nx; ++s) {
        if (d.cnt[s] == 0) continue;
        if (p[s] <= 0) return pos_inf;
        h -= d.cnt[s] * std::log2(p[s]);
    }
    return h / d.n;
}

double quazi_empirical_entropy(const symbol_seq& x, const symbol_seq& z,
                               const std::vector<double>& p) {
    auto d = empirical_distribution(x, z);
    double h = 0;
    for (int zz = 0; zz < d.nz; ++zz)
        for (int xx = 0; xx < d.nx; ++xx) {
            long c = d.at(zz, xx);
            if (c == 0) continue;
            double m = p[(size_t)zz * d.nx + xx];
            if (m <= 0) return pos_inf;
            h -= c * std::log2(m);
        }
    return h / d.n;
}

double empirical_mutual_information(const symbol_seq& x, const symbol_seq& y) {
    return empirical_entropy(x) - empirical_entropy(x, y);
}

double kl_divergence(const std::vector<double>& p, const std::vector<double>& q) {
    double d = 0;
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0) continue;
        if (q[i] <= 0) return pos_inf;
        d += p[i] * std::log2(p[i] / q[i]);
    }
    return d;
}

double ml_log_probability_conditional_memoryless(const symbol_seq& x, const symbol_seq& z) {
    return empirical_log_probability(x, z);
}

symbol_seq joint_seq(const symbol_seq& x, const symbol_seq& y) {
    if (x.n() != y.n()) throw std::invalid_argument("length mismatch");
    symbol_seq j(alphabet::finite(std::max(2, x.a.size * y.a.size)));
    for (int i = 1; i <= x.n(); ++i) j.push(x.sym(i) * y.a.size + y.sym(i));
    return j;
}

bool type_class::contains(const symbol_seq& x, const symbol_seq& y) const {
    if (x.n() != n || y.n() != n) return false;
    std::vector<long> c((size_t)ax * ay, 0);
    for (int i = 1; i <= n; ++i) c[(size_t)x.sym(i) * ay + y.sym(i)]++;
    return c == counts;
}

static void fill_types(std::vector<type_class>& out, std::vector<long>& cur, int cell,
                       int cells, long left, const type_class& proto) {
    if (cell == cells - 1) {
        cur[cell] = left;
        type_class t = proto;
        t.counts = cur;
        out.push_back(std::move(t));
        return;
    }
    for (long v = 0; v <= left; ++v) {
        cur[cell] = v;
        fill_types(out, cur, cell + 1, cells, left - v, proto);
    }
}

std::vector<type_class> enumerate_types(int ax, int ay, int n) {
    int cells = ax * ay;
    // stars and bars: C(n+cells-1, cells-1) classes, guard before materializing
    double total = 1;
    for (int i = 1; i < cells; ++i) total *= (double)(n + i) / i;
    if (total > 1e7) throw resource_limit_error("type enumeration would exceed 1e7 classes");
    type_class proto;
    proto.ax = ax;
    proto.ay = ay;
    proto.n = n;
    std::vector<type_class> out;
    out.reserve((size_t)total + 1);
    std::vector<long> cur(cells, 0);
    fill_types(out, cur, 0, cells, n, proto);
    return out;
}

}  // namespace icc
