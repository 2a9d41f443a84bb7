#pragma once

#include "icc/core.h"

namespace icc {

struct resource_limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Joint counts of (symbol, context); nz = 1 when no context was given.
struct emp_dist {
    int nx = 0, nz = 1;
    long n = 0;
    std::vector<long> cnt;  // nz rows, nx cols

    long at(int z, int x) const { return cnt[(size_t)z * nx + x]; }
    long ctx_count(int z) const {
        long s = 0;
        for (int x = 0; x < nx; ++x) s += at(z, x);
        return s;
    }
    double freq(int x, int z = 0) const { return (double)at(z, x) / n; }
    double cond_freq(int x, int z) const {
        long c = ctx_count(z);
        return c == 0 ? 0.0 : (double)at(z, x) / c;
    }
    std::vector<double> marginal() const {  // over symbols
        std::vector<double> p(nx, 0);
        for (int z = 0; z < nz; ++z)
            for (int x = 0; x < nx; ++x) p[x] += (double)at(z, x) / n;
        return p;
    }
};

emp_dist empirical_distribution(const symbol_seq& x);
emp_dist empirical_distribution(const symbol_seq& x, const symbol_seq& z);

// log2 p-hat(x) and log2 p-hat(x|z), in bits (sequence probability under its
// own empirical distribution)
double empirical_log_probability(const symbol_seq& x);
double empirical_log_probability(const symbol_seq& x, const symbol_seq& z);

double empirical_entropy(const symbol_seq& x);
double empirical_entropy(const symbol_seq& x, const symbol_seq& z);

// -(1/n) sum_i log2 p(x_i); +inf if an observed letter has zero model mass
double quazi_empirical_entropy(const symbol_seq& x, const std::vector<double>& p);
// conditional variant; p is |Z| rows by |X| cols, row-major
double quazi_empirical_entropy(const symbol_seq& x, const symbol_seq& z,
                               const std::vector<double>& p);

double empirical_mutual_information(const symbol_seq& x, const symbol_seq& y);

double kl_divergence(const std::vector<double>& p, const std::vector<double>& q);

// identical to empirical_log_probability(x, z); the ML memoryless model is the
// empirical one
double ml_log_probability_conditional_memoryless(const symbol_seq& x, const symbol_seq& z);

// dummy joint variable with symbol x*|Y|+y
symbol_seq joint_seq(const symbol_seq& x, const symbol_seq& y);

struct type_class {
    int ax = 0, ay = 0, n = 0;
    std::vector<long> counts;  // ax*ay joint counts
    bool contains(const symbol_seq& x, const symbol_seq& y) const;
};

std::vector<type_class> enumerate_types(int ax, int ay, int n);

}  // namespace icc
