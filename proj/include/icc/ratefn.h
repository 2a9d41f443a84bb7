#pragma once

#include "icc/compress.h"
#include "icc/core.h"
#include "icc/empirics.h"

#include <functional>
#include <memory>

namespace icc {

// ---- sequential decoding metrics --------------------------------------------
// A metric state consumes (x_i, y_i) pairs in order; mark() pins the block
// start j; log2_psi() returns log2 psi(x^k, y^k, j) for the current k.

struct metric_state {
    virtual ~metric_state() = default;
    virtual void push(int xs, int ys) { throw std::logic_error("discrete symbols unsupported"); }
    virtual void push_row(const double* xs, const double* ys) {
        throw std::logic_error("vector symbols unsupported");
    }
    virtual void mark() = 0;
    virtual double log2_psi() const = 0;
    virtual std::unique_ptr<metric_state> clone() const = 0;
};

struct rate_metric {
    std::function<std::unique_ptr<metric_state>()> fresh;
    std::function<double(long)> log2_l_of;  // log2 L_m per segment length
    double b0 = 0;
    double f0_star = 0;  // constant bound on the summability overhead f0
};

// log2 psi(x^k, y^k, j) evaluated in one shot
double eval_metric(const rate_metric& m, const symbol_seq& x, const symbol_seq& y, int j);

// ---- conditional models ------------------------------------------------------
// Sequential conditional law P(x_i | x^{i-1}, y^{i+D}); consume() must be called
// with i = 1, 2, ... in order (models may carry running statistics).

struct seq_model_state {
    virtual ~seq_model_state() = default;
    virtual double consume(const std::vector<int>& x, const std::vector<int>& y, int i) = 0;
    virtual std::unique_ptr<seq_model_state> clone() const = 0;
};

struct conditional_model {
    int delay = 0;
    int ax = 2;
    std::function<std::unique_ptr<seq_model_state>()> fresh;
};

// memoryless P(x|y); table is |Y| rows by |X| cols
conditional_model memoryless_model(int ax, int ay, std::vector<double> table);
// per-state add-half mixture (Krichevsky-Trofimov / Dirichlet-half);
// state_of(x, y, i) maps the available past to a state index < nstates
conditional_model kt_model(int ax, int nstates, int delay,
                           std::function<int(const std::vector<int>&, const std::vector<int>&, int)>
                               state_of);
// state z_i = (x_{i-D}^{i-1}, y_{i-D}^{i+D}), zero-padded at the edges
conditional_model markov_kt_model(int ax, int ay, int order);

double model_log2_prob(const conditional_model& m, const symbol_seq& x, const symbol_seq& y);

// ---- rate functions ----------------------------------------------------------

// (1/n)(log2 P(x|y) - log2 Q(x)); NaN when Q(x) = 0
double conditional_form_rate(const conditional_model& m, const prior& q, const symbol_seq& x,
                             const symbol_seq& y);

double emi_rate(const symbol_seq& x, const symbol_seq& y);
double emi_ml_rate(const prior& q, const symbol_seq& x, const symbol_seq& y);

// joint-window state rates; order D, fixed all-zero initial state
double markov_ml_rate(const symbol_seq& x, const symbol_seq& y, int order, const prior& q);
double markov_mlstar_rate(const symbol_seq& x, const symbol_seq& y, int order);

double modulo_additive_rate(const symbol_seq& x, const symbol_seq& y);

// log2|X| - L_T(x|y)/n via the conditional LZ coder
double compression_rate(const symbol_seq& x, const symbol_seq& y);
// log2|X| - L_T(y-x)/n via LZ78 on the modulo noise
double modulo_compression_rate(const symbol_seq& x, const symbol_seq& y);

// ---- metric constructors -----------------------------------------------------

rate_metric causal_metric(const conditional_model& m, const prior& q);
rate_metric compression_metric(alphabet ax, long horizon);
rate_metric modulo_compression_metric(alphabet a, long horizon);

// ---- decoding-metric-to-rate-function conversion ------------------------------

struct metric_rate_result {
    double rate = 0;    // (1/n) log2( ln(1-eps)/ln(1-p) + 1 )
    double approx = 0;  // (1/n) log2(eps/p)
    double p = 0;
};

double metric_rate_from_p(double p, double eps, int n);
metric_rate_result metric_to_rate_exhaustive(
    const std::function<double(const symbol_seq&, const symbol_seq&)>& u, const prior& q,
    const symbol_seq& x, const symbol_seq& y, double eps);
metric_rate_result metric_to_rate_mc(
    const std::function<double(const symbol_seq&, const symbol_seq&)>& u, const prior& q,
    const symbol_seq& x, const symbol_seq& y, double eps, int trials, rng_stream rand);

// ---- good-put ----------------------------------------------------------------

struct sys_trace {
    bool error = false;
    double rate = 0;
};
double goodput(const std::vector<sys_trace>& traces);  // NaN when empty

// ---- registry ----------------------------------------------------------------

struct rate_function {
    std::string id;
    std::function<double(const symbol_seq&, const symbol_seq&)> evaluate;
    std::shared_ptr<rate_metric> metric;  // null when the entry is rate-only
    double r_max = 0;
    bool adaptive_capable = false;
};

struct registry_config {
    prior q;
    int order = 1;
    long horizon = 0;  // for compression metrics; 0 = no metric attached
};

const std::vector<std::string>& registry_ids();
rate_function registry_make(const std::string& id, const registry_config& cfg);

}  // namespace icc
