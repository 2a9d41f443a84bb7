#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace icc {

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();
inline constexpr double pos_inf = std::numeric_limits<double>::infinity();

// log2(e), used everywhere natural logs meet bit-rates
inline constexpr double log2e = 1.4426950408889634074;

enum class alpha_kind { finite, real, cplx };

struct alphabet {
    alpha_kind kind = alpha_kind::finite;
    int size = 2;  // finite only
    int dim = 1;   // real/cplx: vector length t

    static alphabet finite(int size) {
        if (size < 2) throw std::invalid_argument("alphabet size >= 2");
        return {alpha_kind::finite, size, 1};
    }
    static alphabet real(int t) {
        if (t < 1) throw std::invalid_argument("dim >= 1");
        return {alpha_kind::real, 0, t};
    }
    static alphabet cplx(int t) {
        if (t < 1) throw std::invalid_argument("dim >= 1");
        return {alpha_kind::cplx, 0, t};
    }
    bool discrete() const { return kind == alpha_kind::finite; }
    int d() const { return kind == alpha_kind::cplx ? 2 : 1; }
    // doubles per symbol when continuous (complex stored as interleaved re,im)
    int row_width() const { return discrete() ? 1 : dim * d(); }
    bool operator==(const alphabet& o) const {
        return kind == o.kind && (discrete() ? size == o.size : dim == o.dim);
    }
};

// A length-n sequence. Discrete alphabets use syms, continuous use reals
// (row-major, row_width() doubles per symbol). Indexing is 1-based to match
// the x_i^j conventions of the formulas; sub() clamps and returns empty when j < i.
struct symbol_seq {
    alphabet a;
    std::vector<int> syms;
    std::vector<double> reals;

    symbol_seq() = default;
    explicit symbol_seq(alphabet al) : a(al) {}
    symbol_seq(alphabet al, std::vector<int> s) : a(al), syms(std::move(s)) {}
    static symbol_seq from_reals(alphabet al, std::vector<double> r) {
        symbol_seq s(al);
        s.reals = std::move(r);
        return s;
    }

    int n() const {
        return a.discrete() ? (int)syms.size() : (int)(reals.size() / a.row_width());
    }
    int sym(int i) const { return syms[i - 1]; }
    const double* row(int i) const { return reals.data() + (size_t)(i - 1) * a.row_width(); }

    symbol_seq sub(int i, int j) const {
        int nn = n();
        if (i < 1) i = 1;
        if (j > nn) j = nn;
        symbol_seq out(a);
        if (j < i) return out;
        if (a.discrete())
            out.syms.assign(syms.begin() + (i - 1), syms.begin() + j);
        else {
            int w = a.row_width();
            out.reals.assign(reals.begin() + (size_t)(i - 1) * w, reals.begin() + (size_t)j * w);
        }
        return out;
    }

    void push(int s) { syms.push_back(s); }
    void push_row(const double* p) { reals.insert(reals.end(), p, p + a.row_width()); }
    void append(const symbol_seq& other) {
        syms.insert(syms.end(), other.syms.begin(), other.syms.end());
        reals.insert(reals.end(), other.reals.begin(), other.reals.end());
    }

    // continuous sequence as an n x t complex matrix (imag 0 for real alphabets)
    Eigen::MatrixXcd matrix() const;

    bool operator==(const symbol_seq& o) const {
        return syms == o.syms && reals == o.reals;
    }
};

symbol_seq seq_from_matrix(const Eigen::MatrixXcd& m, int d);

// Reproducible shared randomness: master seed plus a derivation path.
// derive() is pure (depends only on construction seed and label, not on draws);
// drawing mutates only the local copy. All generators are hand-rolled on top of
// mt19937_64 so encoder/decoder agree bit-for-bit on any platform.
struct rng_stream {
    uint64_t seed0 = 0;
    std::string path;
    std::mt19937_64 gen;
    bool has_spare = false;
    double spare = 0;

    explicit rng_stream(uint64_t seed, std::string p = "")
        : seed0(seed), path(std::move(p)), gen(seed) {}

    rng_stream derive(const std::string& label) const;

    uint64_t next_u64() { return gen(); }
    double next_u01() { return (double)(gen() >> 11) * 0x1.0p-53; }
    int next_index(int m) { return (int)(gen() % (uint64_t)m); }  // small m only
    int next_discrete(const std::vector<double>& mass);
    double next_gaussian();
};

rng_stream derive_stream(const rng_stream& rand, const std::string& label);

enum class prior_kind { iid, markov, trimmed_gaussian };

// Input prior Q. Markov conditional mass is row-major: row = context
// (x_{k-D}..x_{k-1} as a base-|X| number, earliest symbol most significant),
// column = next symbol; contexts before time D are zero-padded.
struct prior {
    prior_kind kind = prior_kind::iid;
    alphabet a;
    std::vector<double> mass;       // iid
    int order = 0;                  // markov D
    std::vector<double> cond;       // markov, |X|^D rows x |X| cols
    Eigen::MatrixXcd lambda;        // trimmed gaussian, t x t
    Eigen::MatrixXcd lambda_chol;   // lower cholesky factor
    double omega = 0;
    double delta_omega = 0;         // clipped tail mass
    double log2_norm = 0;           // -(d/2) log2 |(2/d) pi Lambda| - log2(1 - delta)
    double q_min = 0, q_max = 1;    // smallest/largest nonzero step mass (or density bound)
    double log2_q_min = 0, log2_q_max = 0;

    static prior iid_prior(alphabet a, std::vector<double> mass);
    static prior uniform(alphabet a);
    static prior markov_prior(alphabet a, int order, std::vector<double> cond);
    static prior trimmed(int t, int d, const Eigen::MatrixXcd& lambda, double omega);
};

symbol_seq sample_prior(const prior& q, int n, rng_stream rand);
// continuation given the first j symbols already fixed (markov context carries over)
symbol_seq sample_prior_extend(const prior& q, const symbol_seq& prefix, int extra, rng_stream rand);
double prior_log_mass(const prior& q, const symbol_seq& x);
// log2 Q(x_{j+1}^n | x^j); j = number of prefix symbols
double prior_log_mass_cond(const prior& q, const symbol_seq& x, int j);
// per-row log2 density of a trimmed-gaussian prior (row vector, in-ball), -inf outside
double trimmed_row_log2_density(const prior& q, const Eigen::RowVectorXcd& x);

enum class chan_kind { fixed_output, modulo_additive, dmc, delay, onoff_binary, gaussian_mimo };

struct channel {
    chan_kind kind = chan_kind::fixed_output;
    alphabet in_a, out_a;
    symbol_seq fixed_y;              // fixed_output
    std::vector<int> err_seq;        // modulo_additive, fixed noise sequence
    std::vector<double> err_mass;    // modulo_additive, iid noise process (used when err_seq empty)
    std::vector<double> trans;       // dmc, |X| x |Y| row-major
    int fill = 0;                    // delay channel y_1
    Eigen::MatrixXcd h;              // gaussian_mimo, t x r
    Eigen::MatrixXcd noise_chol;     // lower cholesky of noise covariance, r x r

    static channel fixed(symbol_seq y);
    static channel modulo_add(alphabet a, std::vector<int> z);
    static channel modulo_add_iid(alphabet a, std::vector<double> noise_mass);
    static channel make_dmc(alphabet in, alphabet out, std::vector<double> trans);
    static channel make_delay(alphabet a, int fill);
    static channel onoff(alphabet a);
    static channel mimo(int d, const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& noise_cov);
};

symbol_seq apply_channel(const channel& ch, const symbol_seq& x, rng_stream rand);

}  // namespace icc
