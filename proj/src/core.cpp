#include "icc/core.h"

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

namespace icc {

Eigen::MatrixXcd symbol_seq::matrix() const {
    int nn = n();
    if (a.discrete()) {
        Eigen::MatrixXcd m(nn, 1);
        for (int i = 0; i < nn; ++i) m(i, 0) = (double)syms[i];
        return m;
    }
    int t = a.dim, d = a.d();
    Eigen::MatrixXcd m(nn, t);
    for (int i = 0; i < nn; ++i) {
        const double* r = reals.data() + (size_t)i * a.row_width();
        for (int j = 0; j < t; ++j)
            m(i, j) = d == 2 ? std::complex<double>(r[2 * j], r[2 * j + 1])
                             : std::complex<double>(r[j], 0.0);
    }
    return m;
}

symbol_seq seq_from_matrix(const Eigen::MatrixXcd& m, int d) {
    alphabet a = d == 2 ? alphabet::cplx((int)m.cols()) : alphabet::real((int)m.cols());
    symbol_seq s(a);
    s.reals.reserve((size_t)m.rows() * a.row_width());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            s.reals.push_back(m(i, j).real());
            if (d == 2) s.reals.push_back(m(i, j).imag());
        }
    return s;
}

static uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

rng_stream rng_stream::derive(const std::string& label) const {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : label) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return rng_stream(mix64(seed0 ^ mix64(h)), path.empty() ? label : path + "/" + label);
}

rng_stream derive_stream(const rng_stream& rand, const std::string& label) {
    return rand.derive(label);
}

int rng_stream::next_discrete(const std::vector<double>& mass) {
    double u = next_u01(), acc = 0;
    int last = 0;
    for (int i = 0; i < (int)mass.size(); ++i) {
        if (mass[i] <= 0) continue;
        acc += mass[i];
        last = i;
        if (u < acc) return i;
    }
    return last;  // guard against rounding in the cdf
}

double rng_stream::next_gaussian() {
    if (has_spare) {
        has_spare = false;
        return spare;
    }
    double u1 = next_u01();
    while (u1 <= 0) u1 = next_u01();
    double u2 = next_u01();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare = r * std::sin(2.0 * M_PI * u2);
    has_spare = true;
    return r * std::cos(2.0 * M_PI * u2);
}

static void check_mass(const std::vector<double>& m) {
    double s = 0;
    for (double v : m) {
        if (v < 0) throw std::invalid_argument("negative mass");
        s += v;
    }
    if (std::abs(s - 1.0) > 1e-12) throw std::invalid_argument("mass must sum to 1");
}

prior prior::iid_prior(alphabet a, std::vector<double> mass) {
    if (!a.discrete() || (int)mass.size() != a.size)
        throw std::invalid_argument("iid prior wants one mass per letter");
    check_mass(mass);
    prior q;
    q.kind = prior_kind::iid;
    q.a = a;
    q.mass = std::move(mass);
    q.q_min = 1;
    q.q_max = 0;
    for (double v : q.mass)
        if (v > 0) {
            q.q_min = std::min(q.q_min, v);
            q.q_max = std::max(q.q_max, v);
        }
    q.log2_q_min = std::log2(q.q_min);
    q.log2_q_max = std::log2(q.q_max);
    return q;
}

prior prior::uniform(alphabet a) {
    return iid_prior(a, std::vector<double>(a.size, 1.0 / a.size));
}

prior prior::markov_prior(alphabet a, int order, std::vector<double> cond) {
    if (!a.discrete() || order < 0) throw std::invalid_argument("bad markov prior");
    size_t rows = 1;
    for (int i = 0; i < order; ++i) rows *= a.size;
    if (cond.size() != rows * a.size) throw std::invalid_argument("conditional mass shape");
    prior q;
    q.kind = prior_kind::markov;
    q.a = a;
    q.order = order;
    q.cond = std::move(cond);
    q.q_min = 1;
    q.q_max = 0;
    for (size_t r = 0; r < rows; ++r) {
        std::vector<double> row(q.cond.begin() + r * a.size, q.cond.begin() + (r + 1) * a.size);
        check_mass(row);
        for (double v : row)
            if (v > 0) {
                q.q_min = std::min(q.q_min, v);
                q.q_max = std::max(q.q_max, v);
            }
    }
    q.log2_q_min = std::log2(q.q_min);
    q.log2_q_max = std::log2(q.q_max);
    return q;
}

prior prior::trimmed(int t, int d, const Eigen::MatrixXcd& lambda, double omega) {
    if (omega <= 0) throw std::invalid_argument("trimming radius must be positive");
    if (d != 1 && d != 2) throw std::invalid_argument("d in {1,2}");
    if (lambda.rows() != t || lambda.cols() != t) throw std::invalid_argument("lambda is t x t");
    prior q;
    q.kind = prior_kind::trimmed_gaussian;
    q.a = d == 2 ? alphabet::cplx(t) : alphabet::real(t);
    q.lambda = lambda;
    Eigen::LLT<Eigen::MatrixXcd> llt(lambda);
    if (llt.info() != Eigen::Success) throw std::invalid_argument("lambda not positive definite");
    q.lambda_chol = llt.matrixL();
    q.omega = omega;
    q.delta_omega = boost::math::gamma_q(0.5 * d * t, 0.5 * d * omega * omega);
    double log2_det = 0;
    for (int i = 0; i < t; ++i) log2_det += 2.0 * std::log2(q.lambda_chol(i, i).real());
    // density normalizer: real case (2 pi)^{-t/2}, complex case pi^{-t}; trimming
    // rescales by 1/(1 - delta)
    q.log2_norm = -0.5 * d * (t * std::log2(2.0 / d * M_PI) + log2_det)
                  - std::log2(1.0 - q.delta_omega);
    q.log2_q_max = q.log2_norm;
    q.log2_q_min = q.log2_norm - 0.5 * d * omega * omega * log2e;
    q.q_min = std::exp2(q.log2_q_min);
    q.q_max = std::exp2(q.log2_q_max);
    return q;
}

static void draw_trimmed_row(const prior& q, rng_stream& rand, double* out) {
    int t = q.a.dim, d = q.a.d();
    Eigen::RowVectorXcd w(t);
    for (;;) {
        double norm2 = 0;
        for (int j = 0; j < t; ++j) {
            if (d == 2) {
                double re = rand.next_gaussian() * M_SQRT1_2;
                double im = rand.next_gaussian() * M_SQRT1_2;
                w(j) = {re, im};
            } else
                w(j) = {rand.next_gaussian(), 0.0};
            norm2 += std::norm(w(j));
        }
        if (norm2 <= q.omega * q.omega) break;
    }
    Eigen::RowVectorXcd x = w * q.lambda_chol.adjoint();
    for (int j = 0; j < t; ++j) {
        out[d * j] = x(j).real();
        if (d == 2) out[d * j + 1] = x(j).imag();
    }
}

symbol_seq sample_prior(const prior& q, int n, rng_stream rand) {
    if (n < 1) throw std::invalid_argument("n >= 1");
    symbol_seq empty(q.a);
    return sample_prior_extend(q, empty, n, std::move(rand));
}

symbol_seq sample_prior_extend(const prior& q, const symbol_seq& prefix, int extra,
                               rng_stream rand) {
    symbol_seq x = prefix;
    x.a = q.a;
    if (q.kind == prior_kind::iid) {
        for (int i = 0; i < extra; ++i) x.push(rand.next_discrete(q.mass));
    } else if (q.kind == prior_kind::markov) {
        int s = q.a.size;
        size_t rows = q.cond.size() / s;
        size_t ctx = 0;
        int start = std::max(0, x.n() - q.order);
        for (int i = start + 1; i <= x.n(); ++i) ctx = (ctx * s + x.sym(i)) % rows;
        for (int i = 0; i < extra; ++i) {
            std::vector<double> row(q.cond.begin() + ctx * s, q.cond.begin() + (ctx + 1) * s);
            int v = rand.next_discrete(row);
            x.push(v);
            ctx = (ctx * s + v) % rows;
        }
    } else {
        std::vector<double> row(q.a.row_width());
        for (int i = 0; i < extra; ++i) {
            draw_trimmed_row(q, rand, row.data());
            x.push_row(row.data());
        }
    }
    return x;
}

double trimmed_row_log2_density(const prior& q, const Eigen::RowVectorXcd& x) {
    int d = q.a.d();
    Eigen::VectorXcd z = q.lambda_chol.triangularView<Eigen::Lower>().solve(x.adjoint());
    double quad = z.squaredNorm();
    if (quad > q.omega * q.omega * (1 + 1e-9)) return neg_inf;
    return q.log2_norm - 0.5 * d * quad * log2e;
}

double prior_log_mass(const prior& q, const symbol_seq& x) {
    return prior_log_mass_cond(q, x, 0);
}

double prior_log_mass_cond(const prior& q, const symbol_seq& x, int j) {
    if (!(x.a == q.a)) throw std::invalid_argument("alphabet mismatch");
    int n = x.n();
    double lp = 0;
    if (q.kind == prior_kind::iid) {
        for (int i = j + 1; i <= n; ++i) {
            double m = q.mass[x.sym(i)];
            if (m <= 0) return neg_inf;
            lp += std::log2(m);
        }
    } else if (q.kind == prior_kind::markov) {
        int s = q.a.size;
        size_t rows = q.cond.size() / s;
        size_t ctx = 0;
        for (int i = 1; i <= n; ++i) {
            if (i > j) {
                double m = q.cond[ctx * s + x.sym(i)];
                if (m <= 0) return neg_inf;
                lp += std::log2(m);
            }
            ctx = (ctx * s + x.sym(i)) % rows;
        }
    } else {
        Eigen::MatrixXcd m = x.matrix();
        for (int i = j; i < n; ++i) {
            double v = trimmed_row_log2_density(q, m.row(i));
            if (v == neg_inf) return neg_inf;
            lp += v;
        }
    }
    return lp;
}

channel channel::fixed(symbol_seq y) {
    channel c;
    c.kind = chan_kind::fixed_output;
    c.out_a = y.a;
    c.in_a = y.a;
    c.fixed_y = std::move(y);
    return c;
}

channel channel::modulo_add(alphabet a, std::vector<int> z) {
    channel c;
    c.kind = chan_kind::modulo_additive;
    c.in_a = c.out_a = a;
    c.err_seq = std::move(z);
    return c;
}

channel channel::modulo_add_iid(alphabet a, std::vector<double> noise_mass) {
    check_mass(noise_mass);
    channel c;
    c.kind = chan_kind::modulo_additive;
    c.in_a = c.out_a = a;
    c.err_mass = std::move(noise_mass);
    return c;
}

channel channel::make_dmc(alphabet in, alphabet out, std::vector<double> trans) {
    if (trans.size() != (size_t)in.size * out.size) throw std::invalid_argument("dmc shape");
    channel c;
    c.kind = chan_kind::dmc;
    c.in_a = in;
    c.out_a = out;
    c.trans = std::move(trans);
    return c;
}

channel channel::make_delay(alphabet a, int fill) {
    channel c;
    c.kind = chan_kind::delay;
    c.in_a = c.out_a = a;
    c.fill = fill;
    return c;
}

channel channel::onoff(alphabet a) {
    channel c;
    c.kind = chan_kind::onoff_binary;
    c.in_a = c.out_a = a;
    return c;
}

channel channel::mimo(int d, const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& noise_cov) {
    channel c;
    c.kind = chan_kind::gaussian_mimo;
    int t = (int)h.rows(), r = (int)h.cols();
    c.in_a = d == 2 ? alphabet::cplx(t) : alphabet::real(t);
    c.out_a = d == 2 ? alphabet::cplx(r) : alphabet::real(r);
    c.h = h;
    Eigen::LLT<Eigen::MatrixXcd> llt(noise_cov);
    if (llt.info() != Eigen::Success) throw std::invalid_argument("noise covariance not pd");
    c.noise_chol = llt.matrixL();
    return c;
}

symbol_seq apply_channel(const channel& ch, const symbol_seq& x, rng_stream rand) {
    if (!(x.a == ch.in_a)) throw std::invalid_argument("alphabet mismatch");
    int n = x.n();
    symbol_seq y(ch.out_a);
    switch (ch.kind) {
        case chan_kind::fixed_output:
            if (ch.fixed_y.n() < n) throw std::invalid_argument("fixed output too short");
            return ch.fixed_y.sub(1, n);
        case chan_kind::modulo_additive: {
            int s = ch.in_a.size;
            for (int i = 1; i <= n; ++i) {
                int z = ch.err_seq.empty() ? rand.next_discrete(ch.err_mass)
                                           : ch.err_seq[i - 1];
                y.push((x.sym(i) + z) % s);
            }
            return y;
        }
        case chan_kind::dmc: {
            int so = ch.out_a.size;
            for (int i = 1; i <= n; ++i) {
                std::vector<double> row(ch.trans.begin() + (size_t)x.sym(i) * so,
                                        ch.trans.begin() + (size_t)(x.sym(i) + 1) * so);
                y.push(rand.next_discrete(row));
            }
            return y;
        }
        case chan_kind::delay:
            y.push(ch.fill);
            for (int i = 2; i <= n; ++i) y.push(x.sym(i - 1));
            return y;
        case chan_kind::onoff_binary: {
            bool on = rand.next_u01() < 0.5;
            for (int i = 1; i <= n; ++i)
                y.push(on ? x.sym(i) : rand.next_index(ch.out_a.size));
            return y;
        }
        case chan_kind::gaussian_mimo: {
            int d = ch.in_a.d(), r = (int)ch.h.cols();
            Eigen::MatrixXcd xm = x.matrix();
            Eigen::MatrixXcd ym(n, r);
            Eigen::RowVectorXcd w(r);
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < r; ++j) {
                    if (d == 2)
                        w(j) = {rand.next_gaussian() * M_SQRT1_2,
                                rand.next_gaussian() * M_SQRT1_2};
                    else
                        w(j) = {rand.next_gaussian(), 0.0};
                }
                ym.row(i) = xm.row(i) * ch.h + w * ch.noise_chol.adjoint();
            }
            return seq_from_matrix(ym, d);
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace icc
