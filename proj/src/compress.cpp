#include "icc/compress.h"

#include <cmath>

namespace icc {

static int floor_log2(uint64_t k) {
    int b = 0;
    while (k >>= 1) ++b;
    return b;
}

int elias_gamma_len(uint64_t k) { return 2 * floor_log2(k) + 1; }

int elias_delta_len(uint64_t k) {
    int b = floor_log2(k);
    return b + elias_gamma_len(b + 1);
}

void bit_writer::put_gamma(uint64_t k) {
    int b = floor_log2(k);
    put(0, b);
    put(k, b + 1);
}

void bit_writer::put_delta(uint64_t k) {
    int b = floor_log2(k);
    put_gamma(b + 1);
    put(k & ((1ULL << b) - 1), b);
}

uint64_t bit_reader::get(int w) {
    uint64_t v = 0;
    for (int i = 0; i < w; ++i) {
        if (pos >= bits->size()) throw std::invalid_argument("bitstream truncated");
        v = v << 1 | (*bits)[pos++];
    }
    return v;
}

uint64_t bit_reader::get_gamma() {
    int b = 0;
    while (get(1) == 0) ++b;
    uint64_t v = 1;
    for (int i = 0; i < b; ++i) v = v << 1 | get(1);
    return v;
}

uint64_t bit_reader::get_delta() {
    int b = (int)get_gamma() - 1;
    uint64_t v = 1;
    for (int i = 0; i < b; ++i) v = v << 1 | get(1);
    return v;
}

// ---- LZ78 ------------------------------------------------------------------

static void lz78_push(lz78_coder& c, int sym, bit_writer* w, parse_record* rec) {
    ++c.n;
    uint64_t key = (uint64_t)c.node * c.ax + sym;
    auto it = c.child.find(key);
    if (it != c.child.end()) {
        c.node = it->second;
        ++c.pending_len;
        return;
    }
    if (w) {
        w->put((uint64_t)c.node, ceil_log2(c.cnt + 1));
        w->put((uint64_t)sym, ceil_log2(c.ax));
    }
    if (rec) {
        parse_phrase p;
        p.len = c.pending_len + 1;
        p.start = (int)c.n - p.len + 1;
        p.parent = c.node;
        p.sym = sym;
        rec->phrases.push_back(p);
        std::vector<int> s = c.node ? rec->phrase_syms[c.node - 1] : std::vector<int>{};
        s.push_back(sym);
        rec->phrase_syms.push_back(std::move(s));
    }
    c.l_s += ceil_log2(c.cnt + 1) + ceil_log2(c.ax);
    ++c.cnt;
    c.child[key] = c.cnt;
    c.node = 0;
    c.pending_len = 0;
}

void lz78_coder::push(int sym) { lz78_push(*this, sym, nullptr, nullptr); }

long lz78_coder::l_t() const {
    return l_s + elias_delta_len(n + 1) + ceil_log2(cnt + 1);
}

parse_record lz78_parse(const symbol_seq& x) {
    if (!x.a.discrete()) throw std::invalid_argument("finite alphabet required");
    lz78_coder c(x.a.size);
    parse_record rec;
    for (int i = 1; i <= x.n(); ++i) lz78_push(c, x.sym(i), nullptr, &rec);
    rec.pending_len = c.pending_len;
    rec.pending_node = c.node;
    return rec;
}

lz_lengths lz78_lengths(const symbol_seq& x) {
    lz78_coder c(x.a.size);
    for (int i = 1; i <= x.n(); ++i) c.push(x.sym(i));
    return {c.l_s, c.l_t()};
}

std::vector<uint8_t> lz78_encode(const symbol_seq& x) {
    lz78_coder c(x.a.size);
    bit_writer body;
    for (int i = 1; i <= x.n(); ++i) lz78_push(c, x.sym(i), &body, nullptr);
    bit_writer out;
    out.put_delta((uint64_t)c.n + 1);
    out.bits.insert(out.bits.end(), body.bits.begin(), body.bits.end());
    out.put((uint64_t)c.node, ceil_log2(c.cnt + 1));
    return out.bits;
}

symbol_seq lz78_decode(const std::vector<uint8_t>& bits, alphabet a) {
    bit_reader r(bits);
    long n = (long)r.get_delta() - 1;
    std::vector<std::vector<int>> ph;
    symbol_seq x(a);
    long cnt = 0;
    while (x.n() < n && (long)r.remaining() > ceil_log2(cnt + 1)) {
        long parent = (long)r.get(ceil_log2(cnt + 1));
        int sym = (int)r.get(ceil_log2(a.size));
        std::vector<int> s = parent ? ph[parent - 1] : std::vector<int>{};
        s.push_back(sym);
        for (int v : s) x.push(v);
        ph.push_back(std::move(s));
        ++cnt;
    }
    long pend = (long)r.get(ceil_log2(cnt + 1));
    const std::vector<int> empty;
    const std::vector<int>& tail = pend ? ph[pend - 1] : empty;
    if ((long)tail.size() != n - x.n()) throw std::invalid_argument("corrupt stream");
    for (int v : tail) x.push(v);
    if (r.remaining() != 0) throw std::invalid_argument("trailing bits");
    return x;
}

double lz78_delta_bound(long n) {
    return 2 * std::log2((double)n) + 2 * std::log2(std::log2((double)n)) + 5.0;
}

double lz78_delta_star(long n) {
    return elias_delta_len((uint64_t)n + 1) + ceil_log2((uint64_t)n + 1);
}

// ---- conditional LZ --------------------------------------------------------

cond_lz_coder::cond_lz_coder(int alphabet_x, int alphabet_y) : ax(alphabet_x), ay(alphabet_y) {
    ynode_of = {0};
    depth_of = {0};
    idx_in_dict = {0};
    dict.resize(1);
    dict[0] = {0};  // the empty phrase is filed under the empty y-context
}

static void cond_push(cond_lz_coder& c, int xs, int ys, bit_writer* w, parse_record* rec) {
    ++c.n;
    int as = c.ax * c.ay;
    uint64_t key = (uint64_t)c.node * as + (uint64_t)xs * c.ay + ys;
    auto it = c.jchild.find(key);
    if (it != c.jchild.end()) {
        c.node = it->second;
        ++c.pending_len;
        return;
    }
    long yparent = c.ynode_of[c.node];
    long u = (long)c.dict[yparent].size();
    int plen = c.pending_len + 1;
    if (w) {
        w->put_gamma((uint64_t)plen + 1);
        w->put((uint64_t)c.idx_in_dict[c.node], ceil_log2(u));
        w->put((uint64_t)xs, ceil_log2(c.ax));
    }
    if (rec) {
        parse_phrase p;
        p.len = plen;
        p.start = (int)c.n - plen + 1;
        p.parent = c.node;
        p.sym = xs;
        rec->phrases.push_back(p);
        std::vector<int> s = c.node ? rec->phrase_syms[c.node - 1] : std::vector<int>{};
        s.push_back(xs);
        rec->phrase_syms.push_back(std::move(s));
    }
    c.l_s += elias_gamma_len((uint64_t)plen + 1) + ceil_log2(u) + ceil_log2(c.ax);
    long q = ++c.cnt;
    c.jchild[key] = q;
    uint64_t ykey = (uint64_t)yparent * c.ay + ys;
    long ynew;
    auto yit = c.ychild.find(ykey);
    if (yit != c.ychild.end())
        ynew = yit->second;
    else {
        ynew = c.ycount++;
        c.ychild[ykey] = ynew;
        c.dict.emplace_back();
    }
    c.ynode_of.push_back(ynew);
    c.depth_of.push_back(plen);
    c.dict[ynew].push_back(q);
    c.idx_in_dict.push_back((long)c.dict[ynew].size() - 1);
    c.node = 0;
    c.pending_len = 0;
}

void cond_lz_coder::push(int xs, int ys) { cond_push(*this, xs, ys, nullptr, nullptr); }

long cond_lz_coder::l_t() const {
    return l_s + elias_delta_len(n + 1) + 1 + ceil_log2(cnt + 1);
}

static cond_lz_coder cond_run(const symbol_seq& x, const symbol_seq& y, bit_writer* w,
                              parse_record* rec) {
    if (!x.a.discrete() || !y.a.discrete()) throw std::invalid_argument("finite alphabets");
    if (x.n() != y.n()) throw std::invalid_argument("length mismatch");
    cond_lz_coder c(x.a.size, y.a.size);
    for (int i = 1; i <= x.n(); ++i) cond_push(c, x.sym(i), y.sym(i), w, rec);
    if (rec) {
        rec->pending_len = c.pending_len;
        rec->pending_node = c.node;
        for (auto& p : rec->phrases) (void)p;
        rec->counts.reserve(rec->phrases.size());
        for (long q = 1; q <= c.cnt; ++q) {
            long cl = (long)c.dict[c.ynode_of[q]].size();
            rec->counts.push_back(cl);
            rec->c_lz += std::log2((double)cl);
        }
    }
    return c;
}

parse_record cond_lz_parse(const symbol_seq& x, const symbol_seq& y) {
    parse_record rec;
    cond_run(x, y, nullptr, &rec);
    return rec;
}

lz_lengths conditional_lz_lengths(const symbol_seq& x, const symbol_seq& y) {
    auto c = cond_run(x, y, nullptr, nullptr);
    return {c.l_s, c.l_t()};
}

std::vector<uint8_t> cond_lz_encode(const symbol_seq& x, const symbol_seq& y) {
    bit_writer body;
    auto c = cond_run(x, y, &body, nullptr);
    bit_writer out;
    out.put_delta((uint64_t)c.n + 1);
    out.bits.insert(out.bits.end(), body.bits.begin(), body.bits.end());
    out.put_gamma(1);
    out.put((uint64_t)c.node, ceil_log2(c.cnt + 1));
    return out.bits;
}

symbol_seq cond_lz_decode(const std::vector<uint8_t>& bits, const symbol_seq& y, alphabet ax) {
    bit_reader r(bits);
    long n = (long)r.get_delta() - 1;
    if (n != y.n()) throw std::invalid_argument("length mismatch with side information");
    std::vector<std::vector<int>> phrase_x = {{}};  // per joint id, id 0 = empty
    std::unordered_map<uint64_t, long> ychild;
    std::vector<std::vector<long>> dict(1);
    dict[0] = {0};
    long ycount = 1, cnt = 0;
    symbol_seq x(ax);
    for (;;) {
        uint64_t v = r.get_gamma();
        if (v == 1) {
            long pend = (long)r.get(ceil_log2(cnt + 1));
            if ((long)phrase_x[pend].size() != n - x.n())
                throw std::invalid_argument("corrupt stream");
            for (int s : phrase_x[pend]) x.push(s);
            break;
        }
        int len = (int)v - 1;
        int pos = x.n() + 1;
        if (pos + len - 1 > n) throw std::invalid_argument("corrupt stream");
        long ynode = 0;
        for (int i = 0; i < len - 1; ++i) {
            auto it = ychild.find((uint64_t)ynode * y.a.size + y.sym(pos + i));
            if (it == ychild.end()) throw std::invalid_argument("corrupt stream");
            ynode = it->second;
        }
        long u = (long)dict[ynode].size();
        long idx = (long)r.get(ceil_log2(u));
        int xs = (int)r.get(ceil_log2(ax.size));
        std::vector<int> s = phrase_x[dict[ynode][idx]];
        s.push_back(xs);
        for (int sv : s) x.push(sv);
        long q = ++cnt;
        phrase_x.push_back(std::move(s));
        uint64_t ykey = (uint64_t)ynode * y.a.size + y.sym(pos + len - 1);
        long ynew;
        auto yit = ychild.find(ykey);
        if (yit != ychild.end())
            ynew = yit->second;
        else {
            ynew = ycount++;
            ychild[ykey] = ynew;
            dict.emplace_back();
        }
        dict[ynew].push_back(q);
    }
    if (r.remaining() != 0) throw std::invalid_argument("trailing bits");
    return x;
}

double conditional_lz_complexity(const symbol_seq& x, const symbol_seq& y) {
    return cond_lz_parse(x, y).c_lz;
}

double cond_lz_rn(long n) {
    return 2 * std::log2(std::log2((double)n + 1) + 1) + 8.0;
}

double cond_lz_delta_star(long n, int, int) {
    return elias_delta_len((uint64_t)n + 1) + 1 + ceil_log2((uint64_t)n + 1);
}

// ---- modulo noise ----------------------------------------------------------

symbol_seq modulo_noise(const symbol_seq& x, const symbol_seq& y) {
    if (!(x.a == y.a) || !x.a.discrete()) throw std::invalid_argument("matching finite alphabets");
    if (x.n() != y.n()) throw std::invalid_argument("length mismatch");
    int s = x.a.size;
    symbol_seq z(x.a);
    for (int i = 1; i <= x.n(); ++i) z.push(((y.sym(i) - x.sym(i)) % s + s) % s);
    return z;
}

lz_lengths modulo_noise_lengths(const symbol_seq& x, const symbol_seq& y) {
    return lz78_lengths(modulo_noise(x, y));
}

}  // namespace icc
