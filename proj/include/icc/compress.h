#pragma once

#include "icc/core.h"

#include <unordered_map>

namespace icc {

// ---- bit-level plumbing ----------------------------------------------------

struct bit_writer {
    std::vector<uint8_t> bits;  // one bit per entry, msb-first semantics
    void put(uint64_t v, int w) {
        for (int i = w - 1; i >= 0; --i) bits.push_back((v >> i) & 1);
    }
    void put_gamma(uint64_t k);  // k >= 1
    void put_delta(uint64_t k);  // k >= 1
    size_t size() const { return bits.size(); }
};

struct bit_reader {
    const std::vector<uint8_t>* bits;
    size_t pos = 0;
    explicit bit_reader(const std::vector<uint8_t>& b) : bits(&b) {}
    uint64_t get(int w);
    uint64_t get_gamma();
    uint64_t get_delta();
    size_t remaining() const { return bits->size() - pos; }
};

int elias_gamma_len(uint64_t k);
int elias_delta_len(uint64_t k);
inline int ceil_log2(uint64_t m) {  // bits to address m values
    int w = 0;
    while ((1ULL << w) < m) ++w;
    return w;
}

// ---- parsing ---------------------------------------------------------------

struct parse_phrase {
    int start = 0, len = 0;  // 1-based start
    long parent = 0;         // node id of the prefix phrase (0 = empty)
    int sym = 0;             // last x letter
};

struct parse_record {
    std::vector<parse_phrase> phrases;          // completed phrases in order
    std::vector<std::vector<int>> phrase_syms;  // materialized x symbols
    int pending_len = 0;
    long pending_node = 0;
    std::vector<long> counts;  // final c_l per phrase (conditional parse)
    double c_lz = 0;           // sum_l log2 c_l
};

struct lz_lengths {
    long l_s = 0, l_t = 0;
};

// ---- LZ78 ------------------------------------------------------------------

// incremental coder; L_S counts completed-phrase tokens, l_t() adds the
// termination cost of stopping right now (length header + pending reference)
struct lz78_coder {
    int ax = 2;
    std::unordered_map<uint64_t, long> child;
    long cnt = 0;  // completed phrases so far
    long node = 0;
    int pending_len = 0;
    long n = 0;
    long l_s = 0;

    explicit lz78_coder(int alphabet_size) : ax(alphabet_size) {}
    void push(int sym);
    long l_t() const;
};

parse_record lz78_parse(const symbol_seq& x);
lz_lengths lz78_lengths(const symbol_seq& x);
std::vector<uint8_t> lz78_encode(const symbol_seq& x);
symbol_seq lz78_decode(const std::vector<uint8_t>& bits, alphabet a);

// measured termination overhead is kept under this module bound
double lz78_delta_bound(long n);  // 2 log2 n + 2 log2 log2 n + c, n >= 2
// largest termination overhead possible at length <= n (used as metric metadata)
double lz78_delta_star(long n);

// ---- conditional LZ --------------------------------------------------------

// joint incremental parse of (x,y); each completed phrase is sent as a
// gamma-coded length, the parent's index among the phrases filed under the
// parent's y-context, and the last x letter. Termination sends a 1-bit marker
// plus a global reference to the pending joint node.
struct cond_lz_coder {
    int ax = 2, ay = 2;
    std::unordered_map<uint64_t, long> jchild;  // joint trie
    std::unordered_map<uint64_t, long> ychild;  // y-projection trie
    std::vector<long> ynode_of;                 // per joint node
    std::vector<long> depth_of;
    std::vector<long> idx_in_dict;              // position within dict list
    std::vector<std::vector<long>> dict;        // per y-node: joint nodes filed there
    long ycount = 1;
    long cnt = 0;
    long node = 0;  // pending joint node
    int pending_len = 0;
    long n = 0;
    long l_s = 0;

    cond_lz_coder(int alphabet_x, int alphabet_y);
    void push(int xs, int ys);
    long l_t() const;
};

parse_record cond_lz_parse(const symbol_seq& x, const symbol_seq& y);
lz_lengths conditional_lz_lengths(const symbol_seq& x, const symbol_seq& y);
std::vector<uint8_t> cond_lz_encode(const symbol_seq& x, const symbol_seq& y);
symbol_seq cond_lz_decode(const std::vector<uint8_t>& bits, const symbol_seq& y, alphabet ax);

double conditional_lz_complexity(const symbol_seq& x, const symbol_seq& y);

// per-phrase overhead beyond log2|X| + log2 c_l: length fields plus rounding
double cond_lz_rn(long n);
double cond_lz_delta_star(long n, int ax, int ay);  // termination overhead bound

// ---- modulo noise ----------------------------------------------------------

lz_lengths modulo_noise_lengths(const symbol_seq& x, const symbol_seq& y);
symbol_seq modulo_noise(const symbol_seq& x, const symbol_seq& y);  // z = y - x

}  // namespace icc
