#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "symdist/errors.hpp"
#include "symdist/rational.hpp"
#include "symdist/scheme.hpp"

namespace symdist {

/// Binary word as packed 64-bit blocks; bit j is character position j.
struct Word {
    std::vector<std::uint64_t> blocks;

    static Word zeros(unsigned long length) {
        Word w;
        w.blocks.assign(length / 64 + 1, 0);
        return w;
    }
    bool get(unsigned long j) const { return (blocks[j / 64] >> (j % 64)) & 1; }
    void set(unsigned long j) { blocks[j / 64] |= std::uint64_t{1} << (j % 64); }

    unsigned long popcount() const {
        unsigned long total = 0;
        for (auto b : blocks) total += static_cast<unsigned long>(std::popcount(b));
        return total;
    }
    unsigned long intersection_count(const Word& o) const {
        unsigned long total = 0;
        for (std::size_t i = 0; i < blocks.size(); ++i)
            total += static_cast<unsigned long>(std::popcount(blocks[i] & o.blocks[i]));
        return total;
    }
    unsigned long hamming_distance(const Word& o) const {
        unsigned long total = 0;
        for (std::size_t i = 0; i < blocks.size(); ++i)
            total += static_cast<unsigned long>(std::popcount(blocks[i] ^ o.blocks[i]));
        return total;
    }

    std::string str(unsigned long length) const {
        std::string out(length, '0');
        for (unsigned long j = 0; j < length; ++j)
            if (get(j)) out[j] = '1';
        return out;
    }

    friend bool operator==(const Word& a, const Word& b) { return a.blocks == b.blocks; }
    /// Lexicographic order of the 0/1 strings (leftmost character first).
    friend bool operator<(const Word& a, const Word& b) {
        for (std::size_t i = 0; i < a.blocks.size(); ++i) {
            std::uint64_t diff = a.blocks[i] ^ b.blocks[i];
            if (diff == 0) continue;
            std::uint64_t low = diff & ~(diff - 1);  // lowest differing bit = leftmost char
            return (b.blocks[i] & low) != 0;         // b has '1' there, so a < b iff a has '0'
        }
        return false;
    }
};

/// Finite set of equal-length binary words, kept in first-seen order without
/// duplicates. `weight` is present iff every word has the same popcount.
struct Code {
    unsigned long length = 0;
    std::vector<Word> words;
    std::optional<unsigned long> weight;

    std::size_t size() const { return words.size(); }
};

namespace detail {

inline void finish_code(Code& code) {
    if (code.words.empty()) throw input_error("code: empty input");
    unsigned long w = code.words.front().popcount();
    bool constant = true;
    for (const auto& word : code.words)
        if (word.popcount() != w) { constant = false; break; }
    if (constant) code.weight = w;
}

}  // namespace detail

/// Parses the code file format: one word per line over {0,1}, '#' starts a
/// comment line, blank lines are ignored, all words must have equal length.
inline Code load_code(std::istream& in) {
    Code code;
    std::set<Word> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (code.words.empty()) {
            code.length = line.size();
        } else if (line.size() != code.length) {
            throw input_error("code: ragged line " + std::to_string(lineno) + " (expected length " +
                              std::to_string(code.length) + ")");
        }
        Word w = Word::zeros(code.length);
        for (unsigned long j = 0; j < code.length; ++j) {
            if (line[j] == '1') w.set(j);
            else if (line[j] != '0')
                throw input_error("code: illegal character '" + std::string(1, line[j]) +
                                  "' on line " + std::to_string(lineno));
        }
        if (seen.insert(w).second) code.words.push_back(w);
    }
    detail::finish_code(code);
    return code;
}

inline Code load_code_text(const std::string& text) {
    std::istringstream in(text);
    return load_code(in);
}

inline std::string format_code(const Code& code) {
    std::string out;
    for (const auto& w : code.words) out += w.str(code.length) + "\n";
    return out;
}

enum class Metric { hamming, johnson };

inline const char* metric_name(Metric m) { return m == Metric::hamming ? "hamming" : "johnson"; }

/// Distance set of a code under one metric. `reflection` records the point n
/// the symmetry test folded around: the weight for the Johnson metric, the
/// word length for Hamming.
struct DistanceProfile {
    Metric metric;
    std::set<unsigned long> distances;
    unsigned long degree = 0;
    bool symmetric = false;
    unsigned long reflection = 0;
};

inline DistanceProfile distance_profile(const Code& code, Metric metric) {
    DistanceProfile profile;
    profile.metric = metric;
    if (metric == Metric::johnson) {
        if (!code.weight)
            throw std::invalid_argument("distance_profile: johnson metric needs a constant-weight code");
        if (code.length != 2 * *code.weight)
            throw std::invalid_argument(
                "distance_profile: johnson symmetry needs length = 2 * weight");
        profile.reflection = *code.weight;
    } else {
        profile.reflection = code.length;
    }
    for (std::size_t i = 0; i < code.words.size(); ++i)
        for (std::size_t j = i + 1; j < code.words.size(); ++j) {
            unsigned long d = metric == Metric::hamming
                                  ? code.words[i].hamming_distance(code.words[j])
                                  : *code.weight - code.words[i].intersection_count(code.words[j]);
            profile.distances.insert(d);
        }
    profile.degree = profile.distances.size();
    profile.symmetric = true;
    for (unsigned long a : profile.distances)
        if (a >= profile.reflection || profile.distances.count(profile.reflection - a) == 0) {
            profile.symmetric = false;
            break;
        }
    return profile;
}

/// Hamming-space bound for symmetric-distance codes of degree s:
/// sum of C(n, i) over 0 <= i <= s with i = s (mod 2).
inline Int bound_hamming(unsigned long n, unsigned long s) {
    if (s < 1 || s > n) throw std::invalid_argument("bound_hamming: requires 1 <= s <= n");
    Int total = 0;
    for (unsigned long i = s % 2; i <= s; i += 2) total += binomial(n, static_cast<long>(i));
    return total;
}

/// Johnson-space bound for symmetric-distance codes of degree s in J(2n, n):
/// C(2n-1, s).
inline Int bound_johnson(unsigned long n, unsigned long s) {
    if (s < 1 || s + 1 > n) throw std::invalid_argument("bound_johnson: requires 1 <= s <= n-1");
    return binomial(2 * n - 1, static_cast<long>(s));
}

/// Scheme-generic bound: sum of multiplicities m_i over 0 <= i <= s with
/// i = s (mod 2).
inline Int bound_scheme(const SchemeParams& params, unsigned long s) {
    if (s < 1 || s + 1 > params.n)
        throw std::invalid_argument("bound_scheme: requires 1 <= s <= n-1");
    Scheme scheme(params);
    Int total = 0;
    for (unsigned long i = s % 2; i <= s; i += 2) total += scheme.multiplicity(i);
    return total;
}

enum class TightVerdict { not_symmetric, below_bound, tight };

inline const char* tight_verdict_name(TightVerdict v) {
    switch (v) {
        case TightVerdict::not_symmetric: return "not_symmetric";
        case TightVerdict::below_bound: return "below_bound";
        case TightVerdict::tight: return "tight";
    }
    return "?";
}

struct TightReport {
    TightVerdict verdict;
    DistanceProfile profile;
    Int bound;  // 0 when not applicable (not_symmetric)
    Int gap;    // bound - |C|
};

/// Compares |C| against the applicable symmetric-distance bound. A
/// single-word code (degree 0) is trivially tight with bound 1.
inline TightReport check_tight(const Code& code, Metric metric) {
    TightReport report;
    report.profile = distance_profile(code, metric);
    if (!report.profile.symmetric) {
        report.verdict = TightVerdict::not_symmetric;
        report.bound = 0;
        report.gap = 0;
        return report;
    }
    unsigned long s = report.profile.degree;
    if (s == 0) {
        report.bound = 1;
    } else if (metric == Metric::johnson) {
        report.bound = bound_johnson(*code.weight, s);
    } else {
        report.bound = bound_hamming(code.length, s);
    }
    report.gap = report.bound - Int(code.size());
    if (report.gap < 0)
        throw std::logic_error("check_tight: code exceeds the bound, which should be impossible");
    report.verdict = report.gap == 0 ? TightVerdict::tight : TightVerdict::below_bound;
    return report;
}

/// All weight-n subsets of [2n] containing `anchor` (1-based): the maximal
/// intersecting family, which is tight of degree n-1.
inline Code construct_ekr(unsigned long n, unsigned long anchor = 1) {
    if (n < 2) throw std::invalid_argument("construct_ekr: requires n >= 2");
    if (anchor < 1 || anchor > 2 * n)
        throw std::invalid_argument("construct_ekr: anchor must lie in [1, 2n]");
    if (n > 12) throw resource_error("construct_ekr: n > 12 would enumerate too many words");
    Code code;
    code.length = 2 * n;
    code.weight = n;
    // Choose the n-1 non-anchor positions in lexicographic order.
    std::vector<unsigned long> free_positions;
    for (unsigned long j = 0; j < 2 * n; ++j)
        if (j != anchor - 1) free_positions.push_back(j);
    const unsigned long slots = free_positions.size();  // 2n-1
    const unsigned long take = n - 1;
    std::vector<unsigned long> pick(take);
    for (unsigned long j = 0; j < take; ++j) pick[j] = j;
    while (true) {
        Word w = Word::zeros(code.length);
        w.set(anchor - 1);
        for (unsigned long idx : pick) w.set(free_positions[idx]);
        code.words.push_back(w);
        // next combination in lexicographic order
        long j = static_cast<long>(take) - 1;
        while (j >= 0 && pick[j] == slots - take + static_cast<unsigned long>(j)) --j;
        if (j < 0) break;
        ++pick[j];
        for (auto t = static_cast<unsigned long>(j) + 1; t < take; ++t) pick[t] = pick[t - 1] + 1;
    }
    return code;
}

struct BruteForceResult {
    unsigned long size = 0;
    Code witness;
};

namespace detail {

struct CliqueSearch {
    unsigned long n;
    std::vector<std::uint32_t> masks;  // vertex id -> block mask
    const std::set<unsigned long>& allowed;

    bool adjacent(std::uint32_t a, std::uint32_t b) const {
        auto d = n - static_cast<unsigned long>(std::popcount(a & b));
        return allowed.count(d) != 0;
    }

    std::vector<int> best;
    std::vector<int> current;

    // Greedy coloring bound, then branch in reverse color order.
    void expand(std::vector<int>& candidates) {
        std::vector<int> color(candidates.size());
        std::vector<std::vector<int>> classes;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            int v = candidates[i];
            std::size_t c = 0;
            for (; c < classes.size(); ++c) {
                bool clash = false;
                for (int u : classes[c])
                    if (adjacent(masks[v], masks[u])) { clash = true; break; }
                if (!clash) break;
            }
            if (c == classes.size()) classes.emplace_back();
            classes[c].push_back(v);
            color[i] = static_cast<int>(c) + 1;
        }
        // Re-order candidates by color (ascending) for effective pruning.
        std::vector<int> order(candidates.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return color[a] < color[b]; });

        for (std::size_t oi = order.size(); oi-- > 0;) {
            int idx = order[oi];
            int v = candidates[idx];
            if (current.size() + static_cast<std::size_t>(color[idx]) <= best.size()) return;
            std::vector<int> next;
            for (std::size_t oj = 0; oj < oi; ++oj) {
                int u = candidates[order[oj]];
                if (adjacent(masks[v], masks[u])) next.push_back(u);
            }
            current.push_back(v);
            if (current.size() > best.size()) best = current;
            if (!next.empty()) expand(next);
            current.pop_back();
        }
    }
};

}  // namespace detail

/// Exact maximum code in J(2n, n) whose pairwise distances all lie in
/// `allowed`, by branch-and-bound clique search over the weight-n blocks.
/// Deterministic: fixed vertex order (compatibility degree descending, block
/// value ascending) and sequential expansion, so the witness is reproducible.
inline BruteForceResult brute_force_max(unsigned long n, const std::set<unsigned long>& allowed) {
    if (n < 1 || 2 * n > 20)
        throw resource_error("brute_force_max: requires 2n <= 20");
    if (allowed.empty()) throw std::invalid_argument("brute_force_max: empty distance set");
    for (unsigned long d : allowed)
        if (d < 1 || d > n)
            throw std::invalid_argument("brute_force_max: distances must lie in {1,...,n}");

    std::vector<std::uint32_t> masks;
    for (std::uint32_t m = 0; m < (1u << (2 * n)); ++m)
        if (static_cast<unsigned long>(std::popcount(m)) == n) masks.push_back(m);

    detail::CliqueSearch search{n, masks, allowed, {}, {}};
    std::vector<int> degree(masks.size(), 0);
    for (std::size_t i = 0; i < masks.size(); ++i)
        for (std::size_t j = i + 1; j < masks.size(); ++j)
            if (search.adjacent(masks[i], masks[j])) { ++degree[i]; ++degree[j]; }

    std::vector<int> vertices(masks.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) vertices[i] = static_cast<int>(i);
    std::stable_sort(vertices.begin(), vertices.end(),
                     [&](int a, int b) { return degree[a] > degree[b]; });
    search.expand(vertices);

    BruteForceResult result;
    result.size = search.best.size();
    result.witness.length = 2 * n;
    result.witness.weight = n;
    std::vector<Word> words;
    for (int v : search.best) {
        Word w = Word::zeros(2 * n);
        for (unsigned long j = 0; j < 2 * n; ++j)
            if ((masks[static_cast<std::size_t>(v)] >> j) & 1) w.set(j);
        words.push_back(w);
    }
    std::sort(words.begin(), words.end());
    result.witness.words = std::move(words);
    return result;
}

struct RankArgumentReport {
    unsigned long rank = 0;
    unsigned long expected = 0;
    bool ok = false;
};

namespace detail {

// Rank over GF(p); a full-row-rank witness modulo p certifies full rank over
// the rationals exactly.
inline unsigned long rank_mod_p(std::vector<std::vector<std::int64_t>> m, std::int64_t p) {
    unsigned long rank = 0;
    std::size_t rows = m.size();
    if (rows == 0) return 0;
    std::size_t cols = m[0].size();
    for (auto& row : m)
        for (auto& e : row) e = ((e % p) + p) % p;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t pivot = row;
        while (pivot < rows && m[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[pivot], m[row]);
        // Normalize pivot row.
        std::int64_t inv = 1, base = m[row][col], e = p - 2;
        while (e) {
            if (e & 1) inv = static_cast<std::int64_t>((__int128)inv * base % p);
            base = static_cast<std::int64_t>((__int128)base * base % p);
            e >>= 1;
        }
        for (std::size_t c = col; c < cols; ++c)
            m[row][c] = static_cast<std::int64_t>((__int128)m[row][c] * inv % p);
        for (std::size_t r2 = row + 1; r2 < rows; ++r2) {
            if (m[r2][col] == 0) continue;
            std::int64_t f = m[r2][col];
            for (std::size_t c = col; c < cols; ++c) {
                m[r2][c] = (m[r2][c] - static_cast<std::int64_t>((__int128)f * m[row][c] % p)) % p;
                if (m[r2][c] < 0) m[r2][c] += p;
            }
        }
        ++row;
        ++rank;
    }
    return rank;
}

inline unsigned long rank_exact(const std::vector<std::vector<std::int64_t>>& m) {
    std::vector<std::vector<Rational>> a(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (auto e : m[i]) a[i].emplace_back(Int(static_cast<long>(e)));
    unsigned long rank = 0;
    std::size_t rows = a.size();
    if (rows == 0) return 0;
    std::size_t cols = a[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t pivot = row;
        while (pivot < rows && a[pivot][col].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[row]);
        for (std::size_t r2 = row + 1; r2 < rows; ++r2) {
            if (a[r2][col].is_zero()) continue;
            Rational f = a[r2][col] / a[row][col];
            for (std::size_t c = col; c < cols; ++c) a[r2][c] -= f * a[row][c];
        }
        ++row;
        ++rank;
    }
    return rank;
}

}  // namespace detail

/// Linear-independence check behind the Johnson-space bound: the distance
/// polynomials of the codewords, together with the parity monomial family of
/// one degree lower, must evaluate to a full-rank matrix on all of
/// {-1,1}^(2n). All functions are reduced modulo x_j^2 = 1, so evaluating the
/// original products on sign vectors is exact.
inline RankArgumentReport verify_rank_argument(const Code& code) {
    DistanceProfile profile = distance_profile(code, Metric::johnson);
    unsigned long s = profile.degree;
    if (s == 0) throw std::invalid_argument("verify_rank_argument: degree 0 is out of scope");
    if (!profile.symmetric)
        throw std::invalid_argument("verify_rank_argument: requires a symmetric distance set");
    unsigned long len = code.length;  // = 2n
    if (len > 12) throw resource_error("verify_rank_argument: requires length <= 12");
    unsigned long n = *code.weight;

    std::vector<std::uint32_t> cmasks;
    for (const auto& w : code.words) {
        std::uint32_t m = 0;
        for (unsigned long j = 0; j < len; ++j)
            if (w.get(j)) m |= 1u << j;
        cmasks.push_back(m);
    }

    // alpha exponent sets with |alpha| <= s-1 and |alpha| = s-1 (mod 2)
    std::vector<std::uint32_t> alphas;
    for (std::uint32_t a = 0; a < (1u << len); ++a) {
        auto t = static_cast<unsigned long>(std::popcount(a));
        if (t <= s - 1 && (t % 2) == ((s - 1) % 2)) alphas.push_back(a);
    }

    std::size_t points = std::size_t{1} << len;
    std::vector<std::vector<std::int64_t>> matrix;
    matrix.reserve(cmasks.size() + alphas.size());

    for (std::uint32_t cm : cmasks) {
        std::vector<std::int64_t> row(points);
        for (std::size_t w = 0; w < points; ++w) {
            std::int64_t ip =
                static_cast<std::int64_t>(len) -
                std::int64_t{2} * std::popcount(static_cast<std::uint32_t>(w) ^ cm);
            std::int64_t value = 1;
            for (unsigned long d : profile.distances)
                value *= ip - 2 * (static_cast<std::int64_t>(n) - 2 * static_cast<std::int64_t>(d));
            row[w] = value;
        }
        matrix.push_back(std::move(row));
    }
    for (std::uint32_t a : alphas) {
        std::vector<std::int64_t> row(points);
        for (std::size_t w = 0; w < points; ++w) {
            auto wm = static_cast<std::uint32_t>(w);
            std::int64_t mono = std::popcount(a & ~wm) % 2 == 0 ? 1 : -1;
            std::int64_t h = std::int64_t{2} * std::popcount(wm) - static_cast<std::int64_t>(len);
            row[w] = mono * h;
        }
        matrix.push_back(std::move(row));
    }

    RankArgumentReport report;
    report.expected = cmasks.size() + alphas.size();
    report.rank = detail::rank_mod_p(matrix, (std::int64_t{1} << 31) - 1);
    if (report.rank < report.expected) {
        // A small prime can undercount; settle it exactly.
        report.rank = detail::rank_exact(matrix);
    }
    report.ok = report.rank == report.expected;
    return report;
}

}  // namespace symdist
