#pragma once

#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "symdist/codes.hpp"
#include "symdist/errors.hpp"

namespace symdist {

/// Square +-1 matrix; valid when all rows are pairwise orthogonal.
struct HadamardMatrix {
    unsigned long order = 0;
    std::vector<std::vector<std::int8_t>> entries;

    bool is_normalized() const {
        if (order == 0) return false;
        for (auto e : entries[0])
            if (e != 1) return false;
        return true;
    }

    /// Row pairs whose inner product is nonzero; empty iff H H^T = order * I.
    std::vector<std::pair<std::size_t, std::size_t>> orthogonality_violations() const {
        std::vector<std::pair<std::size_t, std::size_t>> bad;
        for (std::size_t i = 0; i < order; ++i)
            for (std::size_t j = i + 1; j < order; ++j) {
                long ip = 0;
                for (std::size_t k = 0; k < order; ++k)
                    ip += static_cast<long>(entries[i][k]) * entries[j][k];
                if (ip != 0) bad.emplace_back(i, j);
            }
        return bad;
    }

    bool valid() const { return order > 0 && orthogonality_violations().empty(); }
};

/// Order-2^k Hadamard matrix by the doubling construction; the first row is
/// all ones.
inline HadamardMatrix sylvester_hadamard(unsigned k) {
    if (k > 12) throw resource_error("sylvester_hadamard: k > 12 exceeds the size guard");
    HadamardMatrix h;
    h.order = 1ul << k;
    h.entries.assign(h.order, std::vector<std::int8_t>(h.order, 1));
    for (unsigned long block = 1; block < h.order; block *= 2)
        for (unsigned long i = 0; i < block; ++i)
            for (unsigned long j = 0; j < block; ++j) {
                std::int8_t v = h.entries[i][j];
                h.entries[i + block][j] = v;
                h.entries[i][j + block] = v;
                h.entries[i + block][j + block] = static_cast<std::int8_t>(-v);
            }
    return h;
}

/// Rows below the all-ones row of a normalized Hadamard matrix of order 2n,
/// read as characteristic vectors (+1 -> '1'): a constant-weight-n code of
/// 2n-1 words whose only distance is n/2.
inline Code hadamard_to_code(const HadamardMatrix& h) {
    if (h.order < 2 || h.order % 2 != 0)
        throw input_error("hadamard_to_code: order must be even and >= 2");
    if (!h.is_normalized())
        throw input_error("hadamard_to_code: first row must be all ones (normalized form)");
    auto bad = h.orthogonality_violations();
    if (!bad.empty())
        throw input_error("hadamard_to_code: rows " + std::to_string(bad[0].first) + " and " +
                          std::to_string(bad[0].second) + " are not orthogonal");
    Code code;
    code.length = h.order;
    code.weight = h.order / 2;
    for (std::size_t i = 1; i < h.order; ++i) {
        Word w = Word::zeros(code.length);
        for (unsigned long j = 0; j < h.order; ++j)
            if (h.entries[i][j] == 1) w.set(j);
        code.words.push_back(w);
    }
    return code;
}

/// Inverse direction: stacks an all-ones row over the signed characteristic
/// vectors of a code with length 2n, weight n, 2n-1 words and distance set
/// {n/2}, then validates the result row by row.
inline HadamardMatrix code_to_hadamard(const Code& code) {
    unsigned long order = code.length;
    if (order < 2 || order % 2 != 0)
        throw input_error("code_to_hadamard: length must be even and >= 2");
    unsigned long n = order / 2;
    if (!code.weight || *code.weight != n)
        throw input_error("code_to_hadamard: needs constant weight n = length/2");
    if (code.size() != order - 1)
        throw input_error("code_to_hadamard: needs exactly 2n-1 = " + std::to_string(order - 1) +
                          " words, got " + std::to_string(code.size()));
    DistanceProfile profile = distance_profile(code, Metric::johnson);
    if (order > 2) {
        if (n % 2 != 0)
            throw input_error("code_to_hadamard: needs even weight so that n/2 is a distance");
        if (profile.distances != std::set<unsigned long>{n / 2})
            throw input_error("code_to_hadamard: distance set must be exactly {n/2}");
    }

    HadamardMatrix h;
    h.order = order;
    h.entries.assign(order, std::vector<std::int8_t>(order, 1));
    for (std::size_t i = 0; i < code.words.size(); ++i)
        for (unsigned long j = 0; j < order; ++j)
            h.entries[i + 1][j] = code.words[i].get(j) ? std::int8_t{1} : std::int8_t{-1};

    auto bad = h.orthogonality_violations();
    if (!bad.empty()) {
        std::string rows;
        for (auto& [a, b] : bad) {
            if (!rows.empty()) rows += ", ";
            rows += "(" + std::to_string(a) + "," + std::to_string(b) + ")";
        }
        throw input_error("code_to_hadamard: orthogonality fails for row pairs " + rows);
    }
    return h;
}

/// Parses the Hadamard file format: one row per line of '+'/'-' characters,
/// '#' starts a comment, the matrix must come out square.
inline HadamardMatrix load_hadamard(std::istream& in) {
    HadamardMatrix h;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::int8_t> row;
        row.reserve(line.size());
        for (char c : line) {
            if (c == '+') row.push_back(1);
            else if (c == '-') row.push_back(-1);
            else
                throw input_error("hadamard: illegal character '" + std::string(1, c) +
                                  "' on line " + std::to_string(lineno));
        }
        if (!h.entries.empty() && row.size() != h.entries[0].size())
            throw input_error("hadamard: ragged line " + std::to_string(lineno));
        h.entries.push_back(std::move(row));
    }
    if (h.entries.empty()) throw input_error("hadamard: empty input");
    if (h.entries.size() != h.entries[0].size())
        throw input_error("hadamard: matrix must be square, got " +
                          std::to_string(h.entries.size()) + " rows of length " +
                          std::to_string(h.entries[0].size()));
    h.order = h.entries.size();
    return h;
}

inline HadamardMatrix load_hadamard_text(const std::string& text) {
    std::istringstream in(text);
    return load_hadamard(in);
}

inline std::string format_hadamard(const HadamardMatrix& h) {
    std::string out;
    for (const auto& row : h.entries) {
        for (auto e : row) out += e == 1 ? '+' : '-';
        out += '\n';
    }
    return out;
}

}  // namespace symdist
