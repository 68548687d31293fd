#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "symdist/errors.hpp"
#include "symdist/interval_log.hpp"
#include "symdist/phi.hpp"

namespace symdist {

/// Refuse (without an acknowledgment flag) sweeps whose grid exceeds this
/// many cells; the full search ranges are far beyond desk scale.
inline constexpr std::uint64_t kLongRunCellThreshold = 1'000'000;

enum class RRule {
    explicit_range,  // r in [r_from, r_to]
    quadratic,       // r in [2, floor(3 s^2 / 4)], the certified reach of the p2 test
    growth,          // r in [2, min(287, s-1)] with s <= 5000 r (14.5 + ln r)^2
};

inline const char* r_rule_name(RRule r) {
    switch (r) {
        case RRule::explicit_range: return "explicit";
        case RRule::quadratic: return "quadratic";
        case RRule::growth: return "growth";
    }
    return "?";
}

struct SweepSpec {
    unsigned long s_from = 2;
    unsigned long s_to = 2;
    RRule rule = RRule::explicit_range;
    unsigned long r_from = 1;
    unsigned long r_to = 1;
    bool prefilter = true;
    unsigned jobs = 1;
    std::string checkpoint_path;  // empty: no checkpointing
    bool ack_long_run = false;

    void validate() const {
        if (s_from < 1 || s_from > s_to)
            throw std::invalid_argument("sweep: requires 1 <= s_from <= s_to");
        if (rule == RRule::explicit_range && (r_from < 1 || r_from > r_to))
            throw std::invalid_argument("sweep: requires 1 <= r_from <= r_to");
        if (jobs < 1) throw std::invalid_argument("sweep: jobs must be >= 1");
        if (s_to > 1'000'000'000 || (rule == RRule::explicit_range && r_to > 1'000'000'000))
            throw resource_error("sweep: ranges beyond 10^9 are not supported");
    }

    /// Stable one-line echo of the mathematical grid. Scheduling knobs (jobs,
    /// checkpoint path, acknowledgment) are excluded so reports stay
    /// byte-identical across them.
    std::string canonical() const {
        std::ostringstream os;
        os << "s=" << s_from << ".." << s_to << " rule=" << r_rule_name(rule);
        if (rule == RRule::explicit_range) os << " r=" << r_from << ".." << r_to;
        os << " prefilter=" << (prefilter ? "on" : "off");
        return os.str();
    }
};

struct CellResult {
    bool all_integral = false;
    std::optional<unsigned long> first_fail;  // smallest i with p_{s,i} non-integral
};

/// Evaluates p_{s,1}, ..., p_{s,s} in order with early exit at the first
/// non-integer.
inline CellResult cell_all_integral(unsigned long r, unsigned long s) {
    PhiParams params(r, s);
    for (unsigned long i = 1; i <= s; ++i)
        if (!phi_coefficient(params, i).is_integer()) return {false, i};
    return {true, std::nullopt};
}

/// Prefilter from the expansion
///   16 p_{s,2} = C(s,2) (4r^2 + 14r + 13 + 3/(2r+1)):
/// when r >= 3 s^2 / 4 the coefficient p_{s,2} cannot be an integer, so the
/// cell cannot be a hit. Returns true when the cell must still be examined.
inline bool prefilter_admits(unsigned long r, unsigned long s) {
    if (s < 2) throw std::invalid_argument("prefilter_admits: requires s >= 2");
    return 4 * Int(r) < 3 * Int(s) * Int(s);
}

struct SweepReport {
    std::string spec_echo;
    std::uint64_t cells_examined = 0;
    std::vector<std::pair<unsigned long, unsigned long>> hits;  // (s, r), sorted
    std::map<unsigned long, std::uint64_t> first_fail_histogram;
    double wall_seconds = 0;  // diagnostic only, not part of the canonical text

    std::string canonical_text() const {
        std::ostringstream os;
        os << "sweep-report v1\n";
        os << "spec: " << spec_echo << "\n";
        os << "cells_examined: " << cells_examined << "\n";
        os << "hit_count: " << hits.size() << "\n";
        for (const auto& [s, r] : hits) os << "hit: " << s << " " << r << "\n";
        for (const auto& [i, count] : first_fail_histogram)
            os << "fail_histogram: " << i << " " << count << "\n";
        return os.str();
    }
};

namespace detail {

inline std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string cell_line(unsigned long s, unsigned long r, const CellResult& cell) {
    std::ostringstream os;
    os << "cell " << s << " " << r << " ";
    if (cell.all_integral) os << "ALL";
    else os << *cell.first_fail;
    os << "\n";
    return os.str();
}

/// Growth-rule ceiling floor(5000 r (14.5 + ln r)^2) per r, cached.
class GrowthCeiling {
  public:
    unsigned long operator()(unsigned long r) {
        auto it = cache_.find(r);
        if (it != cache_.end()) return it->second;
        Int f = floor_log_quadratic(Rational(5000) * Rational(r), Rational(29, 2), Int(r));
        unsigned long v = f.get_ui();
        cache_.emplace(r, v);
        return v;
    }

  private:
    std::map<unsigned long, unsigned long> cache_;
};

struct RowPlan {
    unsigned long s;
    std::vector<unsigned long> rs;  // cells to examine, ascending
};

inline RowPlan plan_row(const SweepSpec& spec, unsigned long s, GrowthCeiling& ceiling) {
    RowPlan plan{s, {}};
    unsigned long lo = 0, hi = 0;
    switch (spec.rule) {
        case RRule::explicit_range:
            lo = spec.r_from;
            hi = spec.r_to;
            break;
        case RRule::quadratic:
            lo = 2;
            hi = 3 * s * s / 4;
            break;
        case RRule::growth:
            lo = 2;
            hi = s >= 1 ? std::min<unsigned long>(287, s - 1) : 0;
            break;
    }
    for (unsigned long r = lo; r <= hi && hi >= lo; ++r) {
        if (spec.rule == RRule::growth && s > ceiling(r)) continue;
        if (spec.prefilter && s >= 2 && !prefilter_admits(r, s)) continue;
        plan.rs.push_back(r);
    }
    return plan;
}

/// Upper bound on examined cells, ignoring the prefilter; used for the
/// long-run refusal. Stops early once the threshold is crossed.
inline std::uint64_t estimate_cells(const SweepSpec& spec, std::uint64_t stop_at) {
    std::uint64_t total = 0;
    if (spec.rule == RRule::growth) {
        GrowthCeiling ceiling;
        for (unsigned long r = 2; r <= 287; ++r) {
            unsigned long top = std::min<unsigned long>(ceiling(r), spec.s_to);
            unsigned long bottom = std::max(spec.s_from, r + 1);
            if (top >= bottom) total += top - bottom + 1;
            if (total > stop_at) return total;
        }
        return total;
    }
    for (unsigned long s = spec.s_from; s <= spec.s_to; ++s) {
        if (spec.rule == RRule::explicit_range) {
            total += spec.r_to - spec.r_from + 1;
        } else {
            unsigned long hi = 3 * s * s / 4;
            if (hi >= 2) total += hi - 1;
        }
        if (total > stop_at) return total;
    }
    return total;
}

inline std::vector<CellResult> evaluate_row(const RowPlan& plan, unsigned jobs) {
    std::vector<CellResult> results(plan.rs.size());
    if (jobs <= 1 || plan.rs.size() < 2) {
        for (std::size_t i = 0; i < plan.rs.size(); ++i)
            results[i] = cell_all_integral(plan.rs[i], plan.s);
        return results;
    }
    std::size_t chunk = (plan.rs.size() + jobs - 1) / jobs;
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < jobs; ++t) {
        std::size_t begin = t * chunk;
        if (begin >= plan.rs.size()) break;
        std::size_t end = std::min(plan.rs.size(), begin + chunk);
        workers.emplace_back([&plan, &results, begin, end]() {
            for (std::size_t i = begin; i < end; ++i)
                results[i] = cell_all_integral(plan.rs[i], plan.s);
        });
    }
    for (auto& w : workers) w.join();
    return results;
}

struct CheckpointState {
    // s -> recorded row, in checkpoint order
    std::map<unsigned long, std::vector<std::pair<unsigned long, CellResult>>> rows;
    std::uint64_t keep_bytes = 0;  // file prefix covering complete rows only
};

/// Reads a checkpoint, validating the completed rows. An interrupted run can
/// only tear the file at its very end (rows are appended in order), so an
/// anomaly on the final line is treated as a crash remnant: everything after
/// the last checksummed row is discarded and recomputed. Anomalies anywhere
/// before the end of the file mean the checkpoint was tampered with or
/// damaged, and the run refuses.
inline CheckpointState read_checkpoint(const std::string& path, const std::string& spec_echo) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("checkpoint: cannot open " + path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    struct Line {
        std::string text;
        std::uint64_t end_offset;  // offset just past this line's newline
        bool complete;             // newline-terminated
    };
    std::vector<Line> lines;
    std::size_t start = 0;
    while (start < content.size()) {
        std::size_t nl = content.find('\n', start);
        if (nl == std::string::npos) {
            lines.push_back({content.substr(start), content.size(), false});
            break;
        }
        lines.push_back({content.substr(start, nl - start), nl + 1, true});
        start = nl + 1;
    }

    if (lines.empty() || !lines[0].complete || lines[0].text != "symdist-sweep-checkpoint 1")
        throw input_error("checkpoint: bad or missing header in " + path);
    if (lines.size() < 2 || !lines[1].complete || lines[1].text.rfind("spec ", 0) != 0)
        throw input_error("checkpoint: missing spec line in " + path);
    if (lines[1].text.substr(5) != spec_echo)
        throw input_error("checkpoint: spec mismatch (file has \"" + lines[1].text.substr(5) +
                          "\", run wants \"" + spec_echo + "\")");

    CheckpointState state;
    state.keep_bytes = lines[1].end_offset;

    std::vector<std::pair<unsigned long, CellResult>> pending;
    std::optional<unsigned long> pending_s;
    std::string pending_text;
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const Line& line = lines[i];
        bool final_line = i + 1 == lines.size();
        auto anomaly = [&](const std::string& what) {
            if (final_line) return true;  // crash remnant, recompute from keep_bytes
            throw input_error("checkpoint: " + what + " in " + path);
        };
        if (!line.complete) {
            if (anomaly("torn line")) break;
        }
        std::istringstream ls(line.text);
        std::string tag;
        ls >> tag;
        if (tag == "cell") {
            unsigned long s = 0, r = 0;
            std::string what;
            if (!(ls >> s >> r >> what)) {
                if (anomaly("malformed cell line")) break;
            }
            if (pending_s && *pending_s != s) {
                if (anomaly("row " + std::to_string(*pending_s) + " interleaved with row " +
                            std::to_string(s)))
                    break;
            }
            CellResult cell;
            if (what == "ALL") {
                cell.all_integral = true;
            } else {
                try {
                    cell.first_fail = std::stoul(what);
                } catch (const std::exception&) {
                    if (anomaly("malformed cell result \"" + what + "\"")) break;
                }
            }
            pending_s = s;
            pending.emplace_back(r, cell);
            pending_text += line.text + "\n";
        } else if (tag == "row") {
            unsigned long s = 0;
            std::uint64_t count = 0;
            std::string checksum;
            if (!(ls >> s >> count >> checksum)) {
                if (anomaly("malformed row line")) break;
            }
            if (pending_s && *pending_s != s) {
                if (anomaly("row marker for " + std::to_string(s) +
                            " does not match pending cells"))
                    break;
            }
            if (count != pending.size()) {
                if (anomaly("row " + std::to_string(s) + " records " + std::to_string(count) +
                            " cells but has " + std::to_string(pending.size())))
                    break;
            }
            std::ostringstream expect;
            expect << std::hex << fnv1a(pending_text);
            if (checksum != expect.str()) {
                if (anomaly("checksum mismatch in row " + std::to_string(s))) break;
            }
            if (state.rows.count(s))
                throw input_error("checkpoint: duplicate row " + std::to_string(s) + " in " + path);
            state.rows.emplace(s, std::move(pending));
            pending.clear();
            pending_s.reset();
            pending_text.clear();
            state.keep_bytes = line.end_offset;
        } else {
            if (anomaly("unexpected line \"" + line.text + "\"")) break;
        }
    }
    return state;
}

}  // namespace detail

/// Runs the integrality sweep described by `spec`: row-major over s, cells
/// examined in ascending r, hits collected where p_{s,1..s} are all integers.
/// Deterministic: the report does not depend on the jobs count, and resuming
/// from a checkpoint reproduces the uninterrupted report byte for byte.
inline SweepReport run_sweep(const SweepSpec& spec) {
    spec.validate();
    auto started = std::chrono::steady_clock::now();

    std::uint64_t estimate = detail::estimate_cells(spec, kLongRunCellThreshold);
    if (estimate > kLongRunCellThreshold && !spec.ack_long_run)
        throw resource_error(
            "sweep: grid exceeds " + std::to_string(kLongRunCellThreshold) +
            " cells and runs far beyond desk scale; pass the acknowledgment flag to proceed");

    SweepReport report;
    report.spec_echo = spec.canonical();

    detail::CheckpointState checkpoint;
    std::ofstream out;
    bool use_checkpoint = !spec.checkpoint_path.empty();
    if (use_checkpoint) {
        namespace fs = std::filesystem;
        if (fs::exists(spec.checkpoint_path)) {
            checkpoint = detail::read_checkpoint(spec.checkpoint_path, report.spec_echo);
            fs::resize_file(spec.checkpoint_path, checkpoint.keep_bytes);
            out.open(spec.checkpoint_path, std::ios::binary | std::ios::app);
        } else {
            out.open(spec.checkpoint_path, std::ios::binary);
            if (out) out << "symdist-sweep-checkpoint 1\nspec " << report.spec_echo << "\n" << std::flush;
        }
        if (!out) throw input_error("checkpoint: cannot write " + spec.checkpoint_path);
    }

    detail::GrowthCeiling ceiling;
    for (unsigned long s = spec.s_from; s <= spec.s_to; ++s) {
        detail::RowPlan plan = detail::plan_row(spec, s, ceiling);

        std::vector<std::pair<unsigned long, CellResult>> row;
        auto recorded = checkpoint.rows.find(s);
        if (recorded != checkpoint.rows.end()) {
            row = recorded->second;
            std::vector<unsigned long> expected_rs;
            expected_rs.reserve(row.size());
            for (const auto& [r, cell] : row) expected_rs.push_back(r);
            if (expected_rs != plan.rs)
                throw input_error("checkpoint: row " + std::to_string(s) +
                                  " does not match the planned cells");
        } else {
            std::vector<CellResult> results = detail::evaluate_row(plan, spec.jobs);
            row.reserve(plan.rs.size());
            for (std::size_t i = 0; i < plan.rs.size(); ++i) row.emplace_back(plan.rs[i], results[i]);
            if (use_checkpoint) {
                std::string text;
                for (const auto& [r, cell] : row) text += detail::cell_line(s, r, cell);
                std::ostringstream checksum;
                checksum << std::hex << detail::fnv1a(text);
                out << text << "row " << s << " " << row.size() << " " << checksum.str() << "\n"
                    << std::flush;
            }
        }

        for (const auto& [r, cell] : row) {
            ++report.cells_examined;
            if (cell.all_integral) report.hits.emplace_back(s, r);
            else ++report.first_fail_histogram[*cell.first_fail];
        }
    }

    // Row-major iteration already yields lexicographic hits; keep the
    // contract explicit.
    std::sort(report.hits.begin(), report.hits.end());
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

}  // namespace symdist
