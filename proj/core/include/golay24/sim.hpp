#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "golay24/golay.hpp"
#include "golay24/lattice.hpp"

namespace golay24 {

struct WilsonInterval {
    double lo = 0.0;
    double hi = 0.0;
};
// Wilson score interval for a binomial proportion at z standard deviations.
WilsonInterval wilson_interval(std::uint64_t errors, std::uint64_t trials, double z);

bool intervals_overlap(const WilsonInterval& a, const WilsonInterval& b);

struct SimRecord {
    std::string scheme;
    std::string list;  // "8", or "2x16" for level lists
    double snr_db = 0.0;
    double sigma = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t block_errors = 0;
    double bler = 0.0;
    std::uint64_t seed = 0;
    double elapsed_ms = 0.0;
    std::optional<WilsonInterval> ci;  // 95% Wilson, when requested
};

// Deterministic fan-out of independent trials across worker threads: the
// error count depends only on the per-trial outcomes, never on scheduling.
std::uint64_t count_errors_parallel(std::uint64_t trials, unsigned threads,
                                    const std::function<bool(std::uint64_t)>& is_error);

enum class GolayScheme { k1, k2, k3, parallel, ml };
std::string to_string(GolayScheme s);
std::optional<GolayScheme> golay_scheme_from_string(const std::string& s);

struct GolaySimConfig {
    GolayScheme scheme = GolayScheme::parallel;
    std::size_t list_size = 8;
    std::vector<double> snr_points_db;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
    bool random_tx = false;  // default: all-zero codeword under symmetry
    bool esn0 = false;       // default x-axis is Eb/N0 at rate 1/2
    unsigned threads = 0;    // 0 = hardware concurrency
    bool with_ci = false;
};

std::vector<SimRecord> run_golay_sim(const GolayCodec& codec, const GolaySimConfig& cfg);

enum class LatticeScheme { h24, leech, leech_levellist };
std::string to_string(LatticeScheme s);

struct LatticeSimConfig {
    LatticeScheme scheme = LatticeScheme::leech;
    std::size_t list_size = 16;  // L for h24/leech
    int l1 = 2;                  // level list
    std::size_t l2 = 16;
    std::vector<double> snr_points_db;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
    bool random_tx = false;  // default: origin under lattice symmetry
    unsigned threads = 0;
    bool with_ci = false;
};

std::vector<SimRecord> run_lattice_sim(const LatticeDecoder& decoder,
                                       const LatticeSimConfig& cfg);

struct CsvOptions {
    std::vector<std::string> comments;  // emitted as leading '# ' lines
    bool with_ci = false;
};

void write_csv(std::ostream& os, const std::vector<SimRecord>& records,
               const CsvOptions& opts);

// One CSV data row without trailing newline (used for byte-stable output).
std::string csv_row(const SimRecord& r, bool with_ci);

}  // namespace golay24
