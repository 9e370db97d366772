#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "golay24/gf2.hpp"
#include "golay24/golay.hpp"

namespace golay24 {

// The nested binary codes behind both lattices: repetition inside Golay
// inside the (24,23,2) even-weight code, with the GF(2) helpers used by
// the per-level decoders.
struct NestedCodes {
    BitMatrix rep_gen;    // 1x24 all-ones
    BitMatrix golay_gen;  // 12x24, row 1 = all-ones
    BitMatrix pc_gen;     // 23x24, rows 1..12 = golay_gen
    BitMatrix r_golay;    // 24x12, golay_gen * r_golay = I12
    BitMatrix a_sys;      // 23x23, a_sys * pc_gen = [I23 | p]
};

NestedCodes build_nested_codes(const GolayCodec& codec);

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::int64_t at(std::size_t r, std::size_t c) const;       // 1-based
    void set(std::size_t r, std::size_t c, std::int64_t v);    // 1-based

    // One row per line, space-separated decimal entries.
    std::string to_text() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::int64_t> a_;
};

// Row-style Hermite normal form of the span of `generators`: upper
// triangular with positive diagonal, entries above each pivot reduced into
// [0, pivot). Throws if the span does not have full rank `cols`.
IntMatrix hermite_normal_form(const std::vector<std::vector<std::int64_t>>& generators,
                              std::size_t cols);

enum class LatticeName { H24, RLeech24 };

struct LatticeBasis {
    LatticeName name;
    IntMatrix G;  // 24x24 HNF, rows are basis vectors
    std::array<int, 24> level_of_row{};  // 2-adic scale of each row
    NestedCodes codes;
    std::vector<std::int64_t> rep_representative;  // RLeech24 only: (-3,1,...,1)
    std::int64_t det_abs = 0;
};

LatticeBasis build_basis(LatticeName name, const GolayCodec& codec);

// ln[f_{sigma,2Z}(ybar) / f_{sigma,2Z}(ybar - 1)] with ybar = y mod 2,
// where f_{sigma,2Z} is the 2Z-periodic Gaussian density. The sum is
// truncated to |ybar - 2k| <= max(8 sigma, 4), keeping the relative
// truncation error below 1e-12. Throws if sigma <= 0.
double coset_llr(double y, double sigma);

struct RepetitionDecision {
    int u = 0;
    BitVector codeword;  // u repeated 24 times
};
// u = 0 iff the LLR sum is >= 0.
RepetitionDecision decode_repetition(std::span<const double> llrs);

// Wagner decoding of the single-parity-check code: hard decisions, then
// flip the least reliable bit (lowest index on ties) if the parity is odd.
// Generic in n (n >= 2) so small sizes can be checked against exhaustive
// ML.
BitVector decode_parity(std::span<const double> llrs);

struct GolayLevelResult {
    BitVector u;  // 12 bits in golay_gen coordinates
    BitVector codeword;
};
GolayLevelResult decode_golay_level(const GolayCodec& codec, const NestedCodes& codes,
                                    std::span<const double> llrs, std::size_t list_size);

struct LatticeDecodeResult {
    std::vector<BitVector> level_bits;   // per-level binary codewords
    std::vector<std::int64_t> point;     // decoded lattice point
    std::vector<std::int64_t> coords;    // coords * G = point
    double distance = 0.0;               // ||y - point||^2
    std::array<double, 3> level_sigmas{};  // noise scale passed to each level
};

struct LeechDecodeOptions {
    // Diagnostic variant: subtract the 2^l-scaled codeword instead of the
    // plain binary codeword before halving. Breaks exact round trips; kept
    // so the verification report can show both conventions side by side.
    bool subtract_scaled = false;
};

// Exact solve of coords * G = x over the integers (G upper triangular).
// Returns nullopt when x is not in the lattice.
std::optional<std::vector<std::int64_t>> solve_coords(const IntMatrix& g,
                                                      std::span<const std::int64_t> x);

bool lattice_membership(std::span<const std::int64_t> x, const LatticeBasis& basis);

class LatticeDecoder {
public:
    explicit LatticeDecoder(std::shared_ptr<const GolayCodec> codec);

    const GolayCodec& codec() const { return *codec_; }
    const NestedCodes& codes() const { return h24_.codes; }
    const LatticeBasis& basis(LatticeName name) const;

    // Two-level decode: Golay at scale 1, parity at scale 2, then rounding.
    LatticeDecodeResult decode_h24(std::span<const double> y, double sigma,
                                   std::size_t list_size) const;

    // Three-level decode: repetition (representative r0), Golay, parity.
    LatticeDecodeResult decode_leech(std::span<const double> y, double sigma,
                                     std::size_t list_size,
                                     LeechDecodeOptions opts = {}) const;

    // Level-list variant: keeps l1 in {1,2} repetition hypotheses and the
    // best l2 distinct Golay candidates per hypothesis; every branch is
    // completed and the closest point (squared Euclidean distance to y)
    // wins. Exact ties: the u=0 branch, then the lower level-2 rank.
    LatticeDecodeResult decode_leech_levellist(std::span<const double> y, double sigma,
                                               int l1, std::size_t l2) const;

private:
    std::shared_ptr<const GolayCodec> codec_;
    LatticeBasis h24_;
    LatticeBasis leech_;
};

}  // namespace golay24
