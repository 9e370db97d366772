#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "golay24/gf2.hpp"
#include "golay24/kernel_scl.hpp"

namespace golay24 {

// Building blocks of the cubing construction: the two (8,4,4) generators,
// the 8x8 carrier transform relating them through F8, the length-3
// single-parity-check and repetition generators, and the stacked 12x24
// reference generator Ghat.
struct GolayComponents {
    BitMatrix G8;    // rows {4,6,7,8} of F8
    BitMatrix G8p;   // column-permuted variant
    BitMatrix T8;
    BitMatrix S;     // (3,2,2) single parity check
    BitMatrix R;     // (3,1,3) repetition
    BitMatrix Ghat;  // [S (x) G8 ; R (x) G8p]
};

GolayComponents build_components();

// One realization of the (24,12,8) code as a pre-transformed length-24
// polar-like code with a 3x3 outer kernel.
struct CodeConstruction {
    int kernel_id = 0;                  // 1..3
    BitMatrix F3;                       // 3x3 kernel
    BitMatrix G24p;                     // F3 (x) F8
    std::vector<std::size_t> info_set;  // 1-based, |.| = 12
    BitMatrix T24;                      // unit upper triangular
    BitMatrix lhs_gen;                  // stacked G8/G8p generator it must match
};

CodeConstruction build_construction(int kernel_id);

// pac-style encode through this construction: msg placed on the info set
// ascending, codeword = v * T24 * G24p.
BitVector golay_encode(const CodeConstruction& c, const BitVector& msg);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Report {
    std::vector<CheckResult> checks;
    bool all_pass() const;
    std::string to_text() const;
};

// Row-space and codebook equality between lhs_gen and the info-set rows of
// T24 * G24p, including set equality with the Ghat codebook.
Report verify_kernel_identity(const CodeConstruction& c);

// All six 8-column block permutations of Ghat generate one codebook; the
// (2,1,3) case additionally checks the explicit message remapping.
Report verify_block_permutation_invariance();

// All 2^k codewords of a generator as sorted bitmasks (bit i-1 = column i).
std::vector<std::uint32_t> enumerate_codebook(const BitMatrix& gen);

std::map<std::size_t, std::size_t> weight_distribution(const std::vector<std::uint32_t>& codebook);

// sum_i (1-2 x_i) llr_i
double correlation(std::uint32_t codeword_mask, std::span<const double> llrs);

// Lexicographic order on the bit string x_1 x_2 ... x_n.
bool lex_less(std::uint32_t a, std::uint32_t b);

// The combined codec: three single-kernel SCL decoders sharing one input
// LLR sequence, a correlation-based selection stage, and an exhaustive ML
// reference over the 4096-word codebook.
class GolayCodec {
public:
    GolayCodec();

    static constexpr std::size_t kBlockLength = 24;
    static constexpr std::size_t kMessageLength = 12;

    const GolayComponents& components() const { return comp_; }
    const CodeConstruction& construction(int kernel_id) const;
    const std::vector<std::uint32_t>& codebook() const { return codebook_; }
    // pivot columns of rref(Ghat); canonical messages are read off these
    const std::vector<std::size_t>& message_pivots() const { return pivots_; }

    BitVector canonical_message(const BitVector& codeword) const;
    BitVector canonical_message(std::uint32_t codeword_mask) const;

    std::vector<DecoderCandidate> scl_decode_kernel(int kernel_id,
                                                    std::span<const double> llrs,
                                                    std::size_t list_size) const;

    struct MlResult {
        BitVector codeword;
        BitVector message;
    };
    // Exhaustive max-correlation decode; ties go to the lexicographically
    // smallest codeword.
    MlResult ml_decode(std::span<const double> llrs) const;

    struct KernelDiag {
        int kernel_id = 0;
        std::size_t candidates = 0;
        double best_metric = 0.0;
        double best_correlation = 0.0;
        bool selected = false;
    };
    struct ParallelResult {
        BitVector codeword;
        BitVector message;
        std::array<KernelDiag, 3> diagnostics;
    };
    // Level-1 shares the LLRs, level-2 runs the three kernels with list L,
    // level-3 selects the max-correlation candidate (ties: lower kernel id,
    // then lexicographically smaller codeword).
    ParallelResult parallel_decode(std::span<const double> llrs, std::size_t list_size) const;

    struct PoolCandidate {
        std::uint32_t codeword = 0;
        double correlation = 0.0;
        int kernel_id = 0;
    };
    // Distinct candidate codewords from all three kernels ranked by
    // (correlation desc, kernel id asc, lex asc).
    std::vector<PoolCandidate> parallel_decode_pool(std::span<const double> llrs,
                                                    std::size_t list_size) const;

private:
    GolayComponents comp_;
    std::array<CodeConstruction, 3> cons_;
    std::array<std::unique_ptr<KernelSclDecoder>, 3> decoders_;
    std::vector<std::uint32_t> codebook_;
    std::vector<std::size_t> pivots_;
};

}  // namespace golay24
