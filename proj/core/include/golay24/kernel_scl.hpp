#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "golay24/gf2.hpp"

namespace golay24 {

struct DecodeOptions {
    bool min_sum = false;  // benchmark variant; exact log-domain updates otherwise
};

// One decoding path of a pre-transformed code: the carrier vector v (zeros
// on frozen positions), its path metric (lower is better) and the
// re-encoded codeword v * T * G.
struct DecoderCandidate {
    BitVector v;
    double metric = 0.0;
    BitVector codeword;
};

// Successive-cancellation list decoder for codes whose polar-stage
// generator is a Kronecker chain K_1 (x) K_2 (x) ... (x) K_m of small
// binary kernels, pre-transformed by a unit upper triangular matrix T.
//
// The decoder walks the N = prod(k_d) leaves in natural order. At leaf i
// the carrier decision applies to v_i while the polar-stage input is
// u_i = sum_{j<=i} v_j T[j,i], which is well defined because T is upper
// triangular. Soft values flow through exact kernel marginalisation
// (log-sum-exp over undecided kernel inputs), so for 2x2 stages the
// updates reduce to the usual check/variable-node pair.
class KernelSclDecoder {
public:
    // info_set is 1-based ascending. Throws if the transform is not unit
    // upper triangular of matching size, or if N > 32.
    KernelSclDecoder(std::vector<BitMatrix> stages, std::vector<std::size_t> info_set,
                     const BitMatrix& transform, DecodeOptions opts = {});

    std::size_t block_length() const { return n_; }
    const std::vector<std::size_t>& info_set() const { return info_set_1based_; }

    // Up to `list_size` candidates sorted by metric; on metric ties the
    // earlier-created path comes first (children are created parent-order
    // first, v=0 before v=1).
    std::vector<DecoderCandidate> decode(std::span<const double> llrs,
                                         std::size_t list_size) const;

private:
    struct Stage {
        std::size_t k;          // kernel dimension
        std::size_t child_len;  // leaf count of one child subtree
        std::uint8_t colmask[8];  // column j of the kernel as a row bitmask
        bool is_f2;
        std::size_t alpha_off;  // offsets into per-path scratch arrays
        std::size_t beta_off;
    };

    std::size_t n_ = 1;
    std::size_t m_ = 0;
    std::vector<Stage> stages_;
    std::vector<std::size_t> info_set_1based_;
    std::vector<std::uint8_t> frozen_;
    std::vector<std::uint32_t> tcol_;  // strict upper part of T column i
    std::size_t alpha_len_ = 0, beta_len_ = 0;
    std::vector<std::uint8_t> digits_;       // n_ x m_: digit of leaf i at stage d
    std::vector<std::uint8_t> enter_depth_;  // first stage to refresh at leaf i
    DecodeOptions opts_;

    struct Path;
    void refresh_alpha(Path& path, std::span<const double> channel, std::size_t leaf) const;
    void propagate(Path& path, std::size_t leaf, int u_bit) const;
};

}  // namespace golay24
