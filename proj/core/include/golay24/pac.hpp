#pragma once

#include <span>
#include <vector>

#include "golay24/gf2.hpp"
#include "golay24/kernel_scl.hpp"

namespace golay24 {

// A pre-transformed polar code of length N = 2^n: information set (1-based
// ascending) plus a unit upper triangular carrier transform T. With
// bit_reversed set, the polar stage is F2^{(x)n} B_N instead of F2^{(x)n}.
struct PacSpec {
    unsigned n = 0;
    std::vector<std::size_t> info_set;
    BitMatrix transform;
    bool bit_reversed = false;

    std::size_t block_length() const { return std::size_t{1} << n; }
    void validate() const;  // throws on malformed specs
};

// F2^{(x)n}, optionally multiplied by the bit-reverse permutation matrix.
BitMatrix polar_matrix(unsigned n, bool bit_reversed = false);

// Places msg on the information set (ascending index <-> msg order), zeros
// elsewhere, and returns v * T * G. Throws on length mismatch.
BitVector pac_encode(const PacSpec& spec, const BitVector& msg);

DecoderCandidate sc_decode(const PacSpec& spec, std::span<const double> llrs,
                           DecodeOptions opts = {});

std::vector<DecoderCandidate> scl_decode(const PacSpec& spec, std::span<const double> llrs,
                                         std::size_t list_size, DecodeOptions opts = {});

}  // namespace golay24
