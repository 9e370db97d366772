#pragma once

#include "golay24/golay.hpp"
#include "golay24/lattice.hpp"

namespace golay24 {

// Full self-check suite: construction identities, codebook statistics,
// lattice invariants and seeded round trips. Pure function of the seed.
Report run_verification(const GolayCodec& codec, const LatticeDecoder& decoder,
                        unsigned threads = 0, std::uint64_t seed = 24601);

// Text dumps behind the `tables` CLI command.
std::string golay_tables_text();
std::string lattice_tables_text(const LatticeDecoder& decoder);

}  // namespace golay24
