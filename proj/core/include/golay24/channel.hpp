#pragma once

#include <cstdint>
#include <vector>

#include "golay24/gf2.hpp"

namespace golay24 {

// Deterministic per-trial random stream: the sequence is a pure function
// of (master_seed, trial_index), independent of worker count or execution
// order. Generator: xoshiro256++ seeded via SplitMix64; normals via
// Box-Muller. Both are fixed so published numbers replay bit-identically.
class TrialStream {
public:
    TrialStream(std::uint64_t master_seed, std::uint64_t trial_index);

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t trial_index() const { return trial_index_; }

    std::uint64_t next_u64();
    double uniform01();                       // [0, 1)
    std::uint32_t uniform_int(std::uint32_t bound);  // [0, bound)
    double normal();                          // standard normal

private:
    std::uint64_t master_seed_, trial_index_;
    std::uint64_t s_[4];
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// `dim` unit-variance Gaussian samples drawn from the stream.
std::vector<double> awgn(TrialStream& stream, std::size_t dim);

// bit 0 -> +1.0, bit 1 -> -1.0
std::vector<double> bpsk_modulate(const BitVector& bits);

// 2y/sigma^2; positive favors bit 0. Throws if sigma <= 0.
double bpsk_llr(double y, double sigma);

struct ChannelConfig {
    enum class Kind { bpsk_awgn, lattice_awgn };
    Kind kind;
    double sigma;
    double snr_db;
};

// BPSK with Eb/N0 in dB at rate R: sigma^2 = 1 / (2 * R * 10^(EbN0/10)).
ChannelConfig bpsk_channel_ebn0(double ebn0_db, double rate);
// BPSK with Es/N0 in dB: sigma^2 = 1 / (2 * 10^(EsN0/10)).
ChannelConfig bpsk_channel_esn0(double esn0_db);
// Lattice convention: SNR = 10 log10(1/sigma^2).
ChannelConfig lattice_channel(double snr_db);

}  // namespace golay24
