#include "golay24/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace golay24 {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

TrialStream::TrialStream(std::uint64_t master_seed, std::uint64_t trial_index)
    : master_seed_(master_seed), trial_index_(trial_index) {
    std::uint64_t x = master_seed ^ (trial_index * 0xD1B54A32D192ED03ULL + 0x100000001B3ULL);
    for (auto& w : s_) w = splitmix64(x);
    // xoshiro must not start from the all-zero state
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

std::uint64_t TrialStream::next_u64() {
    // xoshiro256++
    std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double TrialStream::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint32_t TrialStream::uniform_int(std::uint32_t bound) {
    if (bound == 0)
        throw std::invalid_argument("TrialStream::uniform_int: bound must be positive");
    // rejection sampling to avoid modulo bias
    std::uint64_t limit = (~std::uint64_t{0} / bound) * bound;
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return static_cast<std::uint32_t>(x % bound);
}

double TrialStream::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = 1.0 - uniform01();  // (0, 1]
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

std::vector<double> awgn(TrialStream& stream, std::size_t dim) {
    std::vector<double> out(dim);
    for (auto& v : out) v = stream.normal();
    return out;
}

std::vector<double> bpsk_modulate(const BitVector& bits) {
    std::vector<double> out(bits.size());
    for (std::size_t i = 1; i <= bits.size(); ++i)
        out[i - 1] = bits.at(i) ? -1.0 : 1.0;
    return out;
}

double bpsk_llr(double y, double sigma) {
    if (!(sigma > 0.0))
        throw std::invalid_argument("bpsk_llr: sigma must be positive");
    return 2.0 * y / (sigma * sigma);
}

ChannelConfig bpsk_channel_ebn0(double ebn0_db, double rate) {
    double sigma2 = 1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0));
    return {ChannelConfig::Kind::bpsk_awgn, std::sqrt(sigma2), ebn0_db};
}

ChannelConfig bpsk_channel_esn0(double esn0_db) {
    double sigma2 = 1.0 / (2.0 * std::pow(10.0, esn0_db / 10.0));
    return {ChannelConfig::Kind::bpsk_awgn, std::sqrt(sigma2), esn0_db};
}

ChannelConfig lattice_channel(double snr_db) {
    return {ChannelConfig::Kind::lattice_awgn, std::pow(10.0, -snr_db / 20.0), snr_db};
}

}  // namespace golay24
