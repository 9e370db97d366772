#include "golay24/sim.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "golay24/channel.hpp"

namespace golay24 {

WilsonInterval wilson_interval(std::uint64_t errors, std::uint64_t trials, double z) {
    if (trials == 0)
        throw std::invalid_argument("wilson_interval: trials must be positive");
    double n = static_cast<double>(trials);
    double p = static_cast<double>(errors) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

bool intervals_overlap(const WilsonInterval& a, const WilsonInterval& b) {
    return a.lo <= b.hi && b.lo <= a.hi;
}

std::uint64_t count_errors_parallel(std::uint64_t trials, unsigned threads,
                                    const std::function<bool(std::uint64_t)>& is_error) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(trials, 1)));
    if (threads <= 1) {
        std::uint64_t errors = 0;
        for (std::uint64_t t = 0; t < trials; ++t) errors += is_error(t) ? 1 : 0;
        return errors;
    }
    std::vector<std::uint64_t> partial(threads, 0);
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        std::uint64_t begin = trials * w / threads;
        std::uint64_t end = trials * (w + 1) / threads;
        workers.emplace_back([&, w, begin, end] {
            std::uint64_t errors = 0;
            for (std::uint64_t t = begin; t < end; ++t) errors += is_error(t) ? 1 : 0;
            partial[w] = errors;
        });
    }
    for (auto& t : workers) t.join();
    std::uint64_t total = 0;
    for (auto e : partial) total += e;
    return total;
}

std::string to_string(GolayScheme s) {
    switch (s) {
        case GolayScheme::k1: return "k1";
        case GolayScheme::k2: return "k2";
        case GolayScheme::k3: return "k3";
        case GolayScheme::parallel: return "parallel";
        case GolayScheme::ml: return "ml";
    }
    return "?";
}

std::optional<GolayScheme> golay_scheme_from_string(const std::string& s) {
    if (s == "k1") return GolayScheme::k1;
    if (s == "k2") return GolayScheme::k2;
    if (s == "k3") return GolayScheme::k3;
    if (s == "parallel") return GolayScheme::parallel;
    if (s == "ml") return GolayScheme::ml;
    return std::nullopt;
}

std::string to_string(LatticeScheme s) {
    switch (s) {
        case LatticeScheme::h24: return "h24";
        case LatticeScheme::leech: return "leech";
        case LatticeScheme::leech_levellist: return "leech-levellist";
    }
    return "?";
}

namespace {

// Per-trial stream layout (fixed for reproducibility): optional message /
// coefficient draws first, then the 24 noise samples.
std::uint32_t golay_trial(const GolayCodec& codec, const GolaySimConfig& cfg, double sigma,
                          std::uint64_t trial, std::uint32_t* tx_out) {
    TrialStream stream(cfg.seed, trial);
    std::uint32_t tx = 0;
    if (cfg.random_tx) {
        BitVector msg(GolayCodec::kMessageLength);
        for (std::size_t j = 1; j <= GolayCodec::kMessageLength; ++j)
            msg.set(j, static_cast<int>(stream.uniform_int(2)));
        tx = static_cast<std::uint32_t>(gf2_vecmat(msg, codec.components().Ghat).to_mask());
    }
    double llrs[GolayCodec::kBlockLength];
    for (std::size_t i = 0; i < GolayCodec::kBlockLength; ++i) {
        double s = (tx & (1u << i)) ? -1.0 : 1.0;
        double y = s + sigma * stream.normal();
        llrs[i] = bpsk_llr(y, sigma);
    }
    *tx_out = tx;
    std::span<const double> view(llrs, GolayCodec::kBlockLength);
    switch (cfg.scheme) {
        case GolayScheme::k1:
        case GolayScheme::k2:
        case GolayScheme::k3: {
            int k = cfg.scheme == GolayScheme::k1 ? 1 : (cfg.scheme == GolayScheme::k2 ? 2 : 3);
            auto cands = codec.scl_decode_kernel(k, view, cfg.list_size);
            return static_cast<std::uint32_t>(cands.front().codeword.to_mask());
        }
        case GolayScheme::parallel:
            return static_cast<std::uint32_t>(
                codec.parallel_decode(view, cfg.list_size).codeword.to_mask());
        case GolayScheme::ml:
            return static_cast<std::uint32_t>(codec.ml_decode(view).codeword.to_mask());
    }
    throw std::logic_error("golay_trial: unknown scheme");
}

}  // namespace

std::vector<SimRecord> run_golay_sim(const GolayCodec& codec, const GolaySimConfig& cfg) {
    if (cfg.trials < 1)
        throw std::invalid_argument("run_golay_sim: trials must be >= 1");
    if (cfg.list_size < 1 && cfg.scheme != GolayScheme::ml)
        throw std::invalid_argument("run_golay_sim: list size must be >= 1");
    std::vector<SimRecord> records;
    for (double snr : cfg.snr_points_db) {
        ChannelConfig ch = cfg.esn0 ? bpsk_channel_esn0(snr) : bpsk_channel_ebn0(snr, 0.5);
        auto start = std::chrono::steady_clock::now();
        std::uint64_t errors = count_errors_parallel(
            cfg.trials, cfg.threads, [&](std::uint64_t trial) {
                std::uint32_t tx = 0;
                std::uint32_t decoded = golay_trial(codec, cfg, ch.sigma, trial, &tx);
                return decoded != tx;
            });
        auto stop = std::chrono::steady_clock::now();
        SimRecord rec;
        rec.scheme = to_string(cfg.scheme);
        rec.list = cfg.scheme == GolayScheme::ml ? "-" : std::to_string(cfg.list_size);
        rec.snr_db = snr;
        rec.sigma = ch.sigma;
        rec.trials = cfg.trials;
        rec.block_errors = errors;
        rec.bler = static_cast<double>(errors) / static_cast<double>(cfg.trials);
        rec.seed = cfg.seed;
        rec.elapsed_ms =
            std::chrono::duration<double, std::milli>(stop - start).count();
        if (cfg.with_ci) rec.ci = wilson_interval(errors, cfg.trials, 1.959963984540054);
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<SimRecord> run_lattice_sim(const LatticeDecoder& decoder,
                                       const LatticeSimConfig& cfg) {
    if (cfg.trials < 1)
        throw std::invalid_argument("run_lattice_sim: trials must be >= 1");
    constexpr std::size_t dim = 24;
    const LatticeBasis& basis = decoder.basis(
        cfg.scheme == LatticeScheme::h24 ? LatticeName::H24 : LatticeName::RLeech24);

    std::vector<SimRecord> records;
    for (double snr : cfg.snr_points_db) {
        ChannelConfig ch = lattice_channel(snr);
        auto start = std::chrono::steady_clock::now();
        std::uint64_t errors = count_errors_parallel(
            cfg.trials, cfg.threads, [&](std::uint64_t trial) {
                TrialStream stream(cfg.seed, trial);
                std::vector<std::int64_t> point(dim, 0);
                if (cfg.random_tx) {
                    // coefficients uniform in [-4, 4] against the basis rows
                    std::int64_t coeff[dim];
                    for (std::size_t i = 0; i < dim; ++i)
                        coeff[i] = static_cast<std::int64_t>(stream.uniform_int(9)) - 4;
                    for (std::size_t i = 0; i < dim; ++i)
                        for (std::size_t c = 1; c <= dim; ++c)
                            point[c - 1] += coeff[i] * basis.G.at(i + 1, c);
                }
                double y[dim];
                for (std::size_t i = 0; i < dim; ++i)
                    y[i] = static_cast<double>(point[i]) + ch.sigma * stream.normal();
                std::span<const double> view(y, dim);
                LatticeDecodeResult res;
                switch (cfg.scheme) {
                    case LatticeScheme::h24:
                        res = decoder.decode_h24(view, ch.sigma, cfg.list_size);
                        break;
                    case LatticeScheme::leech:
                        res = decoder.decode_leech(view, ch.sigma, cfg.list_size);
                        break;
                    case LatticeScheme::leech_levellist:
                        res = decoder.decode_leech_levellist(view, ch.sigma, cfg.l1, cfg.l2);
                        break;
                }
                return res.point != point;
            });
        auto stop = std::chrono::steady_clock::now();
        SimRecord rec;
        rec.scheme = to_string(cfg.scheme);
        rec.list = cfg.scheme == LatticeScheme::leech_levellist
                       ? std::to_string(cfg.l1) + "x" + std::to_string(cfg.l2)
                       : std::to_string(cfg.list_size);
        rec.snr_db = snr;
        rec.sigma = ch.sigma;
        rec.trials = cfg.trials;
        rec.block_errors = errors;
        rec.bler = static_cast<double>(errors) / static_cast<double>(cfg.trials);
        rec.seed = cfg.seed;
        rec.elapsed_ms =
            std::chrono::duration<double, std::milli>(stop - start).count();
        if (cfg.with_ci) rec.ci = wilson_interval(errors, cfg.trials, 1.959963984540054);
        records.push_back(std::move(rec));
    }
    return records;
}

std::string csv_row(const SimRecord& r, bool with_ci) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%s,%s,%.6g,%.9g,%llu,%llu,%.6e,%llu,%.3f",
                  r.scheme.c_str(), r.list.c_str(), r.snr_db, r.sigma,
                  static_cast<unsigned long long>(r.trials),
                  static_cast<unsigned long long>(r.block_errors), r.bler,
                  static_cast<unsigned long long>(r.seed), r.elapsed_ms);
    std::string row(buf);
    if (with_ci) {
        WilsonInterval ci = r.ci.value_or(WilsonInterval{});
        std::snprintf(buf, sizeof(buf), ",%.6e,%.6e", ci.lo, ci.hi);
        row += buf;
    }
    return row;
}

void write_csv(std::ostream& os, const std::vector<SimRecord>& records,
               const CsvOptions& opts) {
    for (const auto& c : opts.comments) os << "# " << c << '\n';
    os << "scheme,list,snr_db,sigma,trials,block_errors,bler,seed,elapsed_ms";
    if (opts.with_ci) os << ",wilson_lo,wilson_hi";
    os << '\n';
    for (const auto& r : records) os << csv_row(r, opts.with_ci) << '\n';
}

}  // namespace golay24
