// Command-line front end: construction dumps, the verification suite, BLER
// sweeps for the Golay code and the two lattices, and one-shot
// encode/decode. Exit codes: 0 success, 1 verification or usage failure,
// 2 I/O failure.

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "golay24/channel.hpp"
#include "golay24/golay.hpp"
#include "golay24/lattice.hpp"
#include "golay24/sim.hpp"
#include "golay24/verify.hpp"

namespace {

using namespace golay24;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("GOLAY24_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            std::cerr << "warning: ignoring malformed GOLAY24_SEED\n";
        }
    }
    return 1;
}

// "a", "a:b:step" or "a,b,c"
std::vector<double> parse_snr_grid(const std::string& text) {
    std::vector<double> points;
    if (text.find(':') != std::string::npos) {
        double a, b, step;
        char c1, c2;
        std::istringstream is(text);
        if (!(is >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0)
            throw CLI::ValidationError("--snr", "expected a:b:step with step > 0");
        for (double v = a; v <= b + 1e-9; v += step) points.push_back(v);
    } else {
        std::istringstream is(text);
        std::string tok;
        while (std::getline(is, tok, ',')) points.push_back(std::stod(tok));
    }
    if (points.empty())
        throw CLI::ValidationError("--snr", "empty grid");
    return points;
}

int emit_csv(const std::string& out, const std::vector<SimRecord>& records,
             const CsvOptions& opts) {
    if (out == "-") {
        write_csv(std::cout, records, opts);
        return std::cout ? 0 : 2;
    }
    std::ofstream os(out);
    if (!os) {
        std::cerr << "error: cannot open " << out << " for writing\n";
        return 2;
    }
    write_csv(os, records, opts);
    return os ? 0 : 2;
}

std::string timestamp_comment() {
    std::time_t now = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return std::string("generated: ") + buf;
}

std::vector<double> read_llrs(const std::string& inline_llrs, const std::string& path) {
    std::vector<double> llrs;
    auto parse_stream = [&](std::istream& is) {
        double v;
        while (is >> v) llrs.push_back(v);
    };
    if (!inline_llrs.empty()) {
        std::istringstream is(inline_llrs);
        parse_stream(is);
    } else if (path == "-") {
        parse_stream(std::cin);
    } else {
        std::ifstream is(path);
        if (!is) throw std::runtime_error("cannot open " + path);
        parse_stream(is);
    }
    if (llrs.size() != GolayCodec::kBlockLength)
        throw std::runtime_error("expected 24 LLR values, got " +
                                 std::to_string(llrs.size()));
    return llrs;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"(24,12,8) Golay code as three pre-transformed polar codes, with "
                 "multilevel decoding of the H24 and scaled Leech lattices"};
    app.require_subcommand(1);

    // verify ---------------------------------------------------------------
    auto* verify_cmd = app.add_subcommand("verify", "run the full self-check suite");
    unsigned verify_threads = 0;
    verify_cmd->add_option("--threads", verify_threads, "worker threads (0 = auto)");

    // tables ---------------------------------------------------------------
    auto* tables_cmd = app.add_subcommand("tables", "dump construction matrices");
    std::string what = "all";
    tables_cmd->add_option("--what", what, "golay | lattice | all")
        ->check(CLI::IsMember({"golay", "lattice", "all"}));

    // sim-golay ------------------------------------------------------------
    auto* sg = app.add_subcommand("sim-golay", "BLER sweep for the Golay decoders");
    std::string sg_scheme = "parallel", sg_snr = "3.0", sg_out = "-", sg_snr_type = "ebn0";
    GolaySimConfig gcfg;
    sg->add_option("--scheme", sg_scheme, "k1 | k2 | k3 | parallel | ml")
        ->check(CLI::IsMember({"k1", "k2", "k3", "parallel", "ml"}));
    sg->add_option("--list", gcfg.list_size, "SCL list size")->check(CLI::PositiveNumber);
    sg->add_option("--snr", sg_snr, "SNR grid: a | a:b:step | a,b,c (dB)");
    sg->add_option("--trials", gcfg.trials, "Monte-Carlo trials per point")
        ->check(CLI::PositiveNumber);
    sg->add_option("--seed", gcfg.seed, "master seed (default from GOLAY24_SEED)");
    sg->add_option("--out", sg_out, "output CSV path, - for stdout");
    sg->add_option("--threads", gcfg.threads, "worker threads (0 = auto)");
    sg->add_flag("--ci", gcfg.with_ci, "append 95% Wilson interval columns");
    sg->add_flag("--random-tx", gcfg.random_tx,
                 "draw random codewords instead of the all-zero word");
    sg->add_option("--snr-type", sg_snr_type, "ebn0 | esn0 (x-axis convention)")
        ->check(CLI::IsMember({"ebn0", "esn0"}));

    // sim-lattice ------------------------------------------------------------
    auto* sl = app.add_subcommand("sim-lattice", "BLER sweep for the lattice decoders");
    std::string sl_lattice = "leech", sl_snr = "6.0", sl_out = "-", sl_levellist;
    LatticeSimConfig lcfg;
    sl->add_option("--lattice", sl_lattice, "h24 | leech")
        ->check(CLI::IsMember({"h24", "leech"}));
    sl->add_option("--list", lcfg.list_size, "Golay-stage list size")
        ->check(CLI::PositiveNumber);
    sl->add_option("--level-list", sl_levellist,
                   "L1xL2 level list (leech only), e.g. 2x16");
    sl->add_option("--snr", sl_snr, "SNR grid, 10*log10(1/sigma^2) dB");
    sl->add_option("--trials", lcfg.trials, "Monte-Carlo trials per point")
        ->check(CLI::PositiveNumber);
    sl->add_option("--seed", lcfg.seed, "master seed (default from GOLAY24_SEED)");
    sl->add_option("--out", sl_out, "output CSV path, - for stdout");
    sl->add_option("--threads", lcfg.threads, "worker threads (0 = auto)");
    sl->add_flag("--ci", lcfg.with_ci, "append 95% Wilson interval columns");
    sl->add_flag("--random-tx", lcfg.random_tx,
                 "draw random lattice points (coefficients in [-4,4]) instead of 0");

    // encode ------------------------------------------------------------------
    auto* enc = app.add_subcommand("encode", "encode 12 message bits");
    int enc_kernel = 1;
    std::string enc_msg;
    enc->add_option("--kernel", enc_kernel, "construction kernel (1..3)")
        ->check(CLI::Range(1, 3));
    enc->add_option("--msg", enc_msg, "12 bits, e.g. 101100111000")->required();

    // decode ------------------------------------------------------------------
    auto* dec = app.add_subcommand("decode", "decode 24 channel LLRs");
    std::string dec_scheme = "parallel", dec_llrs, dec_in;
    std::size_t dec_list = 8;
    dec->add_option("--scheme", dec_scheme, "k1 | k2 | k3 | parallel | ml")
        ->check(CLI::IsMember({"k1", "k2", "k3", "parallel", "ml"}));
    dec->add_option("--list", dec_list, "SCL list size")->check(CLI::PositiveNumber);
    dec->add_option("--llrs", dec_llrs, "24 LLR values inline");
    dec->add_option("--in", dec_in, "file with 24 LLR values, - for stdin");

    gcfg.seed = default_seed();
    lcfg.seed = default_seed();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*verify_cmd) {
            auto codec = std::make_shared<GolayCodec>();
            LatticeDecoder decoder(codec);
            Report rep = run_verification(*codec, decoder, verify_threads);
            std::cout << rep.to_text();
            std::cout << (rep.all_pass() ? "all checks passed\n" : "CHECKS FAILED\n");
            return rep.all_pass() ? 0 : 1;
        }

        if (*tables_cmd) {
            if (what == "golay" || what == "all") std::cout << golay_tables_text();
            if (what == "lattice" || what == "all") {
                auto codec = std::make_shared<GolayCodec>();
                LatticeDecoder decoder(codec);
                std::cout << lattice_tables_text(decoder);
            }
            return 0;
        }

        if (*sg) {
            gcfg.scheme = *golay_scheme_from_string(sg_scheme);
            gcfg.esn0 = sg_snr_type == "esn0";
            gcfg.snr_points_db = parse_snr_grid(sg_snr);
            GolayCodec codec;
            auto records = run_golay_sim(codec, gcfg);
            CsvOptions opts;
            opts.with_ci = gcfg.with_ci;
            std::ostringstream flags;
            flags << "sim-golay --scheme " << sg_scheme << " --list " << gcfg.list_size
                  << " --snr " << sg_snr << " --trials " << gcfg.trials << " --seed "
                  << gcfg.seed << (gcfg.random_tx ? " --random-tx" : "")
                  << " --snr-type " << sg_snr_type;
            opts.comments.push_back(flags.str());
            opts.comments.push_back(
                gcfg.esn0 ? "convention: Es/N0 (dB), sigma^2 = 1/(2*10^(EsN0/10))"
                          : "convention: Eb/N0 (dB), sigma^2 = 1/(2*R*10^(EbN0/10)), R = 1/2");
            opts.comments.push_back(timestamp_comment());
            return emit_csv(sg_out, records, opts);
        }

        if (*sl) {
            lcfg.scheme =
                sl_lattice == "h24" ? LatticeScheme::h24 : LatticeScheme::leech;
            if (!sl_levellist.empty()) {
                if (sl_lattice != "leech")
                    throw CLI::ValidationError("--level-list", "only supported for leech");
                int l1 = 0;
                std::size_t l2 = 0;
                char x;
                std::istringstream is(sl_levellist);
                if (!(is >> l1 >> x >> l2) || x != 'x' || (l1 != 1 && l1 != 2) || l2 < 1)
                    throw CLI::ValidationError("--level-list",
                                               "expected L1xL2 with L1 in {1,2}");
                lcfg.scheme = LatticeScheme::leech_levellist;
                lcfg.l1 = l1;
                lcfg.l2 = l2;
            }
            lcfg.snr_points_db = parse_snr_grid(sl_snr);
            auto codec = std::make_shared<GolayCodec>();
            LatticeDecoder decoder(codec);
            auto records = run_lattice_sim(decoder, lcfg);
            CsvOptions opts;
            opts.with_ci = lcfg.with_ci;
            std::ostringstream flags;
            flags << "sim-lattice --lattice " << sl_lattice;
            if (lcfg.scheme == LatticeScheme::leech_levellist)
                flags << " --level-list " << lcfg.l1 << "x" << lcfg.l2;
            else
                flags << " --list " << lcfg.list_size;
            flags << " --snr " << sl_snr << " --trials " << lcfg.trials << " --seed "
                  << lcfg.seed << (lcfg.random_tx ? " --random-tx" : "");
            opts.comments.push_back(flags.str());
            opts.comments.push_back("convention: SNR = 10*log10(1/sigma^2) dB");
            opts.comments.push_back(timestamp_comment());
            return emit_csv(sl_out, records, opts);
        }

        if (*enc) {
            BitVector msg = BitVector::from_string(enc_msg);
            if (msg.size() != GolayCodec::kMessageLength)
                throw std::runtime_error("expected 12 message bits");
            CodeConstruction c = build_construction(enc_kernel);
            std::cout << "codeword: " << golay_encode(c, msg).to_string() << "\n";
            return 0;
        }

        if (*dec) {
            auto llrs = read_llrs(dec_llrs, dec_in.empty() ? "-" : dec_in);
            GolayCodec codec;
            BitVector codeword, message;
            if (dec_scheme == "ml") {
                auto res = codec.ml_decode(llrs);
                codeword = res.codeword;
                message = res.message;
            } else if (dec_scheme == "parallel") {
                auto res = codec.parallel_decode(llrs, dec_list);
                codeword = res.codeword;
                message = res.message;
            } else {
                int k = dec_scheme == "k1" ? 1 : (dec_scheme == "k2" ? 2 : 3);
                auto cands = codec.scl_decode_kernel(k, llrs, dec_list);
                codeword = cands.front().codeword;
                message = codec.canonical_message(codeword);
            }
            std::cout << "codeword: " << codeword.to_string() << "\n";
            std::cout << "message: " << message.to_string() << "\n";
            std::cout << "correlation: "
                      << correlation(static_cast<std::uint32_t>(codeword.to_mask()), llrs)
                      << "\n";
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
