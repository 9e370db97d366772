#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <regex>
#include <sstream>

#include "golay24/sim.hpp"
#include "golay24/verify.hpp"

using namespace golay24;

namespace {

std::shared_ptr<const GolayCodec> shared_codec() {
    static auto codec = std::make_shared<const GolayCodec>();
    return codec;
}

const LatticeDecoder& shared_decoder() {
    static LatticeDecoder decoder(shared_codec());
    return decoder;
}

// the CSV body with the elapsed_ms field blanked; wall-clock timing is the
// one per-row field that cannot replay
std::string stable_body(const std::vector<SimRecord>& records, bool ci) {
    std::string out;
    for (const auto& r : records) {
        SimRecord copy = r;
        copy.elapsed_ms = 0.0;
        out += csv_row(copy, ci) + "\n";
    }
    return out;
}

}  // namespace

TEST_CASE("wilson intervals") {
    auto iv = wilson_interval(0, 100, 1.96);
    CHECK(iv.lo == 0.0);
    CHECK(iv.hi > 0.0);
    CHECK(iv.hi < 0.05);

    auto iv2 = wilson_interval(10, 100, 1.96);
    CHECK(iv2.lo > 0.04);
    CHECK(iv2.hi < 0.20);
    CHECK(iv2.lo < 0.10);
    CHECK(iv2.hi > 0.10);

    CHECK(intervals_overlap(iv, iv2) == (iv.hi >= iv2.lo));
    CHECK_THROWS_AS(wilson_interval(1, 0, 1.96), std::invalid_argument);
}

TEST_CASE("golay sim reproducibility and worker independence") {
    GolaySimConfig cfg;
    cfg.scheme = GolayScheme::parallel;
    cfg.list_size = 2;
    cfg.snr_points_db = {2.0};
    cfg.trials = 4000;
    cfg.seed = 77;
    cfg.threads = 1;
    auto a = run_golay_sim(*shared_codec(), cfg);
    cfg.threads = 2;
    auto b = run_golay_sim(*shared_codec(), cfg);
    cfg.threads = 3;
    auto c = run_golay_sim(*shared_codec(), cfg);
    REQUIRE(a.size() == 1);
    CHECK(a[0].block_errors == b[0].block_errors);
    CHECK(a[0].block_errors == c[0].block_errors);
    CHECK(stable_body(a, false) == stable_body(b, false));

    cfg.seed = 78;
    auto d = run_golay_sim(*shared_codec(), cfg);
    CHECK(a[0].block_errors != d[0].block_errors);  // different seed, different draw
}

TEST_CASE("random-tx and all-zero transmission agree statistically") {
    GolaySimConfig cfg;
    cfg.scheme = GolayScheme::k1;
    cfg.list_size = 4;
    cfg.snr_points_db = {2.0};
    cfg.trials = 20000;
    cfg.seed = 11;
    auto zero = run_golay_sim(*shared_codec(), cfg);
    cfg.random_tx = true;
    auto rnd = run_golay_sim(*shared_codec(), cfg);
    auto iz = wilson_interval(zero[0].block_errors, zero[0].trials, 3.0);
    auto ir = wilson_interval(rnd[0].block_errors, rnd[0].trials, 3.0);
    CHECK(intervals_overlap(iz, ir));
}

TEST_CASE("bler is monotone in snr within statistical error") {
    GolaySimConfig cfg;
    cfg.scheme = GolayScheme::parallel;
    cfg.list_size = 4;
    cfg.snr_points_db = {1.0, 4.0};
    cfg.trials = 20000;
    cfg.seed = 5;
    auto rec = run_golay_sim(*shared_codec(), cfg);
    REQUIRE(rec.size() == 2);
    auto lo = wilson_interval(rec[1].block_errors, rec[1].trials, 3.0);
    auto hi = wilson_interval(rec[0].block_errors, rec[0].trials, 3.0);
    CHECK(hi.hi > lo.lo);  // BLER(1 dB) not significantly below BLER(4 dB)
    CHECK(rec[0].bler >= rec[1].bler);
}

TEST_CASE("lattice sim runs and is error free in the round-trip regime") {
    LatticeSimConfig cfg;
    cfg.scheme = LatticeScheme::h24;
    cfg.list_size = 2;
    cfg.snr_points_db = {26.0};  // sigma = 0.05
    cfg.trials = 300;
    cfg.seed = 3;
    auto rec = run_lattice_sim(shared_decoder(), cfg);
    REQUIRE(rec.size() == 1);
    CHECK(rec[0].block_errors == 0);
    CHECK(rec[0].sigma == doctest::Approx(0.05).epsilon(0.01));

    cfg.scheme = LatticeScheme::leech_levellist;
    cfg.l1 = 2;
    cfg.l2 = 4;
    cfg.random_tx = true;
    auto rec2 = run_lattice_sim(shared_decoder(), cfg);
    CHECK(rec2[0].block_errors == 0);
    CHECK(rec2[0].list == "2x4");
    CHECK(rec2[0].scheme == "leech-levellist");
}

TEST_CASE("csv format") {
    SimRecord r;
    r.scheme = "parallel";
    r.list = "8";
    r.snr_db = 3.5;
    r.sigma = 0.668343917;
    r.trials = 1000;
    r.block_errors = 12;
    r.bler = 0.012;
    r.seed = 42;
    r.elapsed_ms = 123.456;
    r.ci = WilsonInterval{0.01, 0.02};

    std::ostringstream os;
    write_csv(os, {r}, {{"flags line", "convention line"}, true});
    std::string text = os.str();
    CHECK(text.find("# flags line\n") != std::string::npos);
    CHECK(text.find("scheme,list,snr_db,sigma,trials,block_errors,bler,seed,elapsed_ms,"
                    "wilson_lo,wilson_hi\n") != std::string::npos);
    CHECK(text.find("parallel,8,3.5,0.668343917,1000,12,1.200000e-02,42,123.456,") !=
          std::string::npos);

    // deterministic row formatting
    CHECK(csv_row(r, false) == csv_row(r, false));
}

TEST_CASE("scheme parsing") {
    CHECK(golay_scheme_from_string("k2") == GolayScheme::k2);
    CHECK(golay_scheme_from_string("ml") == GolayScheme::ml);
    CHECK_FALSE(golay_scheme_from_string("bogus").has_value());
    CHECK(to_string(LatticeScheme::leech_levellist) == "leech-levellist");
}

TEST_CASE("usage errors") {
    GolaySimConfig cfg;
    cfg.trials = 0;
    CHECK_THROWS_AS(run_golay_sim(*shared_codec(), cfg), std::invalid_argument);
    LatticeSimConfig lcfg;
    lcfg.trials = 0;
    CHECK_THROWS_AS(run_lattice_sim(shared_decoder(), lcfg), std::invalid_argument);
}

TEST_CASE("golay tables carry the pinned lines") {
    std::string text = golay_tables_text();
    CHECK(text.find("A1: {4,6,7,8,12,14,15,16,18,19,20,24}") != std::string::npos);
    CHECK(text.find("A2: {2,3,4,8,12,14,15,16,20,22,23,24}") != std::string::npos);
    CHECK(text.find("A3: {4,6,7,8,12,14,15,16,18,19,20,24}") != std::string::npos);

    // the 8x8 carrier transform, row for row
    const std::string t8 =
        "T8:\n"
        "1 0 0 0 0 0 0 0\n"
        "0 1 1 0 0 0 1 0\n"
        "0 0 1 1 0 1 0 0\n"
        "0 0 0 1 1 0 0 0\n"
        "0 0 0 0 1 0 0 0\n"
        "0 0 0 0 0 1 0 0\n"
        "0 0 0 0 0 0 1 0\n"
        "0 0 0 0 0 0 0 1\n";
    CHECK(text.find(t8) != std::string::npos);

    CHECK(text.find("G8:\n1 1 1 1 0 0 0 0\n") != std::string::npos);
    CHECK(text.find("G8p:\n0 1 1 1 1 0 0 0\n") != std::string::npos);
    CHECK(text.find("F3(1):\n1 1 0\n1 0 1\n1 1 1\n") != std::string::npos);
}

TEST_CASE("lattice tables carry the representative row") {
    std::string text = lattice_tables_text(shared_decoder());
    CHECK(text.find("r0: -3 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1\n") !=
          std::string::npos);
    CHECK(text.find("H24 basis:\n") != std::string::npos);
    CHECK(text.find("RLeech24 basis:\n") != std::string::npos);
    CHECK(text.find("golay_gen:\n1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1\n") !=
          std::string::npos);
}

TEST_CASE("count_errors_parallel is scheduling independent") {
    auto flaky = [](std::uint64_t t) { return (t * 2654435761u) % 7 == 0; };
    auto a = count_errors_parallel(100000, 1, flaky);
    auto b = count_errors_parallel(100000, 2, flaky);
    auto c = count_errors_parallel(100000, 5, flaky);
    CHECK(a == b);
    CHECK(a == c);
}
