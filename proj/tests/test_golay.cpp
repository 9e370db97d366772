#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <set>

#include "golay24/channel.hpp"
#include "golay24/golay.hpp"
#include "golay24/pac.hpp"

using namespace golay24;

namespace {

std::vector<double> noiseless_llrs(std::uint32_t mask, double mag = 50.0) {
    std::vector<double> llrs(24);
    for (int i = 0; i < 24; ++i) llrs[i] = (mask & (1u << i)) ? -mag : mag;
    return llrs;
}

}  // namespace

TEST_CASE("components match the pinned matrices") {
    GolayComponents c = build_components();
    CHECK(c.G8 == BitMatrix::from_rows(
                      {"11110000", "11001100", "10101010", "11111111"}));
    CHECK(c.G8p == BitMatrix::from_rows(
                       {"01111000", "10011100", "11001010", "11111111"}));
    CHECK(c.T8 == BitMatrix::from_rows({"10000000", "01100010", "00110100", "00011000",
                                        "00001000", "00000100", "00000010", "00000001"}));
    CHECK(c.S == BitMatrix::from_rows({"101", "011"}));
    CHECK(c.R == BitMatrix::from_rows({"111"}));
    CHECK(c.T8.is_upper_triangular_unit_diagonal());

    // Ghat block rows: [G8 0 G8], [0 G8 G8], [G8p G8p G8p]
    REQUIRE(c.Ghat.rows() == 12);
    for (std::size_t col = 1; col <= 8; ++col) {
        CHECK(c.Ghat.at(1, col) == c.G8.at(1, col));
        CHECK(c.Ghat.at(1, 8 + col) == 0);
        CHECK(c.Ghat.at(1, 16 + col) == c.G8.at(1, col));
        CHECK(c.Ghat.at(9, col) == c.G8p.at(1, col));
        CHECK(c.Ghat.at(9, 8 + col) == c.G8p.at(1, col));
        CHECK(c.Ghat.at(9, 16 + col) == c.G8p.at(1, col));
    }
}

TEST_CASE("weight-4 words of G8 and G8p are distinct") {
    GolayComponents c = build_components();
    auto words_a = enumerate_codebook(c.G8);
    auto words_b = enumerate_codebook(c.G8p);
    std::set<std::uint32_t> w4a, w4b;
    for (auto w : words_a)
        if (std::popcount(w) == 4) w4a.insert(w);
    for (auto w : words_b)
        if (std::popcount(w) == 4) w4b.insert(w);
    CHECK(w4a.size() == 14);
    CHECK(w4b.size() == 14);
    for (auto w : w4a) CHECK(w4b.count(w) == 0);
}

TEST_CASE("codebook statistics") {
    GolayCodec codec;
    const auto& book = codec.codebook();
    REQUIRE(book.size() == 4096);
    auto dist = weight_distribution(book);
    CHECK(dist.at(0) == 1);
    CHECK(dist.at(8) == 759);
    CHECK(dist.at(12) == 2576);
    CHECK(dist.at(16) == 759);
    CHECK(dist.at(24) == 1);
    CHECK(dist.size() == 5);
}

TEST_CASE("constructions match the pinned kernels, info sets and transforms") {
    auto c1 = build_construction(1);
    auto c2 = build_construction(2);
    auto c3 = build_construction(3);

    CHECK(c1.F3 == BitMatrix::from_rows({"110", "101", "111"}));
    CHECK(c2.F3 == BitMatrix::from_rows({"100", "110", "011"}));
    CHECK(c3.F3 == BitMatrix::from_rows({"100", "110", "111"}));

    std::vector<std::size_t> a1 = {4, 6, 7, 8, 12, 14, 15, 16, 18, 19, 20, 24};
    std::vector<std::size_t> a2 = {2, 3, 4, 8, 12, 14, 15, 16, 20, 22, 23, 24};
    CHECK(c1.info_set == a1);
    CHECK(c2.info_set == a2);
    CHECK(c3.info_set == a1);

    for (const auto* c : {&c1, &c2, &c3}) {
        CHECK(c->T24.is_upper_triangular_unit_diagonal());
        CHECK(c->G24p == kron(c->F3, polar_matrix(3)));
    }

    // T3 has an I8 block in its upper-right corner
    for (std::size_t r = 1; r <= 8; ++r)
        for (std::size_t cidx = 1; cidx <= 8; ++cidx)
            CHECK(c3.T24.at(r, 16 + cidx) == (r == cidx ? 1 : 0));

    // T2 carries the banded transform in blocks (1,1) and (1,3)
    GolayComponents comp = build_components();
    for (std::size_t r = 1; r <= 8; ++r)
        for (std::size_t cidx = 1; cidx <= 8; ++cidx) {
            CHECK(c2.T24.at(r, cidx) == comp.T8.at(r, cidx));
            CHECK(c2.T24.at(r, 16 + cidx) == comp.T8.at(r, cidx));
        }

    // lhs generators: kernel 1 rows 1-4 are [G8 G8 0]
    for (std::size_t col = 1; col <= 8; ++col) {
        CHECK(c1.lhs_gen.at(1, col) == comp.G8.at(1, col));
        CHECK(c1.lhs_gen.at(1, 8 + col) == comp.G8.at(1, col));
        CHECK(c1.lhs_gen.at(1, 16 + col) == 0);
        CHECK(c2.lhs_gen.at(1, col) == comp.G8p.at(1, col));
        CHECK(c3.lhs_gen.at(1, col) == 0);
    }

    CHECK_THROWS_AS(build_construction(0), std::invalid_argument);
    CHECK_THROWS_AS(build_construction(4), std::invalid_argument);
}

TEST_CASE("kernel identities hold and the checker catches corruption") {
    for (int k = 1; k <= 3; ++k) {
        Report rep = verify_kernel_identity(build_construction(k));
        CHECK(rep.all_pass());
    }

    auto broken = build_construction(1);
    broken.T24.set(18, 19, broken.T24.at(18, 19) ^ 1);  // flip inside the T8 block
    Report rep = verify_kernel_identity(broken);
    CHECK_FALSE(rep.all_pass());
    bool has_detail = false;
    for (const auto& c : rep.checks)
        if (!c.pass && !c.detail.empty()) has_detail = true;
    CHECK(has_detail);
}

TEST_CASE("block permutation invariance") {
    Report rep = verify_block_permutation_invariance();
    CHECK(rep.all_pass());
    CHECK(rep.checks.size() == 7);  // six orders plus the message-map check
}

TEST_CASE("golay_encode examples") {
    auto c1 = build_construction(1);
    CHECK(golay_encode(c1, BitVector(12)).to_mask() == 0);

    // last info position (index 24) carries the all-ones word
    BitVector m_last(12);
    m_last.set(12, 1);
    CHECK(golay_encode(c1, m_last).to_string() == std::string(24, '1'));

    // first info position (index 4) carries [f4, f4, 0]
    BitVector m_first(12);
    m_first.set(1, 1);
    CHECK(golay_encode(c1, m_first).to_string() == "111100001111000000000000");
}

TEST_CASE("ml_decode") {
    GolayCodec codec;
    std::uint32_t some = codec.codebook()[1234];
    auto res = codec.ml_decode(noiseless_llrs(some));
    CHECK(res.codeword.to_mask() == some);

    std::vector<double> zeros(24, 0.0);
    CHECK(codec.ml_decode(zeros).codeword.to_mask() == 0);

    // definitional: no codeword correlates strictly better
    for (std::uint64_t t = 0; t < 100; ++t) {
        TrialStream stream(555, t);
        double llrs[24];
        for (auto& v : llrs) v = bpsk_llr(1.0 + 0.6 * stream.normal(), 0.6);
        std::span<const double> view(llrs, 24);
        auto out = codec.ml_decode(view);
        double c0 = correlation(static_cast<std::uint32_t>(out.codeword.to_mask()), view);
        for (auto w : codec.codebook()) CHECK(c0 >= correlation(w, view) - 1e-12);
    }

    std::vector<double> bad(24, 1.0);
    bad[0] = std::nan("");
    CHECK_THROWS_AS(codec.ml_decode(bad), std::invalid_argument);
}

TEST_CASE("canonical message is a bijection over the codebook") {
    GolayCodec codec;
    std::set<std::uint32_t> msgs;
    for (auto w : codec.codebook())
        msgs.insert(static_cast<std::uint32_t>(codec.canonical_message(w).to_mask()));
    CHECK(msgs.size() == 4096);
}

TEST_CASE("single-kernel decoders recover noiseless codewords and re-encode") {
    GolayCodec codec;
    for (int k = 1; k <= 3; ++k) {
        const auto& con = codec.construction(k);
        for (std::uint32_t m : {0u, 1u, 77u, 4095u}) {
            std::uint32_t cw = static_cast<std::uint32_t>(
                golay_encode(con, BitVector::from_mask(m, 12)).to_mask());
            auto cands = codec.scl_decode_kernel(k, noiseless_llrs(cw), 2);
            CHECK(cands.front().codeword.to_mask() == cw);
        }
    }

    // re-encoding consistency on noisy inputs, all kernels, all candidates
    for (std::uint64_t t = 0; t < 50; ++t) {
        TrialStream stream(808, t);
        double llrs[24];
        for (auto& v : llrs) v = bpsk_llr(1.0 + 0.7 * stream.normal(), 0.7);
        std::span<const double> view(llrs, 24);
        for (int k = 1; k <= 3; ++k) {
            const auto& con = codec.construction(k);
            for (const auto& cand : codec.scl_decode_kernel(k, view, 8)) {
                BitVector expect =
                    gf2_vecmat(gf2_vecmat(cand.v, con.T24), con.G24p);
                CHECK(cand.codeword == expect);
            }
        }
    }
}

TEST_CASE("parallel_decode") {
    GolayCodec codec;
    std::uint32_t some = codec.codebook()[4000];
    for (std::size_t L : {1, 2, 8}) {
        auto res = codec.parallel_decode(noiseless_llrs(some), L);
        CHECK(res.codeword.to_mask() == some);
    }

    // with the full list each kernel covers the codebook, so the winner is ML
    for (std::uint64_t t = 0; t < 20; ++t) {
        TrialStream stream(909, t);
        double llrs[24];
        for (auto& v : llrs) v = bpsk_llr(1.0 + 0.8 * stream.normal(), 0.8);
        std::span<const double> view(llrs, 24);
        auto par = codec.parallel_decode(view, 4096);
        auto ml = codec.ml_decode(view);
        CHECK(correlation(static_cast<std::uint32_t>(par.codeword.to_mask()), view) ==
              doctest::Approx(
                  correlation(static_cast<std::uint32_t>(ml.codeword.to_mask()), view))
                  .epsilon(1e-12));
    }

    // diagnostics mark exactly one winner
    auto res = codec.parallel_decode(noiseless_llrs(some), 4);
    int selected = 0;
    for (const auto& d : res.diagnostics) selected += d.selected ? 1 : 0;
    CHECK(selected == 1);
}

TEST_CASE("selection errors are correlation-justified") {
    GolayCodec codec;
    const double sigma = 0.75;
    for (std::uint64_t t = 0; t < 400; ++t) {
        TrialStream stream(4242, t);
        std::uint32_t tx = 0;  // zero codeword, symmetric channel
        double llrs[24];
        for (int i = 0; i < 24; ++i)
            llrs[i] = bpsk_llr(1.0 + sigma * stream.normal(), sigma);
        std::span<const double> view(llrs, 24);
        auto pool = codec.parallel_decode_pool(view, 8);
        auto res = codec.parallel_decode(view, 8);
        std::uint32_t win = static_cast<std::uint32_t>(res.codeword.to_mask());
        // the winner dominates the pool
        for (const auto& c : pool) CHECK(correlation(win, view) >= c.correlation - 1e-12);
        // if the transmitted word surfaced and the decoder still errs, the
        // winner must beat it on correlation: the miss is a selection-free event
        bool tx_in_pool = false;
        for (const auto& c : pool) tx_in_pool |= c.codeword == tx;
        if (tx_in_pool && win != tx)
            CHECK(correlation(win, view) >= correlation(tx, view) - 1e-12);
    }
}

TEST_CASE("pool ranking is deduplicated and ordered") {
    GolayCodec codec;
    TrialStream stream(31, 0);
    double llrs[24];
    for (auto& v : llrs) v = bpsk_llr(1.0 + 0.9 * stream.normal(), 0.9);
    std::span<const double> view(llrs, 24);
    auto pool = codec.parallel_decode_pool(view, 8);
    REQUIRE(!pool.empty());
    std::set<std::uint32_t> seen;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        CHECK(seen.insert(pool[i].codeword).second);
        if (i) CHECK(pool[i - 1].correlation >= pool[i].correlation - 1e-12);
    }
}
