#include "golay24/verify.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <sstream>

#include "golay24/channel.hpp"
#include "golay24/llr.hpp"
#include "golay24/pac.hpp"
#include "golay24/sim.hpp"

namespace golay24 {

namespace {

constexpr std::size_t kDim = 24;

std::string set_text(const std::vector<std::size_t>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    out += "}";
    return out;
}

void check(Report& rep, const std::string& name, bool pass, std::string detail = "") {
    rep.checks.push_back({name, pass, std::move(detail)});
}

// weight-4 words of a 16-word (8,4) codebook
std::vector<std::uint32_t> weight4_words(const BitMatrix& gen) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t w : enumerate_codebook(gen))
        if (std::popcount(w) == 4) out.push_back(w);
    return out;
}

bool weight4_disjoint(const BitMatrix& a, const BitMatrix& b) {
    auto wa = weight4_words(a);
    auto wb = weight4_words(b);
    for (auto x : wa)
        for (auto y : wb)
            if (x == y) return false;
    return true;
}

// 101-term direct series for the coset log-ratio, the independent route
// against the windowed implementation.
double coset_llr_series(double y, double sigma) {
    double ybar = y - 2.0 * std::floor(y / 2.0);
    auto logf = [sigma](double t) {
        double mx = -1e300;
        for (int k = -50; k <= 50; ++k) {
            double d = t - 2.0 * k;
            mx = std::max(mx, -d * d / (2.0 * sigma * sigma));
        }
        double acc = 0.0;
        for (int k = -50; k <= 50; ++k) {
            double d = t - 2.0 * k;
            acc += std::exp(-d * d / (2.0 * sigma * sigma) - mx);
        }
        return mx + std::log(acc);
    };
    return logf(ybar) - logf(ybar - 1.0);
}

std::vector<std::int64_t> random_lattice_point(const LatticeBasis& basis,
                                               TrialStream& stream) {
    std::vector<std::int64_t> point(kDim, 0);
    for (std::size_t i = 0; i < kDim; ++i) {
        std::int64_t coeff = static_cast<std::int64_t>(stream.uniform_int(9)) - 4;
        for (std::size_t c = 1; c <= kDim; ++c)
            point[c - 1] += coeff * basis.G.at(i + 1, c);
    }
    return point;
}

struct RoundTripCount {
    std::uint64_t exact = 0;
    std::uint64_t total = 0;
    std::string text() const {
        return std::to_string(exact) + "/" + std::to_string(total) + " exact";
    }
};

}  // namespace

Report run_verification(const GolayCodec& codec, const LatticeDecoder& decoder,
                        unsigned threads, std::uint64_t seed) {
    Report rep;
    const GolayComponents& comp = codec.components();
    const BitMatrix f8 = polar_matrix(3);

    // --- generator structure -------------------------------------------------
    {
        const std::size_t expected_w[8] = {1, 2, 2, 4, 2, 4, 4, 8};
        bool ok = true;
        std::vector<std::size_t> heavy;
        for (std::size_t r = 1; r <= 8; ++r) {
            ok = ok && f8.row(r).weight() == expected_w[r - 1];
            if (f8.row(r).weight() >= 4) heavy.push_back(r);
        }
        ok = ok && heavy == std::vector<std::size_t>{4, 6, 7, 8};
        check(rep, "F8 row weights 1/2/2/4/2/4/4/8 with weight>=4 rows {4,6,7,8}", ok);
    }
    {
        std::vector<BitVector> sel;
        for (std::size_t r : {4, 6, 7, 8}) sel.push_back(f8.row(r));
        check(rep, "G8 equals rows {4,6,7,8} of F8", comp.G8 == BitMatrix::from_rows(sel));
    }
    {
        auto f = [&](std::size_t i) { return f8.row(i); };
        bool ok = comp.G8p.row(1) == (f(4) ^ f(5)) && comp.G8p.row(2) == (f(3) ^ f(4) ^ f(6)) &&
                  comp.G8p.row(3) == (f(2) ^ f(3) ^ f(7)) && comp.G8p.row(4) == f(8);
        check(rep, "G8' rows equal f4+f5, f3+f4+f6, f2+f3+f7, f8", ok);
    }
    {
        // earlier generator sets kept as static data: the permuted (8,4,4)
        // variants and the XOR relation tying them together
        BitMatrix g8p1 = BitMatrix::from_rows(
            {"01111000", "01001110", "11010100", "11111111"});
        BitMatrix g8p2 = BitMatrix::from_rows(
            {"01111000", "10011100", "01010110", "11111111"});
        check(rep, "g3' = g2(variant-2) xor g3(variant-2) = 11001010",
              comp.G8p.row(3) == (g8p2.row(2) ^ g8p2.row(3)) &&
                  comp.G8p.row(3).to_string() == "11001010");

        std::vector<std::size_t> pi1 = {2, 5, 4, 3, 6, 7, 1, 8};
        std::vector<std::size_t> pi2 = {4, 5, 2, 3, 6, 1, 7, 8};
        std::vector<std::size_t> pi3 = {5, 4, 2, 3, 1, 6, 7, 8};
        bool perm_ok = column_permute(g8p1, pi1) == comp.G8 &&
                       column_permute(g8p2, pi2) == comp.G8 &&
                       column_permute(comp.G8p, pi3) == comp.G8;
        check(rep, "column permutations map each primed generator back to G8", perm_ok);

        bool disjoint = weight4_disjoint(comp.G8, comp.G8p) &&
                        weight4_disjoint(comp.G8, g8p1) && weight4_disjoint(comp.G8, g8p2);
        check(rep, "weight-4 codewords of G8 and every primed variant are distinct",
              disjoint);
    }
    {
        BitMatrix tf8 = gf2_matmul(comp.T8, f8);
        std::vector<BitVector> sel;
        for (std::size_t r : {2, 3, 4, 8}) sel.push_back(tf8.row(r));
        bool span_ok = rref(BitMatrix::from_rows(sel)).matrix == rref(comp.G8p).matrix;
        bool row_ok = tf8.row(2) == comp.G8p.row(3);
        check(rep, "rows {2,3,4,8} of T8*F8 span G8' and row 2 equals 11001010",
              span_ok && row_ok, "info set " + set_text({2, 3, 4, 8}));
    }

    // --- kernel identities and permutation invariance ------------------------
    for (int k = 1; k <= 3; ++k) {
        Report sub = verify_kernel_identity(codec.construction(k));
        rep.checks.insert(rep.checks.end(), sub.checks.begin(), sub.checks.end());
    }
    {
        Report sub = verify_block_permutation_invariance();
        rep.checks.insert(rep.checks.end(), sub.checks.begin(), sub.checks.end());
    }

    // --- codebook statistics --------------------------------------------------
    {
        auto dist = weight_distribution(codec.codebook());
        bool ok = codec.codebook().size() == 4096 && dist.size() == 5 && dist[0] == 1 &&
                  dist[8] == 759 && dist[12] == 2576 && dist[16] == 759 && dist[24] == 1;
        std::string text;
        for (auto [w, n] : dist) text += (text.empty() ? "" : "/") + std::to_string(n);
        check(rep, "weight enumerator 1/759/2576/759/1", ok, "observed " + text);
        std::size_t dmin = 24;
        for (auto w : codec.codebook())
            if (w) dmin = std::min<std::size_t>(dmin, std::popcount(w));
        check(rep, "minimum distance 8", dmin == 8, "observed " + std::to_string(dmin));
    }

    // --- encoder round trips ---------------------------------------------------
    {
        bool ok = true;
        for (int k = 1; k <= 3 && ok; ++k) {
            const auto& c = codec.construction(k);
            for (std::uint32_t m = 0; m < 4096 && ok; ++m) {
                BitVector msg = BitVector::from_mask(m, 12);
                std::uint32_t cw =
                    static_cast<std::uint32_t>(golay_encode(c, msg).to_mask());
                double llrs[kDim];
                for (std::size_t i = 0; i < kDim; ++i)
                    llrs[i] = (cw & (1u << i)) ? -llr::kClamp : llr::kClamp;
                auto cands = codec.scl_decode_kernel(k, std::span<const double>(llrs, kDim), 1);
                ok = cands.front().codeword.to_mask() == cw;
            }
        }
        check(rep, "noiseless single-path decode recovers all 4096 messages, 3 kernels", ok);
    }

    // --- lattice structure -----------------------------------------------------
    const LatticeBasis& h24 = decoder.basis(LatticeName::H24);
    const LatticeBasis& leech = decoder.basis(LatticeName::RLeech24);
    check(rep, "det(H24) = 2^13", h24.det_abs == (std::int64_t{1} << 13),
          "observed " + std::to_string(h24.det_abs));
    check(rep, "det(RLeech24) = 2^36", leech.det_abs == (std::int64_t{1} << 36),
          "observed " + std::to_string(leech.det_abs));
    {
        bool ok = true;
        for (std::size_t r = 1; r <= kDim && ok; ++r)
            for (std::size_t c = 1; c <= kDim && ok; ++c) {
                std::int64_t dot = 0;
                for (std::size_t t = 1; t <= kDim; ++t)
                    dot += leech.G.at(r, t) * leech.G.at(c, t);
                ok = dot % 8 == 0;
            }
        check(rep, "RLeech24 Gram matrix is 0 mod 8", ok);
    }
    {
        std::int64_t n0 = 0;
        for (auto v : leech.rep_representative) n0 += v * v;
        check(rep, "rep representative (-3,1,...,1) has squared norm 32", n0 == 32);
        bool ok = true;
        for (std::size_t r = 1; r <= kDim; ++r) {
            std::int64_t nr = 0, nh = 0;
            for (std::size_t c = 1; c <= kDim; ++c) {
                nr += leech.G.at(r, c) * leech.G.at(r, c);
                nh += h24.G.at(r, c) * h24.G.at(r, c);
            }
            ok = ok && nr >= 32 && nh >= 8;
        }
        check(rep, "basis row norms: RLeech24 >= 32, H24 >= 8", ok);
    }
    {
        const NestedCodes& nc = decoder.codes();
        auto golay_book = enumerate_codebook(nc.golay_gen);
        bool nest1 = golay_book == codec.codebook();
        bool row1 = nc.golay_gen.row(1).weight() == kDim;
        bool nest2 = true;
        auto pc_rr = rref(nc.pc_gen);
        for (std::size_t r = 1; r <= 12; ++r)
            nest2 = nest2 && nc.pc_gen.row(r) == nc.golay_gen.row(r);
        bool even = true;
        for (auto w : enumerate_codebook(nc.pc_gen))
            even = even && (std::popcount(w) % 2 == 0);
        check(rep, "nesting: all-ones in Golay basis row 1, Golay = codebook, pc even",
              nest1 && row1 && nest2 && even && pc_rr.rank() == 23,
              "pc rank " + std::to_string(pc_rr.rank()));

        bool rg = gf2_matmul(nc.golay_gen, nc.r_golay) == BitMatrix::identity(12);
        bool round = true;
        for (auto w : codec.codebook()) {
            BitVector c = BitVector::from_mask(w, kDim);
            round = round && gf2_vecmat(gf2_vecmat(c, nc.r_golay), nc.golay_gen) == c;
        }
        check(rep, "golay_gen * r_golay = I12 and (c r) golay_gen = c over the codebook",
              rg && round);

        BitMatrix sys = gf2_matmul(nc.a_sys, nc.pc_gen);
        bool ok = true;
        for (std::size_t r = 1; r <= 23 && ok; ++r)
            for (std::size_t c = 1; c <= 23 && ok; ++c)
                ok = sys.at(r, c) == (r == c ? 1 : 0);
        bool p_ones = true;
        for (std::size_t r = 1; r <= 23; ++r) p_ones = p_ones && sys.at(r, 24) == 1;
        check(rep, "a_sys * pc_gen = [I23 | p] with p = all-ones", ok && p_ones);
    }
    {
        bool ok = true;
        for (std::size_t r = 1; r <= kDim && ok; ++r) {
            std::vector<std::int64_t> x(kDim);
            for (std::size_t c = 1; c <= kDim; ++c) x[c - 1] = 2 * h24.G.at(r, c);
            ok = lattice_membership(x, leech);
        }
        check(rep, "2 * H24 basis rows lie in RLeech24", ok);
        std::vector<std::int64_t> e1(kDim, 0);
        e1[0] = 1;
        check(rep, "r0 in RLeech24, unit vectors not",
              lattice_membership(leech.rep_representative, leech) &&
                  !lattice_membership(e1, leech));
    }

    // --- coset LLR -------------------------------------------------------------
    {
        bool ok = true;
        double worst = 0.0;
        TrialStream stream(seed, 9001);
        for (int t = 0; t < 200; ++t) {
            double y = 4.0 * stream.uniform01() - 2.0;
            double sigma = 0.05 + 0.7 * stream.uniform01();
            double a = coset_llr(y, sigma);
            double b = coset_llr_series(y, sigma);
            double rel = std::abs(a - b) / std::max(1e-30, std::abs(b));
            worst = std::max(worst, rel);
            ok = ok && rel < 1e-10;
            ok = ok && std::abs(coset_llr(y + 1.0, sigma) + a) < 1e-10;
            ok = ok && std::abs(coset_llr(-y, sigma) - a) < 1e-10;
        }
        std::ostringstream os;
        os << "max relative gap vs series oracle " << worst;
        check(rep, "coset LLR matches the 101-term series, antisymmetric and even", ok,
              os.str());
    }

    // --- per-level decoders ------------------------------------------------------
    {
        bool ok = true;
        TrialStream stream(seed, 9002);
        for (int t = 0; t < 2000 && ok; ++t) {
            double llrs[8];
            for (auto& v : llrs) v = 6.0 * (stream.uniform01() - 0.5);
            BitVector hat = decode_parity(std::span<const double>(llrs, 8));
            // exhaustive ML over the 128 even-weight words
            double best = -1e300;
            std::uint32_t best_w = 0;
            for (std::uint32_t w = 0; w < 256; ++w) {
                if (std::popcount(w) % 2) continue;
                double corr = 0.0;
                for (int i = 0; i < 8; ++i) corr += (w & (1u << i)) ? -llrs[i] : llrs[i];
                if (corr > best) {
                    best = corr;
                    best_w = w;
                }
            }
            ok = hat.to_mask() == best_w;
        }
        check(rep, "Wagner parity decode equals exhaustive ML at n=8", ok);
    }

    // --- lattice round trips -------------------------------------------------------
    auto round_trip = [&](LatticeName name, std::size_t list, bool levellist, int l1,
                          std::size_t l2, LeechDecodeOptions opts, std::uint64_t stream_tag,
                          std::uint64_t trials) {
        const LatticeBasis& basis = decoder.basis(name);
        std::atomic<std::uint64_t> exact{0};
        count_errors_parallel(trials, threads, [&](std::uint64_t t) {
            TrialStream stream(seed ^ stream_tag, t);
            auto point = random_lattice_point(basis, stream);
            double y[kDim];
            for (std::size_t i = 0; i < kDim; ++i)
                y[i] = static_cast<double>(point[i]) + 0.05 * stream.normal();
            std::span<const double> view(y, kDim);
            LatticeDecodeResult res;
            if (name == LatticeName::H24)
                res = decoder.decode_h24(view, 0.05, list);
            else if (levellist)
                res = decoder.decode_leech_levellist(view, 0.05, l1, l2);
            else
                res = decoder.decode_leech(view, 0.05, list, opts);
            bool hit = res.point == point && lattice_membership(res.point, basis);
            if (hit) ++exact;
            return !hit;
        });
        return RoundTripCount{exact.load(), trials};
    };

    {
        auto c1 = round_trip(LatticeName::H24, 1, false, 0, 0, {}, 11, 10000);
        auto c8 = round_trip(LatticeName::H24, 8, false, 0, 0, {}, 12, 10000);
        check(rep, "H24 round trip sigma=0.05, L=1 and L=8",
              c1.exact == c1.total && c8.exact == c8.total, c1.text() + ", " + c8.text());
    }
    {
        auto c1 = round_trip(LatticeName::RLeech24, 1, false, 0, 0, {}, 13, 10000);
        auto c8 = round_trip(LatticeName::RLeech24, 8, false, 0, 0, {}, 14, 10000);
        auto l11 = round_trip(LatticeName::RLeech24, 0, true, 1, 1, {}, 15, 10000);
        auto l216 = round_trip(LatticeName::RLeech24, 0, true, 2, 16, {}, 16, 2000);
        bool ok = c1.exact == c1.total && c8.exact == c8.total && l11.exact == l11.total &&
                  l216.exact == l216.total;
        check(rep, "RLeech24 round trip sigma=0.05, L in {1,8}, level lists 1x1 and 2x16",
              ok, c1.text() + ", " + c8.text() + ", " + l11.text() + ", " + l216.text());
    }
    {
        // both level-update conventions, side by side: subtracting the plain
        // binary codeword before each halving keeps round trips exact, the
        // scaled variant does not
        auto plain = round_trip(LatticeName::RLeech24, 4, false, 0, 0, {}, 17, 2000);
        LeechDecodeOptions scaled;
        scaled.subtract_scaled = true;
        auto alt = round_trip(LatticeName::RLeech24, 4, false, 0, 0, scaled, 17, 2000);
        check(rep, "leech level updates: halve-then-subtract convention",
              plain.exact == plain.total,
              "plain " + plain.text() + "; scaled-subtraction variant " + alt.text());
    }
    {
        // decoder covariance under lattice translations (the property that
        // justifies origin-only transmission in the simulators)
        bool ok = true;
        TrialStream stream(seed, 9003);
        for (int t = 0; t < 50 && ok; ++t) {
            auto shift = random_lattice_point(leech, stream);
            double y[kDim], ys[kDim];
            for (std::size_t i = 0; i < kDim; ++i) {
                y[i] = 3.0 * stream.normal();
                ys[i] = y[i] + static_cast<double>(shift[i]);
            }
            auto a = decoder.decode_leech(std::span<const double>(y, kDim), 0.45, 8);
            auto b = decoder.decode_leech(std::span<const double>(ys, kDim), 0.45, 8);
            for (std::size_t i = 0; i < kDim; ++i)
                ok = ok && b.point[i] == a.point[i] + shift[i];
        }
        check(rep, "leech decode is covariant under lattice translations", ok);
    }

    return rep;
}

std::string golay_tables_text() {
    std::ostringstream os;
    GolayComponents comp = build_components();
    os << "G8:\n" << comp.G8.to_text();
    os << "G8p:\n" << comp.G8p.to_text();
    os << "T8:\n" << comp.T8.to_text();
    os << "S:\n" << comp.S.to_text();
    os << "R:\n" << comp.R.to_text();
    os << "Ghat:\n" << comp.Ghat.to_text();
    for (int k = 1; k <= 3; ++k) {
        CodeConstruction c = build_construction(k);
        os << "A" << k << ": " << set_text(c.info_set) << "\n";
        os << "F3(" << k << "):\n" << c.F3.to_text();
        os << "T" << k << ":\n" << c.T24.to_text();
    }
    return os.str();
}

std::string lattice_tables_text(const LatticeDecoder& decoder) {
    std::ostringstream os;
    const LatticeBasis& h24 = decoder.basis(LatticeName::H24);
    const LatticeBasis& leech = decoder.basis(LatticeName::RLeech24);
    auto levels_text = [](const LatticeBasis& b) {
        std::string s;
        for (std::size_t i = 0; i < 24; ++i) {
            if (i) s += ' ';
            s += std::to_string(b.level_of_row[i]);
        }
        return s;
    };
    os << "H24 basis:\n" << h24.G.to_text();
    os << "H24 row levels: " << levels_text(h24) << "\n";
    os << "RLeech24 basis:\n" << leech.G.to_text();
    os << "RLeech24 row levels: " << levels_text(leech) << "\n";
    os << "r0:";
    for (auto v : leech.rep_representative) os << ' ' << v;
    os << "\n";
    const NestedCodes& nc = decoder.codes();
    os << "rep_gen:\n" << nc.rep_gen.to_text();
    os << "golay_gen:\n" << nc.golay_gen.to_text();
    os << "pc_gen:\n" << nc.pc_gen.to_text();
    return os.str();
}

}  // namespace golay24
