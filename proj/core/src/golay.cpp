#include "golay24/golay.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "golay24/pac.hpp"

namespace golay24 {

namespace {

BitMatrix f3_kernel(int kernel_id) {
    switch (kernel_id) {
        case 1: return BitMatrix::from_rows({"110", "101", "111"});
        case 2: return BitMatrix::from_rows({"100", "110", "011"});
        case 3: return BitMatrix::from_rows({"100", "110", "111"});
        default: throw std::invalid_argument("kernel_id must be 1, 2 or 3");
    }
}

// 3x3 block assembly from 8x8 pieces; nullptr means a zero block.
BitMatrix blocks3x3(const BitMatrix* b11, const BitMatrix* b12, const BitMatrix* b13,
                    const BitMatrix* b21, const BitMatrix* b22, const BitMatrix* b23,
                    const BitMatrix* b31, const BitMatrix* b32, const BitMatrix* b33,
                    std::size_t block_rows, std::size_t block_cols) {
    const BitMatrix* blocks[3][3] = {{b11, b12, b13}, {b21, b22, b23}, {b31, b32, b33}};
    BitMatrix m(3 * block_rows, 3 * block_cols);
    for (std::size_t br = 0; br < 3; ++br)
        for (std::size_t bc = 0; bc < 3; ++bc) {
            const BitMatrix* b = blocks[br][bc];
            if (!b) continue;
            for (std::size_t r = 1; r <= block_rows; ++r)
                for (std::size_t c = 1; c <= block_cols; ++c)
                    if (b->at(r, c)) m.set(br * block_rows + r, bc * block_cols + c, 1);
        }
    return m;
}

}  // namespace

GolayComponents build_components() {
    GolayComponents g;
    const BitMatrix f8 = polar_matrix(3);
    std::vector<BitVector> g8_rows;
    for (std::size_t r : {4, 6, 7, 8}) g8_rows.push_back(f8.row(r));
    g.G8 = BitMatrix::from_rows(g8_rows);
    g.G8p = BitMatrix::from_rows({
        "01111000",
        "10011100",
        "11001010",
        "11111111",
    });
    g.T8 = BitMatrix::from_rows({
        "10000000",
        "01100010",
        "00110100",
        "00011000",
        "00001000",
        "00000100",
        "00000010",
        "00000001",
    });
    g.S = BitMatrix::from_rows({"101", "011"});
    g.R = BitMatrix::from_rows({"111"});
    g.Ghat = vstack(kron(g.S, g.G8), kron(g.R, g.G8p));
    return g;
}

CodeConstruction build_construction(int kernel_id) {
    GolayComponents comp = build_components();
    const BitMatrix i8 = BitMatrix::identity(8);
    const BitMatrix& g8 = comp.G8;
    const BitMatrix& g8p = comp.G8p;
    const BitMatrix& t8 = comp.T8;

    CodeConstruction c;
    c.kernel_id = kernel_id;
    c.F3 = f3_kernel(kernel_id);
    c.G24p = kron(c.F3, polar_matrix(3));
    switch (kernel_id) {
        case 1:
            c.info_set = {4, 6, 7, 8, 12, 14, 15, 16, 18, 19, 20, 24};
            c.T24 = blocks3x3(&i8, nullptr, nullptr, nullptr, &i8, nullptr, nullptr, nullptr,
                              &t8, 8, 8);
            c.lhs_gen = blocks3x3(&g8, &g8, nullptr, &g8, nullptr, &g8, &g8p, &g8p, &g8p, 4, 8);
            break;
        case 2:
            c.info_set = {2, 3, 4, 8, 12, 14, 15, 16, 20, 22, 23, 24};
            c.T24 = blocks3x3(&t8, nullptr, &t8, nullptr, &i8, nullptr, nullptr, nullptr, &i8,
                              8, 8);
            c.lhs_gen = blocks3x3(&g8p, &g8p, &g8p, &g8, &g8, nullptr, nullptr, &g8, &g8, 4, 8);
            break;
        case 3:
            c.info_set = {4, 6, 7, 8, 12, 14, 15, 16, 18, 19, 20, 24};
            c.T24 = blocks3x3(&i8, nullptr, &i8, nullptr, &i8, nullptr, nullptr, nullptr, &t8,
                              8, 8);
            c.lhs_gen = blocks3x3(nullptr, &g8, &g8, &g8, &g8, nullptr, &g8p, &g8p, &g8p, 4, 8);
            break;
        default:
            throw std::invalid_argument("kernel_id must be 1, 2 or 3");
    }
    return c;
}

BitVector golay_encode(const CodeConstruction& c, const BitVector& msg) {
    if (msg.size() != c.info_set.size())
        throw std::invalid_argument("golay_encode: message length mismatch");
    BitVector v(24);
    for (std::size_t j = 0; j < c.info_set.size(); ++j)
        v.set(c.info_set[j], msg.at(j + 1));
    return gf2_vecmat(gf2_vecmat(v, c.T24), c.G24p);
}

bool Report::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string Report::to_text() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
        if (!c.detail.empty()) os << ": " << c.detail;
        os << '\n';
    }
    return os.str();
}

std::vector<std::uint32_t> enumerate_codebook(const BitMatrix& gen) {
    if (gen.cols() > 32)
        throw std::invalid_argument("enumerate_codebook: more than 32 columns");
    std::size_t k = gen.rows();
    std::vector<std::uint32_t> rows(k);
    for (std::size_t r = 0; r < k; ++r)
        rows[r] = static_cast<std::uint32_t>(gen.row_mask(r + 1));
    std::vector<std::uint32_t> words;
    words.reserve(std::size_t{1} << k);
    std::uint32_t cur = 0;
    words.push_back(cur);
    // Gray-code walk: message m and m+1 differ in exactly one row
    for (std::size_t m = 1; m < (std::size_t{1} << k); ++m) {
        std::size_t bit = std::countr_zero(m);
        cur ^= rows[bit];
        words.push_back(cur);
    }
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    return words;
}

std::map<std::size_t, std::size_t> weight_distribution(
    const std::vector<std::uint32_t>& codebook) {
    std::map<std::size_t, std::size_t> dist;
    for (auto w : codebook) ++dist[static_cast<std::size_t>(std::popcount(w))];
    return dist;
}

double correlation(std::uint32_t codeword_mask, std::span<const double> llrs) {
    double acc = 0.0;
    for (std::size_t i = 0; i < llrs.size(); ++i)
        acc += (codeword_mask & (1u << i)) ? -llrs[i] : llrs[i];
    return acc;
}

bool lex_less(std::uint32_t a, std::uint32_t b) {
    std::uint32_t diff = a ^ b;
    if (!diff) return false;
    std::uint32_t lowest = diff & (~diff + 1);
    return (a & lowest) == 0;
}

Report verify_kernel_identity(const CodeConstruction& c) {
    Report rep;
    std::string kn = "kernel " + std::to_string(c.kernel_id);

    bool upper = c.T24.is_upper_triangular_unit_diagonal();
    rep.checks.push_back({kn + ": T24 unit upper triangular", upper, ""});

    BitMatrix tg = gf2_matmul(c.T24, c.G24p);
    std::vector<BitVector> sel;
    for (std::size_t idx : c.info_set) sel.push_back(tg.row(idx));
    BitMatrix rows_a = BitMatrix::from_rows(sel);

    bool rr_eq = rref(c.lhs_gen).matrix == rref(rows_a).matrix;
    rep.checks.push_back({kn + ": rref(lhs_gen) == rref(rows_A of T24*G24p)", rr_eq, ""});

    auto book_lhs = enumerate_codebook(c.lhs_gen);
    auto book_rhs = enumerate_codebook(rows_a);
    auto book_ref = enumerate_codebook(build_components().Ghat);
    bool size_ok = book_lhs.size() == 4096 && book_rhs.size() == 4096;
    rep.checks.push_back(
        {kn + ": both codebooks have 4096 distinct words", size_ok,
         std::to_string(book_lhs.size()) + " / " + std::to_string(book_rhs.size())});

    std::string detail;
    bool set_eq = book_lhs == book_rhs && book_rhs == book_ref;
    if (!set_eq) {
        for (std::size_t i = 0; i < std::min(book_lhs.size(), book_rhs.size()); ++i)
            if (book_lhs[i] != book_rhs[i]) {
                detail = "first mismatch: " + BitVector::from_mask(book_lhs[i], 24).to_string() +
                         " vs " + BitVector::from_mask(book_rhs[i], 24).to_string();
                break;
            }
        if (detail.empty()) detail = "codebook differs from reference";
    }
    rep.checks.push_back({kn + ": codebooks equal the reference codebook", set_eq, detail});

    // Row-level correspondence, when one exists, is reported rather than
    // assumed: find for each lhs row the identical selected row.
    std::string mapping;
    bool bijection = true;
    for (std::size_t r = 1; r <= c.lhs_gen.rows(); ++r) {
        std::uint64_t lhs_mask = c.lhs_gen.row_mask(r);
        std::size_t found = 0;
        for (std::size_t j = 0; j < c.info_set.size(); ++j)
            if (rows_a.row_mask(j + 1) == lhs_mask) {
                found = c.info_set[j];
                break;
            }
        if (!found) bijection = false;
        if (r > 1) mapping += ",";
        mapping += found ? std::to_string(found) : std::string("-");
    }
    rep.checks.push_back({kn + ": per-row match lhs_gen -> info-set rows", bijection,
                          "row map [" + mapping + "]"});
    return rep;
}

Report verify_block_permutation_invariance() {
    Report rep;
    GolayComponents comp = build_components();
    auto reference = enumerate_codebook(comp.Ghat);
    const std::vector<std::vector<std::size_t>> orders = {
        {1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}};
    for (const auto& ord : orders) {
        BitMatrix perm = block_column_permute(comp.Ghat, 8, ord);
        bool eq = enumerate_codebook(perm) == reference;
        std::string name = "block order (" + std::to_string(ord[0]) + "," +
                           std::to_string(ord[1]) + "," + std::to_string(ord[2]) +
                           ") preserves the codebook";
        rep.checks.push_back({name, eq, ""});
    }

    // For the (2,1,3) permutation the message map (a1,a2,a3) ->
    // (a1+a2, a1, a3) must reproduce each codeword exactly.
    BitMatrix ghat_p = block_column_permute(comp.Ghat, 8, {2, 1, 3});
    bool map_ok = true;
    for (std::uint32_t msg = 0; msg < 4096 && map_ok; ++msg) {
        BitVector a = BitVector::from_mask(msg, 12);
        BitVector b(12);
        for (std::size_t i = 1; i <= 4; ++i) {
            b.set(i, a.at(i) ^ a.at(i + 4));
            b.set(i + 4, a.at(i));
            b.set(i + 8, a.at(i + 8));
        }
        map_ok = gf2_vecmat(a, comp.Ghat) == gf2_vecmat(b, ghat_p);
    }
    rep.checks.push_back(
        {"message map (a1,a2,a3)->(a1+a2,a1,a3) matches the (2,1,3) permutation", map_ok, ""});
    return rep;
}

GolayCodec::GolayCodec() : comp_(build_components()) {
    const BitMatrix f2 = BitMatrix::from_rows({"10", "11"});
    for (int k = 1; k <= 3; ++k) {
        cons_[k - 1] = build_construction(k);
        std::vector<BitMatrix> stages = {cons_[k - 1].F3, f2, f2, f2};
        decoders_[k - 1] = std::make_unique<KernelSclDecoder>(
            std::move(stages), cons_[k - 1].info_set, cons_[k - 1].T24);
    }
    codebook_ = enumerate_codebook(comp_.Ghat);
    pivots_ = rref(comp_.Ghat).pivot_cols;
}

const CodeConstruction& GolayCodec::construction(int kernel_id) const {
    if (kernel_id < 1 || kernel_id > 3)
        throw std::invalid_argument("kernel_id must be 1, 2 or 3");
    return cons_[kernel_id - 1];
}

BitVector GolayCodec::canonical_message(const BitVector& codeword) const {
    BitVector msg(kMessageLength);
    for (std::size_t j = 0; j < pivots_.size(); ++j) msg.set(j + 1, codeword.at(pivots_[j]));
    return msg;
}

BitVector GolayCodec::canonical_message(std::uint32_t mask) const {
    return canonical_message(BitVector::from_mask(mask, kBlockLength));
}

std::vector<DecoderCandidate> GolayCodec::scl_decode_kernel(int kernel_id,
                                                            std::span<const double> llrs,
                                                            std::size_t list_size) const {
    if (kernel_id < 1 || kernel_id > 3)
        throw std::invalid_argument("kernel_id must be 1, 2 or 3");
    return decoders_[kernel_id - 1]->decode(llrs, list_size);
}

GolayCodec::MlResult GolayCodec::ml_decode(std::span<const double> llrs) const {
    if (llrs.size() != kBlockLength)
        throw std::invalid_argument("ml_decode: expected 24 LLRs");
    for (double v : llrs)
        if (!std::isfinite(v)) throw std::invalid_argument("ml_decode: non-finite LLR");
    std::uint32_t best = codebook_.front();
    double best_corr = correlation(best, llrs);
    for (std::uint32_t w : codebook_) {
        double corr = correlation(w, llrs);
        if (corr > best_corr || (corr == best_corr && lex_less(w, best))) {
            best = w;
            best_corr = corr;
        }
    }
    return {BitVector::from_mask(best, kBlockLength), canonical_message(best)};
}

GolayCodec::ParallelResult GolayCodec::parallel_decode(std::span<const double> llrs,
                                                       std::size_t list_size) const {
    ParallelResult res;
    std::uint32_t best = 0;
    double best_corr = 0.0;
    int best_kernel = 0;
    for (int k = 1; k <= 3; ++k) {
        auto cands = decoders_[k - 1]->decode(llrs, list_size);
        KernelDiag& diag = res.diagnostics[k - 1];
        diag.kernel_id = k;
        diag.candidates = cands.size();
        diag.best_metric = cands.front().metric;
        diag.best_correlation = -1e300;
        for (const auto& c : cands) {
            std::uint32_t mask = static_cast<std::uint32_t>(c.codeword.to_mask());
            double corr = correlation(mask, llrs);
            diag.best_correlation = std::max(diag.best_correlation, corr);
            // ties: lower kernel id first (kernels are visited ascending),
            // then the lexicographically smaller codeword
            bool wins = best_kernel == 0 || corr > best_corr ||
                        (corr == best_corr && k == best_kernel && lex_less(mask, best));
            if (wins) {
                best = mask;
                best_corr = corr;
                best_kernel = k;
            }
        }
    }
    res.diagnostics[best_kernel - 1].selected = true;
    res.codeword = BitVector::from_mask(best, kBlockLength);
    res.message = canonical_message(best);
    return res;
}

std::vector<GolayCodec::PoolCandidate> GolayCodec::parallel_decode_pool(
    std::span<const double> llrs, std::size_t list_size) const {
    std::vector<PoolCandidate> pool;
    pool.reserve(3 * list_size);
    for (int k = 1; k <= 3; ++k) {
        auto cands = decoders_[k - 1]->decode(llrs, list_size);
        for (const auto& c : cands) {
            std::uint32_t mask = static_cast<std::uint32_t>(c.codeword.to_mask());
            pool.push_back({mask, correlation(mask, llrs), k});
        }
    }
    // dedup by codeword first (keeping the lowest kernel id), then rank
    std::sort(pool.begin(), pool.end(), [](const PoolCandidate& a, const PoolCandidate& b) {
        if (a.codeword != b.codeword) return a.codeword < b.codeword;
        return a.kernel_id < b.kernel_id;
    });
    pool.erase(std::unique(pool.begin(), pool.end(),
                           [](const PoolCandidate& a, const PoolCandidate& b) {
                               return a.codeword == b.codeword;
                           }),
               pool.end());
    std::sort(pool.begin(), pool.end(), [](const PoolCandidate& a, const PoolCandidate& b) {
        if (a.correlation != b.correlation) return a.correlation > b.correlation;
        if (a.kernel_id != b.kernel_id) return a.kernel_id < b.kernel_id;
        return lex_less(a.codeword, b.codeword);
    });
    return pool;
}

}  // namespace golay24
