#include "golay24/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace golay24 {

namespace {

constexpr std::size_t kDim = 24;

// incremental GF(2) rank tracking for basis completion
struct RankTracker {
    std::vector<std::uint32_t> reduced;  // echelon rows

    bool try_add(std::uint32_t row) {
        std::uint32_t r = row;
        for (std::uint32_t e : reduced) {
            std::uint32_t pivot = e & (~e + 1);
            if (r & pivot) r ^= e;
        }
        if (!r) return false;
        reduced.push_back(r);
        return true;
    }
};

std::uint32_t row_mask_of(const BitMatrix& m, std::size_t r) {
    return static_cast<std::uint32_t>(m.row_mask(r));
}

}  // namespace

NestedCodes build_nested_codes(const GolayCodec& codec) {
    NestedCodes nc;

    std::vector<BitVector> ones_row = {BitVector::from_mask(0xFFFFFFu, kDim)};
    nc.rep_gen = BitMatrix::from_rows(ones_row);

    // Golay basis starting from the all-ones codeword, completed from the
    // reference generator rows in order.
    const BitMatrix& ghat = codec.components().Ghat;
    RankTracker rank;
    std::vector<BitVector> golay_rows;
    if (!rank.try_add(0xFFFFFFu))
        throw std::logic_error("build_nested_codes: all-ones row is degenerate");
    golay_rows.push_back(BitVector::from_mask(0xFFFFFFu, kDim));
    for (std::size_t r = 1; r <= ghat.rows() && golay_rows.size() < 12; ++r) {
        std::uint32_t mask = row_mask_of(ghat, r);
        if (rank.try_add(mask)) golay_rows.push_back(BitVector::from_mask(mask, kDim));
    }
    if (golay_rows.size() != 12)
        throw std::logic_error("build_nested_codes: Golay completion failed");
    nc.golay_gen = BitMatrix::from_rows(golay_rows);

    // Extend to a basis of the even-weight code with adjacent-pair vectors.
    std::vector<BitVector> pc_rows = golay_rows;
    for (std::size_t i = 1; i < kDim && pc_rows.size() < 23; ++i) {
        std::uint32_t pair = (1u << (i - 1)) | (1u << i);
        if (rank.try_add(pair)) pc_rows.push_back(BitVector::from_mask(pair, kDim));
    }
    if (pc_rows.size() != 23)
        throw std::logic_error("build_nested_codes: parity-check completion failed");
    nc.pc_gen = BitMatrix::from_rows(pc_rows);

    nc.r_golay = right_inverse(nc.golay_gen);
    nc.a_sys = systematize(nc.pc_gen);
    return nc;
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

std::int64_t IntMatrix::at(std::size_t r, std::size_t c) const {
    if (r < 1 || r > rows_ || c < 1 || c > cols_)
        throw std::out_of_range("IntMatrix::at");
    return a_[(r - 1) * cols_ + (c - 1)];
}

void IntMatrix::set(std::size_t r, std::size_t c, std::int64_t v) {
    if (r < 1 || r > rows_ || c < 1 || c > cols_)
        throw std::out_of_range("IntMatrix::set");
    a_[(r - 1) * cols_ + (c - 1)] = v;
}

std::string IntMatrix::to_text() const {
    std::ostringstream os;
    for (std::size_t r = 1; r <= rows_; ++r) {
        for (std::size_t c = 1; c <= cols_; ++c) {
            if (c > 1) os << ' ';
            os << at(r, c);
        }
        os << '\n';
    }
    return os.str();
}

namespace {

std::int64_t floordiv(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

void check_magnitude(const std::vector<std::vector<std::int64_t>>& rows) {
    for (const auto& row : rows)
        for (std::int64_t v : row)
            if (std::llabs(v) > (std::int64_t{1} << 40))
                throw std::overflow_error("hermite_normal_form: entry growth");
}

}  // namespace

IntMatrix hermite_normal_form(const std::vector<std::vector<std::int64_t>>& generators,
                              std::size_t cols) {
    std::vector<std::vector<std::int64_t>> rows = generators;
    for (const auto& r : rows)
        if (r.size() != cols)
            throw std::invalid_argument("hermite_normal_form: ragged generator rows");

    std::size_t top = 0;
    for (std::size_t c = 0; c < cols; ++c) {
        // Euclidean reduction in column c over rows >= top
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t i = top; i < rows.size(); ++i)
                if (rows[i][c] != 0 &&
                    (best == rows.size() ||
                     std::llabs(rows[i][c]) < std::llabs(rows[best][c])))
                    best = i;
            if (best == rows.size()) break;
            std::swap(rows[top], rows[best]);
            bool cleared = true;
            for (std::size_t i = top + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                std::int64_t q = rows[i][c] / rows[top][c];
                if (q != 0)
                    for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= q * rows[top][j];
                if (rows[i][c] != 0) cleared = false;
            }
            check_magnitude(rows);
            if (cleared) break;
        }
        if (top < rows.size() && rows[top][c] != 0) {
            if (rows[top][c] < 0)
                for (std::size_t j = 0; j < cols; ++j) rows[top][j] = -rows[top][j];
            for (std::size_t i = 0; i < top; ++i) {
                std::int64_t q = floordiv(rows[i][c], rows[top][c]);
                if (q != 0)
                    for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= q * rows[top][j];
            }
            ++top;
        }
    }
    if (top != cols)
        throw std::invalid_argument("hermite_normal_form: generators do not span full rank");

    IntMatrix h(cols, cols);
    for (std::size_t r = 0; r < cols; ++r)
        for (std::size_t c = 0; c < cols; ++c) h.set(r + 1, c + 1, rows[r][c]);
    return h;
}

namespace {

int two_adic_level(const IntMatrix& g, std::size_t row) {
    std::int64_t gcd = 0;
    for (std::size_t c = 1; c <= g.cols(); ++c)
        gcd = std::gcd(gcd, std::llabs(g.at(row, c)));
    int level = 0;
    while (level < 3 && gcd % 2 == 0) {
        gcd /= 2;
        ++level;
    }
    return level;
}

}  // namespace

LatticeBasis build_basis(LatticeName name, const GolayCodec& codec) {
    LatticeBasis basis;
    basis.name = name;
    basis.codes = build_nested_codes(codec);

    std::vector<std::vector<std::int64_t>> gens;
    auto push_scaled_row = [&](const BitMatrix& m, std::size_t r, std::int64_t scale) {
        std::vector<std::int64_t> row(kDim);
        for (std::size_t c = 1; c <= kDim; ++c) row[c - 1] = scale * m.at(r, c);
        gens.push_back(std::move(row));
    };

    std::int64_t expected_det = 0;
    if (name == LatticeName::H24) {
        for (std::size_t r = 1; r <= 12; ++r) push_scaled_row(basis.codes.golay_gen, r, 1);
        for (std::size_t r = 13; r <= 23; ++r) push_scaled_row(basis.codes.pc_gen, r, 2);
        for (std::size_t i = 0; i < kDim; ++i) {
            std::vector<std::int64_t> row(kDim, 0);
            row[i] = 4;
            gens.push_back(std::move(row));
        }
        expected_det = std::int64_t{1} << 13;
    } else {
        basis.rep_representative.assign(kDim, 1);
        basis.rep_representative[0] = -3;
        gens.push_back(basis.rep_representative);
        for (std::size_t r = 2; r <= 12; ++r) push_scaled_row(basis.codes.golay_gen, r, 2);
        for (std::size_t r = 13; r <= 23; ++r) push_scaled_row(basis.codes.pc_gen, r, 4);
        for (std::size_t i = 0; i < kDim; ++i) {
            std::vector<std::int64_t> row(kDim, 0);
            row[i] = 8;
            gens.push_back(std::move(row));
        }
        expected_det = std::int64_t{1} << 36;
    }

    basis.G = hermite_normal_form(gens, kDim);
    basis.det_abs = 1;
    for (std::size_t i = 1; i <= kDim; ++i) basis.det_abs *= basis.G.at(i, i);
    if (basis.det_abs != expected_det)
        throw std::logic_error("build_basis: determinant invariant violated");
    for (std::size_t r = 1; r <= kDim; ++r)
        basis.level_of_row[r - 1] = two_adic_level(basis.G, r);
    return basis;
}

double coset_llr(double y, double sigma) {
    if (!(sigma > 0.0))
        throw std::invalid_argument("coset_llr: sigma must be positive");
    double ybar = y - 2.0 * std::floor(y / 2.0);  // [0, 2)

    auto log_density = [sigma](double t) {
        double window = std::max(8.0 * sigma, 4.0);
        std::int64_t klo = static_cast<std::int64_t>(std::ceil((t - window) / 2.0));
        std::int64_t khi = static_cast<std::int64_t>(std::floor((t + window) / 2.0));
        double inv = 1.0 / (2.0 * sigma * sigma);
        double mx = -1e300;
        for (std::int64_t k = klo; k <= khi; ++k) {
            double d = t - 2.0 * static_cast<double>(k);
            mx = std::max(mx, -d * d * inv);
        }
        double acc = 0.0;
        for (std::int64_t k = klo; k <= khi; ++k) {
            double d = t - 2.0 * static_cast<double>(k);
            acc += std::exp(-d * d * inv - mx);
        }
        return mx + std::log(acc);
    };

    return log_density(ybar) - log_density(ybar - 1.0);
}

RepetitionDecision decode_repetition(std::span<const double> llrs) {
    double sum = 0.0;
    for (double v : llrs) sum += v;
    RepetitionDecision d;
    d.u = (sum >= 0.0) ? 0 : 1;
    d.codeword = BitVector(llrs.size());
    if (d.u)
        for (std::size_t i = 1; i <= llrs.size(); ++i) d.codeword.set(i, 1);
    return d;
}

BitVector decode_parity(std::span<const double> llrs) {
    std::size_t n = llrs.size();
    if (n < 2)
        throw std::invalid_argument("decode_parity: need at least 2 positions");
    BitVector x(n);
    int parity = 0;
    std::size_t weakest = 0;
    double weakest_abs = std::abs(llrs[0]);
    for (std::size_t i = 0; i < n; ++i) {
        int bit = llrs[i] < 0.0 ? 1 : 0;
        x.set(i + 1, bit);
        parity ^= bit;
        if (std::abs(llrs[i]) < weakest_abs) {
            weakest_abs = std::abs(llrs[i]);
            weakest = i;
        }
    }
    if (parity) x.set(weakest + 1, x.at(weakest + 1) ^ 1);
    return x;
}

GolayLevelResult decode_golay_level(const GolayCodec& codec, const NestedCodes& codes,
                                    std::span<const double> llrs, std::size_t list_size) {
    auto res = codec.parallel_decode(llrs, list_size);
    GolayLevelResult out;
    out.codeword = res.codeword;
    out.u = gf2_vecmat(res.codeword, codes.r_golay);
    return out;
}

std::optional<std::vector<std::int64_t>> solve_coords(const IntMatrix& g,
                                                      std::span<const std::int64_t> x) {
    std::size_t n = g.rows();
    if (g.cols() != n || x.size() != n)
        throw std::invalid_argument("solve_coords: dimension mismatch");
    std::vector<std::int64_t> rem(x.begin(), x.end());
    std::vector<std::int64_t> coords(n, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        std::int64_t pivot = g.at(i, i);
        if (rem[i - 1] % pivot != 0) return std::nullopt;
        std::int64_t q = rem[i - 1] / pivot;
        coords[i - 1] = q;
        if (q != 0)
            for (std::size_t c = i; c <= n; ++c) rem[c - 1] -= q * g.at(i, c);
    }
    for (std::int64_t v : rem)
        if (v != 0) return std::nullopt;
    return coords;
}

bool lattice_membership(std::span<const std::int64_t> x, const LatticeBasis& basis) {
    return solve_coords(basis.G, x).has_value();
}

LatticeDecoder::LatticeDecoder(std::shared_ptr<const GolayCodec> codec)
    : codec_(std::move(codec)),
      h24_(build_basis(LatticeName::H24, *codec_)),
      leech_(build_basis(LatticeName::RLeech24, *codec_)) {}

const LatticeBasis& LatticeDecoder::basis(LatticeName name) const {
    return name == LatticeName::H24 ? h24_ : leech_;
}

namespace {

void check_input(std::span<const double> y, double sigma) {
    if (y.size() != kDim)
        throw std::invalid_argument("lattice decode: expected 24 coordinates");
    if (!(sigma > 0.0))
        throw std::invalid_argument("lattice decode: sigma must be positive");
    for (double v : y)
        if (!std::isfinite(v))
            throw std::invalid_argument("lattice decode: non-finite input");
}

std::vector<double> coset_llrs(std::span<const double> y, double sigma) {
    std::vector<double> out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = coset_llr(y[i], sigma);
    return out;
}

double squared_distance(std::span<const double> y, std::span<const std::int64_t> p) {
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        double d = y[i] - static_cast<double>(p[i]);
        acc += d * d;
    }
    return acc;
}

std::vector<std::int64_t> round_half_away(std::span<const double> y) {
    std::vector<std::int64_t> z(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        z[i] = static_cast<std::int64_t>(std::round(y[i]));
    return z;
}

std::vector<std::int64_t> finish_coords(const IntMatrix& g,
                                        const std::vector<std::int64_t>& point) {
    auto coords = solve_coords(g, point);
    if (!coords)
        throw std::runtime_error("lattice decode: output is not a lattice point");
    return *coords;
}

}  // namespace

LatticeDecodeResult LatticeDecoder::decode_h24(std::span<const double> y, double sigma,
                                               std::size_t list_size) const {
    check_input(y, sigma);
    LatticeDecodeResult res;
    res.level_sigmas = {sigma, sigma / 2.0, 0.0};

    auto level1 = decode_golay_level(*codec_, h24_.codes, coset_llrs(y, sigma), list_size);
    std::vector<double> y1(kDim);
    for (std::size_t i = 0; i < kDim; ++i)
        y1[i] = (y[i] - level1.codeword.at(i + 1)) / 2.0;

    BitVector c2 = decode_parity(coset_llrs(y1, sigma / 2.0));
    std::vector<double> y2(kDim);
    for (std::size_t i = 0; i < kDim; ++i) y2[i] = (y1[i] - c2.at(i + 1)) / 2.0;

    auto z = round_half_away(y2);
    res.point.resize(kDim);
    for (std::size_t i = 0; i < kDim; ++i)
        res.point[i] = level1.codeword.at(i + 1) + 2 * c2.at(i + 1) + 4 * z[i];
    res.coords = finish_coords(h24_.G, res.point);
    res.level_bits = {level1.codeword, c2};
    res.distance = squared_distance(y, res.point);
    return res;
}

LatticeDecodeResult LatticeDecoder::decode_leech(std::span<const double> y, double sigma,
                                                 std::size_t list_size,
                                                 LeechDecodeOptions opts) const {
    check_input(y, sigma);
    LatticeDecodeResult res;
    res.level_sigmas = {sigma, sigma / 2.0, sigma / 4.0};

    auto rep = decode_repetition(coset_llrs(y, sigma));
    std::vector<double> y1(kDim);
    for (std::size_t i = 0; i < kDim; ++i) {
        double x1 = rep.u ? static_cast<double>(leech_.rep_representative[i]) : 0.0;
        y1[i] = (y[i] - x1) / 2.0;
    }

    auto level2 =
        decode_golay_level(*codec_, leech_.codes, coset_llrs(y1, sigma / 2.0), list_size);
    std::vector<double> y2(kDim);
    for (std::size_t i = 0; i < kDim; ++i) {
        double c = level2.codeword.at(i + 1);
        y2[i] = (y1[i] - (opts.subtract_scaled ? 2.0 * c : c)) / 2.0;
    }

    BitVector c3 = decode_parity(coset_llrs(y2, sigma / 4.0));
    std::vector<double> y3(kDim);
    for (std::size_t i = 0; i < kDim; ++i) {
        double c = c3.at(i + 1);
        y3[i] = (y2[i] - (opts.subtract_scaled ? 4.0 * c : c)) / 2.0;
    }

    auto z = round_half_away(y3);
    res.point.resize(kDim);
    for (std::size_t i = 0; i < kDim; ++i) {
        std::int64_t x1 = rep.u ? leech_.rep_representative[i] : 0;
        res.point[i] = x1 + 2 * level2.codeword.at(i + 1) + 4 * c3.at(i + 1) + 8 * z[i];
    }
    res.coords = finish_coords(leech_.G, res.point);
    res.level_bits = {rep.codeword, level2.codeword, c3};
    res.distance = squared_distance(y, res.point);
    return res;
}

LatticeDecodeResult LatticeDecoder::decode_leech_levellist(std::span<const double> y,
                                                           double sigma, int l1,
                                                           std::size_t l2) const {
    check_input(y, sigma);
    if (l1 != 1 && l1 != 2)
        throw std::invalid_argument("decode_leech_levellist: L1 must be 1 or 2");
    if (l2 < 1)
        throw std::invalid_argument("decode_leech_levellist: L2 must be >= 1");

    auto llr1 = coset_llrs(y, sigma);
    auto rep = decode_repetition(llr1);
    std::vector<int> hypotheses = {rep.u};
    if (l1 == 2) hypotheses.push_back(1 - rep.u);

    LatticeDecodeResult best;
    bool have_best = false;
    int best_u = 0;
    std::size_t best_rank = 0;

    for (int u : hypotheses) {
        std::vector<double> y1(kDim);
        for (std::size_t i = 0; i < kDim; ++i) {
            double x1 = u ? static_cast<double>(leech_.rep_representative[i]) : 0.0;
            y1[i] = (y[i] - x1) / 2.0;
        }
        auto pool = codec_->parallel_decode_pool(coset_llrs(y1, sigma / 2.0), l2);
        std::size_t keep = std::min(l2, pool.size());
        for (std::size_t rank = 0; rank < keep; ++rank) {
            BitVector c2 = BitVector::from_mask(pool[rank].codeword, kDim);
            std::vector<double> y2(kDim);
            for (std::size_t i = 0; i < kDim; ++i) y2[i] = (y1[i] - c2.at(i + 1)) / 2.0;
            BitVector c3 = decode_parity(coset_llrs(y2, sigma / 4.0));
            std::vector<double> y3(kDim);
            for (std::size_t i = 0; i < kDim; ++i) y3[i] = (y2[i] - c3.at(i + 1)) / 2.0;
            auto z = round_half_away(y3);

            LatticeDecodeResult cand;
            cand.level_sigmas = {sigma, sigma / 2.0, sigma / 4.0};
            cand.point.resize(kDim);
            for (std::size_t i = 0; i < kDim; ++i) {
                std::int64_t x1 = u ? leech_.rep_representative[i] : 0;
                cand.point[i] = x1 + 2 * c2.at(i + 1) + 4 * c3.at(i + 1) + 8 * z[i];
            }
            cand.distance = squared_distance(y, cand.point);

            bool better = !have_best || cand.distance < best.distance ||
                          (cand.distance == best.distance &&
                           (u < best_u || (u == best_u && rank < best_rank)));
            if (better) {
                BitVector rep_cw(kDim);
                if (u)
                    for (std::size_t i = 1; i <= kDim; ++i) rep_cw.set(i, 1);
                cand.level_bits = {rep_cw, c2, c3};
                best = std::move(cand);
                best_u = u;
                best_rank = rank;
                have_best = true;
            }
        }
    }
    best.coords = finish_coords(leech_.G, best.point);
    return best;
}

}  // namespace golay24
