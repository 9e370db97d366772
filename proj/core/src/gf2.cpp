#include "golay24/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace golay24 {

namespace {

void check_index(std::size_t i, std::size_t n, const char* what) {
    if (i < 1 || i > n)
        throw std::out_of_range(std::string(what) + ": index out of range");
}

}  // namespace

BitVector BitVector::from_string(std::string_view s) {
    BitVector v;
    for (char c : s) {
        if (c == '0' || c == '1')
            v.bits_.push_back(static_cast<std::uint8_t>(c - '0'));
        else if (c != ' ' && c != '\t')
            throw std::invalid_argument("BitVector::from_string: bad character");
    }
    return v;
}

BitVector BitVector::from_mask(std::uint64_t mask, std::size_t len) {
    if (len > 64)
        throw std::invalid_argument("BitVector::from_mask: len > 64");
    BitVector v(len);
    for (std::size_t i = 0; i < len; ++i)
        v.bits_[i] = static_cast<std::uint8_t>((mask >> i) & 1u);
    return v;
}

int BitVector::at(std::size_t i) const {
    check_index(i, size(), "BitVector::at");
    return bits_[i - 1];
}

void BitVector::set(std::size_t i, int bit) {
    check_index(i, size(), "BitVector::set");
    bits_[i - 1] = static_cast<std::uint8_t>(bit & 1);
}

std::uint64_t BitVector::to_mask() const {
    if (size() > 64)
        throw std::invalid_argument("BitVector::to_mask: size > 64");
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < size(); ++i)
        m |= static_cast<std::uint64_t>(bits_[i] & 1u) << i;
    return m;
}

std::size_t BitVector::weight() const {
    std::size_t w = 0;
    for (auto b : bits_) w += b;
    return w;
}

BitVector BitVector::operator^(const BitVector& other) const {
    if (size() != other.size())
        throw std::invalid_argument("BitVector::operator^: length mismatch");
    BitVector r(size());
    for (std::size_t i = 0; i < size(); ++i)
        r.bits_[i] = bits_[i] ^ other.bits_[i];
    return r;
}

std::string BitVector::to_string() const {
    std::string s;
    s.reserve(size());
    for (auto b : bits_) s.push_back(b ? '1' : '0');
    return s;
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * words_, 0) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("BitMatrix: rows and cols must be >= 1");
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 1; i <= n; ++i) m.set(i, i, 1);
    return m;
}

BitMatrix BitMatrix::zero(std::size_t rows, std::size_t cols) { return BitMatrix(rows, cols); }

BitMatrix BitMatrix::from_rows(std::initializer_list<std::string_view> rows) {
    std::vector<BitVector> parsed;
    parsed.reserve(rows.size());
    for (auto s : rows) parsed.push_back(BitVector::from_string(s));
    return from_rows(parsed);
}

BitMatrix BitMatrix::from_rows(const std::vector<BitVector>& rows) {
    if (rows.empty())
        throw std::invalid_argument("BitMatrix::from_rows: no rows");
    BitMatrix m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols_)
            throw std::invalid_argument("BitMatrix::from_rows: ragged rows");
        m.set_row(r + 1, rows[r]);
    }
    return m;
}

int BitMatrix::at(std::size_t r, std::size_t c) const {
    check_index(r, rows_, "BitMatrix::at row");
    check_index(c, cols_, "BitMatrix::at col");
    std::size_t c0 = c - 1;
    return static_cast<int>((row_ptr(r - 1)[c0 >> 6] >> (c0 & 63)) & 1u);
}

void BitMatrix::set(std::size_t r, std::size_t c, int bit) {
    check_index(r, rows_, "BitMatrix::set row");
    check_index(c, cols_, "BitMatrix::set col");
    std::size_t c0 = c - 1;
    std::uint64_t& w = row_ptr(r - 1)[c0 >> 6];
    if (bit & 1)
        w |= (std::uint64_t{1} << (c0 & 63));
    else
        w &= ~(std::uint64_t{1} << (c0 & 63));
}

BitVector BitMatrix::row(std::size_t r) const {
    check_index(r, rows_, "BitMatrix::row");
    BitVector v(cols_);
    for (std::size_t c = 1; c <= cols_; ++c) v.set(c, at(r, c));
    return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
    check_index(r, rows_, "BitMatrix::set_row");
    if (v.size() != cols_)
        throw std::invalid_argument("BitMatrix::set_row: length mismatch");
    for (std::size_t c = 1; c <= cols_; ++c) set(r, c, v.at(c));
}

std::uint64_t BitMatrix::row_mask(std::size_t r) const {
    check_index(r, rows_, "BitMatrix::row_mask");
    if (cols_ > 64)
        throw std::invalid_argument("BitMatrix::row_mask: cols > 64");
    return row_ptr(r - 1)[0];
}

bool BitMatrix::operator==(const BitMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

bool BitMatrix::is_upper_triangular_unit_diagonal() const {
    if (rows_ != cols_) return false;
    for (std::size_t r = 1; r <= rows_; ++r) {
        if (at(r, r) != 1) return false;
        for (std::size_t c = 1; c < r; ++c)
            if (at(r, c) != 0) return false;
    }
    return true;
}

std::string BitMatrix::to_text() const {
    std::string s;
    for (std::size_t r = 1; r <= rows_; ++r) {
        for (std::size_t c = 1; c <= cols_; ++c) {
            if (c > 1) s.push_back(' ');
            s.push_back(at(r, c) ? '1' : '0');
        }
        s.push_back('\n');
    }
    return s;
}

BitMatrix kron(const BitMatrix& a, const BitMatrix& b) {
    BitMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 1; ar <= a.rows(); ++ar)
        for (std::size_t ac = 1; ac <= a.cols(); ++ac) {
            if (!a.at(ar, ac)) continue;
            for (std::size_t br = 1; br <= b.rows(); ++br)
                for (std::size_t bc = 1; bc <= b.cols(); ++bc)
                    if (b.at(br, bc))
                        m.set((ar - 1) * b.rows() + br, (ac - 1) * b.cols() + bc, 1);
        }
    return m;
}

BitMatrix gf2_matmul(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("gf2_matmul: dimension mismatch");
    BitMatrix m(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        std::uint64_t* out = m.row_ptr(r);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if ((a.row_ptr(r)[k >> 6] >> (k & 63)) & 1u) {
                const std::uint64_t* brow = b.row_ptr(k);
                for (std::size_t w = 0; w < m.words_; ++w) out[w] ^= brow[w];
            }
        }
    }
    return m;
}

BitVector gf2_vecmat(const BitVector& v, const BitMatrix& m) {
    if (v.size() != m.rows())
        throw std::invalid_argument("gf2_vecmat: dimension mismatch");
    BitVector out(m.cols());
    for (std::size_t r = 1; r <= m.rows(); ++r)
        if (v.at(r)) out = out ^ m.row(r);
    return out;
}

RrefResult rref(const BitMatrix& m) {
    std::size_t nr = m.rows(), nc = m.cols();
    std::vector<BitVector> rows;
    rows.reserve(nr);
    for (std::size_t r = 1; r <= nr; ++r) rows.push_back(m.row(r));

    std::vector<std::size_t> pivots;
    std::size_t next_row = 0;
    for (std::size_t c = 1; c <= nc && next_row < nr; ++c) {
        std::size_t pivot = nr;
        for (std::size_t r = next_row; r < nr; ++r)
            if (rows[r].at(c)) { pivot = r; break; }
        if (pivot == nr) continue;
        std::swap(rows[next_row], rows[pivot]);
        for (std::size_t r = 0; r < nr; ++r)
            if (r != next_row && rows[r].at(c)) rows[r] = rows[r] ^ rows[next_row];
        pivots.push_back(c);
        ++next_row;
    }
    if (pivots.empty()) {
        // all-zero input: keep a single zero row so the matrix stays valid
        return RrefResult{BitMatrix(1, nc), {}};
    }
    rows.resize(pivots.size());
    return RrefResult{BitMatrix::from_rows(rows), pivots};
}

BitMatrix right_inverse(const BitMatrix& g) {
    std::size_t k = g.rows(), n = g.cols();
    // Eliminate on [g | I_k]; if g has full row rank the reduced left part
    // has k pivots and the right part E satisfies E g = rref(g).
    std::vector<BitVector> rows;
    rows.reserve(k);
    for (std::size_t r = 1; r <= k; ++r) {
        BitVector aug(n + k);
        BitVector gr = g.row(r);
        for (std::size_t c = 1; c <= n; ++c) aug.set(c, gr.at(c));
        aug.set(n + r, 1);
        rows.push_back(aug);
    }
    std::vector<std::size_t> pivots;
    std::size_t next_row = 0;
    for (std::size_t c = 1; c <= n && next_row < k; ++c) {
        std::size_t pivot = k;
        for (std::size_t r = next_row; r < k; ++r)
            if (rows[r].at(c)) { pivot = r; break; }
        if (pivot == k) continue;
        std::swap(rows[next_row], rows[pivot]);
        for (std::size_t r = 0; r < k; ++r)
            if (r != next_row && rows[r].at(c)) rows[r] = rows[r] ^ rows[next_row];
        pivots.push_back(c);
        ++next_row;
    }
    if (pivots.size() != k)
        throw std::invalid_argument("right_inverse: not right-invertible");

    // rref(g) restricted to pivot columns is I_k, so placing row j of E at
    // row pivots[j] of R gives g R = I.
    BitMatrix r_out(n, k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t c = 1; c <= k; ++c)
            r_out.set(pivots[j], c, rows[j].at(n + c));
    return r_out;
}

BitMatrix systematize(const BitMatrix& g) {
    std::size_t k = g.rows();
    if (g.cols() < k)
        throw std::invalid_argument("systematize: fewer columns than rows");
    // Invert the leading k x k block via [lead | I].
    std::vector<BitVector> rows;
    rows.reserve(k);
    for (std::size_t r = 1; r <= k; ++r) {
        BitVector aug(2 * k);
        for (std::size_t c = 1; c <= k; ++c) aug.set(c, g.at(r, c));
        aug.set(k + r, 1);
        rows.push_back(aug);
    }
    for (std::size_t c = 1; c <= k; ++c) {
        std::size_t pivot = k;
        for (std::size_t r = c - 1; r < k; ++r)
            if (rows[r].at(c)) { pivot = r; break; }
        if (pivot == k)
            throw std::invalid_argument("systematize: leading columns are singular");
        std::swap(rows[c - 1], rows[pivot]);
        for (std::size_t r = 0; r < k; ++r)
            if (r != c - 1 && rows[r].at(c)) rows[r] = rows[r] ^ rows[c - 1];
    }
    BitMatrix a(k, k);
    for (std::size_t r = 1; r <= k; ++r)
        for (std::size_t c = 1; c <= k; ++c)
            a.set(r, c, rows[r - 1].at(k + c));
    return a;
}

std::vector<std::size_t> bit_reversal_perm(unsigned n) {
    std::size_t len = std::size_t{1} << n;
    std::vector<std::size_t> perm(len);
    for (std::size_t i = 0; i < len; ++i) {
        std::size_t rev = 0;
        for (unsigned b = 0; b < n; ++b)
            if (i & (std::size_t{1} << b)) rev |= std::size_t{1} << (n - 1 - b);
        perm[i] = rev + 1;
    }
    return perm;
}

BitMatrix permutation_matrix(const std::vector<std::size_t>& perm) {
    BitMatrix p(perm.size(), perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        check_index(perm[i], perm.size(), "permutation_matrix");
        p.set(i + 1, perm[i], 1);
    }
    return p;
}

BitMatrix column_permute(const BitMatrix& m, const std::vector<std::size_t>& perm) {
    if (perm.size() != m.cols())
        throw std::invalid_argument("column_permute: permutation length mismatch");
    BitMatrix out(m.rows(), m.cols());
    for (std::size_t c = 1; c <= m.cols(); ++c) {
        check_index(perm[c - 1], m.cols(), "column_permute");
        for (std::size_t r = 1; r <= m.rows(); ++r)
            if (m.at(r, perm[c - 1])) out.set(r, c, 1);
    }
    return out;
}

BitMatrix block_column_permute(const BitMatrix& m, std::size_t block,
                               const std::vector<std::size_t>& order) {
    if (block == 0 || m.cols() % block != 0)
        throw std::invalid_argument("block_column_permute: cols not divisible by block");
    std::size_t nblocks = m.cols() / block;
    if (order.size() != nblocks)
        throw std::invalid_argument("block_column_permute: order length mismatch");
    std::vector<std::size_t> perm(m.cols());
    for (std::size_t j = 0; j < nblocks; ++j) {
        check_index(order[j], nblocks, "block_column_permute");
        for (std::size_t c = 0; c < block; ++c)
            perm[j * block + c] = (order[j] - 1) * block + c + 1;
    }
    return column_permute(m, perm);
}

BitMatrix hstack(const BitMatrix& a, const BitMatrix& b) {
    if (a.rows() != b.rows())
        throw std::invalid_argument("hstack: row count mismatch");
    BitMatrix m(a.rows(), a.cols() + b.cols());
    for (std::size_t r = 1; r <= a.rows(); ++r) {
        for (std::size_t c = 1; c <= a.cols(); ++c)
            if (a.at(r, c)) m.set(r, c, 1);
        for (std::size_t c = 1; c <= b.cols(); ++c)
            if (b.at(r, c)) m.set(r, a.cols() + c, 1);
    }
    return m;
}

BitMatrix vstack(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.cols())
        throw std::invalid_argument("vstack: column count mismatch");
    BitMatrix m(a.rows() + b.rows(), a.cols());
    for (std::size_t r = 1; r <= a.rows(); ++r)
        for (std::size_t c = 1; c <= a.cols(); ++c)
            if (a.at(r, c)) m.set(r, c, 1);
    for (std::size_t r = 1; r <= b.rows(); ++r)
        for (std::size_t c = 1; c <= b.cols(); ++c)
            if (b.at(r, c)) m.set(a.rows() + r, c, 1);
    return m;
}

}  // namespace golay24
