#include "golay24/kernel_scl.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "golay24/llr.hpp"

namespace golay24 {

struct KernelSclDecoder::Path {
    double metric = 0.0;
    std::uint32_t v_mask = 0;
    std::uint32_t u_mask = 0;
    std::uint32_t codeword = 0;
    std::vector<double> alpha;
    std::vector<std::uint8_t> beta;
};

KernelSclDecoder::KernelSclDecoder(std::vector<BitMatrix> stages,
                                   std::vector<std::size_t> info_set,
                                   const BitMatrix& transform, DecodeOptions opts)
    : info_set_1based_(std::move(info_set)), opts_(opts) {
    m_ = stages.size();
    n_ = 1;
    for (const auto& k : stages) {
        if (k.rows() != k.cols() || k.rows() < 2 || k.rows() > 8)
            throw std::invalid_argument("KernelSclDecoder: kernel must be square, 2..8");
        n_ *= k.rows();
    }
    if (n_ > 32)
        throw std::invalid_argument("KernelSclDecoder: block length > 32 unsupported");
    if (transform.rows() != n_ || transform.cols() != n_ ||
        !transform.is_upper_triangular_unit_diagonal())
        throw std::invalid_argument(
            "KernelSclDecoder: transform must be unit upper triangular of size N");

    frozen_.assign(n_, 1);
    for (std::size_t idx : info_set_1based_) {
        if (idx < 1 || idx > n_)
            throw std::invalid_argument("KernelSclDecoder: info index out of range");
        frozen_[idx - 1] = 0;
    }
    if (!std::is_sorted(info_set_1based_.begin(), info_set_1based_.end()) ||
        std::adjacent_find(info_set_1based_.begin(), info_set_1based_.end()) !=
            info_set_1based_.end())
        throw std::invalid_argument("KernelSclDecoder: info set must be ascending, distinct");

    tcol_.assign(n_, 0);
    for (std::size_t c = 1; c <= n_; ++c)
        for (std::size_t r = 1; r < c; ++r)
            if (transform.at(r, c)) tcol_[c - 1] |= (1u << (r - 1));

    stages_.resize(m_);
    std::size_t alpha_off = 0, beta_off = 0, child = n_;
    for (std::size_t d = 0; d < m_; ++d) {
        const BitMatrix& k = stages[d];
        Stage& s = stages_[d];
        s.k = k.rows();
        child /= s.k;
        s.child_len = child;
        for (std::size_t j = 0; j < s.k; ++j) {
            std::uint8_t mask = 0;
            for (std::size_t r = 0; r < s.k; ++r)
                if (k.at(r + 1, j + 1)) mask |= static_cast<std::uint8_t>(1u << r);
            s.colmask[j] = mask;
        }
        s.is_f2 = (s.k == 2 && k.at(1, 1) == 1 && k.at(1, 2) == 0 && k.at(2, 1) == 1 &&
                   k.at(2, 2) == 1);
        s.alpha_off = alpha_off;
        s.beta_off = beta_off;
        alpha_off += s.child_len;
        beta_off += s.k * s.child_len;
    }
    alpha_len_ = alpha_off;
    beta_len_ = beta_off;

    // Leaf digit table and the first stage whose node changes at each leaf.
    digits_.assign(n_ * std::max<std::size_t>(m_, 1), 0);
    enter_depth_.assign(n_, 1);
    for (std::size_t i = 0; i < n_; ++i) {
        std::size_t rem = i;
        for (std::size_t d = 0; d < m_; ++d) {
            std::size_t nd = stages_[d].child_len;
            digits_[i * m_ + d] = static_cast<std::uint8_t>(rem / nd);
            rem %= nd;
        }
        if (i == 0) {
            enter_depth_[i] = 1;
        } else {
            std::size_t d = 0;
            while (d < m_ && digits_[i * m_ + d] == digits_[(i - 1) * m_ + d]) ++d;
            enter_depth_[i] = static_cast<std::uint8_t>(d + 1);
        }
    }
}

namespace {

// Exact LLR of kernel input `phase` at one lane: enumerate the undecided
// inputs, score each full assignment by sum_j (1-2 x_j) a_j / 2 and
// combine with log-sum-exp (max when min_sum is set).
double kernel_marginal(const std::uint8_t* colmask, std::size_t k, std::size_t phase,
                       const double* a, std::size_t stride, std::size_t lane,
                       std::uint8_t known_bits, bool min_sum) {
    double best[2];
    double lse[2];
    std::size_t unknown = k - phase - 1;
    for (int b = 0; b < 2; ++b) {
        std::uint8_t base = static_cast<std::uint8_t>(known_bits | (b << phase));
        double mx = -1e300;
        double raw[128];
        std::size_t cnt = 0;
        for (std::size_t e = 0; e < (std::size_t{1} << unknown); ++e) {
            std::uint8_t cbits = static_cast<std::uint8_t>(base | (e << (phase + 1)));
            double score = 0.0;
            for (std::size_t j = 0; j < k; ++j) {
                double aj = a[j * stride + lane];
                score += (std::popcount(static_cast<unsigned>(cbits & colmask[j])) & 1) ? -aj : aj;
            }
            raw[cnt++] = score;
            mx = std::max(mx, score);
        }
        best[b] = mx;
        if (!min_sum) {
            double acc = 0.0;
            for (std::size_t t = 0; t < cnt; ++t) acc += std::exp(0.5 * (raw[t] - mx));
            lse[b] = 0.5 * mx + std::log(acc);
        }
    }
    if (min_sum) return 0.5 * (best[0] - best[1]);
    return lse[0] - lse[1];
}

}  // namespace

void KernelSclDecoder::refresh_alpha(Path& path, std::span<const double> channel,
                                     std::size_t leaf) const {
    for (std::size_t d = enter_depth_[leaf]; d <= m_; ++d) {
        const Stage& s = stages_[d - 1];
        std::size_t phase = digits_[leaf * m_ + (d - 1)];
        const double* parent =
            (d == 1) ? channel.data() : path.alpha.data() + stages_[d - 2].alpha_off;
        double* out = path.alpha.data() + s.alpha_off;
        const std::uint8_t* known = path.beta.data() + s.beta_off;
        for (std::size_t t = 0; t < s.child_len; ++t) {
            if (s.is_f2) {
                double a0 = parent[t];
                double a1 = parent[s.child_len + t];
                if (phase == 0)
                    out[t] = opts_.min_sum ? llr::boxplus_minsum(a0, a1) : llr::boxplus(a0, a1);
                else
                    out[t] = llr::vnode(a0, a1, known[t]);
            } else {
                std::uint8_t kb = 0;
                for (std::size_t p = 0; p < phase; ++p)
                    kb |= static_cast<std::uint8_t>((known[p * s.child_len + t] & 1u) << p);
                out[t] = kernel_marginal(s.colmask, s.k, phase, parent, s.child_len, t, kb,
                                         opts_.min_sum);
            }
        }
    }
}

void KernelSclDecoder::propagate(Path& path, std::size_t leaf, int u_bit) const {
    if (m_ == 0) {
        path.codeword = static_cast<std::uint32_t>(u_bit & 1);
        return;
    }
    std::uint8_t tmp[32];
    tmp[0] = static_cast<std::uint8_t>(u_bit & 1);
    std::size_t cur_len = 1;
    std::size_t d = m_;
    for (;;) {
        const Stage& s = stages_[d - 1];
        std::size_t phase = digits_[leaf * m_ + (d - 1)];
        std::uint8_t* slot = path.beta.data() + s.beta_off;
        std::copy(tmp, tmp + cur_len, slot + phase * s.child_len);
        if (phase != s.k - 1) break;
        // node complete: lane-wise kernel combine of its children
        std::uint8_t out[32];
        for (std::size_t j = 0; j < s.k; ++j)
            for (std::size_t t = 0; t < s.child_len; ++t) {
                std::uint8_t x = 0;
                for (std::size_t p = 0; p < s.k; ++p)
                    if (s.colmask[j] & (1u << p)) x ^= slot[p * s.child_len + t];
                out[j * s.child_len + t] = x;
            }
        cur_len *= s.k;
        std::copy(out, out + cur_len, tmp);
        if (d == 1) {
            std::uint32_t cw = 0;
            for (std::size_t t = 0; t < n_; ++t)
                if (tmp[t]) cw |= (1u << t);
            path.codeword = cw;
            break;
        }
        --d;
    }
}

std::vector<DecoderCandidate> KernelSclDecoder::decode(std::span<const double> llrs,
                                                       std::size_t list_size) const {
    if (llrs.size() != n_)
        throw std::invalid_argument("KernelSclDecoder::decode: LLR length mismatch");
    if (list_size < 1)
        throw std::invalid_argument("KernelSclDecoder::decode: list size must be >= 1");
    std::vector<double> channel(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        if (!std::isfinite(llrs[i]))
            throw std::invalid_argument("KernelSclDecoder::decode: non-finite LLR");
        channel[i] = llr::clamp(llrs[i]);
    }

    std::vector<Path> paths(1);
    paths[0].alpha.assign(alpha_len_, 0.0);
    paths[0].beta.assign(beta_len_, 0);

    std::vector<Path> next;
    for (std::size_t i = 0; i < n_; ++i) {
        for (auto& p : paths) refresh_alpha(p, channel, i);

        if (frozen_[i]) {
            for (auto& p : paths) {
                int prior = std::popcount(p.v_mask & tcol_[i]) & 1;
                double a = m_ ? p.alpha[stages_[m_ - 1].alpha_off] : channel[0];
                p.metric += llr::softplus(prior ? a : -a);
                if (prior) p.u_mask |= (1u << i);
                propagate(p, i, prior);
            }
            continue;
        }

        // fork every path on v_i; creation order is parent order with the
        // v=0 child first, and pruning keeps the stable best `list_size`
        struct Ext {
            std::size_t parent;
            std::uint8_t vbit;
            double metric;
        };
        std::vector<Ext> exts;
        exts.reserve(paths.size() * 2);
        for (std::size_t p = 0; p < paths.size(); ++p) {
            int prior = std::popcount(paths[p].v_mask & tcol_[i]) & 1;
            double a = m_ ? paths[p].alpha[stages_[m_ - 1].alpha_off] : channel[0];
            for (std::uint8_t vbit = 0; vbit < 2; ++vbit) {
                int u = prior ^ vbit;
                exts.push_back({p, vbit, paths[p].metric + llr::softplus(u ? a : -a)});
            }
        }
        std::vector<char> keep(exts.size(), 1);
        if (exts.size() > list_size) {
            std::vector<std::size_t> idx(exts.size());
            std::iota(idx.begin(), idx.end(), 0);
            std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
                return exts[a].metric < exts[b].metric;
            });
            std::fill(keep.begin(), keep.end(), 0);
            for (std::size_t t = 0; t < list_size; ++t) keep[idx[t]] = 1;
        }
        next.clear();
        next.reserve(std::min<std::size_t>(exts.size(), list_size));
        for (std::size_t e = 0; e < exts.size(); ++e) {
            if (!keep[e]) continue;
            const Ext& x = exts[e];
            next.push_back(paths[x.parent]);
            Path& np = next.back();
            np.metric = x.metric;
            int prior = std::popcount(np.v_mask & tcol_[i]) & 1;
            int u = prior ^ x.vbit;
            if (x.vbit) np.v_mask |= (1u << i);
            if (u) np.u_mask |= (1u << i);
            propagate(np, i, u);
        }
        paths.swap(next);
    }

    std::stable_sort(paths.begin(), paths.end(),
                     [](const Path& a, const Path& b) { return a.metric < b.metric; });
    std::vector<DecoderCandidate> out;
    out.reserve(paths.size());
    for (const auto& p : paths) {
        DecoderCandidate c;
        c.v = BitVector::from_mask(p.v_mask, n_);
        c.metric = p.metric;
        c.codeword = BitVector::from_mask(p.codeword, n_);
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace golay24
