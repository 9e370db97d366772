#include "golay24/pac.hpp"

#include <algorithm>
#include <stdexcept>

namespace golay24 {

void PacSpec::validate() const {
    std::size_t N = block_length();
    if (N > 32)
        throw std::invalid_argument("PacSpec: block length > 32 unsupported");
    if (transform.rows() != N || transform.cols() != N)
        throw std::invalid_argument("PacSpec: transform size mismatch");
    if (!transform.is_upper_triangular_unit_diagonal())
        throw std::invalid_argument("PacSpec: transform must be unit upper triangular");
    if (info_set.size() > N)
        throw std::invalid_argument("PacSpec: info set larger than block");
    if (!std::is_sorted(info_set.begin(), info_set.end()))
        throw std::invalid_argument("PacSpec: info set must be ascending");
    for (std::size_t i : info_set)
        if (i < 1 || i > N)
            throw std::invalid_argument("PacSpec: info index out of range");
}

BitMatrix polar_matrix(unsigned n, bool bit_reversed) {
    BitMatrix f = BitMatrix::identity(1);
    const BitMatrix f2 = BitMatrix::from_rows({"10", "11"});
    for (unsigned i = 0; i < n; ++i) f = kron(f2, f);
    if (bit_reversed)
        f = gf2_matmul(f, permutation_matrix(bit_reversal_perm(n)));
    return f;
}

BitVector pac_encode(const PacSpec& spec, const BitVector& msg) {
    spec.validate();
    if (msg.size() != spec.info_set.size())
        throw std::invalid_argument("pac_encode: message length mismatch");
    BitVector v(spec.block_length());
    for (std::size_t j = 0; j < spec.info_set.size(); ++j)
        v.set(spec.info_set[j], msg.at(j + 1));
    return gf2_vecmat(gf2_vecmat(v, spec.transform),
                      polar_matrix(spec.n, spec.bit_reversed));
}

namespace {

std::vector<BitMatrix> f2_chain(unsigned n) {
    std::vector<BitMatrix> stages;
    const BitMatrix f2 = BitMatrix::from_rows({"10", "11"});
    for (unsigned i = 0; i < n; ++i) stages.push_back(f2);
    return stages;
}

}  // namespace

std::vector<DecoderCandidate> scl_decode(const PacSpec& spec, std::span<const double> llrs,
                                         std::size_t list_size, DecodeOptions opts) {
    spec.validate();
    std::size_t N = spec.block_length();
    if (llrs.size() != N)
        throw std::invalid_argument("scl_decode: LLR length mismatch");

    KernelSclDecoder dec(f2_chain(spec.n), spec.info_set, spec.transform, opts);
    if (!spec.bit_reversed)
        return dec.decode(llrs, list_size);

    // The bit-reversed code is a column permutation of the natural-order
    // one: permute the channel in, permute the codewords back out.
    auto perm = bit_reversal_perm(spec.n);
    std::vector<double> natural(N);
    for (std::size_t i = 0; i < N; ++i) natural[i] = llrs[perm[i] - 1];
    auto cands = dec.decode(natural, list_size);
    for (auto& c : cands) {
        BitVector permuted(N);
        for (std::size_t i = 1; i <= N; ++i) permuted.set(perm[i - 1], c.codeword.at(i));
        c.codeword = permuted;
    }
    return cands;
}

DecoderCandidate sc_decode(const PacSpec& spec, std::span<const double> llrs,
                           DecodeOptions opts) {
    return scl_decode(spec, llrs, 1, opts).front();
}

}  // namespace golay24
