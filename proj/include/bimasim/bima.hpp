#pragma once

#include <cstdint>
#include <vector>

#include "bimasim/constellation.hpp"

// Bit-interleaved multiple access: device bit fields are concatenated,
// permuted by a seeded multiaccess interleaver, and carried by one joint
// M_bw-QAM symbol (M_bw = product of the per-device orders). Every receiver
// detects the joint symbol, deinterleaves, and extracts its own field.

namespace bimasim {

class Interleaver {
public:
    /// Fisher-Yates permutation of the sum(log2 M_i) bit slots, deterministic
    /// per seed. Receivers are assumed to share the seed.
    static Interleaver build(const std::vector<unsigned>& orders, std::uint64_t seed);

    int total_bits() const { return static_cast<int>(perm_.size()); }
    std::uint64_t seed() const { return seed_; }
    const std::vector<int>& permutation() const { return perm_; }
    int device_count() const { return static_cast<int>(offsets_.size()); }
    int device_offset(int device) const { return offsets_[device - 1]; }
    int device_bits(int device) const { return bits_[device - 1]; }

    std::vector<std::uint8_t> interleave(const std::vector<std::uint8_t>& in) const;
    std::vector<std::uint8_t> deinterleave(const std::vector<std::uint8_t>& in) const;

    /// Label fast paths; bit k of the string is bit (n-1-k) of the integer.
    std::uint32_t interleave_label(std::uint32_t label) const;
    std::uint32_t deinterleave_label(std::uint32_t label) const;

private:
    std::uint64_t seed_ = 0;
    std::vector<int> perm_;     // out[k] = in[perm_[k]]
    std::vector<int> offsets_;  // concatenation offsets per device
    std::vector<int> bits_;     // field width per device
};

/// Map per-device labels (device order, log2(M_i) bits each) to one joint
/// symbol. The joint constellation order must equal the product of orders.
cplx bima_transmit(const std::vector<std::uint32_t>& device_labels, const Interleaver& itl,
                   const Constellation& joint);

/// Detect the joint symbol, deinterleave, slice out one device's label.
std::uint32_t bima_receive(cplx received, cplx gain, const Interleaver& itl,
                           const Constellation& joint, int device);

/// Bit-vector variants mirroring the wire view of the same operations.
cplx bima_transmit_bits(const std::vector<BitVec>& device_bits, const Interleaver& itl,
                        const Constellation& joint);
BitVec bima_receive_bits(cplx received, cplx gain, const Interleaver& itl,
                         const Constellation& joint, int device);

}  // namespace bimasim
