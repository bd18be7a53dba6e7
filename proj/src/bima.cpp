#include "bimasim/bima.hpp"

#include <stdexcept>

#include "bimasim/rng.hpp"
#include "bimasim/special.hpp"

namespace bimasim {

Interleaver Interleaver::build(const std::vector<unsigned>& orders, std::uint64_t seed) {
    if (orders.empty()) throw std::invalid_argument("interleaver: no devices");
    Interleaver itl;
    itl.seed_ = seed;
    int total = 0;
    for (unsigned m : orders) {
        if (m < 2 || !is_power_of_two(m))
            throw std::invalid_argument("interleaver: orders must be powers of two >= 2");
        itl.offsets_.push_back(total);
        const int b = int_log2(m);
        itl.bits_.push_back(b);
        total += b;
    }
    itl.perm_.resize(total);
    for (int k = 0; k < total; ++k) itl.perm_[k] = k;
    RandomStream rng(derive_seed(seed, 0x1717u));
    for (int k = total - 1; k > 0; --k) {
        const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(k) + 1));
        std::swap(itl.perm_[k], itl.perm_[j]);
    }
    return itl;
}

std::vector<std::uint8_t> Interleaver::interleave(const std::vector<std::uint8_t>& in) const {
    if (in.size() != perm_.size()) throw std::invalid_argument("interleave: size mismatch");
    std::vector<std::uint8_t> out(in.size());
    for (std::size_t k = 0; k < perm_.size(); ++k) out[k] = in[perm_[k]];
    return out;
}

std::vector<std::uint8_t> Interleaver::deinterleave(const std::vector<std::uint8_t>& in) const {
    if (in.size() != perm_.size()) throw std::invalid_argument("deinterleave: size mismatch");
    std::vector<std::uint8_t> out(in.size());
    for (std::size_t k = 0; k < perm_.size(); ++k) out[perm_[k]] = in[k];
    return out;
}

std::uint32_t Interleaver::interleave_label(std::uint32_t label) const {
    const int n = total_bits();
    std::uint32_t out = 0;
    for (int k = 0; k < n; ++k) {
        const std::uint32_t bit = (label >> (n - 1 - perm_[k])) & 1u;
        out |= bit << (n - 1 - k);
    }
    return out;
}

std::uint32_t Interleaver::deinterleave_label(std::uint32_t label) const {
    const int n = total_bits();
    std::uint32_t out = 0;
    for (int k = 0; k < n; ++k) {
        const std::uint32_t bit = (label >> (n - 1 - k)) & 1u;
        out |= bit << (n - 1 - perm_[k]);
    }
    return out;
}

namespace {

void check_joint(const Interleaver& itl, const Constellation& joint) {
    if (joint.bit_count() != itl.total_bits())
        throw std::invalid_argument("joint constellation order must be the product of device orders");
}

}  // namespace

cplx bima_transmit(const std::vector<std::uint32_t>& device_labels, const Interleaver& itl,
                   const Constellation& joint) {
    check_joint(itl, joint);
    if (static_cast<int>(device_labels.size()) != itl.device_count())
        throw std::invalid_argument("bima_transmit: label count mismatch");
    const int n = itl.total_bits();
    std::uint32_t concat = 0;
    for (int i = 1; i <= itl.device_count(); ++i) {
        const int b = itl.device_bits(i);
        const std::uint32_t lab = device_labels[i - 1];
        if (lab >> b) throw std::invalid_argument("bima_transmit: label exceeds device order");
        concat |= lab << (n - itl.device_offset(i) - b);
    }
    return joint.map_label(itl.interleave_label(concat));
}

std::uint32_t bima_receive(cplx received, cplx gain, const Interleaver& itl,
                           const Constellation& joint, int device) {
    check_joint(itl, joint);
    if (device < 1 || device > itl.device_count())
        throw std::invalid_argument("bima_receive: device out of range");
    const Detection det = joint.slice(received, gain);
    const std::uint32_t concat = itl.deinterleave_label(det.label);
    const int n = itl.total_bits();
    const int b = itl.device_bits(device);
    return (concat >> (n - itl.device_offset(device) - b)) & ((1u << b) - 1u);
}

cplx bima_transmit_bits(const std::vector<BitVec>& device_bits, const Interleaver& itl,
                        const Constellation& joint) {
    std::vector<std::uint32_t> labels;
    labels.reserve(device_bits.size());
    for (std::size_t i = 0; i < device_bits.size(); ++i) {
        if (static_cast<int>(device_bits[i].size()) != itl.device_bits(static_cast<int>(i) + 1))
            throw std::invalid_argument("bima_transmit_bits: field width mismatch");
        labels.push_back(bits_to_label(device_bits[i]));
    }
    return bima_transmit(labels, itl, joint);
}

BitVec bima_receive_bits(cplx received, cplx gain, const Interleaver& itl,
                         const Constellation& joint, int device) {
    const std::uint32_t lab = bima_receive(received, gain, itl, joint, device);
    return label_to_bits(lab, itl.device_bits(device));
}

}  // namespace bimasim
