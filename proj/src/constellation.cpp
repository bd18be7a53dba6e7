#include "bimasim/constellation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "bimasim/special.hpp"

namespace bimasim {

BitVec label_to_bits(std::uint32_t label, int nbits) {
    BitVec out(nbits);
    for (int k = 0; k < nbits; ++k) out[k] = (label >> (nbits - 1 - k)) & 1u;
    return out;
}

std::uint32_t bits_to_label(const BitVec& bits) {
    std::uint32_t label = 0;
    for (std::uint8_t b : bits) label = (label << 1) | (b & 1u);
    return label;
}

namespace {

std::uint32_t gray_encode(std::uint32_t k) { return k ^ (k >> 1); }

int slice_axis(double value, double scale, int levels) {
    // Levels are (2k - (levels-1)) * scale for k = 0..levels-1.
    const double u = (value / scale + (levels - 1)) * 0.5;
    long k = std::lround(u);
    if (k < 0) k = 0;
    if (k >= levels) k = levels - 1;
    return static_cast<int>(k);
}

}  // namespace

Constellation Constellation::qam(unsigned order) {
    if (order < 2 || !is_power_of_two(order))
        throw std::invalid_argument("Constellation::qam: order must be a power of two >= 2");
    Constellation c;
    c.order_ = order;
    const int nbits = int_log2(order);
    c.ibits_ = (nbits + 1) / 2;
    c.qbits_ = nbits / 2;
    const int mi = 1 << c.ibits_;
    const int mq = 1 << c.qbits_;
    const double energy = ((double(mi) * mi - 1.0) + (double(mq) * mq - 1.0)) / 3.0;
    c.scale_ = 1.0 / std::sqrt(energy);

    c.points_.resize(order);
    c.labels_.resize(order);
    c.label_to_index_.resize(order);
    for (int ki = 0; ki < mi; ++ki) {
        const double re = (2.0 * ki - (mi - 1)) * c.scale_;
        for (int kq = 0; kq < mq; ++kq) {
            const double im = (2.0 * kq - (mq - 1)) * c.scale_;
            const std::size_t index = std::size_t(ki) * mq + kq;
            const std::uint32_t label = (gray_encode(ki) << c.qbits_) | gray_encode(kq);
            c.points_[index] = cplx(re, im);
            c.labels_[index] = label;
            c.label_to_index_[label] = static_cast<std::uint32_t>(index);
        }
    }
    return c;
}

cplx Constellation::map_bits(const BitVec& bits) const {
    if (static_cast<int>(bits.size()) != bit_count())
        throw std::invalid_argument("map_bits: bit string length does not match log2(M)");
    return map_label(bits_to_label(bits));
}

Detection Constellation::ml_detect(cplx received, cplx gain) const {
    if (gain == cplx(0.0, 0.0)) throw std::domain_error("ml_detect: zero channel gain");
    std::size_t best = 0;
    double best_metric = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < points_.size(); ++k) {
        const double d = std::norm(received - gain * points_[k]);
        if (d < best_metric) {
            best_metric = d;
            best = k;
        }
    }
    return {best, labels_[best]};
}

Detection Constellation::slice(cplx received, cplx gain) const {
    if (gain == cplx(0.0, 0.0)) throw std::domain_error("slice: zero channel gain");
    const cplx z = received / gain;
    const int mi = 1 << ibits_;
    const int mq = 1 << qbits_;
    const int ki = slice_axis(z.real(), scale_, mi);
    const int kq = qbits_ == 0 ? 0 : slice_axis(z.imag(), scale_, mq);
    const std::size_t index = std::size_t(ki) * mq + kq;
    return {index, labels_[index]};
}

}  // namespace bimasim
