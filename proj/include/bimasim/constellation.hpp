#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace bimasim {

using cplx = std::complex<double>;
using BitVec = std::vector<std::uint8_t>;

/// First element of the vector is the first bit of the label string.
BitVec label_to_bits(std::uint32_t label, int nbits);
std::uint32_t bits_to_label(const BitVec& bits);

struct Detection {
    std::size_t index;
    std::uint32_t label;
};

// Gray-mapped rectangular/square M-QAM with unit average symbol energy.
//
// Amplitudes sit on the odd-integer grid {+-1, +-3, ...} scaled to unit mean
// energy. Labels are per-axis binary-reflected Gray codes, in-phase bits
// first; the all-zero field maps to the most negative amplitude. When
// log2(M) is odd the in-phase axis carries the extra bit.
class Constellation {
public:
    static Constellation qam(unsigned order);  // throws std::invalid_argument

    unsigned order() const { return order_; }
    int bit_count() const { return ibits_ + qbits_; }
    int i_bits() const { return ibits_; }
    int q_bits() const { return qbits_; }
    double scale() const { return scale_; }

    const std::vector<cplx>& points() const { return points_; }
    std::uint32_t label_of(std::size_t index) const { return labels_[index]; }
    std::size_t index_of_label(std::uint32_t label) const { return label_to_index_[label]; }

    cplx map_label(std::uint32_t label) const { return points_[label_to_index_[label]]; }
    cplx map_bits(const BitVec& bits) const;  // throws on length mismatch

    /// Minimum-distance decision by exhaustive scan; ties go to the lowest
    /// point index. Throws std::domain_error for a zero channel gain.
    Detection ml_detect(cplx received, cplx gain) const;

    /// Same decision via per-axis slicing on the equalized sample. Exact ML
    /// for this grid layout (up to boundary ties) and O(1) per symbol.
    Detection slice(cplx received, cplx gain) const;

private:
    unsigned order_ = 0;
    int ibits_ = 0, qbits_ = 0;
    double scale_ = 1.0;
    std::vector<cplx> points_;              // index = ki * 2^qbits + kq
    std::vector<std::uint32_t> labels_;     // index -> label
    std::vector<std::uint32_t> label_to_index_;
};

}  // namespace bimasim
