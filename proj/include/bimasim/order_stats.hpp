#pragma once

#include <vector>

#include "bimasim/rng.hpp"

// Distribution machinery for the ordered Rayleigh power gains: the i-th
// largest of L i.i.d. exponential gains under instantaneous channel ordering
// (ICO), plain per-device exponentials under statistical ordering (SCO).

namespace bimasim {

enum class Ordering { Ico, Sco };

struct GainModel {
    Ordering ordering = Ordering::Ico;
    int device_count = 1;
    double sigma2 = 1.0;                     // common variance under ICO
    std::vector<double> sigma2_per_device;   // per-device variances under SCO

    static GainModel ico(int device_count, double sigma2);
    /// Variances must be positive and non-increasing (device 1 strongest).
    static GainModel sco(std::vector<double> sigma2s);

    /// Channel variance seen by a device (1-based index).
    double variance_of(int device) const;
};

/// PDF of the i-th maximum of L i.i.d. Exp(sigma2) gains.
double ith_max_pdf(int device_count, int i, double sigma2, double gamma);

/// CDF of the i-th maximum.
double ith_max_cdf(int device_count, int i, double sigma2, double gamma);

/// MGF of the i-th maximum, E[exp(s*gamma)]. Defined left of the first pole
/// at s = i / sigma2; throws std::domain_error beyond it.
double ith_max_mgf(int device_count, int i, double sigma2, double s);

/// One channel draw: ICO returns the L gains sorted descending, SCO returns
/// one Exp(sigma_i^2) gain per device in device order.
std::vector<double> sample_gains(const GainModel& model, RandomStream& rng);

/// In-place variant used by the hot simulation loops.
void sample_gains(const GainModel& model, RandomStream& rng, std::vector<double>& out);

}  // namespace bimasim
