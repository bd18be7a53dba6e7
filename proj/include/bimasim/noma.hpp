#pragma once

#include <span>
#include <vector>

#include "bimasim/constellation.hpp"

// Conventional power-domain NOMA: superposition coding, the detectability
// power-allocation constraint with M-ary finite-alphabet inputs, iterative
// SIC reception with symbol-level residuals, and the per-device SINR.

namespace bimasim {

class PowerAllocation {
public:
    /// Validates positivity and strictly ascending coefficients, then
    /// normalizes to sum 1 (inputs are accepted if the raw sum is within
    /// 1e-3 of 1, covering rounded published vectors).
    static PowerAllocation from_alphas(std::vector<double> alphas);

    int device_count() const { return static_cast<int>(alphas_.size()); }
    double alpha(int device) const { return alphas_[device - 1]; }
    const std::vector<double>& alphas() const { return alphas_; }

private:
    std::vector<double> alphas_;
};

struct PaCheck {
    bool feasible = false;
    std::vector<double> bounds;   // detectability lower bound per device
    std::vector<double> margins;  // alpha_i - bound_i
};

/// Detectability check for finite-alphabet SIC: device i is decodable only
/// if alpha_i exceeds (M_i-1) * (sum_{j<i} sqrt(alpha_j/(M_j-1)) * (sqrt(M_j)-1))^2.
/// Accepts any positive coefficient vector (not necessarily normalized); the
/// constraint is homogeneous in the vector scale.
PaCheck check_pa_feasible(const std::vector<double>& alphas,
                          const std::vector<unsigned>& orders);

/// Builds a feasible allocation by walking the detectability bound with a
/// multiplicative margin t > 1 and normalizing. Throws if the weakest
/// device's share collapses below 1e-12 of the total.
PowerAllocation generate_pa(const std::vector<unsigned>& orders, double margin_t);

/// Superposition-coded composite symbol, sum_i sqrt(alpha_i) x_i.
cplx superpose(std::span<const cplx> symbols, const PowerAllocation& pa);

struct SicTrace {
    int device = 0;                        // device the receiver belongs to
    std::vector<std::size_t> detected_indices;  // stage decisions, device L first
    std::vector<cplx> detected_symbols;
    std::vector<cplx> residuals;           // received signal after each subtraction
    std::vector<double> deltas;            // |x_j - x_hat_j|^2, filled by annotate_deltas
};

struct SicResult {
    std::uint32_t label = 0;   // device's own detected label
    std::size_t index = 0;
    SicTrace trace;
};

/// Iterative SIC receiver for device i: detect and subtract devices L..i+1,
/// then detect device i. Device L runs zero cancellation stages.
/// `constellations` holds one alphabet per device in device order.
SicResult sic_receive(cplx received, cplx gain, const PowerAllocation& pa,
                      const std::vector<Constellation>& constellations, int device);

/// Fills trace.deltas from the transmitted unit-energy symbols (device order,
/// size L); delta_j = |x_j - x_hat_j|^2 for the stages j = L..i+1.
void annotate_deltas(SicTrace& trace, std::span<const cplx> true_symbols);

/// Trace deltas reordered to ascending device index i+1..L, the layout
/// sinr_conventional expects.
std::vector<double> deltas_in_device_order(const SicTrace& trace);

/// Post-SIC SINR of device i: deltas covers devices i+1..L in that order
/// (empty for device L or hypothesized perfect cancellation).
double sinr_conventional(const PowerAllocation& pa, int device, double gamma, double rho,
                         std::span<const double> deltas);

}  // namespace bimasim
