#include "bimasim/montecarlo.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "bimasim/bima.hpp"
#include "bimasim/rng.hpp"
#include "bimasim/special.hpp"

namespace bimasim {

namespace {

constexpr double kSqrtHalf = 0.70710678118654752440084436210485;

std::uint64_t metric_tag(Metric m) { return static_cast<std::uint64_t>(m) + 1; }
std::uint64_t scheme_tag(Scheme s) { return static_cast<std::uint64_t>(s) + 11; }

struct DeviceAccum {
    std::uint64_t events = 0;   // error bits or outage events
    std::uint64_t bits = 0;     // denominator for BER
    double sum = 0.0;           // rate accumulator for EC
    double sumsq = 0.0;
};

struct ChainContext {
    const ScenarioConfig* cfg = nullptr;
    Scheme scheme = Scheme::Bima;
    GainModel gains;
    std::vector<double> targets;
    std::vector<unsigned> orders;
    int total_bits = 0;
    // BIMA side
    Constellation joint{};
    std::vector<int> field_offset, field_bits;
    // Conventional side
    PowerAllocation pa{};
    std::vector<Constellation> per_device;
    std::vector<double> sqrt_alpha;

    explicit ChainContext(const SweepPlan& plan)
        : cfg(&plan.scenario), scheme(plan.scheme), gains(plan.scenario.gain_model()) {
        targets = cfg->resolved_target_rates();
        orders = cfg->orders;
        for (unsigned m : orders) total_bits += int_log2(m);
        if (scheme == Scheme::Bima) {
            joint = Constellation::qam(joint_order(orders));
            int ofs = 0;
            for (unsigned m : orders) {
                field_offset.push_back(ofs);
                field_bits.push_back(int_log2(m));
                ofs += int_log2(m);
            }
        } else {
            pa = cfg->resolve_pa();
            for (unsigned m : orders) per_device.push_back(Constellation::qam(m));
            for (int i = 1; i <= cfg->device_count; ++i)
                sqrt_alpha.push_back(std::sqrt(pa.alpha(i)));
        }
    }
};

cplx draw_noise(RandomStream& rng) {
    return cplx(kSqrtHalf * rng.normal(), kSqrtHalf * rng.normal());
}

cplx draw_channel(double gamma, RandomStream& rng) {
    const double phase = 2.0 * std::numbers::pi * rng.uniform();
    const double amp = std::sqrt(gamma);
    return cplx(amp * std::cos(phase), amp * std::sin(phase));
}

std::uint32_t permute_label(std::uint32_t label, int n, const std::vector<int>& perm) {
    std::uint32_t out = 0;
    for (int k = 0; k < n; ++k) out |= ((label >> (n - 1 - perm[k])) & 1u) << (n - 1 - k);
    return out;
}

std::uint32_t unpermute_label(std::uint32_t label, int n, const std::vector<int>& perm) {
    std::uint32_t out = 0;
    for (int k = 0; k < n; ++k) out |= ((label >> (n - 1 - k)) & 1u) << (n - 1 - perm[k]);
    return out;
}

void draw_permutation(std::vector<int>& perm, RandomStream& rng) {
    for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = static_cast<int>(k);
    for (std::size_t k = perm.size() - 1; k > 0; --k) {
        const std::size_t j = rng.below(k + 1);
        std::swap(perm[k], perm[j]);
    }
}

/// One conventional SIC pass at device i; returns the detected own label and
/// fills deltas (ascending device order i+1..L) when requested.
std::uint32_t conv_chain(const ChainContext& ctx, int device, cplx received, cplx gain,
                         const std::vector<std::size_t>* true_indices,
                         std::vector<double>* deltas) {
    const int L = ctx.cfg->device_count;
    cplx cur = received;
    if (deltas) deltas->assign(L - device, 0.0);
    for (int j = L; j > device; --j) {
        const cplx stage_gain = gain * ctx.sqrt_alpha[j - 1];
        const Detection det = ctx.per_device[j - 1].slice(cur, stage_gain);
        const cplx sym = ctx.per_device[j - 1].points()[det.index];
        cur -= stage_gain * sym;
        if (deltas) {
            const cplx truth = ctx.per_device[j - 1].points()[(*true_indices)[j - 1]];
            (*deltas)[j - device - 1] = std::norm(truth - sym);
        }
    }
    return ctx.per_device[device - 1].slice(cur, gain * ctx.sqrt_alpha[device - 1]).label;
}

struct PointResult {
    std::vector<KpiPoint> per_device;
};

PointResult run_point(const ChainContext& ctx, Metric metric, std::size_t point_index) {
    const ScenarioConfig& cfg = *ctx.cfg;
    const int L = cfg.device_count;
    const double rho = db_to_linear(cfg.rho_grid_db[point_index]);
    const double sqrt_rho = std::sqrt(rho);
    const TrialBudget& budget = cfg.budget;

    // The channel stream must not depend on the scheme (paired comparisons).
    RandomStream gains_rng(derive_seed(cfg.seed, 0xC4A221E5ull + point_index, metric_tag(metric)));
    RandomStream rng(derive_seed(cfg.seed, 0x0D15E5EEull + point_index, metric_tag(metric),
                                 scheme_tag(ctx.scheme)));

    std::vector<DeviceAccum> acc(L);
    std::vector<double> gamma;
    std::vector<int> perm(ctx.total_bits);
    std::vector<std::size_t> tx_indices(L);
    std::vector<std::uint32_t> tx_labels(L);
    std::vector<cplx> tx_symbols(L);
    std::vector<double> deltas;

    std::uint64_t trials = 0;
    std::uint64_t bits_done = 0;

    auto events_satisfied = [&]() {
        if (metric == Metric::Ec) return false;  // EC runs the full trial budget
        for (const DeviceAccum& a : acc)
            if (a.events < budget.min_error_events) return false;
        return true;
    };

    while (trials < budget.max_trials) {
        if (metric == Metric::Ber && bits_done >= budget.max_bits) break;
        if (events_satisfied()) break;
        ++trials;
        sample_gains(ctx.gains, gains_rng, gamma);

        if (metric == Metric::Op && ctx.scheme == Scheme::Bima) {
            // Rate outage needs no waveform: indicator on the gain only.
            for (int i = 1; i <= L; ++i) {
                const double rate = bima_rate(i, ctx.orders, rho * gamma[i - 1]);
                if (rate < ctx.targets[i - 1]) ++acc[i - 1].events;
            }
            continue;
        }
        if (metric == Metric::Ec && ctx.scheme == Scheme::Bima) {
            for (int i = 1; i <= L; ++i) {
                const double rate = bima_rate(i, ctx.orders, rho * gamma[i - 1]);
                acc[i - 1].sum += rate;
                acc[i - 1].sumsq += rate * rate;
            }
            continue;
        }

        if (ctx.scheme == Scheme::Bima) {  // Metric::Ber
            draw_permutation(perm, rng);
            const std::uint32_t concat = rng.label_bits(ctx.total_bits);
            const cplx x = ctx.joint.map_label(permute_label(concat, ctx.total_bits, perm));
            for (int i = 1; i <= L; ++i) {
                const cplx h = draw_channel(gamma[i - 1], rng);
                const cplx g = sqrt_rho * h;
                const cplx y = g * x + draw_noise(rng);
                const std::uint32_t rx =
                    unpermute_label(ctx.joint.slice(y, g).label, ctx.total_bits, perm);
                const int b = ctx.field_bits[i - 1];
                const std::uint32_t field_mask = (b == 32) ? 0xFFFFFFFFu : ((1u << b) - 1u);
                const std::uint32_t diff =
                    ((rx ^ concat) >> (ctx.total_bits - ctx.field_offset[i - 1] - b)) & field_mask;
                acc[i - 1].events += std::popcount(diff);
                acc[i - 1].bits += b;
                bits_done += b;
            }
            continue;
        }

        // Conventional chains share one composite symbol per trial.
        for (int i = 0; i < L; ++i) {
            tx_labels[i] = rng.label_bits(ctx.field_bits.empty() ? int_log2(ctx.orders[i])
                                                                 : ctx.field_bits[i]);
        }
        cplx xsc(0.0, 0.0);
        for (int i = 0; i < L; ++i) {
            tx_indices[i] = ctx.per_device[i].index_of_label(tx_labels[i]);
            tx_symbols[i] = ctx.per_device[i].points()[tx_indices[i]];
            xsc += ctx.sqrt_alpha[i] * tx_symbols[i];
        }
        for (int i = 1; i <= L; ++i) {
            const cplx h = draw_channel(gamma[i - 1], rng);
            const cplx g = sqrt_rho * h;
            const cplx y = g * xsc + draw_noise(rng);
            switch (metric) {
                case Metric::Ber: {
                    const std::uint32_t rx = conv_chain(ctx, i, y, g, nullptr, nullptr);
                    const int b = int_log2(ctx.orders[i - 1]);
                    acc[i - 1].events += std::popcount(rx ^ tx_labels[i - 1]);
                    acc[i - 1].bits += b;
                    bits_done += b;
                    break;
                }
                case Metric::Op:
                case Metric::Ec: {
                    conv_chain(ctx, i, y, g, &tx_indices, &deltas);
                    const double rate =
                        conv_rate(ctx.pa, i, gamma[i - 1], rho, deltas);
                    if (metric == Metric::Op) {
                        if (rate < ctx.targets[i - 1]) ++acc[i - 1].events;
                    } else {
                        acc[i - 1].sum += rate;
                        acc[i - 1].sumsq += rate * rate;
                    }
                    break;
                }
            }
        }
    }

    PointResult out;
    out.per_device.resize(L);
    for (int i = 0; i < L; ++i) {
        KpiPoint& pt = out.per_device[i];
        pt.rho_db = cfg.rho_grid_db[point_index];
        pt.trials = trials;
        if (metric == Metric::Ec) {
            const double mean = acc[i].sum / double(trials);
            const double var =
                std::max(0.0, acc[i].sumsq / double(trials) - mean * mean);
            pt.value = mean;
            pt.std_error = std::sqrt(var / double(trials));
            pt.low_confidence = false;
        } else {
            const std::uint64_t denom = metric == Metric::Ber ? acc[i].bits : trials;
            const double p = denom ? double(acc[i].events) / double(denom) : 0.0;
            pt.value = p;
            pt.std_error = denom ? std::sqrt(std::max(0.0, p * (1.0 - p)) / double(denom)) : 0.0;
            pt.low_confidence = acc[i].events < budget.min_error_events;
        }
    }
    return out;
}

std::vector<KpiCurve> simulate(const SweepPlan& plan, Metric metric) {
    const ScenarioConfig& cfg = plan.scenario;
    if (cfg.rho_grid_db.empty()) throw std::invalid_argument("simulate: empty SNR grid");
    const ChainContext ctx(plan);
    const std::size_t npoints = cfg.rho_grid_db.size();

    std::vector<PointResult> results(npoints);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= npoints) return;
            results[k] = run_point(ctx, metric, k);
        }
    };
    const unsigned nthreads =
        std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                        static_cast<unsigned>(npoints)));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t + 1 < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();

    std::vector<KpiCurve> curves(cfg.device_count);
    for (int i = 0; i < cfg.device_count; ++i) {
        KpiCurve& c = curves[i];
        c.scheme = plan.scheme;
        c.metric = metric;
        c.ordering = cfg.ordering;
        c.provenance = Provenance::Simulated;
        c.device = i + 1;
        c.seed = cfg.seed;
        for (std::size_t k = 0; k < npoints; ++k) c.points.push_back(results[k].per_device[i]);
    }
    return curves;
}

}  // namespace

std::vector<KpiCurve> simulate_ber(const SweepPlan& plan) { return simulate(plan, Metric::Ber); }
std::vector<KpiCurve> simulate_op(const SweepPlan& plan) { return simulate(plan, Metric::Op); }
std::vector<KpiCurve> simulate_ec(const SweepPlan& plan) { return simulate(plan, Metric::Ec); }

double estimate_diversity(const KpiCurve& curve) {
    if (curve.points.empty()) throw std::runtime_error("diversity fit: empty curve");
    double top = curve.points.front().rho_db;
    for (const KpiPoint& p : curve.points) top = std::max(top, p.rho_db);
    std::vector<double> xs, ys;
    for (const KpiPoint& p : curve.points) {
        if (p.rho_db < top - 10.0 - 1e-9) continue;
        if (!(p.value > 0.0))
            throw std::runtime_error("diversity fit: nonpositive value in fit range");
        xs.push_back(p.rho_db / 10.0);  // log10 of linear SNR
        ys.push_back(std::log10(p.value));
    }
    if (xs.size() < 2) throw std::runtime_error("diversity fit: need at least two points");
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        mx += xs[k];
        my += ys[k];
    }
    mx /= xs.size();
    my /= ys.size();
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sxx += (xs[k] - mx) * (xs[k] - mx);
        sxy += (xs[k] - mx) * (ys[k] - my);
    }
    return -sxy / sxx;
}

}  // namespace bimasim
