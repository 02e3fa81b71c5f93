#include "ppide/alpha_bridge.hpp"

#include "ppide/errors.hpp"
#include "ppide/operators.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <utility>
#include <vector>

namespace ppide {

namespace {

const char* pade_name(PadeScheme p) {
    switch (p) {
    case PadeScheme::cn11:
        return "pp-cn11";
    case PadeScheme::pade12:
        return "pp-pade12";
    case PadeScheme::pade22:
        return "pp-pade22";
    }
    return "pp";
}

void validate_query(const AlphaQuery& q) {
    const auto& a = q.anchor_alphas;
    for (std::size_t i = 1; i < a.size(); ++i) {
        if (a[i] <= a[i - 1]) {
            throw config_error("anchor alphas must be strictly increasing");
        }
    }
    if (a.back() > 1) {
        throw config_error("anchor alphas above 1 have no integer-order solver");
    }
    if (!std::isfinite(q.alpha_real) || q.alpha_real >= 2.0) {
        throw config_error("target alpha must be finite and below 2");
    }
}

} // namespace

std::array<int, 4> default_anchors(double alpha_real) {
    if (alpha_real > 0.0) {
        return {-2, -1, 0, 1};
    }
    // The four integers <= 0 nearest to alpha; ties prefer the lower integer.
    std::vector<int> candidates;
    const int lo = static_cast<int>(std::floor(alpha_real)) - 4;
    for (int k = 0; k >= lo; --k) {
        candidates.push_back(k);
    }
    std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
        const double da = std::abs(a - alpha_real);
        const double db = std::abs(b - alpha_real);
        if (da != db) {
            return da < db;
        }
        return a < b;
    });
    std::array<int, 4> out{candidates[0], candidates[1], candidates[2], candidates[3]};
    std::sort(out.begin(), out.end());
    return out;
}

double cubic_lagrange(const std::array<std::pair<double, double>, 4>& nodes, double target) {
    double sum = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        double w = 1.0;
        for (std::size_t j = 0; j < 4; ++j) {
            if (j == i) {
                continue;
            }
            const double denom = nodes[i].first - nodes[j].first;
            if (denom == 0.0) {
                throw config_error("interpolation nodes must be distinct");
            }
            w *= (target - nodes[j].first) / denom;
        }
        sum += w * nodes[i].second;
    }
    return sum;
}

AnchorSolution solve_anchor(int alpha, const BridgeProblem& prob, std::span<const double> c0) {
    const Grid& g = prob.grid;
    std::vector<double> seed(c0.begin(), c0.end());

    if (alpha <= -1) {
        OperatorSpec spec;
        spec.side = prob.jump_side;
        spec.p = -(1 + alpha);
        spec.nu = prob.side.nu;
        spec.lambda = prob.side.lambda;
        spec.n = g.n_space;
        spec.h = g.h;
        const BandedMatrix a = build_A_operator(spec);
        std::string label = pade_name(prob.pade);
        if (prob.compensated) {
            label += "-comp";
        }
        if (g.n_time == 0) {
            return {alpha, std::move(label), std::move(seed)};
        }

        SchemeConfig cfg;
        cfg.pade = prob.pade;
        cfg.theta = g.theta;
        // The stepper's rate is (sqrt_v/2) A^{-1}; the model's jump term is
        // sqrt_v A^{-1}, so the weight is doubled at this call site.
        cfg.sqrt_v = 2.0 * prob.side.sqrt_v;
        cfg.compensated = prob.compensated;
        cfg.sign = prob.sign;
        const double comp =
            prob.compensated ? compensator(prob.side.lambda, prob.side.nu, alpha) : 0.0;

        const PpMarcher marcher(a, cfg, comp);
        return {alpha, std::move(label), marcher.march(std::move(seed), g.n_time)};
    }

    if (!prob.compensated) {
        throw config_error("anchors at alpha >= 0 exist only in the compensated family");
    }
    if (prob.sign != RateSign::growth) {
        throw config_error("anchors at alpha >= 0 only march the growth direction");
    }

    if (alpha == 0) {
        const bool cubic = prob.time_order == TimeOrder::order3;
        if (g.n_time == 0) {
            return {alpha, cubic ? "vg-cubic" : "vg-quadratic", std::move(seed)};
        }
        VgStepConfig cfg;
        cfg.side = prob.jump_side;
        cfg.m_real = prob.side.sqrt_v * prob.side.lambda * g.theta;
        cfg.nu = prob.side.nu;
        cfg.h = g.h;
        cfg.interpolation_orders = cubic ? std::vector<int>{0, 1, 2, 3} : std::vector<int>{0, 1, 2};
        const VgMarcher marcher(cfg, g.n_space);
        return {alpha, cubic ? "vg-cubic" : "vg-quadratic",
                marcher.march(std::move(seed), g.n_time)};
    }

    if (alpha == 1) {
        if (g.n_time == 0) {
            return {alpha,
                    prob.time_order == TimeOrder::order3 ? "infvar-order3" : "infvar-order2",
                    std::move(seed)};
        }
        InfVarConfig cfg;
        cfg.side = prob.jump_side;
        cfg.nu = prob.side.nu;
        cfg.lambda = prob.side.lambda;
        cfg.sqrt_v = prob.side.sqrt_v;
        cfg.nu_star = prob.nu_star;
        cfg.m_intervals = prob.m_intervals;
        cfg.theta = g.theta;
        cfg.time_order = prob.time_order;
        cfg.h = g.h;
        const InfVarMarcher marcher(cfg, g.n_space);
        return {alpha, prob.time_order == TimeOrder::order3 ? "infvar-order3" : "infvar-order2",
                marcher.march(std::move(seed), g.n_time)};
    }

    throw config_error("no integer-order solver for anchor alpha = " + std::to_string(alpha));
}

AlphaPriceResult price_real_alpha(const AlphaQuery& q, const BridgeProblem& prob,
                                  std::span<const double> c0) {
    validate_query(q);
    if (c0.size() != prob.grid.n_space) {
        throw config_error("initial data size does not match the grid");
    }

    AlphaPriceResult out;
    out.anchors = q.anchor_alphas;
    out.extrapolation =
        q.alpha_real < q.anchor_alphas.front() || q.alpha_real > q.anchor_alphas.back();
    out.anchor_solutions.resize(4);

    // Anchor marches are independent; dispatch them in waves of prob.threads.
    const std::size_t wave = std::max(1u, prob.threads);
    for (std::size_t start = 0; start < 4; start += wave) {
        const std::size_t stop = std::min<std::size_t>(4, start + wave);
        if (wave == 1) {
            for (std::size_t i = start; i < stop; ++i) {
                out.anchor_solutions[i] = solve_anchor(q.anchor_alphas[i], prob, c0);
            }
            continue;
        }
        std::vector<std::future<AnchorSolution>> futures;
        for (std::size_t i = start; i < stop; ++i) {
            futures.push_back(std::async(std::launch::async, [&, i] {
                return solve_anchor(q.anchor_alphas[i], prob, c0);
            }));
        }
        for (std::size_t i = start; i < stop; ++i) {
            out.anchor_solutions[i] = futures[i - start].get();
        }
    }

    const std::size_t n = prob.grid.n_space;
    out.values.resize(n);
    std::array<std::pair<double, double>, 4> nodes;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < 4; ++a) {
            nodes[a] = {static_cast<double>(out.anchor_solutions[a].alpha),
                        out.anchor_solutions[a].values[i]};
        }
        out.values[i] = cubic_lagrange(nodes, q.alpha_real);
    }
    return out;
}

} // namespace ppide
