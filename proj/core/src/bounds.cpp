#include "banditlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace banditlab {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

double clamp_up(double value, bool& clamped) {
    if (value < 1.0) {
        clamped = true;
        return 1.0;
    }
    return value;
}

/// The onset-time logarithms are meaningless below e (the bound would
/// shrink as the problem gets harder); clamp and record it.
double safe_log(double arg, bool& clamped) {
    constexpr double e = 2.718281828459045235;
    if (!(arg >= e)) {
        clamped = true;
        arg = e;
    }
    return std::log(arg);
}

}  // namespace

BoundInputs make_bound_inputs(double delta, double reg, double feature_bound, double param_bound,
                              double noise_std, double min_gap, double max_gap, int dim) {
    require(delta > 0.0 && delta <= 1.0, "bounds: delta must lie in (0, 1]");
    require(reg > 0.0, "bounds: reg must be positive");
    require(feature_bound > 0.0, "bounds: feature_bound must be positive");
    require(param_bound > 0.0, "bounds: param_bound must be positive");
    require(noise_std > 0.0, "bounds: noise_std must be positive");
    require(min_gap > 0.0, "bounds: min_gap must be positive");
    require(max_gap >= min_gap, "bounds: max_gap must be at least min_gap");
    require(dim > 0, "bounds: dim must be positive");

    BoundInputs in;
    in.delta = delta;
    in.feature_bound = feature_bound;
    in.min_gap = min_gap;
    in.dim = dim;
    in.clamped = false;
    in.reg = clamp_up(reg, in.clamped);
    in.param_bound = clamp_up(param_bound, in.clamped);
    in.noise_std = clamp_up(noise_std, in.clamped);
    in.max_gap = clamp_up(max_gap, in.clamped);
    if (in.max_gap < in.min_gap) in.max_gap = in.min_gap;
    return in;
}

double suboptimal_pulls_bound(const BoundInputs& in, double t) {
    require(t >= 0.0, "bounds: t must be nonnegative");
    const double d = static_cast<double>(in.dim);
    const double lsq = in.feature_bound * in.feature_bound;
    const double width = 2.0 * std::log(1.0 / in.delta) + d * std::log1p(t * lsq / (in.reg * d));
    const double num = 32.0 * in.max_gap * in.max_gap * in.reg * in.param_bound * in.param_bound *
                       in.noise_std * in.noise_std * width * width;
    return num / (in.min_gap * in.min_gap);
}

TauResult tau_hls(const BoundInputs& in, double lambda_hls) {
    if (!(lambda_hls > 0.0)) {
        TauResult inf;
        inf.tau = std::numeric_limits<double>::infinity();
        inf.exploration_branch = inf.tau;
        inf.concentration_branch = inf.tau;
        return inf;
    }

    const double d = static_cast<double>(in.dim);
    const double lam = in.reg;
    const double l = in.feature_bound;
    const double s = in.param_bound;
    const double sig = in.noise_std;
    const double gap = in.min_gap;

    TauResult out;

    const double expl_arg = 64.0 * d * d * l * l * l * sig * s * std::sqrt(lam) /
                            (std::sqrt(lambda_hls) * gap * in.delta);
    const double expl_base = 384.0 * d * l * s * sig * std::sqrt(lam) / (lambda_hls * gap);
    const double expl = expl_base * safe_log(expl_arg, out.log_clamped);
    out.exploration_branch = expl * expl;

    const double l4 = l * l * l * l;
    const double conc_arg = 512.0 * d * l4 / (in.delta * lambda_hls * lambda_hls);
    out.concentration_branch =
        768.0 * l4 / (lambda_hls * lambda_hls) * safe_log(conc_arg, out.log_clamped);

    out.tau = std::max(out.exploration_branch, out.concentration_branch);
    return out;
}

double regret_bound(const BoundInputs& in, double n, double tau, int m_reps) {
    require(n >= 0.0, "bounds: n must be nonnegative");
    require(tau >= 0.0, "bounds: tau must be nonnegative");
    require(m_reps >= 1, "bounds: m_reps must be at least 1");

    const double d = static_cast<double>(in.dim);
    const double lsq = in.feature_bound * in.feature_bound;
    const double horizon = std::min(tau, n);
    const double width = 2.0 * std::log(static_cast<double>(m_reps) / in.delta) +
                         d * std::log1p(horizon * lsq / (in.reg * d));
    return 32.0 * in.reg * in.max_gap * in.max_gap * in.param_bound * in.param_bound *
           in.noise_std * in.noise_std * width * width / in.min_gap;
}

}  // namespace banditlab
