/*
   Copyright 2026 The tcra authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "tcra/density_evolution.hpp"

#include <cmath>
#include <stdexcept>

namespace tcra {

namespace {
// psi(1 - p/2) = (1 - q p / 2)^(n_a - 1) for the binomial time-node law;
// evaluated directly instead of materializing the coefficient vector.
double psi_at(double q, int n_a, double x) {
    double base = 1.0 - q + q * x;
    double acc = 1.0;
    for (int i = 0; i < n_a - 1; ++i) acc *= base;
    return acc;
}
}  // namespace

double SystemDesign::outer_rate() const {
    if (has_ldpc_outer()) return ldpc().design_rate();
    return short_code().code.rate();
}

void SystemDesign::validate() const {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::domain_error("design: epsilon outside [0,1]");
    if (n_a_star < 1) throw std::invalid_argument("design: n_a_star must be >= 1");
    if (gamma.perspective() != Perspective::node)
        throw std::invalid_argument("design: gamma must be node perspective");
    if (gamma.has_degree_zero_mass())
        throw std::invalid_argument("design: gamma cannot have degree-0 mass");
    if (r_t < 0.0) throw std::invalid_argument("design: negative rate");
    const double ro = outer_rate();
    if (!(ro > 0.0 && ro <= 1.0)) throw std::invalid_argument("design: outer rate outside (0,1]");
    if (r_t > 0.0 && slot_occupancy() > 1.0 + 1e-12)
        throw std::invalid_argument("design: r_t exceeds R_o / Gamma'(1) (q > 1)");
    if (has_ldpc_outer() && ldpc().lambda.coeff(1) > 0.0)
        throw std::invalid_argument("design: lambda has degree-1 mass");
}

double check_transfer(const DegreePolynomial& rho_edge, double p_in) {
    return 1.0 - rho_edge.eval(1.0 - p_in);
}

double time_transfer(const DegreePolynomial& psi_edge, double epsilon, double p_in) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::domain_error("time_transfer: epsilon");
    return 1.0 - (1.0 - epsilon) * psi_edge.eval(1.0 - p_in / 2.0);
}

double erasure_floor(const DegreePolynomial& gamma_node, double epsilon) {
    return gamma_node.eval(epsilon);
}

double map_failure_transfer(const ErasureFailureProfile& profile, double p) {
    const int n = profile.n();
    if (n < 1) return 0.0;
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("map_failure_transfer: p outside [0,1]");
    if (p == 0.0) return profile.p_e[1];
    if (p == 1.0) return profile.p_e[static_cast<std::size_t>(n)];
    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    double sum = 0.0;
    double log_c = 0.0;  // log C(n-1, j), built incrementally
    for (int j = 0; j <= n - 1; ++j) {
        const double pe = profile.p_e[static_cast<std::size_t>(j) + 1];
        if (pe > 0.0) sum += pe * std::exp(log_c + j * lp + (n - 1 - j) * lq);
        log_c += std::log(static_cast<double>(n - 1 - j)) - std::log(static_cast<double>(j + 1));
    }
    return sum < 1.0 ? sum : 1.0;
}

DeResult ldpc_recursion(const SystemDesign& design, const DeOptions& opts) {
    design.validate();
    const LdpcEnsemble& ens = design.ldpc();
    const DegreePolynomial gamma_edge = design.gamma.to_edge();
    const DegreePolynomial lambda_node = ens.lambda_node();
    const double q = design.slot_occupancy();
    const double eps = design.epsilon;
    const int n_a = design.n_a_star;

    DeResult res;
    double p_tv = 1.0, p_cv = 1.0;
    double pe_prev = 1.0;
    for (int iter = 0; iter < opts.max_iter; ++iter) {
        const double p_vc = design.gamma.eval(p_tv) * ens.lambda.eval(p_cv);
        const double p_cv_next = 1.0 - ens.rho.eval(1.0 - p_vc);
        const double p_vt = lambda_node.eval(p_cv_next) * gamma_edge.eval(p_tv);
        const double p_tv_next = 1.0 - (1.0 - eps) * psi_at(q, n_a, 1.0 - p_vt / 2.0);
        p_cv = p_cv_next;
        p_tv = p_tv_next;
        const double pe = design.gamma.eval(p_tv) * lambda_node.eval(p_cv);
        if (pe > pe_prev + 1e-12)
            throw std::logic_error("ldpc_recursion: p_e increased along the trajectory");
        res.final_state = {p_vc, p_cv, p_vt, p_tv, 0.0, iter + 1, pe};
        if (opts.record_trajectory) res.trajectory.push_back(res.final_state);
        if (pe < opts.success_tol) {
            res.converged = true;
            return res;
        }
        if (std::abs(pe_prev - pe) < opts.stall_tol) return res;
        pe_prev = pe;
    }
    return res;
}

DeResult map_recursion(const SystemDesign& design, const DeOptions& opts) {
    design.validate();
    const ShortCodeOuter& outer = design.short_code();
    const DegreePolynomial gamma_edge = design.gamma.to_edge();
    const double q = design.slot_occupancy();
    const double eps = design.epsilon;
    const int n_a = design.n_a_star;

    DeResult res;
    double p_ct = 1.0;
    double prev = 2.0;
    for (int iter = 0; iter < opts.max_iter; ++iter) {
        const double p_tv = 1.0 - (1.0 - eps) * psi_at(q, n_a, 1.0 - p_ct / 2.0);
        const double p_vc = opts.v2c_perspective == Perspective::edge
                                ? gamma_edge.eval(p_tv)
                                : design.gamma.eval(p_tv);
        p_ct = p_vc * map_failure_transfer(outer.profile, p_vc);
        if (iter > 0 && p_ct > prev + 1e-12)
            throw std::logic_error("map_recursion: P_ct increased along the trajectory");
        res.final_state = {p_vc, 0.0, 0.0, p_tv, p_ct, iter + 1, p_ct};
        if (opts.record_trajectory) res.trajectory.push_back(res.final_state);
        if (p_ct < opts.success_tol_map) {
            res.converged = true;
            return res;
        }
        if (std::abs(prev - p_ct) < opts.stall_tol) return res;
        prev = p_ct;
    }
    return res;
}

double map_recursion_floor(const SystemDesign& design, const DeOptions& opts) {
    design.validate();
    const ShortCodeOuter& outer = design.short_code();
    const DegreePolynomial gamma_edge = design.gamma.to_edge();
    const double q = design.slot_occupancy();
    const double eps = design.epsilon;
    const int n_a = design.n_a_star;
    // The update map is monotone increasing in P_ct, so iterating upward from
    // zero converges to the smallest fixed point.
    double p_ct = 0.0;
    for (int iter = 0; iter < opts.max_iter; ++iter) {
        const double p_tv = 1.0 - (1.0 - eps) * psi_at(q, n_a, 1.0 - p_ct / 2.0);
        const double p_vc = opts.v2c_perspective == Perspective::edge
                                ? gamma_edge.eval(p_tv)
                                : design.gamma.eval(p_tv);
        const double next = p_vc * map_failure_transfer(outer.profile, p_vc);
        if (std::abs(next - p_ct) < opts.stall_tol) return next;
        p_ct = next;
    }
    return p_ct;
}

bool map_recursion_converges(const SystemDesign& design, const DeOptions& opts) {
    const double p_high = map_recursion(design, opts).final_state.p_ct;
    if (p_high < opts.success_tol_map) return true;
    const double p_low = map_recursion_floor(design, opts);
    return p_high <= std::max(2.0 * p_low, p_low + 1e-9);
}

TandemResult tandem_recursion(const SystemDesign& design, const DeOptions& opts) {
    design.validate();
    if (!design.has_ldpc_outer())
        throw std::invalid_argument("tandem_recursion: LDPC outer required");
    const LdpcEnsemble& ens = design.ldpc();
    const DegreePolynomial gamma_edge = design.gamma.to_edge();
    const DegreePolynomial lambda_node = ens.lambda_node();
    const double q = design.slot_occupancy();
    const double eps = design.epsilon;
    const int n_a = design.n_a_star;

    // Inner peeling alone (recursion with lambda == Lambda == 1).
    double p_tv = 1.0;
    for (int iter = 0; iter < opts.max_iter; ++iter) {
        const double p_vt = gamma_edge.eval(p_tv);
        const double next = 1.0 - (1.0 - eps) * psi_at(q, n_a, 1.0 - p_vt / 2.0);
        if (std::abs(next - p_tv) < opts.stall_tol) {
            p_tv = next;
            break;
        }
        p_tv = next;
    }
    TandemResult out;
    out.inner_message_erasure = p_tv;
    out.inner_bit_erasure = design.gamma.eval(p_tv);

    // Standard BEC density evolution of (lambda, rho) at the inner residual.
    const double e_eff = out.inner_bit_erasure;
    double x = e_eff;
    for (int iter = 0; iter < opts.max_iter; ++iter) {
        const double next = e_eff * ens.lambda.eval(1.0 - ens.rho.eval(1.0 - x));
        if (std::abs(next - x) < opts.stall_tol) {
            x = next;
            break;
        }
        x = next;
    }
    out.residual = e_eff * lambda_node.eval(1.0 - ens.rho.eval(1.0 - x));
    out.converged = out.residual < opts.success_tol;
    return out;
}

namespace {
bool run_converges(const SystemDesign& base, double rate, const ThresholdOptions& opts) {
    SystemDesign d = base;
    d.r_t = rate;
    if (opts.kind == RecursionKind::tandem) return tandem_recursion(d, opts.de).converged;
    if (d.has_ldpc_outer()) return ldpc_recursion(d, opts.de).converged;
    return map_recursion_converges(d, opts.de);
}
}  // namespace

ThresholdResult threshold_rate(const SystemDesign& design_sans_rate, const ThresholdOptions& opts) {
    if (!(opts.q_max > 0.0 && opts.q_max <= 1.0))
        throw std::invalid_argument("threshold_rate: q_max outside (0,1]");
    ThresholdResult res;
    const double cap = opts.q_max * design_sans_rate.outer_rate() /
                       design_sans_rate.gamma.mean_degree();
    res.recursion_runs = 1;
    if (run_converges(design_sans_rate, cap, opts)) {
        res.r_t_star = cap;
        res.bracket_ok = true;
        res.capped = true;
        return res;
    }
    double lo = 0.0, hi = cap;
    while (hi - lo > opts.rate_tol) {
        const double mid = 0.5 * (lo + hi);
        ++res.recursion_runs;
        if (run_converges(design_sans_rate, mid, opts))
            lo = mid;
        else
            hi = mid;
    }
    res.r_t_star = lo;
    res.bracket_ok = lo > 0.0;
    return res;
}

UsersResult threshold_users(const SystemDesign& design, const DeOptions& opts, int n_a_max) {
    UsersResult res;
    if (design.r_t > design.outer_rate() / design.gamma.mean_degree() + 1e-12) {
        res.rate_feasible = false;
        return res;
    }
    for (int n_a = 1; n_a <= n_a_max; ++n_a) {
        SystemDesign d = design;
        d.n_a_star = n_a;
        const bool ok = d.has_ldpc_outer() ? ldpc_recursion(d, opts).converged
                                           : map_recursion_converges(d, opts);
        if (!ok) break;
        res.n_a_star = n_a;
    }
    return res;
}

}  // namespace tcra
