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

#ifndef TCRA_DENSITY_EVOLUTION_HPP
#define TCRA_DENSITY_EVOLUTION_HPP

#include <string>
#include <variant>
#include <vector>

#include "tcra/block_code.hpp"
#include "tcra/degree_poly.hpp"
#include "tcra/erasure_profile.hpp"

namespace tcra {

/// Outer LDPC ensemble: edge-perspective pair (lambda, rho).
struct LdpcEnsemble {
    // Placeholder (2,3)-regular pair; real ensembles assign both members.
    DegreePolynomial lambda{std::vector<double>{0.0, 0.0, 1.0}, Perspective::edge};
    DegreePolynomial rho{std::vector<double>{0.0, 0.0, 0.0, 1.0}, Perspective::edge};

    DegreePolynomial lambda_node() const { return lambda.to_node(); }
    // R_o = 1 - int(rho)/int(lambda).
    double design_rate() const { return 1.0 - rho.edge_integral() / lambda.edge_integral(); }
};

/// Outer short algebraic code with its erasure-failure profile.
struct ShortCodeOuter {
    LinearBlockCode code;
    ErasureFailureProfile profile;
};

/// Complete two-layer design: inner repetition distribution, outer code,
/// per-user rate, target user count, channel erasure probability.
struct SystemDesign {
    DegreePolynomial gamma{std::vector<double>{0.0, 1.0}, Perspective::node};  // node perspective
    std::variant<LdpcEnsemble, ShortCodeOuter> outer;
    double epsilon = 0.0;
    int n_a_star = 1;
    double r_t = 0.0;
    std::string label;

    bool has_ldpc_outer() const { return std::holds_alternative<LdpcEnsemble>(outer); }
    const LdpcEnsemble& ldpc() const { return std::get<LdpcEnsemble>(outer); }
    const ShortCodeOuter& short_code() const { return std::get<ShortCodeOuter>(outer); }

    double outer_rate() const;
    double inner_rate() const { return r_t / outer_rate(); }  // R_i = R_t / R_o
    // Per-user slot selection probability q = R_i * Gamma'(1) (time node law).
    double slot_occupancy() const { return inner_rate() * gamma.mean_degree(); }

    // Enforces the rate constraint q <= 1, gamma validity, epsilon range.
    void validate() const;
};

/// One iteration snapshot of the erasure-probability recursion. p_ct is only
/// tracked by the short-code recursion; for that recursion p_e reports P_ct
/// (the residual erasure probability of decoder-to-time messages).
struct DeState {
    double p_vc = 1.0;
    double p_cv = 1.0;
    double p_vt = 1.0;
    double p_tv = 1.0;
    double p_ct = 1.0;
    int iteration = 0;
    double p_e = 1.0;
};

struct DeOptions {
    int max_iter = 5000;
    double stall_tol = 1e-12;      // |delta p_e| below this: fixed point reached
    double success_tol = 1e-9;     // p_e below this: converged to zero (LDPC)
    // The short-code recursion has a strictly positive fixed point for any
    // eps > 0 (P_vc >= gamma(eps) > 0 forces P_ct > 0), so it uses a separate,
    // looser success tolerance sitting above typical d_min >= 4 floors.
    double success_tol_map = 1e-6;
    Perspective v2c_perspective = Perspective::edge;  // variable-to-decoder message pmf
    bool record_trajectory = false;
};

struct DeResult {
    bool converged = false;
    DeState final_state;
    std::vector<DeState> trajectory;  // filled when record_trajectory is set
};

// Erasure transfer functions of single nodes.
double check_transfer(const DegreePolynomial& rho_edge, double p_in);
double time_transfer(const DegreePolynomial& psi_edge, double epsilon, double p_in);

// MAP failure probability given i.i.d. input bit erasure probability p, for
// the message already known to be erased: sum over E of
// C(n-1,E-1) p^{E-1} (1-p)^{n-E} P_E(H). Evaluated in log space.
double map_failure_transfer(const ErasureFailureProfile& profile, double p);

/// Joint LDPC-outer recursion, updated in dependency order within an
/// iteration: P_vc from the previous (P_tv, P_cv), then P_cv, P_vt, P_tv;
/// initial P_vc = 1 and P_tv = 1. p_e is the fraction of non-recovered
/// variable nodes. Non-convergence (positive fixed point) is a valid outcome.
DeResult ldpc_recursion(const SystemDesign& design, const DeOptions& opts = {});

/// Short-code-outer recursion for P_ct with block MAP transfer; the
/// variable-to-decoder message uses the edge-perspective gamma by default
/// (v2c_perspective toggles the node-perspective variant).
DeResult map_recursion(const SystemDesign& design, const DeOptions& opts = {});

// Smallest fixed point of the short-code recursion (iterated upward from
// P_ct = 0): the intrinsic residual floor gamma(eps)-driven decoding leaves.
double map_recursion_floor(const SystemDesign& design, const DeOptions& opts = {});

// Threshold classification for the short-code recursion: the all-ones
// trajectory is considered convergent when its fixed point coincides with the
// floor (unique fixed point), i.e. p_high <= max(2 p_low, p_low + 1e-9).
bool map_recursion_converges(const SystemDesign& design, const DeOptions& opts = {});

// Lower bound on the residual bit erasure of the collision-resolution layer
// alone: Gamma(epsilon).
double erasure_floor(const DegreePolynomial& gamma_node, double epsilon);

struct TandemResult {
    double inner_message_erasure = 1.0;  // inner-layer fixed point of P_tv
    double inner_bit_erasure = 1.0;      // Gamma(P_tv^inf): channel seen by the outer code
    double residual = 1.0;               // after one full outer decoding pass
    bool converged = false;
};

/// Benchmark where the layers run in tandem: inner peeling to its fixed point
/// (no check-node help), then standard BEC density evolution of (lambda, rho)
/// at the inner residual, with no feedback between layers. LDPC outer only.
TandemResult tandem_recursion(const SystemDesign& design, const DeOptions& opts = {});

enum class RecursionKind { joint, tandem };

struct ThresholdOptions {
    double rate_tol = 5e-4;
    // Search bracket is [0, q_max * R_o / Gamma'(1)]: designs keep a margin on
    // the per-slot occupancy q. The reported optima of reference designs sit
    // exactly at q = 0.9; q_max = 1 recovers the unconstrained bracket.
    double q_max = 0.9;
    RecursionKind kind = RecursionKind::joint;
    DeOptions de;
};

struct ThresholdResult {
    double r_t_star = 0.0;
    bool bracket_ok = false;  // false: even the smallest rate diverges
    bool capped = false;      // the occupancy cap was the binding constraint
    int recursion_runs = 0;
};

/// Largest per-user rate whose recursion drives the residual below the
/// success tolerance, by bisection; psi is recomputed from q at every
/// candidate rate.
ThresholdResult threshold_rate(const SystemDesign& design_sans_rate,
                               const ThresholdOptions& opts = {});

struct UsersResult {
    int n_a_star = 0;
    bool rate_feasible = true;  // false: r_t exceeds R_o / Gamma'(1)
};

/// Largest user count for which the recursion converges at the design's rate
/// (ascending integer search). The physical constraint is q <= 1 only.
UsersResult threshold_users(const SystemDesign& design, const DeOptions& opts = {},
                            int n_a_max = 4096);

}  // namespace tcra

#endif
