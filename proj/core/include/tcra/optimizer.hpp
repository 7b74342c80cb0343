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

#ifndef TCRA_OPTIMIZER_HPP
#define TCRA_OPTIMIZER_HPP

#include <cstdint>
#include <vector>

#include "tcra/capacity.hpp"
#include "tcra/density_evolution.hpp"

namespace tcra {

/// Differential evolution knobs (DE/rand/1/bin).
struct DeConfig {
    int population = 0;  // 0: 15 x number of free coefficients
    double mutation_factor = 0.7;
    double crossover_rate = 0.9;
    int generations = 300;
    std::uint64_t seed = 1;
    unsigned threads = 0;
};

struct DesignProblem {
    int n_a_star = 7;
    double epsilon = 0.1;
    int d_max = 13;  // maximum polynomial power in Gamma, lambda, rho
    double q_max = 0.9;
    double rate_tol = 5e-4;      // final scoring
    double de_rate_tol = 2e-3;   // coarser tolerance inside the search
    double lambda2_max = 1.0;    // optional cap on the degree-2 edge fraction
    Perspective v2c_perspective = Perspective::edge;
};

struct LdpcDesignResult {
    SystemDesign design;  // r_t set to the final re-scored threshold
    double r_t_star = 0.0;
    bool capped = false;
    std::vector<double> best_history;  // best objective per generation
};

/// Maximizes the rate threshold over (Gamma, lambda, rho) with all pmf and
/// rate constraints enforced by simplex projection of candidate vectors.
/// Deterministic for a fixed seed; fitness evaluations run in parallel.
LdpcDesignResult optimize_ldpc(const DesignProblem& problem, const DeConfig& config);

struct ShortDesignResult {
    SystemDesign design;
    double r_t_star = 0.0;
    int code_index = -1;  // into the ensemble
    std::vector<double> best_history;
};

/// Joint search over (code, Gamma): an inner continuous DE over Gamma per
/// ensemble member, exhaustive over the ensemble, argmax over codes.
ShortDesignResult optimize_short(const DesignProblem& problem,
                                 const std::vector<ShortCodeOuter>& ensemble,
                                 const DeConfig& config);

struct OutageDesignResult {
    int n_a_star = 0;       // Poisson quantile the design targets
    bool degenerate = false;  // p_outage already covered by Pr[N_a > 0]
    LdpcDesignResult ldpc;
};

// Composes poisson_quantile_users with optimize_ldpc.
OutageDesignResult design_for_outage(const ActivityModel& model, double p_outage,
                                     const DesignProblem& problem, const DeConfig& config);

// Machine-checkable validation of every emitted design: pmf simplex
// membership, degree bounds, outer rate range, and the rate constraint
// r_t <= R_o / Gamma'(1). Throws std::logic_error on violation.
void validate_design_constraints(const SystemDesign& design, int d_max);

}  // namespace tcra

#endif
