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

#ifndef TCRA_CAPACITY_HPP
#define TCRA_CAPACITY_HPP

#include "tcra/degree_poly.hpp"

namespace tcra {

/// Poisson user-activity model: the number of active users per frame is
/// Poisson with mean N * p_a.
struct ActivityModel {
    double mean_active = 1.0;
};

// Sum-rate capacity of the n_a-user binary adder channel with erasures,
// in bits per bit interval: (1-eps)(n_a - 2^-n_a sum_i C(n_a,i) log2 C(n_a,i)).
// Binomials go through log space above n_a = 60.
double sum_capacity(int n_a, double epsilon);

// Per-user capacity of orthogonal transmission: (1-eps)/n_a.
double orthogonal_capacity(int n_a, double epsilon);

// (1/n_a) sum_k psi_k C_k with psi the node-perspective slot-occupancy pmf;
// the empty-slot term contributes zero.
double complexity_constrained_capacity(const DegreePolynomial& psi_node, int n_a, double epsilon);

// Smallest m with Pr[N_a > m] <= p_outage.
int poisson_quantile_users(const ActivityModel& model, double p_outage);

struct OutageCapacity {
    double c_p = 0.0;
    bool capped = false;  // feasible at every rate up to the configured cap
};

// Largest common rate R_t with Pr[C_{N_a} < N_a R_t] <= p_outage under the
// Poisson activity model (frames with N_a = 0 never count as outage).
// Bisection over R_t with the Poisson tail truncated below 1e-12 mass.
// `orthogonal` restricts every C_{N_a} to C_1 = 1 - eps.
OutageCapacity outage_capacity(const ActivityModel& model, double epsilon, double p_outage,
                               bool orthogonal = false, double rate_cap = 1.0);

}  // namespace tcra

#endif
