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

#include "tcra/capacity.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace tcra {

namespace {
constexpr double kLn2 = 0.6931471805599453;
constexpr double kPoissonTailMass = 1e-12;

// Poisson pmf values until the right tail mass drops below kPoissonTailMass.
std::vector<double> poisson_pmf(double mean) {
    std::vector<double> pmf;
    double log_p = -mean;  // log pmf(0)
    double cumulative = 0.0;
    for (int k = 0;; ++k) {
        const double p = std::exp(log_p);
        pmf.push_back(p);
        cumulative += p;
        if (k > mean && 1.0 - cumulative < kPoissonTailMass) break;
        if (k > 10'000'000) throw std::runtime_error("poisson_pmf: mean too large");
        log_p += std::log(mean) - std::log(static_cast<double>(k) + 1.0);
    }
    return pmf;
}
}  // namespace

double sum_capacity(int n_a, double epsilon) {
    if (n_a < 0) throw std::invalid_argument("sum_capacity: negative user count");
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::domain_error("sum_capacity: epsilon outside [0,1]");
    if (n_a == 0) return 0.0;
    double entropy_term = 0.0;
    if (n_a <= 60) {
        double c = 1.0;  // C(n_a, 0)
        for (int i = 0; i <= n_a; ++i) {
            if (c > 1.0) entropy_term += c * (std::log(c) / kLn2);
            c = c * (n_a - i) / (i + 1);
        }
        entropy_term = entropy_term / std::pow(2.0, n_a);
    } else {
        double log_c = 0.0;  // ln C(n_a, i)
        const double log_scale = n_a * kLn2;
        for (int i = 0; i <= n_a; ++i) {
            if (log_c > 0.0) entropy_term += std::exp(log_c - log_scale) * (log_c / kLn2);
            log_c += std::log(static_cast<double>(n_a - i)) - std::log(static_cast<double>(i + 1));
        }
    }
    return (1.0 - epsilon) * (n_a - entropy_term);
}

double orthogonal_capacity(int n_a, double epsilon) {
    if (n_a < 1) throw std::domain_error("orthogonal_capacity: need n_a >= 1");
    return (1.0 - epsilon) / n_a;
}

double complexity_constrained_capacity(const DegreePolynomial& psi_node, int n_a,
                                       double epsilon) {
    if (psi_node.perspective() != Perspective::node)
        throw std::invalid_argument("complexity_constrained_capacity: psi must be node perspective");
    if (n_a < 1) throw std::domain_error("complexity_constrained_capacity: need n_a >= 1");
    double acc = 0.0;
    for (int k = 1; k <= psi_node.max_degree(); ++k) {
        const double w = psi_node.coeff(k);
        if (w > 0.0) acc += w * sum_capacity(k, epsilon);
    }
    return acc / n_a;
}

int poisson_quantile_users(const ActivityModel& model, double p_outage) {
    if (!(model.mean_active > 0.0))
        throw std::invalid_argument("poisson quantile: mean_active must be positive");
    if (!(p_outage > 0.0)) throw std::invalid_argument("poisson quantile: p_outage must be positive");
    const std::vector<double> pmf = poisson_pmf(model.mean_active);
    double tail = 1.0;
    for (int m = 0; m < static_cast<int>(pmf.size()); ++m) {
        tail -= pmf[static_cast<std::size_t>(m)];
        if (tail <= p_outage) return m;
    }
    return static_cast<int>(pmf.size());
}

OutageCapacity outage_capacity(const ActivityModel& model, double epsilon, double p_outage,
                               bool orthogonal, double rate_cap) {
    if (!(p_outage > 0.0 && p_outage < 1.0))
        throw std::invalid_argument("outage_capacity: p_outage outside (0,1)");
    const std::vector<double> pmf = poisson_pmf(model.mean_active);
    std::vector<double> per_user(pmf.size(), 0.0);
    for (std::size_t n_a = 1; n_a < pmf.size(); ++n_a) {
        const double c = orthogonal ? (1.0 - epsilon) : sum_capacity(static_cast<int>(n_a), epsilon);
        per_user[n_a] = c / static_cast<double>(n_a);
    }
    auto outage_prob = [&](double rate) {
        double acc = 0.0;
        for (std::size_t n_a = 1; n_a < pmf.size(); ++n_a)
            if (per_user[n_a] < rate) acc += pmf[n_a];
        return acc;
    };
    OutageCapacity out;
    if (outage_prob(rate_cap) <= p_outage) {
        out.c_p = rate_cap;
        out.capped = true;
        return out;
    }
    double lo = 0.0, hi = rate_cap;
    for (int step = 0; step < 64; ++step) {
        const double mid = 0.5 * (lo + hi);
        if (outage_prob(mid) <= p_outage)
            lo = mid;
        else
            hi = mid;
    }
    out.c_p = lo;
    return out;
}

}  // namespace tcra
