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

#include "tcra/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tcra/parallel.hpp"

namespace tcra {

namespace {

// Clip to [0,1] and renormalize one pmf block. A zero block gets all mass on
// its last gene (the highest degree), which keeps the candidate feasible.
void project_block(std::vector<double>& genome, std::size_t begin, std::size_t count) {
    double sum = 0.0;
    for (std::size_t i = begin; i < begin + count; ++i) {
        genome[i] = std::clamp(genome[i], 0.0, 1.0);
        sum += genome[i];
    }
    if (sum <= 0.0) {
        genome[begin + count - 1] = 1.0;
        return;
    }
    for (std::size_t i = begin; i < begin + count; ++i) genome[i] /= sum;
}

// Genome blocks are indexed by polynomial power 1..d_max. For Gamma the power
// equals the node degree; for lambda/rho power p is edge degree p+1.
DegreePolynomial gamma_from(const std::vector<double>& genome, int d_max) {
    std::vector<double> c(static_cast<std::size_t>(d_max) + 1, 0.0);
    for (int p = 1; p <= d_max; ++p) c[static_cast<std::size_t>(p)] = genome[static_cast<std::size_t>(p - 1)];
    return DegreePolynomial(std::move(c), Perspective::node);
}

DegreePolynomial edge_from(const std::vector<double>& genome, std::size_t begin, int d_max) {
    std::vector<double> c(static_cast<std::size_t>(d_max) + 2, 0.0);
    for (int p = 1; p <= d_max; ++p)
        c[static_cast<std::size_t>(p) + 1] = genome[begin + static_cast<std::size_t>(p - 1)];
    return DegreePolynomial(std::move(c), Perspective::edge);
}

struct DeDriver {
    int genome_size;
    int population;
    const DeConfig* cfg;

    std::vector<std::vector<double>> members;
    std::vector<double> fitness;

    template <typename ProjectFn, typename ScoreFn>
    std::vector<double> run(ProjectFn&& project, ScoreFn&& score, std::vector<double>* best_history) {
        members.assign(static_cast<std::size_t>(population),
                       std::vector<double>(static_cast<std::size_t>(genome_size), 0.0));
        fitness.assign(static_cast<std::size_t>(population), 0.0);
        parallel_for(static_cast<std::size_t>(population), cfg->threads, [&](std::size_t i) {
            Rng rng(derive_seed(cfg->seed, 0x696e6974ULL, i));
            for (double& g : members[i]) g = rng.next_unit();
            project(members[i]);
            fitness[i] = score(members[i]);
        });
        std::vector<std::vector<double>> trials(members.size());
        std::vector<double> trial_fitness(members.size());
        for (int gen = 0; gen < cfg->generations; ++gen) {
            parallel_for(members.size(), cfg->threads, [&](std::size_t i) {
                Rng rng(derive_seed(cfg->seed, static_cast<std::uint64_t>(gen) + 1, i));
                std::size_t r1, r2, r3;
                do r1 = rng.next_below(members.size()); while (r1 == i);
                do r2 = rng.next_below(members.size()); while (r2 == i || r2 == r1);
                do r3 = rng.next_below(members.size()); while (r3 == i || r3 == r1 || r3 == r2);
                std::vector<double> trial = members[i];
                const std::size_t j_rand = rng.next_below(static_cast<std::uint64_t>(genome_size));
                for (std::size_t j = 0; j < static_cast<std::size_t>(genome_size); ++j) {
                    if (j == j_rand || rng.next_unit() < cfg->crossover_rate)
                        trial[j] = members[r1][j] +
                                   cfg->mutation_factor * (members[r2][j] - members[r3][j]);
                }
                project(trial);
                trial_fitness[i] = score(trial);
                trials[i] = std::move(trial);
            });
            for (std::size_t i = 0; i < members.size(); ++i) {
                if (trial_fitness[i] >= fitness[i]) {
                    members[i] = std::move(trials[i]);
                    fitness[i] = trial_fitness[i];
                }
            }
            if (best_history != nullptr)
                best_history->push_back(*std::max_element(fitness.begin(), fitness.end()));
        }
        const std::size_t best =
            static_cast<std::size_t>(std::max_element(fitness.begin(), fitness.end()) -
                                     fitness.begin());
        return members[best];
    }
};

}  // namespace

void validate_design_constraints(const SystemDesign& design, int d_max) {
    auto check_pmf = [](const DegreePolynomial& p, int max_degree, const char* what) {
        double sum = 0.0;
        for (int d = 0; d <= p.max_degree(); ++d) {
            const double c = p.coeff(d);
            if (c < 0.0 || c > 1.0) throw std::logic_error(std::string(what) + ": coefficient range");
            if (d > max_degree && c != 0.0)
                throw std::logic_error(std::string(what) + ": mass beyond the degree bound");
            sum += c;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::logic_error(std::string(what) + ": pmf does not sum to 1");
    };
    check_pmf(design.gamma, d_max, "gamma");
    if (design.gamma.coeff(0) != 0.0) throw std::logic_error("gamma: degree-0 mass");
    if (design.has_ldpc_outer()) {
        check_pmf(design.ldpc().lambda, d_max + 1, "lambda");
        check_pmf(design.ldpc().rho, d_max + 1, "rho");
        if (design.ldpc().lambda.coeff(1) != 0.0) throw std::logic_error("lambda: degree-1 mass");
        const double ro = design.ldpc().design_rate();
        if (!(ro >= 0.0 && ro <= 1.0)) throw std::logic_error("outer rate outside [0,1]");
    }
    if (design.r_t > design.outer_rate() / design.gamma.mean_degree() + 1e-12)
        throw std::logic_error("rate constraint r_t <= R_o / Gamma'(1) violated");
}

LdpcDesignResult optimize_ldpc(const DesignProblem& problem, const DeConfig& config) {
    const int d = problem.d_max;
    const int genome_size = 3 * d;
    DeConfig cfg = config;
    if (cfg.population == 0) cfg.population = 15 * genome_size;
    if (cfg.population < 4) throw std::invalid_argument("optimize_ldpc: population must be >= 4");

    auto project = [&](std::vector<double>& g) {
        project_block(g, 0, static_cast<std::size_t>(d));
        project_block(g, static_cast<std::size_t>(d), static_cast<std::size_t>(d));
        project_block(g, static_cast<std::size_t>(2 * d), static_cast<std::size_t>(d));
        if (problem.lambda2_max < 1.0) {
            // Optional error-floor guard: excess degree-2 edge mass moves to degree 3.
            double& l2 = g[static_cast<std::size_t>(d)];
            if (l2 > problem.lambda2_max) {
                g[static_cast<std::size_t>(d) + 1] += l2 - problem.lambda2_max;
                l2 = problem.lambda2_max;
            }
        }
    };
    auto build = [&](const std::vector<double>& g) {
        SystemDesign design;
        design.gamma = gamma_from(g, d);
        LdpcEnsemble ens{edge_from(g, static_cast<std::size_t>(d), d),
                         edge_from(g, static_cast<std::size_t>(2 * d), d)};
        design.outer = std::move(ens);
        design.epsilon = problem.epsilon;
        design.n_a_star = problem.n_a_star;
        return design;
    };
    ThresholdOptions search;
    search.q_max = problem.q_max;
    search.rate_tol = problem.de_rate_tol;
    search.de.v2c_perspective = problem.v2c_perspective;
    auto score = [&](const std::vector<double>& g) {
        SystemDesign design = build(g);
        const double ro = design.ldpc().design_rate();
        if (!(ro > 0.0 && ro < 1.0)) return 0.0;
        if (design.gamma.mean_degree() <= 0.0) return 0.0;
        return threshold_rate(design, search).r_t_star;
    };

    DeDriver driver{genome_size, cfg.population, &cfg, {}, {}};
    LdpcDesignResult out;
    const std::vector<double> best = driver.run(project, score, &out.best_history);

    out.design = build(best);
    ThresholdOptions fine = search;
    fine.rate_tol = problem.rate_tol;
    const ThresholdResult final_score = threshold_rate(out.design, fine);
    out.r_t_star = final_score.r_t_star;
    out.capped = final_score.capped;
    out.design.r_t = final_score.r_t_star;
    out.design.label = "ldpc-design(na=" + std::to_string(problem.n_a_star) + ")";
    validate_design_constraints(out.design, problem.d_max);
    return out;
}

ShortDesignResult optimize_short(const DesignProblem& problem,
                                 const std::vector<ShortCodeOuter>& ensemble,
                                 const DeConfig& config) {
    if (ensemble.empty()) throw std::invalid_argument("optimize_short: empty code ensemble");
    const int d = problem.d_max;
    DeConfig cfg = config;
    if (cfg.population == 0) cfg.population = 15 * d;
    if (cfg.population < 4) throw std::invalid_argument("optimize_short: population must be >= 4");

    ThresholdOptions search;
    search.q_max = problem.q_max;
    search.rate_tol = problem.de_rate_tol;
    search.de.v2c_perspective = problem.v2c_perspective;

    ShortDesignResult out;
    double best_score = -1.0;
    for (std::size_t ci = 0; ci < ensemble.size(); ++ci) {
        auto project = [&](std::vector<double>& g) {
            project_block(g, 0, static_cast<std::size_t>(d));
        };
        auto build = [&](const std::vector<double>& g) {
            SystemDesign design;
            design.gamma = gamma_from(g, d);
            design.outer = ensemble[ci];
            design.epsilon = problem.epsilon;
            design.n_a_star = problem.n_a_star;
            return design;
        };
        auto score = [&](const std::vector<double>& g) {
            SystemDesign design = build(g);
            if (design.gamma.mean_degree() <= 0.0) return 0.0;
            return threshold_rate(design, search).r_t_star;
        };
        DeConfig code_cfg = cfg;
        code_cfg.seed = derive_seed(cfg.seed, 0x636f6465ULL, ci);
        DeDriver driver{d, code_cfg.population, &code_cfg, {}, {}};
        std::vector<double> history;
        const std::vector<double> best = driver.run(project, score, &history);
        SystemDesign design = build(best);
        ThresholdOptions fine = search;
        fine.rate_tol = problem.rate_tol;
        const double final_score = threshold_rate(design, fine).r_t_star;
        if (final_score > best_score) {
            best_score = final_score;
            design.r_t = final_score;
            design.label = "short-design(" + ensemble[ci].code.label + ")";
            out.design = std::move(design);
            out.r_t_star = final_score;
            out.code_index = static_cast<int>(ci);
            out.best_history = std::move(history);
        }
    }
    validate_design_constraints(out.design, problem.d_max);
    return out;
}

OutageDesignResult design_for_outage(const ActivityModel& model, double p_outage,
                                     const DesignProblem& problem, const DeConfig& config) {
    OutageDesignResult out;
    out.n_a_star = poisson_quantile_users(model, p_outage);
    if (out.n_a_star == 0) {
        out.degenerate = true;
        return out;
    }
    DesignProblem scoped = problem;
    scoped.n_a_star = out.n_a_star;
    out.ldpc = optimize_ldpc(scoped, config);
    return out;
}

}  // namespace tcra
