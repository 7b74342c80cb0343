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

#ifndef TCRA_DEGREE_POLY_HPP
#define TCRA_DEGREE_POLY_HPP

#include <string>
#include <utility>
#include <vector>

#include "tcra/rng.hpp"

namespace tcra {

enum class Perspective { node, edge };

/// Probability mass function over integer degrees, in polynomial form.
///
/// Node perspective: A(x) = sum_d A_d x^d, A_d the fraction of nodes with
/// degree d. Edge perspective: a(x) = sum_d a_d x^{d-1}, a_d the fraction of
/// edges attached to degree-d nodes. Values are immutable after construction
/// and safe to share across threads.
class DegreePolynomial {
   public:
    // Coefficients indexed by degree. Inputs whose sum deviates from 1 by at
    // most 1e-9 are renormalized; anything worse is rejected. Edge-perspective
    // inputs must carry no degree-0 mass.
    DegreePolynomial(std::vector<double> coeffs, Perspective perspective);

    static DegreePolynomial monomial(int degree, Perspective perspective);

    double eval(double x) const;  // domain error outside [0,1]

    // A'(1) = sum_d d*A_d. Node perspective only.
    double mean_degree() const;

    // Integral of the edge polynomial over [0,1]: sum_d a_d / d. Edge only.
    double edge_integral() const;

    DegreePolynomial to_edge() const;  // normalized derivative
    DegreePolynomial to_node() const;  // normalized anti-derivative

    int sample_degree(Rng& rng) const;

    const std::vector<double>& coeffs() const { return coeffs_; }
    double coeff(int degree) const;
    int max_degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    Perspective perspective() const { return perspective_; }
    bool has_degree_zero_mass() const;

    bool almost_equal(const DegreePolynomial& other, double tol) const;

   private:
    std::vector<double> coeffs_;
    std::vector<double> cdf_;
    Perspective perspective_;
};

/// Binomial law for the number of transmissions landing in one bit interval:
/// n_active users each occupy the interval with probability q = R_i * Gamma'(1).
struct TimeNodeLaw {
    int n_active = 0;
    double q = 0.0;  // in [0,1]
};

// Closed-form occupancy distributions: Psi(x) = (1-q+qx)^n_active (node) and
// psi(x) = (1-q+qx)^(n_active-1) (edge). Coefficient vectors are binomial pmfs.
std::pair<DegreePolynomial, DegreePolynomial> time_node_polys(const TimeNodeLaw& law);

// Text format used by the CLI and JSON configs: comma-separated coef:degree
// pairs, e.g. "0.4762:1,0.4286:4,0.09524:10". The parser renormalizes pmfs
// deviating from unit mass by up to 1e-4 (published tables round to four
// digits); worse inputs are rejected.
DegreePolynomial parse_pmf(const std::string& text, Perspective perspective);
std::string format_pmf(const DegreePolynomial& poly);

}  // namespace tcra

#endif
