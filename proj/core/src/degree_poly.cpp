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

#include "tcra/degree_poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace tcra {

namespace {
constexpr double kNormTol = 1e-12;
constexpr double kRenormLimit = 1e-9;
constexpr double kParseRenormLimit = 1e-4;

std::vector<double> normalized(std::vector<double> coeffs, Perspective perspective,
                               double renorm_limit) {
    if (coeffs.empty()) throw std::invalid_argument("degree pmf: empty coefficient vector");
    double sum = 0.0;
    for (double c : coeffs) {
        if (!(c >= -kNormTol) || !(c <= 1.0 + renorm_limit) || !std::isfinite(c))
            throw std::invalid_argument("degree pmf: coefficient outside [0,1]");
        sum += c;
    }
    if (std::abs(sum - 1.0) > renorm_limit)
        throw std::invalid_argument("degree pmf: coefficients sum to " + std::to_string(sum) +
                                    ", not 1");
    for (double& c : coeffs) {
        c /= sum;
        if (c < 0.0) c = 0.0;
    }
    if (perspective == Perspective::edge && coeffs[0] > kNormTol)
        throw std::invalid_argument("degree pmf: edge perspective cannot have degree-0 mass");
    if (perspective == Perspective::edge) coeffs[0] = 0.0;
    while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
    return coeffs;
}
}  // namespace

DegreePolynomial::DegreePolynomial(std::vector<double> coeffs, Perspective perspective)
    : coeffs_(normalized(std::move(coeffs), perspective, kRenormLimit)),
      perspective_(perspective) {
    cdf_.resize(coeffs_.size());
    double acc = 0.0;
    for (std::size_t d = 0; d < coeffs_.size(); ++d) {
        acc += coeffs_[d];
        cdf_[d] = acc;
    }
    cdf_.back() = 1.0;
}

DegreePolynomial DegreePolynomial::monomial(int degree, Perspective perspective) {
    if (degree < 0) throw std::invalid_argument("degree pmf: negative degree");
    std::vector<double> c(static_cast<std::size_t>(degree) + 1, 0.0);
    c.back() = 1.0;
    return DegreePolynomial(std::move(c), perspective);
}

double DegreePolynomial::eval(double x) const {
    // Tolerate round-off at the boundary; reject genuinely out-of-range input.
    if (!(x >= -1e-9 && x <= 1.0 + 1e-9))
        throw std::domain_error("degree pmf: eval argument outside [0,1]");
    x = std::clamp(x, 0.0, 1.0);
    // Horner over the stored coefficients; the edge form divides by one power of x,
    // which is safe because edge pmfs carry no degree-0 mass.
    double acc = 0.0;
    for (std::size_t d = coeffs_.size(); d-- > 0;) acc = acc * x + coeffs_[d];
    if (perspective_ == Perspective::node) return acc;
    if (x > 0.0) return acc / x;
    // a(0) is the degree-1 coefficient.
    return coeffs_.size() > 1 ? coeffs_[1] : 0.0;
}

double DegreePolynomial::mean_degree() const {
    if (perspective_ != Perspective::node)
        throw std::logic_error("mean_degree requires a node-perspective pmf");
    double m = 0.0;
    for (std::size_t d = 1; d < coeffs_.size(); ++d) m += static_cast<double>(d) * coeffs_[d];
    return m;
}

double DegreePolynomial::edge_integral() const {
    if (perspective_ != Perspective::edge)
        throw std::logic_error("edge_integral requires an edge-perspective pmf");
    double s = 0.0;
    for (std::size_t d = 1; d < coeffs_.size(); ++d) s += coeffs_[d] / static_cast<double>(d);
    return s;
}

DegreePolynomial DegreePolynomial::to_edge() const {
    if (perspective_ != Perspective::node)
        throw std::logic_error("to_edge requires a node-perspective pmf");
    const double mean = mean_degree();
    if (mean <= 0.0)
        throw std::invalid_argument("to_edge: degenerate pmf with all mass at degree 0");
    std::vector<double> e(coeffs_.size(), 0.0);
    for (std::size_t d = 1; d < coeffs_.size(); ++d)
        e[d] = static_cast<double>(d) * coeffs_[d] / mean;
    return DegreePolynomial(std::move(e), Perspective::edge);
}

DegreePolynomial DegreePolynomial::to_node() const {
    if (perspective_ != Perspective::edge)
        throw std::logic_error("to_node requires an edge-perspective pmf");
    std::vector<double> n(coeffs_.size(), 0.0);
    double sum = 0.0;
    for (std::size_t d = 1; d < coeffs_.size(); ++d) {
        n[d] = coeffs_[d] / static_cast<double>(d);
        sum += n[d];
    }
    for (double& c : n) c /= sum;
    return DegreePolynomial(std::move(n), Perspective::node);
}

int DegreePolynomial::sample_degree(Rng& rng) const {
    const double u = rng.next_unit();
    for (std::size_t d = 0; d < cdf_.size(); ++d)
        if (u < cdf_[d]) return static_cast<int>(d);
    return max_degree();
}

double DegreePolynomial::coeff(int degree) const {
    if (degree < 0 || degree >= static_cast<int>(coeffs_.size())) return 0.0;
    return coeffs_[static_cast<std::size_t>(degree)];
}

bool DegreePolynomial::has_degree_zero_mass() const { return coeffs_[0] > kNormTol; }

bool DegreePolynomial::almost_equal(const DegreePolynomial& other, double tol) const {
    const int dmax = std::max(max_degree(), other.max_degree());
    for (int d = 0; d <= dmax; ++d)
        if (std::abs(coeff(d) - other.coeff(d)) > tol) return false;
    return perspective_ == other.perspective_;
}

std::pair<DegreePolynomial, DegreePolynomial> time_node_polys(const TimeNodeLaw& law) {
    if (law.n_active < 0) throw std::invalid_argument("time node law: negative user count");
    if (!(law.q >= 0.0 && law.q <= 1.0))
        throw std::domain_error("time node law: q outside [0,1]");
    auto binomial_pmf = [](int n, double q) {
        std::vector<double> pmf(static_cast<std::size_t>(n) + 1, 0.0);
        // Multiplicative recurrence keeps the tail stable for q near 0 or 1.
        double p = std::pow(1.0 - q, n);
        if (p == 0.0 && q < 1.0) {
            // Rebuild in log space when (1-q)^n underflows.
            for (int k = 0; k <= n; ++k) {
                double logp = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                              std::lgamma(n - k + 1.0) + k * std::log(q) +
                              (n - k) * std::log1p(-q);
                pmf[static_cast<std::size_t>(k)] = std::exp(logp);
            }
            return pmf;
        }
        if (q >= 1.0) {
            pmf[static_cast<std::size_t>(n)] = 1.0;
            return pmf;
        }
        pmf[0] = p;
        for (int k = 1; k <= n; ++k) {
            p *= (static_cast<double>(n - k + 1) / k) * (q / (1.0 - q));
            pmf[static_cast<std::size_t>(k)] = p;
        }
        return pmf;
    };
    DegreePolynomial node(binomial_pmf(law.n_active, law.q), Perspective::node);
    const int edge_n = law.n_active > 0 ? law.n_active - 1 : 0;
    std::vector<double> edge_binom = binomial_pmf(edge_n, law.q);
    // Edge-perspective degrees are the size-biased node degrees: 1 + B(n-1, q).
    std::vector<double> edge(edge_binom.size() + 1, 0.0);
    for (std::size_t k = 0; k < edge_binom.size(); ++k) edge[k + 1] = edge_binom[k];
    return {std::move(node), DegreePolynomial(std::move(edge), Perspective::edge)};
}

DegreePolynomial parse_pmf(const std::string& text, Perspective perspective) {
    std::vector<double> coeffs;
    std::stringstream ss(text);
    std::string pair;
    bool any = false;
    while (std::getline(ss, pair, ',')) {
        const auto colon = pair.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("degree pmf: expected coef:degree, got '" + pair + "'");
        std::size_t pos = 0;
        const double coef = std::stod(pair.substr(0, colon), &pos);
        const int degree = std::stoi(pair.substr(colon + 1));
        if (degree < 0) throw std::invalid_argument("degree pmf: negative degree in '" + pair + "'");
        if (static_cast<std::size_t>(degree) >= coeffs.size())
            coeffs.resize(static_cast<std::size_t>(degree) + 1, 0.0);
        coeffs[static_cast<std::size_t>(degree)] += coef;
        any = true;
    }
    if (!any) throw std::invalid_argument("degree pmf: empty text");
    return DegreePolynomial(normalized(std::move(coeffs), perspective, kParseRenormLimit),
                            perspective);
}

std::string format_pmf(const DegreePolynomial& poly) {
    std::string out;
    char buf[64];
    for (int d = 0; d <= poly.max_degree(); ++d) {
        const double c = poly.coeff(d);
        if (c == 0.0) continue;
        std::snprintf(buf, sizeof(buf), "%.12g:%d", c, d);
        if (!out.empty()) out += ',';
        out += buf;
    }
    return out;
}

}  // namespace tcra
