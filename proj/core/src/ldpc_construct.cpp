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

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tcra/block_code.hpp"
#include "tcra/degree_poly.hpp"

namespace tcra {

namespace {
// Largest-remainder apportionment of `total` items to the pmf buckets.
std::vector<int> apportion(const std::vector<double>& pmf, int total) {
    std::vector<int> counts(pmf.size(), 0);
    std::vector<std::pair<double, std::size_t>> remainders;
    int assigned = 0;
    for (std::size_t d = 0; d < pmf.size(); ++d) {
        const double exact = pmf[d] * total;
        counts[d] = static_cast<int>(std::floor(exact));
        assigned += counts[d];
        remainders.emplace_back(exact - std::floor(exact), d);
    }
    std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (int i = 0; i < total - assigned; ++i)
        ++counts[remainders[static_cast<std::size_t>(i) % remainders.size()].second];
    return counts;
}
}  // namespace

LinearBlockCode build_ldpc(const DegreePolynomial& lambda_or_node, const DegreePolynomial& rho_edge,
                           int n, Rng& rng) {
    if (n < 2) throw std::invalid_argument("build_ldpc: n too small");
    const DegreePolynomial var_node = lambda_or_node.perspective() == Perspective::node
                                          ? lambda_or_node
                                          : lambda_or_node.to_node();
    if (var_node.has_degree_zero_mass())
        throw std::invalid_argument("build_ldpc: variable distribution has degree-0 mass");
    const DegreePolynomial chk_node = rho_edge.perspective() == Perspective::edge
                                          ? rho_edge.to_node()
                                          : rho_edge;

    // Variable degrees by largest remainder; edges follow.
    const std::vector<int> var_counts = apportion(var_node.coeffs(), n);
    std::vector<int> var_degree;
    var_degree.reserve(static_cast<std::size_t>(n));
    for (std::size_t d = 0; d < var_counts.size(); ++d)
        for (int i = 0; i < var_counts[d]; ++i) var_degree.push_back(static_cast<int>(d));
    int total_edges = 0;
    for (int d : var_degree) total_edges += d;

    // Check count from the edge-perspective integral, degrees apportioned to the
    // node pmf, then socket totals reconciled by bumping degrees one at a time.
    const int m = std::max(1, static_cast<int>(std::lround(
                                  total_edges * rho_edge.edge_integral())));
    std::vector<int> chk_counts = apportion(chk_node.coeffs(), m);
    std::vector<int> chk_degree;
    for (std::size_t d = 0; d < chk_counts.size(); ++d)
        for (int i = 0; i < chk_counts[d]; ++i) chk_degree.push_back(static_cast<int>(d));
    int chk_sockets = 0;
    for (int d : chk_degree) chk_sockets += d;
    for (std::size_t i = 0; chk_sockets < total_edges; i = (i + 1) % chk_degree.size()) {
        ++chk_degree[i];
        ++chk_sockets;
    }
    for (std::size_t i = 0, guard = 0; chk_sockets > total_edges; i = (i + 1) % chk_degree.size()) {
        if (chk_degree[i] > 2) {
            --chk_degree[i];
            --chk_sockets;
            guard = 0;
        } else if (++guard > chk_degree.size()) {
            --chk_degree[i];  // all checks at degree 2: shrink anyway
            --chk_sockets;
            guard = 0;
        }
    }

    std::vector<int> var_socket, chk_socket;
    var_socket.reserve(static_cast<std::size_t>(total_edges));
    chk_socket.reserve(static_cast<std::size_t>(total_edges));
    for (int v = 0; v < n; ++v)
        for (int i = 0; i < var_degree[static_cast<std::size_t>(v)]; ++i) var_socket.push_back(v);
    for (std::size_t c = 0; c < chk_degree.size(); ++c)
        for (int i = 0; i < chk_degree[c]; ++i) chk_socket.push_back(static_cast<int>(c));

    // Random matching, then edge swaps until the graph is simple and has no
    // 4-cycles (no two checks sharing two variables).
    for (std::size_t i = chk_socket.size(); i > 1; --i) {
        const std::size_t j = rng.next_below(i);
        std::swap(chk_socket[i - 1], chk_socket[j]);
    }
    const int max_passes = 500;
    for (int pass = 0; pass < max_passes; ++pass) {
        // Offending edges: duplicates (v,c) and second occurrences of a check pair.
        std::map<std::pair<int, int>, int> edge_seen;        // (v, c) -> first edge index
        std::map<std::pair<int, int>, int> chk_pair_seen;    // (c1, c2) -> witness edge
        std::vector<std::vector<std::pair<int, int>>> var_adj(static_cast<std::size_t>(n));
        std::vector<int> offenders;
        for (std::size_t e = 0; e < var_socket.size(); ++e) {
            const int v = var_socket[e];
            const int c = chk_socket[e];
            auto [it, fresh] = edge_seen.try_emplace({v, c}, static_cast<int>(e));
            if (!fresh) {
                offenders.push_back(static_cast<int>(e));
                continue;
            }
            bool bad = false;
            for (const auto& [c2, e2] : var_adj[static_cast<std::size_t>(v)]) {
                const auto key = std::minmax(c, c2);
                auto [pit, pfresh] = chk_pair_seen.try_emplace({key.first, key.second},
                                                               static_cast<int>(e));
                if (!pfresh && pit->second != static_cast<int>(e)) bad = true;
            }
            if (bad) offenders.push_back(static_cast<int>(e));
            var_adj[static_cast<std::size_t>(v)].emplace_back(c, static_cast<int>(e));
        }
        if (offenders.empty()) break;
        if (pass + 1 == max_passes)
            throw std::runtime_error(
                "build_ldpc: could not remove 4-cycles; degree pair infeasible at this n");
        for (int e : offenders) {
            const std::size_t f = rng.next_below(chk_socket.size());
            std::swap(chk_socket[static_cast<std::size_t>(e)], chk_socket[f]);
        }
    }

    Gf2Matrix h(chk_degree.size(), static_cast<std::size_t>(n));
    for (std::size_t e = 0; e < var_socket.size(); ++e)
        h.set(static_cast<std::size_t>(chk_socket[e]), static_cast<std::size_t>(var_socket[e]), true);
    // d_min of random instances is not computed; 1 is the trivial lower bound.
    return make_code(std::move(h), 1, "ldpc(n=" + std::to_string(n) + ")");
}

}  // namespace tcra
