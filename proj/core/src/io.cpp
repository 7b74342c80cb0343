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

#include "tcra/io.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace tcra {

using nlohmann::json;

namespace {
DegreePolynomial pmf_from_json(const json& j, Perspective fallback) {
    Perspective p = fallback;
    std::string text;
    if (j.is_string()) {
        text = j.get<std::string>();
    } else {
        text = j.at("pmf").get<std::string>();
        if (j.contains("perspective")) {
            const std::string ps = j.at("perspective").get<std::string>();
            if (ps == "node") p = Perspective::node;
            else if (ps == "edge") p = Perspective::edge;
            else throw std::invalid_argument("design: unknown perspective '" + ps + "'");
        }
    }
    return parse_pmf(text, p);
}

json pmf_to_json(const DegreePolynomial& p) {
    return json{{"perspective", p.perspective() == Perspective::node ? "node" : "edge"},
                {"pmf", format_pmf(p)}};
}

LinearBlockCode code_from_spec(const json& j) {
    const std::string family = j.at("family").get<std::string>();
    if (family == "rm") return reed_muller(j.at("r").get<int>(), j.at("m").get<int>());
    if (family == "cyclic")
        return cyclic_code(j.at("generator_powers").get<std::vector<int>>(), j.at("n").get<int>());
    if (family == "named") return named_code(j.at("name").get<std::string>());
    if (family == "inline") {
        Gf2Matrix h = Gf2Matrix::from_hex_rows(j.at("h_hex").get<std::vector<std::string>>(),
                                               j.at("n").get<std::size_t>());
        return make_code(std::move(h), j.at("d_min").get<int>(),
                         j.value("label", std::string("inline")));
    }
    throw std::invalid_argument("design: unknown code family '" + family + "'");
}

json code_to_spec(const LinearBlockCode& code) {
    return json{{"family", "inline"},
                {"label", code.label},
                {"n", code.n},
                {"k", code.k},
                {"d_min", code.d_min},
                {"h_hex", code.h.to_hex_rows()}};
}
}  // namespace

LinearBlockCode named_code(const std::string& name) {
    if (name == "hamming74") return hamming74();
    if (name == "spc3") return single_parity_check(3);
    if (name == "cyclic24") return cyclic_code({0, 4, 6, 10}, 24);
    if (name.rfind("rm-", 0) == 0) {
        const auto dash = name.find('-', 3);
        if (dash != std::string::npos)
            return reed_muller(std::stoi(name.substr(3, dash - 3)),
                               std::stoi(name.substr(dash + 1)));
    }
    if (name.rfind("spc", 0) == 0 && name.size() > 3)
        return single_parity_check(std::stoi(name.substr(3)));
    if (name.rfind("rep", 0) == 0 && name.size() > 3)
        return repetition_code(std::stoi(name.substr(3)));
    throw std::invalid_argument("unknown code name '" + name +
                                "' (try hamming74, spc3, cyclic24, rm-R-M)");
}

SystemDesign design_from_json_text(const std::string& text, int sampled_profile_samples,
                                   std::uint64_t profile_seed, unsigned threads) {
    json j = json::parse(text);
    SystemDesign design;
    design.label = j.value("label", std::string());
    design.epsilon = j.at("epsilon").get<double>();
    design.n_a_star = j.at("n_a_star").get<int>();
    design.r_t = j.value("r_t", 0.0);
    design.gamma = pmf_from_json(j.at("gamma"), Perspective::node);

    const json& outer = j.at("outer");
    const std::string type = outer.at("type").get<std::string>();
    if (type == "ldpc") {
        LdpcEnsemble ens{pmf_from_json(outer.at("lambda"), Perspective::edge),
                         pmf_from_json(outer.at("rho"), Perspective::edge)};
        design.outer = std::move(ens);
    } else if (type == "short") {
        ShortCodeOuter sc;
        sc.code = code_from_spec(outer.at("code"));
        const std::string kind = outer.contains("profile")
                                     ? outer.at("profile").value("kind", std::string("exact"))
                                     : std::string("exact");
        if (outer.contains("profile") && outer.at("profile").contains("p_e")) {
            sc.profile.p_e = outer.at("profile").at("p_e").get<std::vector<double>>();
            sc.profile.kind = profile_kind_from_string(kind);
        } else {
            switch (profile_kind_from_string(kind)) {
                case ProfileKind::exact:
                    try {
                        sc.profile = exact_profile(sc.code);
                    } catch (const ProfileBudgetExceeded&) {
                        sc.profile = sampled_profile(sc.code, sampled_profile_samples,
                                                     profile_seed, threads);
                    }
                    break;
                case ProfileKind::sampled:
                    sc.profile = sampled_profile(sc.code, sampled_profile_samples, profile_seed,
                                                 threads);
                    break;
                case ProfileKind::step:
                    sc.profile = step_profile(sc.code.n, sc.code.k, sc.code.d_min);
                    break;
                case ProfileKind::linear:
                    sc.profile = linear_profile(sc.code.n, sc.code.k, sc.code.d_min);
                    break;
            }
        }
        design.outer = std::move(sc);
    } else {
        throw std::invalid_argument("design: unknown outer type '" + type + "'");
    }
    design.validate();
    return design;
}

SystemDesign load_design_json(const std::string& path, int sampled_profile_samples,
                              std::uint64_t profile_seed, unsigned threads) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open design file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return design_from_json_text(ss.str(), sampled_profile_samples, profile_seed, threads);
}

std::string design_to_json_text(const SystemDesign& design) {
    json j;
    j["label"] = design.label;
    j["epsilon"] = design.epsilon;
    j["n_a_star"] = design.n_a_star;
    j["r_t"] = design.r_t;
    j["gamma"] = pmf_to_json(design.gamma);
    if (design.has_ldpc_outer()) {
        j["outer"] = json{{"type", "ldpc"},
                          {"lambda", pmf_to_json(design.ldpc().lambda)},
                          {"rho", pmf_to_json(design.ldpc().rho)},
                          {"design_rate", design.ldpc().design_rate()}};
    } else {
        const ShortCodeOuter& sc = design.short_code();
        j["outer"] = json{{"type", "short"},
                          {"code", code_to_spec(sc.code)},
                          {"profile", json{{"kind", to_string(sc.profile.kind)},
                                           {"p_e", sc.profile.p_e}}}};
    }
    return j.dump(2) + "\n";
}

std::string code_to_json_text(const LinearBlockCode& code, const ErasureFailureProfile* profile) {
    json j = code_to_spec(code);
    if (profile != nullptr)
        j["profile"] = json{{"kind", to_string(profile->kind)}, {"p_e", profile->p_e}};
    return j.dump(2) + "\n";
}

LinearBlockCode code_from_json_text(const std::string& text) {
    return code_from_spec(json::parse(text));
}

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string RunManifest::header_line() const {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return "# tcra " + version + " subcommand=" + subcommand + " digest=" + config_digest +
           " seed=" + std::to_string(root_seed) + " generated=" + stamp;
}

std::string format_sig(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write '" + tmp + "'");
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

void write_csv(const std::string& path, const RunManifest& manifest,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
    std::string out = manifest.header_line() + "\n";
    for (std::size_t c = 0; c < columns.size(); ++c)
        out += columns[c] + (c + 1 < columns.size() ? "," : "\n");
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c)
            out += format_sig(row[c]) + (c + 1 < row.size() ? "," : "\n");
    write_text_atomic(path, out);
}

}  // namespace tcra
