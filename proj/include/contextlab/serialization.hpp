// serialization.hpp
// JSON schemas for fragments and robustness certificates.

#pragma once

#include <nlohmann/json.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "contextlab/errors.hpp"
#include "contextlab/gpt.hpp"
#include "contextlab/robustness.hpp"

namespace contextlab {

using json = nlohmann::json;

namespace jdetail {

inline json vec_to_json(const Vector& v) {
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

inline Vector vec_from_json(const json& a) {
    Vector v(static_cast<int>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) v[static_cast<int>(i)] = a[i].get<double>();
    return v;
}

inline json mat_to_json(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) rows.push_back(vec_to_json(m.row(i)));
    return rows;
}

// An entry of length basis_dim is read as GPT coordinates; an entry of length
// 2 * basis_dim as a complex d x d matrix with interleaved (re, im) pairs,
// row-major, which is then vectorized.
inline GptVector entry_from_json(const json& a, int basis_dim, Role role,
                                 std::string label) {
    const auto len = static_cast<int>(a.size());
    if (len == basis_dim) return {vec_from_json(a), role, std::move(label)};
    if (len == 2 * basis_dim) {
        const int d = static_cast<int>(std::lround(std::sqrt(basis_dim)));
        if (d * d != basis_dim)
            throw InvalidFragment("fragment json: basis_dim is not a perfect square");
        CMatrix m(d, d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) {
                const int base = 2 * (r * d + c);
                m(r, c) = {a[static_cast<std::size_t>(base)].get<double>(),
                           a[static_cast<std::size_t>(base + 1)].get<double>()};
            }
        return role == Role::state ? vectorize_state(m, std::move(label))
                                   : vectorize_effect(m, std::move(label));
    }
    throw InvalidFragment("fragment json: entry length matches neither coords nor matrix form");
}

}  // namespace jdetail

inline json fragment_to_json(const GptFragment& frag) {
    json j;
    j["basis_dim"] = frag.unit.coords.size();
    j["states"] = json::array();
    j["effects"] = json::array();
    json state_labels = json::array(), effect_labels = json::array();
    for (const auto& s : frag.states) {
        j["states"].push_back(jdetail::vec_to_json(s.coords));
        state_labels.push_back(s.label);
    }
    for (const auto& e : frag.effects) {
        j["effects"].push_back(jdetail::vec_to_json(e.coords));
        effect_labels.push_back(e.label);
    }
    j["unit"] = jdetail::vec_to_json(frag.unit.coords);
    j["max_mixed"] = jdetail::vec_to_json(frag.max_mixed.coords);
    j["labels"] = {{"states", state_labels}, {"effects", effect_labels}};
    return j;
}

inline GptFragment fragment_from_json(const json& j, bool augment = true) {
    if (!j.contains("basis_dim") || !j.contains("states") || !j.contains("effects"))
        throw InvalidFragment("fragment json: missing basis_dim/states/effects");
    const int basis_dim = j["basis_dim"].get<int>();
    const int d = static_cast<int>(std::lround(std::sqrt(basis_dim)));

    const auto label_at = [&](const char* group, std::size_t i) -> std::string {
        if (j.contains("labels") && j["labels"].contains(group) &&
            i < j["labels"][group].size())
            return j["labels"][group][i].get<std::string>();
        return {};
    };

    std::vector<GptVector> states, effects;
    for (std::size_t i = 0; i < j["states"].size(); ++i)
        states.push_back(jdetail::entry_from_json(j["states"][i], basis_dim,
                                                  Role::state, label_at("states", i)));
    for (std::size_t i = 0; i < j["effects"].size(); ++i)
        effects.push_back(jdetail::entry_from_json(j["effects"][i], basis_dim,
                                                   Role::effect, label_at("effects", i)));

    GptVector unit, max_mixed;
    if (j.contains("unit")) {
        unit = {jdetail::vec_from_json(j["unit"]), Role::effect, "u"};
    } else if (d * d == basis_dim) {
        unit = vectorize_effect(CMatrix::Identity(d, d), "u");
    } else {
        throw InvalidFragment("fragment json: unit effect missing");
    }
    if (j.contains("max_mixed")) {
        max_mixed = {jdetail::vec_from_json(j["max_mixed"]), Role::state, "mu"};
    } else if (d * d == basis_dim) {
        max_mixed = vectorize_state(CMatrix::Identity(d, d) / d, "mu");
    } else {
        throw InvalidFragment("fragment json: max_mixed state missing");
    }
    return build_fragment(std::move(states), std::move(effects), std::move(unit),
                          std::move(max_mixed), augment);
}

inline json certificate_to_json(const RobustnessCertificate& cert) {
    json j;
    j["r_min"] = cert.r_min;
    j["sigma"] = jdetail::mat_to_json(cert.sigma);
    j["ontic_count"] = cert.model.ontic_states.size();
    j["model"] = {{"epistemic", jdetail::mat_to_json(cert.model.epistemic)},
                  {"responses", jdetail::mat_to_json(cert.model.responses)}};
    j["residual_max"] = cert.residual_max;
    j["noise"] = cert.noise_name;
    return j;
}

}  // namespace contextlab
