#pragma once

// JSON forms of the library's value types, used by the CLI.

#include <json.hpp>

#include "permclass/class_enum.hpp"
#include "permclass/codec.hpp"
#include "permclass/glue.hpp"
#include "permclass/series.hpp"

namespace permclass {

inline nlohmann::json to_json(const CountTable& t) {
    nlohmann::json basis = nlohmann::json::array();
    for (const Perm& p : t.basis.patterns) basis.push_back(p.str());
    return {{"basis", basis}, {"counts", t.counts}};
}

inline nlohmann::json to_json(const GlueDecomposition& gd) {
    nlohmann::json factors = nlohmann::json::array();
    for (const Perm& f : gd.factors) factors.push_back(f.str());
    nlohmann::json types = nlohmann::json::array();
    for (const GlueType& g : gd.types)
        types.push_back({g.orient == Orient::NW ? "NW" : "SE", g.x, g.y});
    return {{"factors", factors}, {"types", types}};
}

inline nlohmann::json to_json(const Word& w) {
    nlohmann::json arr = nlohmann::json::array();
    for (Letter l : w) arr.push_back(letter_token(l));
    return arr;
}

inline nlohmann::json to_json(const Series& s) {
    nlohmann::json arr = nlohmann::json::array();
    for (int k = 0; k <= s.order(); ++k) {
        std::string v = s[k].get_num().get_str();
        if (s[k].get_den() != 1) v += "/" + s[k].get_den().get_str();
        arr.push_back(v);
    }
    return arr;
}

inline Word word_from_json_or_text(const std::string& text) {
    if (!text.empty() && text.front() == '[') {
        nlohmann::json arr = nlohmann::json::parse(text);
        Word w;
        for (const auto& tok : arr) w.push_back(letter_from_token(tok.get<std::string>()));
        return w;
    }
    return word_parse(text);
}

}  // namespace permclass
