#pragma once

#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "proplie/padic.hpp"

// Shared JSON intake helpers.  Integers may arrive as plain JSON numbers or
// as decimal strings; values outside 64 bits must use the string form.
namespace proplie::jsonu {

inline bigint parse_int(const nlohmann::json& v, const std::string& what) {
    if (v.is_number_integer() && !v.is_number_unsigned()) return bigint(v.get<long long>());
    if (v.is_number_unsigned()) return bigint(v.get<unsigned long long>());
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        bool ok = !s.empty();
        const size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
        ok = ok && start < s.size();
        for (size_t i = start; ok && i < s.size(); i++) ok = s[i] >= '0' && s[i] <= '9';
        if (!ok) fail(ErrKind::BadInput, what + ": '" + s + "' is not a decimal integer");
        return bigint(s);
    }
    fail(ErrKind::BadInput, what + ": expected an integer or decimal string");
}

inline long long parse_ll(const nlohmann::json& v, const std::string& what) {
    bigint b = parse_int(v, what);
    if (b < std::numeric_limits<long long>::min() || b > std::numeric_limits<long long>::max())
        fail(ErrKind::BadInput, what + ": value out of range");
    return b.convert_to<long long>();
}

inline const nlohmann::json& need(const nlohmann::json& obj, const char* key,
                                  const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(ErrKind::BadInput, where + ": missing key '" + key + "'");
    return *it;
}

inline std::vector<std::vector<bigint>> parse_bigmat(const nlohmann::json& v,
                                                     const std::string& what) {
    if (!v.is_array()) fail(ErrKind::BadInput, what + ": expected an array of rows");
    std::vector<std::vector<bigint>> m;
    for (const auto& row : v) {
        if (!row.is_array()) fail(ErrKind::BadInput, what + ": expected an array of rows");
        std::vector<bigint> r;
        for (const auto& e : row) r.push_back(parse_int(e, what));
        m.push_back(std::move(r));
    }
    return m;
}

inline nlohmann::json int_json(const bigint& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return nlohmann::json(v.convert_to<long long>());
    return nlohmann::json(v.str());
}

inline nlohmann::json bigmat_json(const std::vector<std::vector<bigint>>& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : m) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& e : r) row.push_back(int_json(e));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline nlohmann::json parse_object(const std::string& text, const std::string& where) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrKind::BadInput, std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) fail(ErrKind::BadInput, where + " must be a JSON object");
    return j;
}

} // namespace proplie::jsonu
