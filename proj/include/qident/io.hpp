#pragma once

// JSON/CSV export of series and results, and loading of user registry files.
//
// Registry file format (version 1):
//
//   {
//     "format": 1,
//     "identities": [
//       {"id": "my_identity", "lhs": "divser(kron(-4),2)", "rhs": "eta(2)^6*eta(4)^4/eta(1)^4", "order": 300}
//     ]
//   }
//
// "lhs" and "rhs" use the expression syntax of qident/dsl.hpp; "order" is optional.

#include "qident/dsl.hpp"
#include "qident/etasolve.hpp"
#include "qident/registry.hpp"
#include "qident/series.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qident {

using Json = nlohmann::ordered_json;

/// Coefficients c_0..c_{N-1} as decimal strings ("p" or "p/q").
inline Json series_to_json(const Series& s) {
    Json arr = Json::array();
    for (const auto& c : s.coefficients()) arr.push_back(to_string(c));
    return arr;
}

/// CSV with header "index,numerator,denominator".
inline std::string series_to_csv(const Series& s) {
    std::ostringstream out;
    out << "index,numerator,denominator\n";
    std::size_t i = 0;
    for (const auto& c : s.coefficients())
        out << i++ << ',' << c.get_num().get_str() << ',' << c.get_den().get_str() << '\n';
    return out.str();
}

inline Json verify_to_json(const VerifyResult& r) {
    Json j;
    j["id"] = r.id;
    j["verified"] = r.verified();
    j["order"] = r.order;
    if (r.mismatch) {
        j["mismatch"] = {{"index", r.mismatch->index},
                         {"lhs", to_string(r.mismatch->lhs)},
                         {"rhs", to_string(r.mismatch->rhs)}};
    }
    return j;
}

inline Json fit_to_json(const FitResult& r, std::size_t order) {
    Json j;
    if (r.exponents) {
        Json ex = Json::object();
        for (const auto& [d, e] : *r.exponents) ex[std::to_string(d)] = e;
        j["exponents"] = ex;
        j["verification"] = {{"verified", true}, {"order", order}, {"rows_used", r.rows_used}};
        return j;
    }
    j["infeasible"] = to_string(r.infeasible->reason);
    if (r.infeasible->index) j["index"] = *r.infeasible->index;
    if (!r.infeasible->solution.empty()) {
        Json sol = Json::array();
        for (const auto& v : r.infeasible->solution) sol.push_back(to_string(v));
        j["rational_solution"] = sol;
    }
    j["verification"] = {{"verified", false}, {"order", order}, {"rows_used", r.rows_used}};
    return j;
}

inline std::string format_exponents(const EtaQuotient& e) {
    std::string s = "{";
    bool first = true;
    for (const auto& [d, r] : e) {
        s += (first ? "" : ", ") + std::to_string(d) + ":" + std::to_string(r);
        first = false;
    }
    return s + "}";
}

class RegistryFileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct UserEntry {
    IdentityEntry entry;
    std::optional<std::size_t> order;
};

inline std::vector<UserEntry> parse_registry_document(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw RegistryFileError(std::string("registry file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw RegistryFileError("registry file must be a JSON object");
    if (!doc.contains("format") || doc["format"] != 1)
        throw RegistryFileError("registry file must declare \"format\": 1");
    if (!doc.contains("identities") || !doc["identities"].is_array())
        throw RegistryFileError("registry file needs an \"identities\" array");

    std::vector<UserEntry> out;
    std::set<std::string> seen;
    for (const auto& item : doc["identities"]) {
        for (const char* key : {"id", "lhs", "rhs"})
            if (!item.contains(key) || !item[key].is_string())
                throw RegistryFileError(std::string("identity is missing string field \"") + key + "\"");
        const std::string id = item["id"];
        if (!seen.insert(id).second) throw RegistryFileError("duplicate identity id '" + id + "'");
        auto side = [&](const char* key) {
            try {
                return dsl::parse(item[key].get<std::string>());
            } catch (const dsl::ParseError& e) {
                throw RegistryFileError("identity '" + id + "' " + key + ": " + e.what());
            }
        };
        std::optional<std::size_t> order;
        if (item.contains("order")) {
            if (!item["order"].is_number_unsigned() || item["order"].get<std::size_t>() == 0)
                throw RegistryFileError("identity '" + id + "': order must be a positive integer");
            order = item["order"].get<std::size_t>();
        }
        const std::string citation = item["lhs"].get<std::string>() + " = " + item["rhs"].get<std::string>();
        out.push_back({IdentityEntry{id, side("lhs"), side("rhs"), citation, std::nullopt, ""}, order});
    }
    return out;
}

inline std::vector<UserEntry> load_registry_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw RegistryFileError("cannot open registry file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_registry_document(buf.str());
}

}  // namespace qident
