#include "podsum/config.hpp"

#include "podsum/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <initializer_list>
#include <sstream>

namespace podsum {

namespace {

using nlohmann::json;

std::string child(const std::string& path, const std::string& key)
{
    return path + "/" + key;
}

void reject_unknown_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed)
{
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed) {
            known = known || key == a;
        }
        if (!known) {
            throw ConfigError(child(path, key), "unknown field");
        }
    }
}

const json& require(const json& obj, const char* key, const std::string& path)
{
    if (!obj.contains(key)) {
        throw ConfigError(child(path, key), "missing required field");
    }
    return obj.at(key);
}

double require_number(const json& obj, const char* key, const std::string& path)
{
    const json& v = require(obj, key, path);
    if (!v.is_number()) {
        throw ConfigError(child(path, key), "expected a number");
    }
    return v.get<double>();
}

std::string require_kind(const json& obj, const std::string& path)
{
    if (!obj.is_object()) {
        throw ConfigError(path, "expected an object");
    }
    const json& v = require(obj, "kind", path);
    if (!v.is_string()) {
        throw ConfigError(child(path, "kind"), "expected a string");
    }
    return v.get<std::string>();
}

std::vector<double> require_values(const json& obj, const std::string& path)
{
    const json& v = require(obj, "values", path);
    const std::string vpath = child(path, "values");
    if (!v.is_array()) {
        throw ConfigError(vpath, "expected an array of numbers");
    }
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number() || v[i].get<double>() < 0.0) {
            throw ConfigError(vpath + "/" + std::to_string(i), "expected a nonnegative number");
        }
        out.push_back(v[i].get<double>());
    }
    return out;
}

OrderProfile parse_gamma(const json& obj, const std::string& path)
{
    const std::string kind = require_kind(obj, path);
    try {
        if (kind == "factorial_power") {
            reject_unknown_keys(obj, path, {"kind", "sigma"});
            return OrderProfile::factorial_power(require_number(obj, "sigma", path));
        }
        if (kind == "explicit") {
            reject_unknown_keys(obj, path, {"kind", "values"});
            return OrderProfile::explicit_values(require_values(obj, path));
        }
    } catch (const InvalidArgument& e) {
        throw ConfigError(path, e.what());
    }
    throw ConfigError(child(path, "kind"), "unknown order profile kind '" + kind + "'");
}

WeightSequence parse_upsilon(const json& obj, const std::string& path)
{
    const std::string kind = require_kind(obj, path);
    try {
        if (kind == "poly_decay") {
            reject_unknown_keys(obj, path, {"kind", "c", "rho"});
            const double c = require_number(obj, "c", path);
            const double rho = require_number(obj, "rho", path);
            if (c > 0.0 && rho <= 1.0) {
                throw NotSummable(child(path, "rho") +
                                  ": sum of Upsilon_j diverges for rho <= 1, so S_gamma(m) is infinite "
                                  "for every m > 0 (needs rho > 1)");
            }
            return c == 0.0 ? WeightSequence::zero() : WeightSequence::poly_decay(c, rho);
        }
        if (kind == "explicit") {
            reject_unknown_keys(obj, path, {"kind", "values"});
            return WeightSequence::explicit_values(require_values(obj, path));
        }
        if (kind == "zero") {
            reject_unknown_keys(obj, path, {"kind"});
            return WeightSequence::zero();
        }
    } catch (const InvalidArgument& e) {
        throw ConfigError(path, e.what());
    }
    throw ConfigError(child(path, "kind"), "unknown sequence kind '" + kind + "'");
}

} // namespace

FamilySpec parse_family(std::string_view json_text)
{
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("", "top level must be an object");
    }

    OrderProfile gamma = parse_gamma(require(doc, "gamma", ""), "/gamma");
    if (!doc.contains("alpha")) {
        reject_unknown_keys(doc, "", {"gamma", "upsilon", "description"});
        return PODSpec{std::move(gamma), parse_upsilon(require(doc, "upsilon", ""), "/upsilon")};
    }

    reject_unknown_keys(doc, "", {"alpha", "gamma", "upsilon", "description"});
    const json& a = doc.at("alpha");
    if (!a.is_number_integer() || a.get<long long>() < 1) {
        throw ConfigError("/alpha", "expected an integer >= 1");
    }
    const auto alpha = static_cast<std::size_t>(a.get<long long>());
    const json& grid = require(doc, "upsilon", "");
    if (!grid.is_array()) {
        throw ConfigError("/upsilon", "SPOD families need an array of alpha sequences");
    }
    if (grid.size() != alpha) {
        throw ConfigError("/upsilon", "expected " + std::to_string(alpha) + " sequences, got " +
                                          std::to_string(grid.size()));
    }
    std::vector<WeightSequence> seqs;
    seqs.reserve(alpha);
    for (std::size_t k = 0; k < alpha; ++k) {
        seqs.push_back(parse_upsilon(grid[k], "/upsilon/" + std::to_string(k)));
    }
    return SPODSpec(alpha, std::move(gamma), std::move(seqs));
}

FamilySpec load_family(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("", "cannot open spec file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_family(buf.str());
}

} // namespace podsum
