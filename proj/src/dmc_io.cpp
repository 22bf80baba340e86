#include "wtc2/dmc_io.hpp"

#include <fstream>
#include <set>

#include "wtc2/errors.hpp"

namespace wtc2 {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where)
{
    if (!obj.is_object()) throw ConfigError(where + " must be an object");
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) throw ConfigError("unknown field \"" + key + "\" in " + where);
    }
}

int alphabet(const json& a, const char* key)
{
    if (!a.contains(key)) throw ConfigError(std::string("alphabets.") + key + " is missing");
    const json& v = a.at(key);
    if (!v.is_number_integer()) throw ConfigError(std::string("alphabets.") + key + " must be an integer");
    return v.get<int>();
}

double number(const json& v, const std::string& where)
{
    if (!v.is_number()) throw ConfigError(where + " must be a number");
    return v.get<double>();
}

void flatten(const json& v, int depth, std::vector<double>& out, const std::vector<int>& dims, const std::string& where)
{
    if (depth == static_cast<int>(dims.size())) {
        out.push_back(number(v, where));
        return;
    }
    if (!v.is_array() || static_cast<int>(v.size()) != dims[depth]) {
        throw ConfigError(where + ": nested tensor level " + std::to_string(depth) + " must have " +
                          std::to_string(dims[depth]) + " entries");
    }
    for (const auto& e : v) flatten(e, depth + 1, out, dims, where);
}

Stochastic matrix(const json& v, int cols, const std::string& where)
{
    if (!v.is_array() || v.empty()) throw ConfigError(where + " must be a non-empty array of rows");
    Stochastic s;
    s.rows = static_cast<int>(v.size());
    s.cols = cols;
    for (const auto& row : v) {
        if (!row.is_array() || static_cast<int>(row.size()) != cols) {
            throw ConfigError(where + " rows must have " + std::to_string(cols) + " entries");
        }
        for (const auto& e : row) s.data.push_back(number(e, where));
    }
    return s;
}

json matrix_to_json(const Stochastic& s)
{
    json rows = json::array();
    for (int r = 0; r < s.rows; ++r) {
        json row = json::array();
        for (int c = 0; c < s.cols; ++c) row.push_back(s(r, c));
        rows.push_back(row);
    }
    return rows;
}

const char* mode_name(ErrorMode m)
{
    return m == ErrorMode::exact ? "exact" : "monte-carlo";
}

}  // namespace

DmcDocument parse_dmc(const json& j)
{
    reject_unknown(j, {"alphabets", "tensor", "prefix1", "prefix2", "description"}, "channel document");
    if (!j.contains("alphabets")) throw ConfigError("channel document needs \"alphabets\"");
    if (!j.contains("tensor")) throw ConfigError("channel document needs \"tensor\"");
    const json& a = j.at("alphabets");
    reject_unknown(a, {"x1", "x2", "y1", "y2", "z"}, "alphabets");

    DmcDocument doc;
    DmcSpec& d = doc.dmc;
    d.nx1 = alphabet(a, "x1");
    d.nx2 = alphabet(a, "x2");
    d.ny1 = alphabet(a, "y1");
    d.ny2 = alphabet(a, "y2");
    d.nz = alphabet(a, "z");
    for (int s : {d.nx1, d.nx2, d.ny1, d.ny2, d.nz}) {
        if (s < 1 || s > kMaxExactAlphabet) throw ConfigError("alphabet sizes must lie in [1, 4]");
    }

    const json& t = j.at("tensor");
    if (!t.is_array()) throw ConfigError("tensor must be an array");
    if (!t.empty() && t.front().is_array()) {
        flatten(t, 0, d.tensor, {d.nx1, d.nx2, d.ny1, d.ny2, d.nz}, "tensor");
    } else {
        if (t.size() != d.size()) {
            throw ConfigError("flat tensor needs " + std::to_string(d.size()) + " entries, got " +
                              std::to_string(t.size()));
        }
        for (const auto& e : t) d.tensor.push_back(number(e, "tensor"));
    }

    doc.prefix.p1 = j.contains("prefix1") ? matrix(j.at("prefix1"), d.nx1, "prefix1") : Stochastic::identity(d.nx1);
    doc.prefix.p2 = j.contains("prefix2") ? matrix(j.at("prefix2"), d.nx2, "prefix2") : Stochastic::identity(d.nx2);
    d.validate();
    doc.prefix.validate(d);
    return doc;
}

DmcDocument load_dmc_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open channel file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return parse_dmc(j);
}

json dmc_to_json(const DmcDocument& doc)
{
    const DmcSpec& d = doc.dmc;
    json j;
    j["alphabets"] = {{"x1", d.nx1}, {"x2", d.nx2}, {"y1", d.ny1}, {"y2", d.ny2}, {"z", d.nz}};
    j["tensor"] = d.tensor;
    j["prefix1"] = matrix_to_json(doc.prefix.p1);
    j["prefix2"] = matrix_to_json(doc.prefix.p2);
    return j;
}

nlohmann::ordered_json threshold_to_json(const ThresholdTable& table, std::uint64_t seed)
{
    using oj = nlohmann::ordered_json;
    oj out;
    out["format"] = "wtc2-sim/1";
    out["prng"] = "mt19937_64/v1";
    out["seed"] = seed;
    out["rates"] = {{"r1", table.rates.r1}, {"r2", table.rates.r2}, {"r1p", table.rates.r1p}, {"r2p", table.rates.r2p}};
    const MiProfile& mi = table.thresholds;
    out["thresholds"] = {{"a1", mi.a1}, {"a2", mi.a2}, {"e1", mi.e1},   {"e2", mi.e2},
                         {"e12", mi.e12}, {"e1c", mi.e1c}, {"e2c", mi.e2c}};

    oj reports = oj::array();
    oj cells = oj::array();
    for (const auto& c : table.cells) {
        for (const auto& r : c.replicas) {
            oj e;
            e["n"] = r.n;
            e["replica"] = r.replica;
            e["seed"] = r.seed;
            e["leakage_bits"] = r.leakage_bits;
            e["pe"] = r.error.pe;
            e["pe_half_width"] = r.error.half_width;
            e["mode"] = mode_name(r.error.mode);
            e["trials"] = r.error.trials;
            e["divergence_to_mixture"] = r.divergence_to_mixture;
            e["divergence_to_product"] = r.divergence_to_product;
            reports.push_back(std::move(e));
        }
        oj row;
        row["n"] = c.n;
        row["m1"] = c.m1;
        row["m1p"] = c.m1p;
        row["m2"] = c.m2;
        row["m2p"] = c.m2p;
        row["skipped"] = c.skipped;
        row["note"] = c.note;
        row["mean_leakage"] = c.mean_leakage;
        row["mean_pe"] = c.mean_pe;
        cells.push_back(std::move(row));
    }
    out["reports"] = std::move(reports);
    out["table"] = std::move(cells);
    return out;
}

}  // namespace wtc2
