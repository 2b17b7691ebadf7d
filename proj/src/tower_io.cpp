#include "sseq/tower_io.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>

namespace sseq {

using nlohmann::json;

namespace {

json load_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
    }
    return doc;
}

int require_int(const json& j, const char* field, const std::string& where)
{
    if (!j.contains(field) || !j[field].is_number_integer())
        throw std::invalid_argument(where + ": missing integer field '" + field + "'");
    return j[field].get<int>();
}

std::string require_string(const json& j, const char* field, const std::string& where)
{
    if (!j.contains(field) || !j[field].is_string())
        throw std::invalid_argument(where + ": missing string field '" + field + "'");
    return j[field].get<std::string>();
}

}  // namespace

FilteredComplex parse_tower_json(const json& doc)
{
    if (!doc.is_object())
        throw std::invalid_argument("tower document: expected a JSON object");
    int p_raw = require_int(doc, "p", "tower document");
    if (p_raw < 2 || !is_prime(static_cast<std::uint32_t>(p_raw)))
        throw std::invalid_argument("tower document: p = " + std::to_string(p_raw) +
                                    " is not prime");
    const std::uint32_t p = static_cast<std::uint32_t>(p_raw);

    std::vector<FilteredComplex::Generator> gens;
    std::map<std::string, int> index;
    if (doc.contains("generators")) {
        if (!doc["generators"].is_array())
            throw std::invalid_argument("tower document: 'generators' must be an array");
        for (const auto& g : doc["generators"]) {
            FilteredComplex::Generator gen;
            gen.name = require_string(g, "name", "generator");
            gen.degree = require_int(g, "degree", "generator '" + gen.name + "'");
            gen.filtration = require_int(g, "filtration", "generator '" + gen.name + "'");
            if (gen.filtration < 0)
                throw std::invalid_argument("generator '" + gen.name +
                                            "': filtration must be nonnegative");
            if (index.count(gen.name))
                throw std::invalid_argument("duplicate generator name '" + gen.name + "'");
            index[gen.name] = static_cast<int>(gens.size());
            gens.push_back(std::move(gen));
        }
    }

    // Assemble per-degree differential matrices in listed-generator order.
    std::map<int, std::vector<int>> by_degree;
    for (std::size_t i = 0; i < gens.size(); ++i)
        by_degree[gens[i].degree].push_back(static_cast<int>(i));
    auto position = [&](int gen) {
        const auto& v = by_degree[gens[static_cast<std::size_t>(gen)].degree];
        for (std::size_t k = 0; k < v.size(); ++k)
            if (v[k] == gen)
                return static_cast<int>(k);
        return -1;
    };
    std::map<int, FpMatrix> diffs;
    for (const auto& [n, idx] : by_degree) {
        auto tgt = by_degree.find(n - 1);
        if (tgt == by_degree.end())
            continue;
        diffs.emplace(n, FpMatrix(p, static_cast<int>(tgt->second.size()),
                                  static_cast<int>(idx.size())));
    }

    if (doc.contains("differential")) {
        if (!doc["differential"].is_array())
            throw std::invalid_argument("tower document: 'differential' must be an array");
        for (const auto& entry : doc["differential"]) {
            std::string from = require_string(entry, "from", "differential entry");
            auto fit = index.find(from);
            if (fit == index.end())
                throw std::invalid_argument("differential entry: unknown generator '" + from + "'");
            const auto& src = gens[static_cast<std::size_t>(fit->second)];
            if (!entry.contains("to") || !entry["to"].is_array())
                throw std::invalid_argument("differential from '" + from +
                                            "': missing 'to' array");
            for (const auto& pair : entry["to"]) {
                if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
                    !pair[1].is_number_integer())
                    throw std::invalid_argument("differential from '" + from +
                                                "': entries must be [name, coefficient] pairs");
                std::string to = pair[0].get<std::string>();
                long long coeff = pair[1].get<long long>();
                auto tit = index.find(to);
                if (tit == index.end())
                    throw std::invalid_argument("differential from '" + from +
                                                "': unknown generator '" + to + "'");
                const auto& tgt = gens[static_cast<std::size_t>(tit->second)];
                if (tgt.degree != src.degree - 1)
                    throw std::invalid_argument(
                        "differential from '" + from + "' to '" + to +
                        "': degree must drop by one (got " + std::to_string(src.degree) + " -> " +
                        std::to_string(tgt.degree) + ")");
                if (tgt.filtration < src.filtration)
                    throw std::invalid_argument("differential from '" + from + "' to '" + to +
                                                "': filtration may not decrease");
                std::uint32_t c = static_cast<std::uint32_t>(((coeff % p_raw) + p_raw) % p_raw);
                auto& m = diffs.at(src.degree);
                m.set(position(tit->second), position(fit->second),
                      (m.at(position(tit->second), position(fit->second)) + c) % p);
            }
        }
    }
    return FilteredComplex(p, std::move(gens), std::move(diffs));
}

FilteredComplex parse_tower_file(const std::string& path)
{
    return parse_tower_json(load_json(path));
}

json emit_tower(const FilteredComplex& f)
{
    json doc;
    doc["p"] = f.p();
    doc["generators"] = json::array();
    for (const auto& g : f.generators())
        doc["generators"].push_back(
            {{"name", g.name}, {"degree", g.degree}, {"filtration", g.filtration}});
    json diff = json::array();
    std::map<int, std::vector<int>> by_degree;
    const auto& gens = f.generators();
    for (std::size_t i = 0; i < gens.size(); ++i)
        by_degree[gens[i].degree].push_back(static_cast<int>(i));
    for (std::size_t j = 0; j < gens.size(); ++j) {
        int n = gens[j].degree;
        auto tgt = by_degree.find(n - 1);
        if (tgt == by_degree.end())
            continue;
        FpMatrix m = f.total().diff(n);
        const auto& cols = by_degree[n];
        int col = -1;
        for (std::size_t k = 0; k < cols.size(); ++k)
            if (cols[k] == static_cast<int>(j))
                col = static_cast<int>(k);
        json to = json::array();
        for (std::size_t i = 0; i < tgt->second.size(); ++i) {
            std::uint32_t v = m.at(static_cast<int>(i), col);
            if (v)
                to.push_back({gens[static_cast<std::size_t>(tgt->second[i])].name, v});
        }
        if (!to.empty())
            diff.push_back({{"from", gens[j].name}, {"to", to}});
    }
    doc["differential"] = diff;
    return doc;
}

LoadedMap parse_map_file(const std::string& path)
{
    json doc = load_json(path);
    if (!doc.is_object())
        throw std::invalid_argument("map document: expected a JSON object");
    std::string src_ref = require_string(doc, "source", "map document");
    std::string tgt_ref = require_string(doc, "target", "map document");
    auto base = std::filesystem::path(path).parent_path();
    auto resolve = [&](const std::string& ref) {
        std::filesystem::path p(ref);
        return p.is_absolute() ? p.string() : (base / p).string();
    };
    LoadedMap out{parse_tower_file(resolve(src_ref)), parse_tower_file(resolve(tgt_ref)), {}};
    if (out.source.p() != out.target.p())
        throw std::invalid_argument("map document: source and target have different moduli");
    const std::uint32_t p = out.source.p();

    std::map<std::string, int> sidx, tidx;
    for (std::size_t i = 0; i < out.source.generators().size(); ++i)
        sidx[out.source.generators()[i].name] = static_cast<int>(i);
    for (std::size_t i = 0; i < out.target.generators().size(); ++i)
        tidx[out.target.generators()[i].name] = static_cast<int>(i);

    auto position = [](const FilteredComplex& f, int gen) {
        auto basis = f.degree_basis(f.generators()[static_cast<std::size_t>(gen)].degree);
        for (std::size_t k = 0; k < basis.size(); ++k)
            if (basis[k] == gen)
                return static_cast<int>(k);
        return -1;
    };

    if (doc.contains("entries")) {
        if (!doc["entries"].is_array())
            throw std::invalid_argument("map document: 'entries' must be an array");
        for (const auto& entry : doc["entries"]) {
            std::string from = require_string(entry, "from", "map entry");
            auto fit = sidx.find(from);
            if (fit == sidx.end())
                throw std::invalid_argument("map entry: unknown source generator '" + from + "'");
            const auto& src = out.source.generators()[static_cast<std::size_t>(fit->second)];
            if (!entry.contains("to") || !entry["to"].is_array())
                throw std::invalid_argument("map entry from '" + from + "': missing 'to' array");
            for (const auto& pair : entry["to"]) {
                if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
                    !pair[1].is_number_integer())
                    throw std::invalid_argument("map entry from '" + from +
                                                "': entries must be [name, coefficient] pairs");
                std::string to = pair[0].get<std::string>();
                long long coeff = pair[1].get<long long>();
                auto tit = tidx.find(to);
                if (tit == tidx.end())
                    throw std::invalid_argument("map entry from '" + from +
                                                "': unknown target generator '" + to + "'");
                const auto& tgt = out.target.generators()[static_cast<std::size_t>(tit->second)];
                if (tgt.degree != src.degree)
                    throw std::invalid_argument("map entry from '" + from + "' to '" + to +
                                                "': degree must be preserved");
                if (tgt.filtration < src.filtration)
                    throw std::invalid_argument("map entry from '" + from + "' to '" + to +
                                                "': filtration may not decrease");
                auto it = out.comps.find(src.degree);
                if (it == out.comps.end())
                    it = out.comps
                             .emplace(src.degree,
                                      FpMatrix(p,
                                               static_cast<int>(
                                                   out.target.degree_basis(src.degree).size()),
                                               static_cast<int>(
                                                   out.source.degree_basis(src.degree).size())))
                             .first;
                std::uint32_t c = static_cast<std::uint32_t>(
                    ((coeff % static_cast<long long>(p)) + p) % p);
                it->second.set(position(out.target, tit->second), position(out.source, fit->second),
                               (it->second.at(position(out.target, tit->second),
                                              position(out.source, fit->second)) +
                                c) %
                                   p);
            }
        }
    }
    return out;
}

std::string line_spec_str(const LineSpec& spec)
{
    return "m=" + spec.m.str() + " b=" + spec.b.str() + " r=" + std::to_string(spec.r);
}

json report_to_json(const VerificationReport& rep)
{
    json j;
    j["condition"] = rep.condition;
    j["holds"] = rep.holds;
    j["premises"] = json::array();
    for (const auto& pr : rep.premises)
        j["premises"].push_back({{"m", pr.m.str()}, {"b", pr.b.str()}, {"r", pr.r}});
    if (rep.conclusion)
        j["conclusion"] = {{"m", rep.conclusion->m.str()},
                           {"b", rep.conclusion->b.str()},
                           {"r", rep.conclusion->r}};
    j["witnesses"] = json::array();
    for (const auto& w : rep.witnesses) {
        json jw{{"s", w.s}, {"t", w.t}, {"dim", w.dim}};
        if (!w.note.empty())
            jw["note"] = w.note;
        j["witnesses"].push_back(jw);
    }
    if (!rep.candidates.empty()) {
        j["candidates"] = json::array();
        for (const auto& c : rep.candidates)
            j["candidates"].push_back({{"label", c.label},
                                       {"intercept", c.intercept ? c.intercept->str() : "-inf"},
                                       {"holds", c.holds}});
    }
    if (!rep.notes.empty())
        j["notes"] = rep.notes;
    return j;
}

}  // namespace sseq
