#ifndef SSEQ_TOWER_IO_HPP
#define SSEQ_TOWER_IO_HPP

#include <string>

#include "json.hpp"
#include "sseq/lines.hpp"
#include "sseq/tower.hpp"

namespace sseq {

/* Tower documents: UTF-8 JSON with fields
**   p            prime modulus
**   generators   [{"name": ..., "degree": ..., "filtration": ...}, ...]
**   differential [{"from": name, "to": [[name, coeff], ...]}, ...]
** F_s is spanned by the generators of filtration >= s. */
FilteredComplex parse_tower_json(const nlohmann::json& doc);
FilteredComplex parse_tower_file(const std::string& path);
nlohmann::json emit_tower(const FilteredComplex& f);

/* Map documents reference two tower files (relative paths resolve against
** the map file's directory) and list entries generator by generator. */
struct LoadedMap {
    FilteredComplex source;
    FilteredComplex target;
    std::map<int, FpMatrix> comps;

    TowerMap tower_map() const
    {
        FilteredMap fm{&source, &target, comps};
        return fm.to_tower_map();
    }
};

LoadedMap parse_map_file(const std::string& path);

nlohmann::json report_to_json(const VerificationReport& rep);
std::string line_spec_str(const LineSpec& spec);

}  // namespace sseq

#endif
