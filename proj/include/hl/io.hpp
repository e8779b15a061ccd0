#pragma once

#include "hl/complex.hpp"
#include "hl/instances.hpp"

#include <filesystem>
#include <iosfwd>

#include "json.hpp"

namespace hl {

// Complex file: {"format_version":1, "d": <max dim>, "meta": {...},
//                "simplices": [{"v":[...], "w": <weight>}, ...]}
// Every simplex is listed explicitly; the reader rejects complexes that are
// not face-closed. Unknown keys are ignored.
void write_complex_json(const SimplicialComplex& K, const nlohmann::json& meta,
                        std::ostream& os);
SimplicialComplex read_complex_json(std::istream& is, nlohmann::json* meta_out = nullptr);

// Cycle file: {"format_version":1, "dim": d, "simplices": [[...], ...]}
void write_cycle_json(const Chain& c, std::ostream& os);
Chain read_cycle_json(std::istream& is);

struct Witness {
    int dim = -1;
    double cost = 0.0;
    Chain cycle; // U
    Chain chain; // W with U = V △ ∂W
};

void write_witness_json(const Witness& w, std::ostream& os);
Witness read_witness_json(std::istream& is);

nlohmann::json meta_to_json(const InstanceMeta& meta);
InstanceMeta meta_from_json(const nlohmann::json& j);

// instance on disk = <base>.complex.json + <base>.cycle.json
void save_instance(const Instance& inst, const std::filesystem::path& base);
Instance load_instance(const std::filesystem::path& base);

} // namespace hl
