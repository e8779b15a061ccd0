#include "hl/io.hpp"

#include <fstream>
#include <stdexcept>

namespace hl {

namespace {

nlohmann::json chain_to_json(const Chain& c) {
    auto arr = nlohmann::json::array();
    for (const Simplex& s : c.simplices())
        arr.push_back(s.vertices());
    return arr;
}

Chain chain_from_json(int dim, const nlohmann::json& arr) {
    std::vector<Simplex> elems;
    for (const auto& v : arr)
        elems.emplace_back(v.get<std::vector<int>>());
    if (dim < 0 && !elems.empty())
        throw std::invalid_argument("chain with elements needs a non-negative dimension");
    return dim < 0 ? Chain{} : Chain(dim, std::move(elems));
}

} // namespace

void write_complex_json(const SimplicialComplex& K, const nlohmann::json& meta,
                        std::ostream& os) {
    nlohmann::json j;
    j["format_version"] = 1;
    j["d"] = K.dim();
    if (!meta.is_null())
        j["meta"] = meta;
    auto& arr = j["simplices"] = nlohmann::json::array();
    for (const auto& [s, w] : K.simplices()) {
        nlohmann::json e;
        e["v"] = s.vertices();
        e["w"] = w;
        arr.push_back(std::move(e));
    }
    os << j.dump(2) << '\n';
}

SimplicialComplex read_complex_json(std::istream& is, nlohmann::json* meta_out) {
    nlohmann::json j = nlohmann::json::parse(is);
    SimplicialComplex K;
    for (const auto& e : j.at("simplices"))
        K.insert(Simplex(e.at("v").get<std::vector<int>>()), e.at("w").get<double>());
    std::string why;
    if (!K.is_face_closed(&why))
        throw std::invalid_argument("complex file is not face-closed: " + why);
    if (j.contains("d") && j["d"].get<int>() != K.dim())
        throw std::invalid_argument("complex file: declared dimension disagrees with simplices");
    if (meta_out)
        *meta_out = j.contains("meta") ? j["meta"] : nlohmann::json();
    return K;
}

void write_cycle_json(const Chain& c, std::ostream& os) {
    nlohmann::json j;
    j["format_version"] = 1;
    j["dim"] = c.dim();
    j["simplices"] = chain_to_json(c);
    os << j.dump(2) << '\n';
}

Chain read_cycle_json(std::istream& is) {
    nlohmann::json j = nlohmann::json::parse(is);
    return chain_from_json(j.at("dim").get<int>(), j.at("simplices"));
}

void write_witness_json(const Witness& w, std::ostream& os) {
    nlohmann::json j;
    j["format_version"] = 1;
    j["dim"] = w.dim;
    j["cost"] = w.cost;
    j["cycle"] = chain_to_json(w.cycle);
    j["chain"] = chain_to_json(w.chain);
    os << j.dump(2) << '\n';
}

Witness read_witness_json(std::istream& is) {
    nlohmann::json j = nlohmann::json::parse(is);
    Witness w;
    w.dim = j.at("dim").get<int>();
    w.cost = j.at("cost").get<double>();
    w.cycle = chain_from_json(w.dim, j.at("cycle"));
    w.chain = chain_from_json(w.dim + 1, j.at("chain"));
    return w;
}

nlohmann::json meta_to_json(const InstanceMeta& meta) {
    nlohmann::json j;
    j["generator"] = meta.generator;
    j["params"] = meta.params; // std::map keeps key order deterministic
    j["seed"] = meta.seed;
    j["cycle_mode"] = meta.cycle_mode;
    j["prng"] = meta.prng;
    return j;
}

InstanceMeta meta_from_json(const nlohmann::json& j) {
    InstanceMeta meta;
    if (j.is_null())
        return meta;
    meta.generator = j.value("generator", "");
    if (j.contains("params"))
        meta.params = j["params"].get<std::map<std::string, double>>();
    meta.seed = j.value("seed", std::uint64_t{0});
    meta.cycle_mode = j.value("cycle_mode", "");
    meta.prng = j.value("prng", "");
    return meta;
}

namespace {

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream os(p);
    if (!os)
        throw std::runtime_error("cannot write " + p.string());
    return os;
}

std::ifstream open_in(const std::filesystem::path& p) {
    std::ifstream is(p);
    if (!is)
        throw std::runtime_error("cannot read " + p.string());
    return is;
}

} // namespace

void save_instance(const Instance& inst, const std::filesystem::path& base) {
    auto complex_path = base;
    complex_path += ".complex.json";
    auto cycle_path = base;
    cycle_path += ".cycle.json";
    {
        auto os = open_out(complex_path);
        write_complex_json(inst.complex, meta_to_json(inst.meta), os);
    }
    {
        auto os = open_out(cycle_path);
        write_cycle_json(inst.cycle, os);
    }
}

Instance load_instance(const std::filesystem::path& base) {
    auto complex_path = base;
    complex_path += ".complex.json";
    auto cycle_path = base;
    cycle_path += ".cycle.json";
    Instance inst;
    nlohmann::json meta;
    {
        auto is = open_in(complex_path);
        inst.complex = read_complex_json(is, &meta);
    }
    {
        auto is = open_in(cycle_path);
        inst.cycle = read_cycle_json(is);
    }
    inst.meta = meta_from_json(meta);
    inst.d = inst.cycle.dim() >= 0 ? inst.cycle.dim() : 1;
    if (!is_cycle(inst.cycle))
        throw std::invalid_argument("instance cycle file does not hold a cycle");
    return inst;
}

} // namespace hl
