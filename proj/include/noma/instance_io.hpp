#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "noma/errors.hpp"
#include "noma/scenario.hpp"

namespace noma {

using json = nlohmann::json;

namespace detail {

template <class T>
T field(const json& j, const char* name, const std::string& where)
{
    if (!j.is_object() || !j.contains(name)) throw parse_error(where + ": missing field '" + name + "'");
    try {
        return j.at(name).get<T>();
    } catch (const json::exception&) {
        throw parse_error(where + ": field '" + name + "' has the wrong type");
    }
}

template <class T>
void optional_field(const json& j, const char* name, T& out, const std::string& where)
{
    if (j.contains(name)) out = field<T>(j, name, where);
}

}  // namespace detail

inline json to_json(const NetworkInstance& inst)
{
    json j;
    j["cells"] = json::array();
    for (std::size_t i = 0; i < inst.cells.size(); ++i)
        j["cells"].push_back(
            {{"id", i}, {"x_m", inst.cells[i].x_m}, {"y_m", inst.cells[i].y_m}, {"rb_power_mw", inst.cells[i].rb_power_mw}});
    j["ues"] = json::array();
    for (std::size_t u = 0; u < inst.ues.size(); ++u)
        j["ues"].push_back({{"id", u},
                            {"cell", inst.ues[u].cell},
                            {"demand", inst.ues[u].demand},
                            {"x_m", inst.ues[u].x_m},
                            {"y_m", inst.ues[u].y_m}});
    j["gain"] = inst.gain;
    j["noise_mw"] = inst.noise_mw;
    return j;
}

inline NetworkInstance instance_from_json(const json& j)
{
    using detail::field;
    NetworkInstance inst;
    if (!j.is_object()) throw parse_error("instance: top level must be an object");
    const auto cells = field<json>(j, "cells", "instance");
    if (!cells.is_array()) throw parse_error("instance: field 'cells' must be an array");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const std::string where = "cells[" + std::to_string(i) + "]";
        if (field<std::size_t>(cells[i], "id", where) != i) throw parse_error(where + ": field 'id' must equal its position");
        inst.cells.push_back({field<double>(cells[i], "x_m", where), field<double>(cells[i], "y_m", where),
                              field<double>(cells[i], "rb_power_mw", where)});
    }
    const auto ues = field<json>(j, "ues", "instance");
    if (!ues.is_array()) throw parse_error("instance: field 'ues' must be an array");
    for (std::size_t u = 0; u < ues.size(); ++u) {
        const std::string where = "ues[" + std::to_string(u) + "]";
        if (field<std::size_t>(ues[u], "id", where) != u) throw parse_error(where + ": field 'id' must equal its position");
        Ue ue;
        ue.cell = field<std::size_t>(ues[u], "cell", where);
        if (ue.cell >= inst.cells.size()) throw parse_error(where + ": field 'cell' out of range");
        ue.demand = field<double>(ues[u], "demand", where);
        detail::optional_field(ues[u], "x_m", ue.x_m, where);
        detail::optional_field(ues[u], "y_m", ue.y_m, where);
        inst.ues.push_back(ue);
    }
    inst.gain = field<std::vector<std::vector<double>>>(j, "gain", "instance");
    inst.noise_mw = field<double>(j, "noise_mw", "instance");
    validate(inst);
    return inst;
}

inline json to_json(const NetworkConfig& c)
{
    return {{"n_cells", c.n_cells},
            {"cell_radius_m", c.cell_radius_m},
            {"ues_per_cell", c.ues_per_cell},
            {"carrier_freq_hz", c.carrier_freq_hz},
            {"total_bandwidth_hz", c.total_bandwidth_hz},
            {"rb_bandwidth_hz", c.rb_bandwidth_hz},
            {"rb_power_mw", c.rb_power_mw},
            {"noise_psd_dbm_hz", c.noise_psd_dbm_hz},
            {"shadowing_std_db", c.shadowing_std_db},
            {"load_limit", c.load_limit},
            {"demand", c.demand},
            {"epsilon", c.epsilon},
            {"rng_seed", c.rng_seed}};
}

// Missing keys keep their defaults.
inline NetworkConfig config_from_json(const json& j)
{
    if (!j.is_object()) throw parse_error("config: top level must be an object");
    NetworkConfig c;
    const std::string w = "config";
    detail::optional_field(j, "n_cells", c.n_cells, w);
    detail::optional_field(j, "cell_radius_m", c.cell_radius_m, w);
    detail::optional_field(j, "ues_per_cell", c.ues_per_cell, w);
    detail::optional_field(j, "carrier_freq_hz", c.carrier_freq_hz, w);
    detail::optional_field(j, "total_bandwidth_hz", c.total_bandwidth_hz, w);
    detail::optional_field(j, "rb_bandwidth_hz", c.rb_bandwidth_hz, w);
    detail::optional_field(j, "rb_power_mw", c.rb_power_mw, w);
    detail::optional_field(j, "noise_psd_dbm_hz", c.noise_psd_dbm_hz, w);
    detail::optional_field(j, "shadowing_std_db", c.shadowing_std_db, w);
    detail::optional_field(j, "load_limit", c.load_limit, w);
    detail::optional_field(j, "demand", c.demand, w);
    detail::optional_field(j, "epsilon", c.epsilon, w);
    detail::optional_field(j, "rng_seed", c.rng_seed, w);
    return c;
}

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
}

inline void write_json_file(const json& j, const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw invalid_input("cannot write '" + path + "'");
    out << j.dump(1) << '\n';
}

inline void save_instance(const NetworkInstance& inst, const std::string& path) { write_json_file(to_json(inst), path); }

inline NetworkInstance load_instance(const std::string& path) { return instance_from_json(read_json_file(path)); }

}  // namespace noma
