#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "annealsig/ising.hpp"

namespace annealsig {

using json = nlohmann::json;

json model_to_json(const IsingModel& model);
IsingModel model_from_json(const json& j);
IsingModel load_model(const std::string& path);
void save_model(const IsingModel& model, const std::string& path);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

// Minimal CSV reader: header row plus numeric rows.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    int column(const std::string& name) const;
};
CsvTable parse_csv(const std::string& text);

std::string fmt_double(double v);

}  // namespace annealsig
