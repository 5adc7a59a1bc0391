#include "annealsig/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "annealsig/errors.hpp"

namespace annealsig {

json model_to_json(const IsingModel& model) {
    json j;
    j["n"] = model.n();
    j["h"] = model.h();
    j["couplings"] = json::array();
    for (const auto& c : model.couplings()) j["couplings"].push_back({c.i, c.j, c.J});
    return j;
}

IsingModel model_from_json(const json& j) {
    try {
        int n = j.at("n").get<int>();
        auto h = j.at("h").get<std::vector<double>>();
        std::vector<Coupling> c;
        for (const auto& e : j.at("couplings")) {
            if (!e.is_array() || e.size() != 3) throw SpecError("coupling entries are [i, j, value]");
            c.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
        }
        return IsingModel(n, h, c);
    } catch (const json::exception& ex) {
        throw SpecError(std::string("bad model file: ") + ex.what());
    }
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw SpecError("cannot write " + path);
    out << text;
}

IsingModel load_model(const std::string& path) {
    json j;
    try {
        j = json::parse(read_text(path));
    } catch (const json::exception& ex) {
        throw SpecError(path + ": " + ex.what());
    }
    return model_from_json(j);
}

void save_model(const IsingModel& model, const std::string& path) {
    write_text(path, model_to_json(model).dump(2) + "\n");
}

int CsvTable::column(const std::string& name) const {
    for (std::size_t k = 0; k < header.size(); ++k)
        if (header[k] == name) return static_cast<int>(k);
    throw SpecError("missing CSV column " + name);
}

CsvTable parse_csv(const std::string& text) {
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::string cell;
        std::istringstream ls(s);
        while (std::getline(ls, cell, ',')) {
            auto b = cell.find_first_not_of(" \t\r");
            auto e = cell.find_last_not_of(" \t\r");
            out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
        }
        return out;
    };
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
        auto cells = split(line);
        if (t.header.empty()) {
            t.header = cells;
            continue;
        }
        if (cells.size() != t.header.size()) throw SpecError("ragged CSV row: " + line);
        std::vector<double> row;
        for (const auto& c : cells) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(c, &used));
                if (used != c.size()) throw std::invalid_argument(c);
            } catch (const std::exception&) {
                throw SpecError("non-numeric CSV cell: " + c);
            }
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s = buf;
    // Prefer the shortest representation that round-trips.
    for (int p = 1; p < 17; ++p) {
        std::snprintf(buf, sizeof buf, "%.*g", p, v);
        if (std::stod(buf) == v) return buf;
    }
    return s;
}

}  // namespace annealsig
