#include "hcd/grid_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hcd/format.hpp"

namespace hcd {

namespace {

const char* const kProvenanceKeys[] = {"K", "J", "provenance", "base", "h", "delta", "p", "seed", "mode"};

bool is_provenance_key(const std::string& key) {
    for (const char* k : kProvenanceKeys)
        if (key == k) return true;
    return false;
}

std::string require(const KeyValues& kv, const std::string& key, const std::filesystem::path& path) {
    auto it = kv.find(key);
    if (it == kv.end()) throw std::runtime_error(path.string() + ": missing key '" + key + "'");
    return it->second;
}

}  // namespace

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
    auto meta = csv;
    meta.replace_extension(".meta");
    return meta;
}

void write_key_values(const KeyValues& kv, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (const auto& [key, value] : kv) out << key << '=' << value << '\n';
}

KeyValues read_key_values(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    KeyValues kv;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw std::runtime_error(path.string() + ": expected key=value, got '" + line + "'");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

void write_coeff_grid(const CoeffGrid& grid, const std::filesystem::path& csv, const KeyValues& extra) {
    std::ofstream out(csv);
    if (!out) throw std::runtime_error("cannot write " + csv.string());
    out << "k,j,value\n";
    for (int k = 0; k <= grid.K(); ++k)
        for (int j = 0; j <= grid.J(); ++j) out << k << ',' << j << ',' << format_number(grid(k, j)) << '\n';

    KeyValues kv = extra;
    const auto& prov = grid.provenance;
    kv["K"] = std::to_string(grid.K());
    kv["J"] = std::to_string(grid.J());
    kv["provenance"] = to_string(prov.source);
    kv["base"] = to_string(prov.base);
    kv["h"] = format_number(prov.h);
    kv["delta"] = format_number(prov.delta);
    kv["p"] = format_p(prov.p);
    kv["seed"] = std::to_string(prov.seed);
    kv["mode"] = to_string(prov.mode);
    write_key_values(kv, sidecar_path(csv));
}

CoeffGrid read_coeff_grid(const std::filesystem::path& csv, KeyValues* extra) {
    const auto meta_path = sidecar_path(csv);
    const KeyValues kv = read_key_values(meta_path);
    const auto K = static_cast<int>(parse_integer(require(kv, "K", meta_path)));
    const auto J = static_cast<int>(parse_integer(require(kv, "J", meta_path)));
    if (K < 0 || J < 0) throw std::runtime_error(meta_path.string() + ": negative grid degree");

    CoeffGrid grid(K, J);
    grid.provenance.source = parse_source(require(kv, "provenance", meta_path));
    grid.provenance.base = parse_source(require(kv, "base", meta_path));
    grid.provenance.h = parse_double(require(kv, "h", meta_path));
    grid.provenance.delta = parse_double(require(kv, "delta", meta_path));
    grid.provenance.p = parse_p(require(kv, "p", meta_path));
    grid.provenance.seed = static_cast<std::uint64_t>(std::stoull(require(kv, "seed", meta_path)));
    grid.provenance.mode = parse_noise_mode(require(kv, "mode", meta_path));

    std::ifstream in(csv);
    if (!in) throw std::runtime_error("cannot read " + csv.string());
    std::string line;
    if (!std::getline(in, line) || trim(line) != "k,j,value")
        throw std::runtime_error(csv.string() + ": expected header 'k,j,value'");
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != 3) throw std::runtime_error(csv.string() + ": malformed row '" + line + "'");
        const auto k = parse_integer(fields[0]);
        const auto j = parse_integer(fields[1]);
        if (k < 0 || j < 0 || k > K || j > J)
            throw std::runtime_error(csv.string() + ": index outside declared grid in row '" + line + "'");
        grid(static_cast<int>(k), static_cast<int>(j)) = parse_double(fields[2]);
    }
    if (extra)
        for (const auto& [key, value] : kv)
            if (!is_provenance_key(key)) (*extra)[key] = value;
    return grid;
}

}  // namespace hcd
