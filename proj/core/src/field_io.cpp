#include "fblab/field_io.hpp"

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace fblab {

namespace {

constexpr char kMagic[4] = {'F', 'B', 'L', 'B'};

std::string header_json(const Grid& g, const char* kind) {
    nlohmann::json j;
    j["nx"] = g.nx;
    j["ny"] = g.ny;
    j["h"] = g.h;
    j["origin"] = {g.origin.x, g.origin.y};
    j["upsilon"] = g.upsilon;
    j["kind"] = kind;
    return j.dump();
}

void check_grid(const nlohmann::json& j, const Grid& g) {
    if (j.at("nx").get<int>() != g.nx || j.at("ny").get<int>() != g.ny ||
        j.at("h").get<double>() != g.h || j.at("upsilon").get<double>() != g.upsilon)
        throw std::runtime_error("checkpoint header does not match the grid");
}

std::vector<std::uint8_t> pack_bits(const std::vector<std::uint8_t>& mask) {
    std::vector<std::uint8_t> out((mask.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) out[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
    return out;
}

std::vector<std::uint8_t> unpack_bits(const std::vector<std::uint8_t>& bits, std::size_t n) {
    std::vector<std::uint8_t> out(n, 0);
    for (std::size_t i = 0; i < n; ++i) out[i] = (bits[i / 8] >> (i % 8)) & 1u;
    return out;
}

std::string read_all(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Parsed {
    nlohmann::json header;
    const char* payload;
    std::size_t payload_size;
};

Parsed parse(const std::string& bytes) {
    if (bytes.size() < 8 || std::memcmp(bytes.data(), kMagic, 4) != 0)
        throw std::runtime_error("not a checkpoint file");
    std::uint32_t hlen;
    std::memcpy(&hlen, bytes.data() + 4, 4);
    if (bytes.size() < 8 + hlen) throw std::runtime_error("truncated checkpoint header");
    Parsed p;
    p.header = nlohmann::json::parse(bytes.substr(8, hlen));
    p.payload = bytes.data() + 8 + hlen;
    p.payload_size = bytes.size() - 8 - hlen;
    return p;
}

std::string assemble(const std::string& header, const void* payload, std::size_t payload_size) {
    std::string out;
    out.reserve(8 + header.size() + payload_size);
    out.append(kMagic, 4);
    const std::uint32_t hlen = static_cast<std::uint32_t>(header.size());
    out.append(reinterpret_cast<const char*>(&hlen), 4);
    out.append(header);
    out.append(reinterpret_cast<const char*>(payload), payload_size);
    return out;
}

}  // namespace

void atomic_write(const std::string& path, const std::string& bytes) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    fs::rename(tmp, target);
}

void save_field(const std::string& path, const ScalarField& u) {
    std::string payload(u.values.size() * sizeof(double), '\0');
    std::memcpy(payload.data(), u.values.data(), payload.size());
    const auto frozen = pack_bits(u.frozen);
    payload.append(reinterpret_cast<const char*>(frozen.data()), frozen.size());
    atomic_write(path, assemble(header_json(*u.grid, "field"), payload.data(), payload.size()));
}

void save_set(const std::string& path, const IndicatorSet& e) {
    const auto inside = pack_bits(e.inside);
    const auto frozen = pack_bits(e.frozen);
    std::string payload(reinterpret_cast<const char*>(inside.data()), inside.size());
    payload.append(reinterpret_cast<const char*>(frozen.data()), frozen.size());
    atomic_write(path, assemble(header_json(*e.grid, "set"), payload.data(), payload.size()));
}

ScalarField load_field(const std::string& path, const Grid& grid) {
    const std::string bytes = read_all(path);
    const Parsed p = parse(bytes);
    check_grid(p.header, grid);
    if (p.header.at("kind") != "field") throw std::runtime_error("checkpoint is not a field");
    const std::size_t n = grid.cell_count();
    const std::size_t nbits = (n + 7) / 8;
    if (p.payload_size != n * sizeof(double) + nbits)
        throw std::runtime_error("field payload size mismatch");
    ScalarField u;
    u.grid = &grid;
    u.values.resize(n);
    std::memcpy(u.values.data(), p.payload, n * sizeof(double));
    std::vector<std::uint8_t> bits(nbits);
    std::memcpy(bits.data(), p.payload + n * sizeof(double), nbits);
    u.frozen = unpack_bits(bits, n);
    return u;
}

IndicatorSet load_set(const std::string& path, const Grid& grid) {
    const std::string bytes = read_all(path);
    const Parsed p = parse(bytes);
    check_grid(p.header, grid);
    if (p.header.at("kind") != "set") throw std::runtime_error("checkpoint is not a set");
    const std::size_t n = grid.cell_count();
    const std::size_t nbits = (n + 7) / 8;
    if (p.payload_size != 2 * nbits) throw std::runtime_error("set payload size mismatch");
    IndicatorSet e;
    e.grid = &grid;
    std::vector<std::uint8_t> bits(nbits);
    std::memcpy(bits.data(), p.payload, nbits);
    e.inside = unpack_bits(bits, n);
    std::memcpy(bits.data(), p.payload + nbits, nbits);
    e.frozen = unpack_bits(bits, n);
    return e;
}

std::string read_header_json(const std::string& path) {
    return parse(read_all(path)).header.dump();
}

}  // namespace fblab
