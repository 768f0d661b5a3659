#include "snw/snwf.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "snw/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "SNWF1 stores little-endian doubles; big-endian hosts are unsupported");

namespace snw {

using json = nlohmann::ordered_json;

void write_snwf(const std::string& path, const SnwfRecord& rec) {
    const UniformGrid& g = rec.field.grid;
    if (rec.field.values.size() != g.size())
        throw validation_error("snwf: field size does not match its grid");

    std::ofstream f(path, std::ios::binary);
    if (!f) throw validation_error("snwf: cannot open " + path + " for writing");

    json header;
    header["h"] = g.h;
    header["n"] = g.n;
    header["norm_target"] = rec.norm_target;
    header["time"] = rec.time;
    header["units"] = rec.units;
    f << "SNWF1 " << header.dump() << "\n";

    f.write(reinterpret_cast<const char*>(rec.field.values.data()),
            std::streamsize(rec.field.values.size() * sizeof(std::complex<double>)));
    if (!f) throw validation_error("snwf: short write to " + path);
}

SnwfRecord read_snwf(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw validation_error("snwf: cannot open " + path);

    std::string line;
    if (!std::getline(f, line)) throw validation_error("snwf: missing header line");
    constexpr std::string_view magic = "SNWF1 ";
    if (line.rfind(magic, 0) != 0)
        throw validation_error("snwf: bad magic in " + path);

    json header;
    try {
        header = json::parse(line.substr(magic.size()));
    } catch (const json::exception& e) {
        throw validation_error(std::string("snwf: malformed header: ") + e.what());
    }
    if (!header.contains("n") || !header.contains("h"))
        throw validation_error("snwf: header lacks n/h");

    SnwfRecord rec;
    UniformGrid grid(header.at("n").get<int>(), header.at("h").get<double>());
    rec.field = ComplexField(grid);
    rec.time = header.value("time", 0.0);
    rec.units = header.value("units", std::string("dimensionless"));
    rec.norm_target = header.value("norm_target", 1.0);

    f.read(reinterpret_cast<char*>(rec.field.values.data()),
           std::streamsize(rec.field.values.size() * sizeof(std::complex<double>)));
    if (std::size_t(f.gcount()) != rec.field.values.size() * sizeof(std::complex<double>))
        throw validation_error("snwf: truncated sample block in " + path);
    return rec;
}

}  // namespace snw
