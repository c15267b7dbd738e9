#include "zk/field_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

#include "json.hpp"
#include "zk/config.hpp"

namespace zk {

void write_field(const Field2D& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_field: cannot open " + path);
  uint32_t n1 = f.grid.N1, n2 = f.grid.N2;
  float l1 = float(f.grid.L1), l2 = float(f.grid.L2);
  out.write(reinterpret_cast<const char*>(&n1), 4);
  out.write(reinterpret_cast<const char*>(&n2), 4);
  out.write(reinterpret_cast<const char*>(&l1), 4);
  out.write(reinterpret_cast<const char*>(&l2), 4);
  out.write(reinterpret_cast<const char*>(f.v.data()),
            std::streamsize(f.v.size() * sizeof(double)));
  if (!out) throw std::runtime_error("write_field: short write to " + path);

  nlohmann::json meta = {{"schema", "zk.field.v1"},
                         {"N1", f.grid.N1},
                         {"N2", f.grid.N2},
                         {"L1", f.grid.L1},
                         {"L2", f.grid.L2},
                         {"dtype", "f64le"},
                         {"order", "row-major"}};
  std::ofstream side(path + ".json");
  side << meta.dump() << "\n";
}

Field2D read_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArtifactMissing("read_field: cannot open " + path);
  uint32_t n1 = 0, n2 = 0;
  float l1 = 0, l2 = 0;
  in.read(reinterpret_cast<char*>(&n1), 4);
  in.read(reinterpret_cast<char*>(&n2), 4);
  in.read(reinterpret_cast<char*>(&l1), 4);
  in.read(reinterpret_cast<char*>(&l2), 4);
  if (!in) throw std::runtime_error("read_field: bad header in " + path);
  Field2D f{Grid(double(l1), double(l2), int(n1), int(n2))};
  in.read(reinterpret_cast<char*>(f.v.data()),
          std::streamsize(f.v.size() * sizeof(double)));
  if (!in) throw std::runtime_error("read_field: truncated data in " + path);
  return f;
}

}  // namespace zk
