// Internal PLY reading machinery shared by the mesh and cloud loaders.
// Not installed; include only from core sources.
#pragma once

#include <cstdint>
#include <cstring>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "graspgen/error.hpp"

namespace graspgen::ply {

enum class Scalar { I8, U8, I16, U16, I32, U32, F32, F64 };

inline Scalar scalar_from_name(const std::string& name, const std::string& path) {
  static const std::map<std::string, Scalar> table = {
      {"char", Scalar::I8},    {"int8", Scalar::I8},
      {"uchar", Scalar::U8},   {"uint8", Scalar::U8},
      {"short", Scalar::I16},  {"int16", Scalar::I16},
      {"ushort", Scalar::U16}, {"uint16", Scalar::U16},
      {"int", Scalar::I32},    {"int32", Scalar::I32},
      {"uint", Scalar::U32},   {"uint32", Scalar::U32},
      {"float", Scalar::F32},  {"float32", Scalar::F32},
      {"double", Scalar::F64}, {"float64", Scalar::F64},
  };
  const auto it = table.find(name);
  if (it == table.end()) {
    throw InputError("'" + path + "': unknown PLY type '" + name + "'");
  }
  return it->second;
}

inline std::size_t scalar_size(Scalar t) {
  switch (t) {
    case Scalar::I8:
    case Scalar::U8:
      return 1;
    case Scalar::I16:
    case Scalar::U16:
      return 2;
    case Scalar::I32:
    case Scalar::U32:
    case Scalar::F32:
      return 4;
    case Scalar::F64:
      return 8;
  }
  return 0;
}

struct Property {
  std::string name;
  bool is_list = false;
  Scalar count_type = Scalar::U8;
  Scalar value_type = Scalar::F32;
};

struct Element {
  std::string name;
  std::size_t count = 0;
  std::vector<Property> properties;

  int property_index(const std::string& name) const {
    for (std::size_t i = 0; i < properties.size(); ++i) {
      if (properties[i].name == name) return static_cast<int>(i);
    }
    return -1;
  }
};

struct Header {
  bool binary = false;
  std::vector<Element> elements;
  std::size_t data_offset = 0;

  const Element* find(const std::string& name) const {
    for (const auto& el : elements) {
      if (el.name == name) return &el;
    }
    return nullptr;
  }
};

inline Header parse_header(const std::string& bytes, const std::string& path) {
  Header header;
  std::size_t pos = 0;
  auto next_line = [&]() -> std::string {
    const auto eol = bytes.find('\n', pos);
    if (eol == std::string::npos) {
      throw InputError("'" + path + "': truncated PLY header");
    }
    std::string line = bytes.substr(pos, eol - pos);
    pos = eol + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  };

  if (next_line() != "ply") {
    throw InputError("'" + path + "': missing PLY magic");
  }
  while (true) {
    std::istringstream ls(next_line());
    std::string tag;
    ls >> tag;
    if (tag == "comment" || tag == "obj_info" || tag.empty()) continue;
    if (tag == "format") {
      std::string fmt;
      ls >> fmt;
      if (fmt == "ascii") {
        header.binary = false;
      } else if (fmt == "binary_little_endian") {
        header.binary = true;
      } else {
        throw InputError("unsupported format: PLY '" + fmt + "' in '" + path + "'");
      }
    } else if (tag == "element") {
      Element el;
      ls >> el.name >> el.count;
      header.elements.push_back(el);
    } else if (tag == "property") {
      if (header.elements.empty()) {
        throw InputError("'" + path + "': PLY property before element");
      }
      std::string type;
      ls >> type;
      Property prop;
      if (type == "list") {
        std::string count_type, value_type;
        ls >> count_type >> value_type >> prop.name;
        prop.is_list = true;
        prop.count_type = scalar_from_name(count_type, path);
        prop.value_type = scalar_from_name(value_type, path);
      } else {
        prop.value_type = scalar_from_name(type, path);
        ls >> prop.name;
      }
      header.elements.back().properties.push_back(prop);
    } else if (tag == "end_header") {
      break;
    } else {
      throw InputError("'" + path + "': unknown PLY header line '" + tag + "'");
    }
  }
  header.data_offset = pos;
  return header;
}

class BinaryCursor {
 public:
  BinaryCursor(const std::string& bytes, std::size_t offset, const std::string& path)
      : bytes_(bytes), pos_(offset), path_(path) {}

  double read(Scalar t) {
    const std::size_t size = scalar_size(t);
    if (pos_ + size > bytes_.size()) {
      throw InputError("'" + path_ + "': truncated PLY data");
    }
    const char* p = bytes_.data() + pos_;
    pos_ += size;
    switch (t) {
      case Scalar::I8: { std::int8_t v; std::memcpy(&v, p, 1); return v; }
      case Scalar::U8: { std::uint8_t v; std::memcpy(&v, p, 1); return v; }
      case Scalar::I16: { std::int16_t v; std::memcpy(&v, p, 2); return v; }
      case Scalar::U16: { std::uint16_t v; std::memcpy(&v, p, 2); return v; }
      case Scalar::I32: { std::int32_t v; std::memcpy(&v, p, 4); return v; }
      case Scalar::U32: { std::uint32_t v; std::memcpy(&v, p, 4); return static_cast<double>(v); }
      case Scalar::F32: { float v; std::memcpy(&v, p, 4); return v; }
      case Scalar::F64: { double v; std::memcpy(&v, p, 8); return v; }
    }
    return 0.0;
  }

 private:
  const std::string& bytes_;
  std::size_t pos_;
  const std::string path_;
};

class AsciiCursor {
 public:
  AsciiCursor(const std::string& bytes, std::size_t offset, const std::string& path)
      : stream_(bytes.substr(offset)), path_(path) {}

  double read(Scalar) {
    double v;
    if (!(stream_ >> v)) {
      throw InputError("'" + path_ + "': truncated PLY data");
    }
    return v;
  }

 private:
  std::istringstream stream_;
  const std::string path_;
};

}  // namespace graspgen::ply
