#include "gelfkit/report.hpp"

#include <fstream>
#include <iostream>

namespace gelfkit::io {

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw structural_error(path + ": cannot open");
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw structural_error(path + ": " + e.what());
  }
  return j;
}

Json load_inline(const std::string& arg) {
  std::size_t i = arg.find_first_not_of(" \t\n");
  if (i != std::string::npos && (arg[i] == '{' || arg[i] == '[')) {
    try {
      return Json::parse(arg);
    } catch (const Json::parse_error& e) {
      throw structural_error(std::string("inline json: ") + e.what());
    }
  }
  return load_json(arg);
}

void print_text(const Json& j, std::ostream& os, int indent) {
  std::string pad(2 * indent, ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.value().is_object() || it.value().is_array()) {
        os << pad << it.key() << ":\n";
        print_text(it.value(), os, indent + 1);
      } else {
        os << pad << it.key() << ": " << it.value().dump() << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_object() || v.is_array()) {
        os << pad << "-\n";
        print_text(v, os, indent + 1);
      } else {
        os << pad << "- " << v.dump() << "\n";
      }
    }
  } else {
    os << pad << j.dump() << "\n";
  }
}

void emit(const Json& j, const std::string& format) {
  if (format == "text")
    print_text(j, std::cout, 0);
  else
    std::cout << j.dump(2) << "\n";
}

Json point_names(const FiniteSpace& x, Mask m) {
  Json out = Json::array();
  for (int p : mask_points(m, x.npoints())) out.push_back(x.points[p]);
  return out;
}

}  // namespace gelfkit::io
