#pragma once

// Document loading and report emission shared by the command line tool and
// the end-to-end tests.

#include "gelfkit/json_io.hpp"
#include "gelfkit/space.hpp"

#include <iosfwd>
#include <string>

namespace gelfkit::io {

// reads and parses a document; failures throw structural_error with the path
Json load_json(const std::string& path);

// accepts either inline JSON (first non-space character '{' or '[') or a path
Json load_inline(const std::string& arg);

// renders a report as indented "key: value" lines, arrays as "- item"
void print_text(const Json& j, std::ostream& os, int indent = 0);

// writes the report to stdout in the requested format ("json" or "text")
void emit(const Json& j, const std::string& format);

// point names of a mask, in index order
Json point_names(const FiniteSpace& x, Mask m);

}  // namespace gelfkit::io
