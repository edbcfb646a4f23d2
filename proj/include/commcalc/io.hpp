#ifndef COMMCALC_IO_HPP
#define COMMCALC_IO_HPP

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "algebra.hpp"
#include "catalog.hpp"
#include "error.hpp"
#include "structures.hpp"

namespace commcalc::io {

using nlohmann::json;

namespace detail {

inline std::size_t line_at(std::string const &text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

/// Line of the first occurrence of "key": in the document, or 1 if absent.
inline std::size_t line_of_key(std::string const &text, std::string const &key) {
  auto pos = text.find("\"" + key + "\"");
  return pos == std::string::npos ? 1 : line_at(text, pos);
}

inline json parse_document(std::string const &text) {
  try {
    return json::parse(text);
  } catch (json::parse_error const &e) {
    throw FormatError(line_at(text, e.byte == 0 ? 0 : e.byte - 1), "malformed JSON");
  }
}

inline std::string read_file(std::string const &path) {
  if (path == "-")
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open '" + path + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(std::string const &path, std::string const &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out)
    throw IoError("write to '" + path + "' failed");
}

inline std::vector<Elem> index_vector(json const &v, std::string const &text,
                                      std::string const &key) {
  if (!v.is_array())
    throw FormatError(line_of_key(text, key), "'" + key + "' must be an array");
  std::vector<Elem> out;
  for (auto const &e : v) {
    if (!e.is_number_unsigned())
      throw FormatError(line_of_key(text, key), "'" + key + "' must hold non-negative integers");
    out.push_back(e.get<Elem>());
  }
  return out;
}

inline std::vector<Elem> table(json const &v, std::size_t n, std::string const &text,
                               std::string const &key) {
  if (!v.is_array() || v.size() != n)
    throw FormatError(line_of_key(text, key), "'" + key + "' must have " + std::to_string(n) + " rows");
  std::vector<Elem> out;
  for (auto const &row : v) {
    auto r = index_vector(row, text, key);
    if (r.size() != n)
      throw FormatError(line_of_key(text, key), "'" + key + "' rows must have " + std::to_string(n) + " entries");
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

inline void write_table(std::ostringstream &os, char const *key,
                        std::vector<Elem> const &t, std::size_t n) {
  os << "  \"" << key << "\": [\n";
  for (std::size_t i = 0; i < n; ++i) {
    json row(std::vector<Elem>(t.begin() + static_cast<std::ptrdiff_t>(i * n),
                               t.begin() + static_cast<std::ptrdiff_t>((i + 1) * n)));
    os << "    " << row.dump() << (i + 1 < n ? ",\n" : "\n");
  }
  os << "  ]";
}

} // namespace detail

/// Parses the algebra document format (see docs/formats.md).
inline FiniteAlgebra parse_algebra(std::string const &text) {
  json doc = detail::parse_document(text);
  if (!doc.is_object())
    throw FormatError(1, "document must be a JSON object");
  for (char const *key : {"kind", "order", "elements", "mul"})
    if (!doc.contains(key))
      throw FormatError(1, std::string("missing field '") + key + "'");
  auto const &k = doc["kind"];
  Kind kind;
  if (k == "group")
    kind = Kind::Group;
  else if (k == "loop")
    kind = Kind::Loop;
  else
    throw FormatError(detail::line_of_key(text, "kind"), "kind must be \"group\" or \"loop\"");
  if (!doc["order"].is_number_unsigned() || doc["order"].get<std::size_t>() == 0)
    throw FormatError(detail::line_of_key(text, "order"), "order must be a positive integer");
  auto n = doc["order"].get<std::size_t>();
  auto const &el = doc["elements"];
  if (!el.is_array() || el.size() != n ||
      !std::all_of(el.begin(), el.end(), [](json const &e) { return e.is_string(); }))
    throw FormatError(detail::line_of_key(text, "elements"),
                      "elements must be " + std::to_string(n) + " strings");
  auto names = el.get<std::vector<std::string>>();
  auto mul = detail::table(doc["mul"], n, text, "mul");

  std::optional<std::vector<Elem>> inv, ldiv, rdiv;
  if (doc.contains("inv")) {
    if (kind != Kind::Group)
      throw FormatError(detail::line_of_key(text, "inv"), "inv is only allowed for groups");
    inv = detail::index_vector(doc["inv"], text, "inv");
  }
  for (auto [key, slot] : {std::pair{"ldiv", &ldiv}, std::pair{"rdiv", &rdiv}})
    if (doc.contains(key)) {
      if (kind != Kind::Loop)
        throw FormatError(detail::line_of_key(text, key), std::string(key) + " is only allowed for loops");
      *slot = detail::table(doc[key], n, text, key);
    }
  return validate_algebra(kind, std::move(names), std::move(mul), std::move(inv),
                          std::move(ldiv), std::move(rdiv));
}

/// Groups carry `inv`; loop divisions are derived on load.
inline std::string serialize_algebra(FiniteAlgebra const &x) {
  std::size_t n = x.order();
  std::ostringstream os;
  os << "{\n  \"kind\": \"" << (x.kind() == Kind::Group ? "group" : "loop") << "\",\n";
  os << "  \"order\": " << n << ",\n";
  os << "  \"elements\": " << json(x.names()).dump() << ",\n";
  detail::write_table(os, "mul", x.mul_table(), n);
  if (x.kind() == Kind::Group) {
    os << ",\n  \"inv\": " << json(x.inv_table()).dump() << "\n";
  } else {
    os << "\n";
  }
  os << "}\n";
  return os.str();
}

/// `path` of "-" reads standard input.
inline FiniteAlgebra load_algebra(std::string const &path) {
  return parse_algebra(detail::read_file(path));
}

inline void save_algebra(FiniteAlgebra const &x, std::string const &path) {
  detail::write_file(path, serialize_algebra(x));
}

/// Catalog name first, then a path relative to `base_dir`.
inline FiniteAlgebra resolve_algebra(std::string const &ref, std::string const &base_dir = {}) {
  if (ref == "-")
    return load_algebra(ref);
  try {
    return catalog::resolve(ref);
  } catch (UnknownEntry const &) {
  } catch (BadParams const &) {
  }
  std::filesystem::path p(ref);
  if (p.is_relative() && !base_dir.empty())
    p = std::filesystem::path(base_dir) / p;
  if (!std::filesystem::exists(p))
    throw UnknownEntry(ref);
  return load_algebra(p.string());
}

namespace detail {

inline FiniteAlgebra field_algebra(json const &doc, std::string const &text,
                                   std::string const &key, std::string const &base) {
  if (!doc.contains(key) || !doc[key].is_string())
    throw FormatError(line_of_key(text, key), "'" + key + "' must name an algebra");
  return resolve_algebra(doc[key].get<std::string>(), base);
}

inline Homomorphism field_map(json const &doc, std::string const &text, std::string const &key,
                              FiniteAlgebra const &src, FiniteAlgebra const &dst) {
  if (!doc.contains(key))
    throw FormatError(1, "missing field '" + key + "'");
  return hom_check(src, dst, index_vector(doc[key], text, key));
}

inline std::string parent_dir(std::string const &path) {
  return path == "-" ? std::string{} : std::filesystem::path(path).parent_path().string();
}

} // namespace detail

/// Split extension document: algebras "total", "base", "kernel" plus maps
/// "p", "s", "k" and optional named "boundaries".
inline catalog::ExtensionEntry parse_extension(std::string const &text, std::string const &base_dir = {}) {
  json doc = detail::parse_document(text);
  if (!doc.is_object())
    throw FormatError(1, "document must be a JSON object");
  FiniteAlgebra total = detail::field_algebra(doc, text, "total", base_dir);
  FiniteAlgebra base = detail::field_algebra(doc, text, "base", base_dir);
  FiniteAlgebra kernel = detail::field_algebra(doc, text, "kernel", base_dir);
  auto vec = [&](char const *key) {
    if (!doc.contains(key))
      throw FormatError(1, std::string("missing field '") + key + "'");
    return detail::index_vector(doc[key], text, key);
  };
  catalog::ExtensionEntry out{make_split_extension(total, base, kernel, vec("p"), vec("s"), vec("k")), {}};
  out.boundaries["zero"] = std::vector<Elem>(kernel.order(), 0);
  if (doc.contains("boundaries")) {
    if (!doc["boundaries"].is_object())
      throw FormatError(detail::line_of_key(text, "boundaries"), "boundaries must be an object");
    for (auto const &[name, v] : doc["boundaries"].items())
      out.boundaries[name] = detail::index_vector(v, text, "boundaries");
  }
  return out;
}

/// Square document: algebras "x", "d_alg", "c_alg", "z" and maps "d", "c", "f", "g".
inline DoubleExtensionSquare parse_square(std::string const &text, std::string const &base_dir = {}) {
  json doc = detail::parse_document(text);
  if (!doc.is_object())
    throw FormatError(1, "document must be a JSON object");
  FiniteAlgebra x = detail::field_algebra(doc, text, "x", base_dir);
  FiniteAlgebra da = detail::field_algebra(doc, text, "d_alg", base_dir);
  FiniteAlgebra ca = detail::field_algebra(doc, text, "c_alg", base_dir);
  FiniteAlgebra z = detail::field_algebra(doc, text, "z", base_dir);
  DoubleExtensionSquare sq{x,
                           da,
                           ca,
                           z,
                           detail::field_map(doc, text, "d", x, da),
                           detail::field_map(doc, text, "c", x, ca),
                           detail::field_map(doc, text, "f", da, z),
                           detail::field_map(doc, text, "g", ca, z)};
  validate_square(sq);
  return sq;
}

/// Catalog entry name, or a path to an extension document.
inline catalog::ExtensionEntry resolve_extension(std::string const &ref) {
  try {
    return catalog::extension(ref);
  } catch (UnknownEntry const &) {
    if (ref != "-" && !std::filesystem::exists(ref))
      throw;
  }
  return parse_extension(detail::read_file(ref), detail::parent_dir(ref));
}

inline DoubleExtensionSquare resolve_square(std::string const &ref) {
  try {
    return catalog::square(ref);
  } catch (UnknownEntry const &) {
    if (ref != "-" && !std::filesystem::exists(ref))
      throw;
  }
  return parse_square(detail::read_file(ref), detail::parent_dir(ref));
}

} // namespace commcalc::io

#endif
