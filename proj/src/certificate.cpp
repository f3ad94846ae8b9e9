#include "subshift/certificate.hpp"

#include <fstream>
#include <sstream>

#include "subshift/errors.hpp"

namespace subshift {

namespace {

using nlohmann::ordered_json;

ordered_json int_list(const std::vector<Int>& v) {
  ordered_json arr = ordered_json::array();
  for (const auto& x : v) arr.push_back(int_str(x));
  return arr;
}

const ordered_json& field(const ordered_json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end())
    throw certificate_error(CertFault::parse, std::string("missing field ") + key);
  return *it;
}

std::string str_field(const ordered_json& doc, const char* key) {
  const ordered_json& v = field(doc, key);
  if (!v.is_string())
    throw certificate_error(CertFault::parse, std::string("field ") + key + " must be a string");
  return v.get<std::string>();
}

Int int_field(const ordered_json& doc, const char* key) {
  try {
    return parse_int(str_field(doc, key));
  } catch (const std::invalid_argument& e) {
    throw certificate_error(CertFault::parse, std::string("field ") + key + ": " + e.what());
  }
}

std::vector<Int> int_list_field(const ordered_json& doc, const char* key) {
  const ordered_json& v = field(doc, key);
  if (!v.is_array())
    throw certificate_error(CertFault::parse, std::string("field ") + key + " must be an array");
  std::vector<Int> out;
  for (const auto& item : v) {
    if (!item.is_string())
      throw certificate_error(CertFault::parse,
                              std::string("field ") + key + " must hold decimal strings");
    try {
      out.push_back(parse_int(item.get<std::string>()));
    } catch (const std::invalid_argument& e) {
      throw certificate_error(CertFault::parse, std::string("field ") + key + ": " + e.what());
    }
  }
  return out;
}

Rat rat_entry(const ordered_json& v, const char* key) {
  if (!v.is_string())
    throw certificate_error(CertFault::parse, std::string("field ") + key + " must hold fractions");
  try {
    return parse_rat(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw certificate_error(CertFault::parse, std::string("field ") + key + ": " + e.what());
  }
}

int small_int_entry(const ordered_json& v, const char* key) {
  Rat r = rat_entry(v, key);
  if (den(r) != 1 || num(r) < 0 || num(r) > 1000000)
    throw certificate_error(CertFault::parse, std::string("field ") + key + " index out of range");
  return static_cast<int>(to_ulong_checked(num(r), key));
}

}  // namespace

Certificate make_certificate(const Construction& c) {
  Certificate cert;
  cert.config = c.config();
  const int depth = c.depth();
  for (int k = 0; k <= depth; ++k) {
    cert.sides.push_back(c.tiling().side(k));
    cert.shape_cells.push_back(c.tiling().cells(k));
  }
  for (int k = 1; k <= depth; ++k) {
    cert.subtiles.push_back(c.tiling().subtiles(k));
    cert.subtile_minimums.push_back(c.subtile_minimum(k));
    cert.profiles.push_back(c.profile(k));
  }
  for (int k = 2; k <= depth; ++k) {
    cert.base_copies.push_back(c.base_copies(k));
    cert.variant_copies.push_back(c.variant_copies(k));
  }
  for (int k = 1; k <= depth; ++k)
    for (int n = 0; n <= k; ++n)
      cert.required.emplace_back(n, k, c.rule().required_fraction(n, k));
  for (int n = 0; n <= depth; ++n) cert.limits.emplace_back(n, c.rule().limit_fraction(n));
  cert.results = nullptr;
  return cert;
}

std::string certificate_text(const Certificate& cert) {
  ordered_json doc;
  doc["format_version"] = kCertificateVersion;
  doc["group_dimension"] = std::to_string(cert.config.group_dim);
  doc["poly_dimension"] = std::to_string(cert.config.poly_dim);
  doc["mode"] = mode_name(cert.config.mode);
  doc["depth"] = std::to_string(cert.config.depth);
  doc["window_cap"] = int_str(cert.config.window_cap);
  doc["hierarchy_sides"] = int_list(cert.sides);
  doc["shape_cells"] = int_list(cert.shape_cells);
  doc["subtiles_per_level"] = int_list(cert.subtiles);
  doc["subtile_minimums"] = int_list(cert.subtile_minimums);
  doc["base_copies"] = int_list(cert.base_copies);
  doc["variant_copies"] = int_list(cert.variant_copies);
  ordered_json req = ordered_json::array();
  for (const auto& [n, k, v] : cert.required)
    req.push_back({std::to_string(n), std::to_string(k), rat_str(v)});
  doc["required_fractions"] = req;
  ordered_json lim = ordered_json::array();
  for (const auto& [n, v] : cert.limits) lim.push_back({std::to_string(n), rat_str(v)});
  doc["limit_fractions"] = lim;
  ordered_json profs = ordered_json::array();
  for (const auto& p : cert.profiles) {
    ordered_json one = ordered_json::array();
    for (const auto& [w, count] : p.entries) one.push_back({dyadic_str(w), int_str(count)});
    profs.push_back(one);
  }
  doc["level_profiles"] = profs;
  doc["placement"] = {{"step1_cells", "tail"}, {"variant_slots", "tail"},
                      {"variant_order", "rank"}};
  doc["results"] = cert.results;
  return doc.dump(2) + "\n";
}

void emit_certificate(const Certificate& cert, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw certificate_error(CertFault::io, "cannot open " + path + " for writing");
  out << certificate_text(cert);
  out.flush();
  if (!out) throw certificate_error(CertFault::io, "write failed for " + path);
}

Certificate load_certificate(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw certificate_error(CertFault::io, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw certificate_error(CertFault::io, "read failed for " + path);

  ordered_json doc = ordered_json::parse(buf.str(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object())
    throw certificate_error(CertFault::parse, "not a JSON object");

  const ordered_json& ver = field(doc, "format_version");
  if (!ver.is_number_integer())
    throw certificate_error(CertFault::parse, "format_version must be an integer");
  if (ver.get<int>() != kCertificateVersion)
    throw certificate_error(CertFault::version,
                            "unsupported format_version " + ver.dump());

  Certificate cert;
  Int gd = int_field(doc, "group_dimension");
  Int pd = int_field(doc, "poly_dimension");
  Int dep = int_field(doc, "depth");
  if (gd < 1 || gd > 2 || pd < 1 || pd > 2 || dep < 0 || dep > 64)
    throw certificate_error(CertFault::parse, "dimension or depth out of range");
  cert.config.group_dim = static_cast<int>(to_ulong_checked(gd, "group_dimension"));
  cert.config.poly_dim = static_cast<int>(to_ulong_checked(pd, "poly_dimension"));
  cert.config.depth = static_cast<int>(to_ulong_checked(dep, "depth"));
  std::string mode = str_field(doc, "mode");
  if (mode == "paper") {
    cert.config.mode = ScheduleMode::paper;
  } else if (mode == "toy") {
    cert.config.mode = ScheduleMode::toy;
  } else {
    throw certificate_error(CertFault::parse, "unknown mode " + mode);
  }
  cert.config.window_cap = int_field(doc, "window_cap");
  if (cert.config.window_cap < 1)
    throw certificate_error(CertFault::parse, "window_cap must be positive");

  cert.sides = int_list_field(doc, "hierarchy_sides");
  cert.shape_cells = int_list_field(doc, "shape_cells");
  cert.subtiles = int_list_field(doc, "subtiles_per_level");
  cert.subtile_minimums = int_list_field(doc, "subtile_minimums");
  cert.base_copies = int_list_field(doc, "base_copies");
  cert.variant_copies = int_list_field(doc, "variant_copies");

  const int depth = cert.config.depth;
  const size_t ud = static_cast<size_t>(depth);
  if (cert.sides.size() != ud + 1 || cert.shape_cells.size() != ud + 1 ||
      cert.subtiles.size() != ud || cert.subtile_minimums.size() != ud ||
      cert.base_copies.size() != (depth >= 2 ? ud - 1 : 0) ||
      cert.variant_copies.size() != cert.base_copies.size())
    throw certificate_error(CertFault::parse, "table lengths disagree with depth");

  const ordered_json& req = field(doc, "required_fractions");
  if (!req.is_array())
    throw certificate_error(CertFault::parse, "required_fractions must be an array");
  for (const auto& entry : req) {
    if (!entry.is_array() || entry.size() != 3)
      throw certificate_error(CertFault::parse, "required_fractions entries must be triples");
    cert.required.emplace_back(small_int_entry(entry[0], "required_fractions"),
                               small_int_entry(entry[1], "required_fractions"),
                               rat_entry(entry[2], "required_fractions"));
  }
  const ordered_json& lim = field(doc, "limit_fractions");
  if (!lim.is_array())
    throw certificate_error(CertFault::parse, "limit_fractions must be an array");
  for (const auto& entry : lim) {
    if (!entry.is_array() || entry.size() != 2)
      throw certificate_error(CertFault::parse, "limit_fractions entries must be pairs");
    cert.limits.emplace_back(small_int_entry(entry[0], "limit_fractions"),
                             rat_entry(entry[1], "limit_fractions"));
  }
  const ordered_json& profs = field(doc, "level_profiles");
  if (!profs.is_array() || profs.size() != ud)
    throw certificate_error(CertFault::parse, "level_profiles must list every level");
  for (const auto& one : profs) {
    if (!one.is_array())
      throw certificate_error(CertFault::parse, "each level profile must be an array");
    std::vector<std::pair<Rat, Int>> entries;
    for (const auto& entry : one) {
      if (!entry.is_array() || entry.size() != 2)
        throw certificate_error(CertFault::parse, "profile entries must be [width, count] pairs");
      Rat w = rat_entry(entry[0], "level_profiles");
      if (!entry[1].is_string())
        throw certificate_error(CertFault::parse, "profile counts must be decimal strings");
      Int count;
      try {
        count = parse_int(entry[1].get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw certificate_error(CertFault::parse, std::string("level_profiles: ") + e.what());
      }
      entries.emplace_back(w, count);
    }
    try {
      cert.profiles.push_back(Profile::make(std::move(entries)));
    } catch (const std::invalid_argument& e) {
      throw certificate_error(CertFault::parse, std::string("level_profiles: ") + e.what());
    }
  }
  const ordered_json& placement = field(doc, "placement");
  if (!placement.is_object())
    throw certificate_error(CertFault::parse, "placement must be an object");
  cert.results = field(doc, "results");

  // Structure is sound; now the semantic gates, cheapest first.
  if (cert.sides.empty() || cert.sides[0] != 1)
    throw certificate_error(CertFault::divisibility, "hierarchy_sides must start at 1");
  for (size_t k = 1; k < cert.sides.size(); ++k) {
    if (cert.sides[k] <= cert.sides[k - 1])
      throw certificate_error(CertFault::divisibility, "hierarchy_sides must strictly increase");
    if (cert.sides[k] % cert.sides[k - 1] != 0)
      throw certificate_error(CertFault::divisibility,
                              "side " + int_str(cert.sides[k]) + " is not a multiple of " +
                                  int_str(cert.sides[k - 1]));
  }

  Construction rebuilt = [&] {
    try {
      return Construction::build(cert.config);
    } catch (const std::exception& e) {
      throw certificate_error(CertFault::schedule,
                              std::string("configuration does not rebuild: ") + e.what());
    }
  }();
  for (int k = 0; k <= depth; ++k)
    if (cert.sides[static_cast<size_t>(k)] != rebuilt.tiling().side(k))
      throw certificate_error(CertFault::schedule,
                              "hierarchy_sides[" + std::to_string(k) + "] disagrees with rebuild");
  for (int k = 1; k <= depth; ++k) {
    if (cert.subtiles[static_cast<size_t>(k - 1)] != rebuilt.tiling().subtiles(k))
      throw certificate_error(CertFault::schedule,
                              "subtiles_per_level[" + std::to_string(k - 1) +
                                  "] disagrees with rebuild");
    if (cert.subtile_minimums[static_cast<size_t>(k - 1)] != rebuilt.subtile_minimum(k))
      throw certificate_error(CertFault::schedule,
                              "subtile_minimums[" + std::to_string(k - 1) +
                                  "] disagrees with rebuild");
    if (!(cert.profiles[static_cast<size_t>(k - 1)] == rebuilt.profile(k)))
      throw certificate_error(CertFault::schedule,
                              "level_profiles[" + std::to_string(k - 1) +
                                  "] disagrees with rebuild");
  }
  for (int k = 2; k <= depth; ++k) {
    if (cert.base_copies[static_cast<size_t>(k - 2)] != rebuilt.base_copies(k))
      throw certificate_error(CertFault::schedule,
                              "base_copies[" + std::to_string(k - 2) + "] disagrees with rebuild");
    if (cert.variant_copies[static_cast<size_t>(k - 2)] != rebuilt.variant_copies(k))
      throw certificate_error(CertFault::schedule,
                              "variant_copies[" + std::to_string(k - 2) +
                                  "] disagrees with rebuild");
  }
  {
    Certificate expect = make_certificate(rebuilt);
    if (cert.required != expect.required)
      throw certificate_error(CertFault::schedule, "required_fractions disagree with rebuild");
    if (cert.limits != expect.limits)
      throw certificate_error(CertFault::schedule, "limit_fractions disagree with rebuild");
  }

  for (int k = 0; k <= depth; ++k)
    if (cert.shape_cells[static_cast<size_t>(k)] !=
        ipow(cert.sides[static_cast<size_t>(k)], cert.config.group_dim))
      throw certificate_error(CertFault::consistency,
                              "shape_cells[" + std::to_string(k) + "] is not side^dim");
  for (int k = 1; k <= depth; ++k)
    if (cert.profiles[static_cast<size_t>(k - 1)].total() !=
        cert.shape_cells[static_cast<size_t>(k)])
      throw certificate_error(CertFault::consistency,
                              "profile total at level " + std::to_string(k) +
                                  " does not cover the shape");
  auto placement_is = [&](const char* key, const char* want) {
    auto it = placement.find(key);
    return it != placement.end() && it->is_string() && it->get<std::string>() == want;
  };
  if (placement.size() != 3 || !placement_is("step1_cells", "tail") ||
      !placement_is("variant_slots", "tail") || !placement_is("variant_order", "rank"))
    throw certificate_error(CertFault::consistency, "unrecognized placement conventions");
  if (!cert.results.is_null() && !cert.results.is_object())
    throw certificate_error(CertFault::consistency, "results must be null or an object");

  return cert;
}

Construction reconstruct(const Certificate& cert) { return Construction::build(cert.config); }

}  // namespace subshift
