#include "subshift/schedule.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "subshift/errors.hpp"

namespace subshift {

const char* mode_name(ScheduleMode m) { return m == ScheduleMode::paper ? "paper" : "toy"; }

ScheduleMode parse_mode(const std::string& s) {
  if (s == "paper") return ScheduleMode::paper;
  if (s == "toy") return ScheduleMode::toy;
  throw config_error("unknown mode '" + s + "' (expected paper or toy)");
}

Rat scale_width(int scale) {
  if (scale < 0) throw std::invalid_argument("scale_width: scale must be >= 0");
  Int e = Int(scale) * (scale + 1) / 2;
  return make_rat(1, pow2(e));
}

namespace {
void check_rule_args(int scale, int level) {
  if (scale < 0) throw std::invalid_argument("fraction rule: scale must be >= 0");
  if (level < 1) throw std::invalid_argument("fraction rule: level must be >= 1");
}
}  // namespace

Rat FractionRule::required_fraction(int scale, int level) const {
  check_rule_args(scale, level);
  if (mode == ScheduleMode::paper)
    return Rat(1) - make_rat(1, scale + 2) + make_rat(1, level + 3);
  return (Rat(1) - make_rat(1, scale + 2)) / 16 + make_rat(1, pow2(Int(level) + 2));
}

Rat FractionRule::limit_fraction(int scale) const {
  check_rule_args(scale, 1);
  Rat base = Rat(1) - make_rat(1, scale + 2);
  return mode == ScheduleMode::paper ? base : base / 16;
}

Rat FractionRule::terminal_value() const {
  return mode == ScheduleMode::paper ? Rat(1) : make_rat(1, 16);
}

bool verify_fraction_properties(const std::function<Rat(int, int)>& required,
                                const std::function<Rat(int)>& limit, const Rat& terminal,
                                int scale_max, int level_max, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (scale_max < 0 || level_max < 1) throw std::invalid_argument("verify_fraction_properties: bad grid");
  for (int n = 0; n <= scale_max; ++n) {
    Rat lim = limit(n);
    std::string at = " at scale " + std::to_string(n);
    if (!(lim > 0 && lim < 1)) return fail("limit fraction out of (0,1)" + at);
    if (!(lim < terminal)) return fail("limit fraction not below the terminal value" + at);
    if (n >= 1 && !(lim > limit(n - 1))) return fail("limit fraction not strictly increasing" + at);
    // approach rate witnessing limit -> terminal: limit(n) > terminal * n/(n+1)
    if (n >= 1 && !(lim > terminal * make_rat(n, n + 1)))
      return fail("limit fraction approaches the terminal value too slowly" + at);
    Rat prev;
    int k0 = std::max(n, 1);
    for (int k = k0; k <= level_max; ++k) {
      Rat v = required(n, k);
      std::string here = " at scale " + std::to_string(n) + ", level " + std::to_string(k);
      if (!(v >= 0 && v < 1)) return fail("required fraction out of [0,1)" + here);
      if (!(v > lim)) return fail("required fraction does not exceed its limit" + here);
      if (k > k0 && !(v < prev)) return fail("required fraction not strictly decreasing" + here);
      prev = v;
    }
  }
  return true;
}

bool verify_fraction_properties(const FractionRule& rule, int scale_max, int level_max,
                                std::string* why) {
  return verify_fraction_properties(
      [&](int n, int k) { return rule.required_fraction(n, k); },
      [&](int n) { return rule.limit_fraction(n); }, rule.terminal_value(), scale_max, level_max,
      why);
}

Profile Profile::make(std::vector<std::pair<Rat, Int>> raw) {
  std::map<Rat, Int> merged;
  for (auto& [w, c] : raw) {
    if (w <= 0) throw std::invalid_argument("profile: width must be positive");
    if (c < 0) throw std::invalid_argument("profile: negative count");
    if (c > 0) merged[w] += c;
  }
  if (merged.empty()) throw std::invalid_argument("profile: empty");
  Profile p;
  for (auto it = merged.rbegin(); it != merged.rend(); ++it) p.entries.push_back({it->first, it->second});
  return p;
}

Profile Profile::step_one(const Int& cells, int poly_dim) {
  if (poly_dim < 1 || poly_dim > 2) throw std::invalid_argument("profile: poly_dim must be 1 or 2");
  Int sacrificed = Int(1) << poly_dim;
  if (cells <= sacrificed) throw std::invalid_argument("profile: too few cells to sacrifice");
  return make({{Rat(1), cells - sacrificed}, {make_rat(1, 2), sacrificed}});
}

Int Profile::total() const {
  Int t = 0;
  for (const auto& [w, c] : entries) t += c;
  return t;
}

Int Profile::count_at_least(const Rat& w) const {
  Int t = 0;
  for (const auto& [width, c] : entries)
    if (width >= w) t += c;
  return t;
}

Rat Profile::max_width() const { return entries.front().first; }
Rat Profile::min_width() const { return entries.back().first; }

Profile Profile::refined_level(const Int& base_copies, const Int& variants, int level) const {
  if (level < 2) throw std::invalid_argument("profile: refinement level must be >= 2");
  if (base_copies < 1 || variants < 1)
    throw std::invalid_argument("profile: copy counts must be positive");
  Rat factor = make_rat(1, pow2(level));
  std::vector<std::pair<Rat, Int>> raw;
  for (const auto& [w, c] : entries) {
    raw.push_back({w, c * base_copies});
    raw.push_back({w * factor, c * variants});
  }
  return make(std::move(raw));
}

Int select_level1_subtiles(const Rat& required, const Int& sacrificed) {
  if (sacrificed < 1) throw std::invalid_argument("select_level1_subtiles: sacrificed must be >= 1");
  if (required < 0) throw std::invalid_argument("select_level1_subtiles: required must be >= 0");
  if (required >= 1)
    throw infeasible_schedule_error("no subtile count attains fraction " + rat_str(required));
  Int p = num(required), q = den(required);
  // (l - s)/l >= p/q  <=>  l*(q - p) >= s*q
  Int l = std::max(Int(sacrificed + 1), ceil_div(sacrificed * q, q - p));
  if ((l - sacrificed) * q < p * l) throw std::logic_error("level-1 selection: closed form infeasible");
  if (l - 1 > sacrificed && (l - 1 - sacrificed) * q >= p * (l - 1))
    throw std::logic_error("level-1 selection: closed form not minimal");
  return l;
}

Int variant_count(ScheduleMode mode, int level, const Int& prev_cells, int poly_dim) {
  if (level < 2) throw std::invalid_argument("variant_count: level must be >= 2");
  if (prev_cells < 1) throw std::invalid_argument("variant_count: prev_cells must be >= 1");
  if (poly_dim < 1 || poly_dim > 2) throw std::invalid_argument("variant_count: poly_dim must be 1 or 2");
  Int e = Int(level) * prev_cells * poly_dim;
  if (mode == ScheduleMode::toy) {
    if (e >= 6) return Int(1) << 6;
    return pow2(e);
  }
  if (e > (Int(1) << 20))
    throw depth_limit_error("variant count 2^" + e.str() + " is beyond direct growth");
  return pow2(e);
}

Int select_base_copies(const FractionRule& rule, int level, const Profile& prev,
                       const Int& prev_cells, const Int& variants) {
  if (level < 2) throw std::invalid_argument("select_base_copies: level must be >= 2");
  if (variants < 1) throw std::invalid_argument("select_base_copies: variants must be >= 1");
  if (prev.total() != prev_cells)
    throw std::invalid_argument("select_base_copies: profile does not cover prev_cells");
  const Int& L = prev_cells;

  auto feasible = [&](const Int& r) {
    for (int n = 0; n <= level; ++n) {
      Rat f = rule.required_fraction(n, level);
      Int count = prev.count_at_least(scale_width(n));
      if (count * den(f) * r < num(f) * L * (r + variants)) return false;
    }
    return true;
  };

  Int best = 1;
  for (int n = 0; n <= level; ++n) {
    Rat f = rule.required_fraction(n, level);
    Int p = num(f), q = den(f);
    Int count = prev.count_at_least(scale_width(n));
    Int disc = count * q - p * L;
    if (disc <= 0) {
      if (p > 0)
        throw infeasible_schedule_error(
            "no copy count attains fraction " + rat_str(f) + " at scale " + std::to_string(n) +
            ": only " + count.str() + " of " + L.str() + " cells are wide enough");
      continue;
    }
    Int need = ceil_div(p * L * variants, disc);
    if (need > best) best = need;
  }
  if (!feasible(best)) throw std::logic_error("copy selection: closed form infeasible");
  if (best > 1 && feasible(best - 1)) throw std::logic_error("copy selection: closed form not minimal");
  return best;
}

}  // namespace subshift
